//! JSON description of qubit channels.
//!
//! Complex numbers are `[re, im]` pairs, matrices are flat row-major lists of
//! four entries and a basis is either `"X" | "Y" | "Z"` or four entries
//! `[ψ₀[0], ψ₀[1], ψ₁[0], ψ₁[1]]`.

use serde::{Deserialize, Serialize};

use super::{cq, cq_not, not_mixture, pauli_channel, unot, Basis, CQChannel, NotMixture, PauliParams, QuantumChannel};
use crate::error::{Error, Result};
use crate::numkit::{c, CMatrix, C64};

pub type ComplexPair = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisSpec {
    Named(String),
    Kets(Vec<ComplexPair>),
}

impl BasisSpec {
    pub fn to_basis(&self) -> Result<Basis> {
        match self {
            BasisSpec::Named(n) => match n.to_ascii_uppercase().as_str() {
                "X" => Ok(Basis::x()),
                "Y" => Ok(Basis::y()),
                "Z" => Ok(Basis::z()),
                other => Err(Error::Channel(format!("unknown basis name {other:?}"))),
            },
            BasisSpec::Kets(v) => {
                if v.len() != 4 {
                    return Err(Error::Dimension(format!(
                        "basis needs 4 complex entries, got {}",
                        v.len()
                    )));
                }
                let z: Vec<C64> = v.iter().map(|p| c(p[0], p[1])).collect();
                Basis::new(z[..2].to_vec(), z[2..].to_vec())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedBasis {
    pub w: f64,
    pub basis: BasisSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    Identity,
    Unot,
    Pauli {
        p: Vec<f64>,
    },
    Cq {
        basis: BasisSpec,
        sigma0: Vec<ComplexPair>,
        sigma1: Vec<ComplexPair>,
    },
    CqNot {
        basis: BasisSpec,
    },
    NotMixture {
        components: Vec<WeightedBasis>,
    },
    Kraus {
        ops: Vec<Vec<ComplexPair>>,
    },
}

pub fn matrix2(v: &[ComplexPair]) -> Result<CMatrix> {
    if v.len() != 4 {
        return Err(Error::Dimension(format!(
            "2x2 matrix needs 4 complex entries, got {}",
            v.len()
        )));
    }
    CMatrix::from_vec(2, 2, v.iter().map(|p| c(p[0], p[1])).collect())
}

impl ChannelSpec {
    pub fn to_channel(&self) -> Result<QuantumChannel> {
        match self {
            ChannelSpec::Identity => Ok(QuantumChannel::identity()),
            ChannelSpec::Unot => Ok(unot()),
            ChannelSpec::Pauli { p } => Ok(pauli_channel(&PauliParams::try_from(p.clone())?)),
            ChannelSpec::Cq { basis, sigma0, sigma1 } => {
                let ch = CQChannel::new(basis.to_basis()?, matrix2(sigma0)?, matrix2(sigma1)?)?;
                Ok(cq(&ch))
            }
            ChannelSpec::CqNot { basis } => Ok(cq_not(&basis.to_basis()?)),
            ChannelSpec::NotMixture { components } => {
                let parts = components
                    .iter()
                    .map(|wb| Ok((wb.w, wb.basis.to_basis()?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(not_mixture(&NotMixture::new(parts)?))
            }
            ChannelSpec::Kraus { ops } => {
                let ops = ops.iter().map(|o| matrix2(o)).collect::<Result<Vec<_>>>()?;
                QuantumChannel::from_kraus(ops)
            }
        }
    }

    /// Pauli weights when the channel is given in Pauli form.
    pub fn pauli_params(&self) -> Option<PauliParams> {
        match self {
            ChannelSpec::Unot => {
                let t = 1.0 / 3.0;
                PauliParams::new(0.0, t, t, t).ok()
            }
            ChannelSpec::Identity => PauliParams::new(1.0, 0.0, 0.0, 0.0).ok(),
            ChannelSpec::Pauli { p } => PauliParams::try_from(p.clone()).ok(),
            _ => None,
        }
    }

    /// Parses a channel name shorthand: `unot`, `identity`, `cq_not_z`, ...
    pub fn from_name(name: &str) -> Result<Self> {
        let n = name.to_ascii_lowercase();
        match n.as_str() {
            "unot" => Ok(ChannelSpec::Unot),
            "identity" | "id" => Ok(ChannelSpec::Identity),
            "cq_not_x" | "cq_not_y" | "cq_not_z" => Ok(ChannelSpec::CqNot {
                basis: BasisSpec::Named(n[7..].to_ascii_uppercase()),
            }),
            _ => Err(Error::Channel(format!("unknown channel name {name:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ChannelSpec {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn parses_all_kinds() {
        let u = parse(r#"{"kind":"unot"}"#).to_channel().unwrap();
        assert!(u.choi().distance(unot().choi()) < 1e-15);
        let p = parse(r#"{"kind":"pauli","p":[1,0,0,0]}"#).to_channel().unwrap();
        assert!(p.choi().distance(QuantumChannel::identity().choi()) < 1e-15);
        let m = parse(
            r#"{"kind":"not_mixture","components":[{"w":0.5,"basis":"X"},{"w":0.5,"basis":[[1,0],[0,0],[0,0],[1,0]]}]}"#,
        )
        .to_channel()
        .unwrap();
        assert!(crate::qchannel::is_quantum_not_channel(&m));
        let cq =
            parse(r#"{"kind":"cq","basis":"Z","sigma0":[[0,0],[0,0],[0,0],[1,0]],"sigma1":[[1,0],[0,0],[0,0],[0,0]]}"#)
                .to_channel()
                .unwrap();
        assert!(cq.choi().distance(cq_not(&Basis::z()).choi()) < 1e-12);
        let k = parse(r#"{"kind":"kraus","ops":[[[0,0],[1,0],[1,0],[0,0]]]}"#)
            .to_channel()
            .unwrap();
        assert!(!crate::qchannel::is_entanglement_breaking(&k));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<ChannelSpec>(r#"{"kind":"warp"}"#).is_err());
        let bad = parse(r#"{"kind":"pauli","p":[0.5,0.6,0,0]}"#);
        assert!(bad.to_channel().is_err());
        let bad = parse(r#"{"kind":"cq_not","basis":[[1,0],[0,0],[1,0],[0,0]]}"#);
        assert!(matches!(bad.to_channel(), Err(Error::NotOrthonormal(_))));
    }

    #[test]
    fn names() {
        assert_eq!(ChannelSpec::from_name("UNOT").unwrap(), ChannelSpec::Unot);
        assert!(ChannelSpec::from_name("cq_not_z").unwrap().to_channel().is_ok());
        assert!(ChannelSpec::from_name("bogus").is_err());
    }
}
