//! Entanglement-assisted quantum protocols: Alice encodes on her half of a
//! shared two-qubit state, sends it through a channel, Bob measures jointly.

use super::{GameConfig, GameDistribution, BOXES, CONFIGS};
use crate::error::{Error, Result};
use crate::numkit::{bell_state, hermitian_eigenvalues, pauli, CMatrix, PSD_TOL};
use crate::qchannel::QuantumChannel;

/// Alice's encoding channels, indexed by bomb only or by full configuration.
#[derive(Debug, Clone)]
pub enum Encodings {
    /// Four channels, one per bomb location.
    PerBomb(Vec<QuantumChannel>),
    /// Twelve channels in [`GameConfig::all`] order.
    PerConfig(Vec<QuantumChannel>),
}

impl Encodings {
    pub fn get(&self, cfg: GameConfig) -> &QuantumChannel {
        match self {
            Encodings::PerBomb(v) => &v[cfg.b0()],
            Encodings::PerConfig(v) => &v[cfg.index()],
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuantumProtocolSpec {
    shared_state: CMatrix,
    encodings: Encodings,
    channel: QuantumChannel,
    povm: Vec<CMatrix>,
}

const POVM_TOL: f64 = 1e-10;

impl QuantumProtocolSpec {
    pub fn new(
        shared_state: CMatrix,
        encodings: Encodings,
        channel: QuantumChannel,
        povm: Vec<CMatrix>,
    ) -> Result<Self> {
        if shared_state.rows() != 4 || shared_state.cols() != 4 {
            return Err(Error::Dimension("shared state must be 4x4".into()));
        }
        let ev = hermitian_eigenvalues(&shared_state)?;
        if ev[0] < -PSD_TOL || (shared_state.trace().re - 1.0).abs() > 1e-10 {
            return Err(Error::NotDensity("shared state".into()));
        }
        let n = match &encodings {
            Encodings::PerBomb(v) => (v.len(), BOXES),
            Encodings::PerConfig(v) => (v.len(), CONFIGS),
        };
        if n.0 != n.1 {
            return Err(Error::Dimension(format!("{} encodings, expected {}", n.0, n.1)));
        }
        if povm.len() != BOXES {
            return Err(Error::Dimension(format!("{} POVM elements, expected 4", povm.len())));
        }
        let mut sum = CMatrix::zeros(4, 4);
        for m in &povm {
            if m.rows() != 4 || m.cols() != 4 {
                return Err(Error::Dimension("POVM elements must be 4x4".into()));
            }
            if hermitian_eigenvalues(m)?[0] < -PSD_TOL {
                return Err(Error::Povm(f64::NAN));
            }
            sum = &sum + m;
        }
        let dev = sum.distance(&CMatrix::identity(4));
        if dev > POVM_TOL {
            return Err(Error::Povm(dev));
        }
        Ok(QuantumProtocolSpec {
            shared_state,
            encodings,
            channel,
            povm,
        })
    }

    pub fn shared_state(&self) -> &CMatrix {
        &self.shared_state
    }

    pub fn encodings(&self) -> &Encodings {
        &self.encodings
    }

    pub fn channel(&self) -> &QuantumChannel {
        &self.channel
    }

    pub fn povm(&self) -> &[CMatrix] {
        &self.povm
    }
}

/// p(y|b,x) = Tr[M_y (N∘E_{b,x} ⊗ I)(ρ_AB)].
pub fn eval_quantum_protocol(spec: &QuantumProtocolSpec) -> Result<GameDistribution<f64>> {
    let mut rows = Vec::with_capacity(CONFIGS);
    for cfg in GameConfig::all() {
        let ch = spec.encodings.get(cfg).then(&spec.channel);
        let state = ch.apply_first_factor(&spec.shared_state);
        let row: Vec<f64> = spec.povm.iter().map(|m| m.trace_product(&state).re).collect();
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > POVM_TOL || row.iter().any(|&p| p < -POVM_TOL) {
            return Err(Error::Povm((sum - 1.0).abs()));
        }
        rows.push(row.into_iter().map(|p| p.clamp(0.0, 1.0)).collect());
    }
    Ok(GameDistribution::from_rows_unchecked(rows))
}

/// Dense coding over `n`: shared |Φ⁺⟩, Alice applies I, X, Y, Z for bomb
/// 1, 2, 3, 4, Bob measures in the Bell basis (σ_y ⊗ I)|Φ⁺⟩ and opens box y.
pub fn dense_coding_protocol(n: &QuantumChannel) -> QuantumProtocolSpec {
    let encodings = (0..4)
        .map(|k| QuantumChannel::unitary(&pauli(k)).expect("Paulis are unitary"))
        .collect();
    let povm = (0..4).map(|k| CMatrix::ket_bra(&bell_state(k))).collect();
    QuantumProtocolSpec::new(
        CMatrix::ket_bra(&bell_state(0)),
        Encodings::PerBomb(encodings),
        n.clone(),
        povm,
    )
    .expect("dense coding ingredients are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{worst_bomb, worst_prize};
    use crate::qchannel::{cq_not, unot, Basis};

    #[test]
    fn unot_dense_coding() {
        let d = eval_quantum_protocol(&dense_coding_protocol(&unot())).unwrap();
        for c in GameConfig::all() {
            for y in 1..=4u8 {
                let want = if y == c.bomb { 0.0 } else { 1.0 / 3.0 };
                assert!((d.p(y, c) - want).abs() < 1e-12);
            }
        }
        assert!(worst_bomb(&d).value.abs() < 1e-12);
        assert!((worst_prize(&d).value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn identity_reveals_bomb() {
        let d = eval_quantum_protocol(&dense_coding_protocol(&QuantumChannel::identity())).unwrap();
        for c in GameConfig::all() {
            assert!((d.p(c.bomb, c) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_basis_not_avoids_bomb_but_can_miss_prize() {
        let d = eval_quantum_protocol(&dense_coding_protocol(&cq_not(&Basis::z()))).unwrap();
        assert!(worst_bomb(&d).value.abs() < 1e-12);
        // Each bomb leaves two boxes with probability 1/2 and one with 0.
        assert!(worst_prize(&d).value.abs() < 1e-12);
        assert_eq!(worst_prize(&d).configs.len(), 4);
    }

    #[test]
    fn encodings_and_povm_shape() {
        let spec = dense_coding_protocol(&unot());
        let rho = crate::numkit::random::random_density(2, &mut crate::numkit::random::stream(1, 0));
        let e1 = spec.encodings().get(GameConfig::new(1, 2).unwrap());
        assert!(e1.apply(&rho).unwrap().distance(&rho) < 1e-15);
        for (i, a) in spec.povm().iter().enumerate() {
            assert!((a.trace().re - 1.0).abs() < 1e-15);
            for (j, b) in spec.povm().iter().enumerate() {
                let ov = (a * b).trace().re;
                assert!((ov - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn incomplete_povm_rejected() {
        let spec = dense_coding_protocol(&unot());
        let mut povm = spec.povm().to_vec();
        povm[3] = CMatrix::zeros(4, 4);
        let r = QuantumProtocolSpec::new(spec.shared_state().clone(), spec.encodings().clone(), unot(), povm);
        assert!(matches!(r, Err(Error::Povm(_))));
    }
}
