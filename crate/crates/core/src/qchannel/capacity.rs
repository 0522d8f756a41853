//! Entanglement-assisted capacities: closed forms for Pauli and Bell-diagonal
//! channels, and a Bloch-ball search of the quantum mutual information.

use std::f64::consts::PI;

use super::{PauliParams, QuantumChannel};
use crate::error::{Error, Result};
use crate::numkit::{
    c, hermitian_eigen, hermitian_eigenvalues, pauli, shannon_entropy, spectrum_entropy, tensor, CMatrix, ProbVector,
    C64,
};

/// C_E of a Pauli channel: 2 + Σ p log₂ p.
pub fn ce_pauli(p: &PauliParams) -> f64 {
    2.0 - spectrum_entropy(p.weights())
}

/// C_E = 2 log₂ d − H(λ) for a Bell-diagonal channel on dimension d.
pub fn ce_bell_diagonal(lambda: &ProbVector, d: usize) -> Result<f64> {
    if lambda.len() != d * d {
        return Err(Error::Dimension(format!(
            "{} Bell weights for d = {d}, expected {}",
            lambda.len(),
            d * d
        )));
    }
    Ok(2.0 * (d as f64).log2() - shannon_entropy(lambda))
}

/// Grid sizes and stopping step for [`ce_numerical_with`].
#[derive(Debug, Clone, Copy)]
pub struct CeSearch {
    pub radii: usize,
    pub azimuths: usize,
    pub polars: usize,
    pub min_step: f64,
}

impl Default for CeSearch {
    fn default() -> Self {
        CeSearch {
            radii: 20,
            azimuths: 36,
            polars: 18,
            min_step: 1e-4,
        }
    }
}

fn bloch_state(r: f64, theta: f64, phi: f64) -> CMatrix {
    let (x, y, z) = (
        r * theta.sin() * phi.cos(),
        r * theta.sin() * phi.sin(),
        r * theta.cos(),
    );
    let mut m = CMatrix::identity(2);
    for (k, a) in [(1, x), (2, y), (3, z)] {
        m = &m + &pauli(k).scale_re(a);
    }
    m.scale_re(0.5)
}

/// I(ρ, N) = S(ρ) + S(N(ρ)) − S((N ⊗ I)(ψ_ρ)) with ψ_ρ the spectral purification.
pub fn mutual_information(ch: &QuantumChannel, rho: &CMatrix) -> Result<f64> {
    let eig = hermitian_eigen(rho)?;
    let s_in = spectrum_entropy(&eig.values);
    let s_out = spectrum_entropy(&hermitian_eigenvalues(&ch.apply(rho)?.hermitian_part())?);

    // |ψ⟩ = Σ_k √λ_k |e_k⟩ ⊗ |k⟩
    let mut psi = vec![c(0.0, 0.0); 4];
    for k in 0..2 {
        let amp = eig.values[k].max(0.0).sqrt();
        let e = eig.vector(k);
        for i in 0..2 {
            psi[i * 2 + k] += e[i] * amp;
        }
    }
    let id = CMatrix::identity(2);
    let mut joint = CMatrix::zeros(4, 4);
    for kr in ch.kraus() {
        let v: Vec<C64> = tensor(kr, &id).apply(&psi);
        joint = &joint + &CMatrix::ket_bra(&v);
    }
    let s_joint = spectrum_entropy(&hermitian_eigenvalues(&joint.hermitian_part())?);
    Ok(s_in + s_out - s_joint)
}

fn objective(ch: &QuantumChannel, r: f64, theta: f64, phi: f64) -> f64 {
    mutual_information(ch, &bloch_state(r, theta, phi)).expect("Bloch states are valid inputs")
}

/// C_E by grid search over the Bloch ball followed by coordinate refinement.
pub fn ce_numerical(ch: &QuantumChannel) -> f64 {
    ce_numerical_with(ch, CeSearch::default())
}

pub fn ce_numerical_with(ch: &QuantumChannel, search: CeSearch) -> f64 {
    let nr = search.radii.max(2);
    let na = search.azimuths.max(1);
    let np = search.polars.max(1);
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0, 0.0);
    for i in 0..nr {
        let r = i as f64 / (nr - 1) as f64;
        for j in 0..np {
            let theta = PI * (j as f64 + 0.5) / np as f64;
            for k in 0..na {
                let phi = 2.0 * PI * k as f64 / na as f64;
                let v = objective(ch, r, theta, phi);
                if v > best.0 {
                    best = (v, r, theta, phi);
                }
                if i == 0 {
                    break;
                }
            }
            if i == 0 {
                break;
            }
        }
    }

    let (mut val, mut r, mut theta, mut phi) = best;
    let mut steps = [1.0 / (nr - 1) as f64, PI / np as f64, 2.0 * PI / na as f64];
    while steps.iter().any(|&s| s >= search.min_step) {
        let mut improved = false;
        for axis in 0..3 {
            for dir in [1.0, -1.0] {
                let mut cand = (r, theta, phi);
                match axis {
                    0 => cand.0 = (r + dir * steps[0]).clamp(0.0, 1.0),
                    1 => cand.1 = (theta + dir * steps[1]).clamp(0.0, PI),
                    _ => cand.2 = phi + dir * steps[2],
                }
                let v = objective(ch, cand.0, cand.1, cand.2);
                if v > val + 1e-15 {
                    (val, r, theta, phi) = (v, cand.0, cand.1, cand.2);
                    improved = true;
                }
            }
        }
        if !improved {
            for s in &mut steps {
                *s *= 0.5;
            }
        }
    }
    val
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::random;
    use crate::qchannel::{pauli_channel, unot};

    #[test]
    fn pauli_closed_forms() {
        let third = 1.0 / 3.0;
        let unot_p = PauliParams::new(0.0, third, third, third).unwrap();
        assert!((ce_pauli(&unot_p) - (2.0 - 3f64.log2())).abs() < 1e-15);
        assert_eq!(ce_pauli(&PauliParams::new(1.0, 0.0, 0.0, 0.0).unwrap()), 2.0);
        assert!(ce_pauli(&PauliParams::new(0.25, 0.25, 0.25, 0.25).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn bell_diagonal_cases() {
        let third = 1.0 / 3.0;
        let l = ProbVector::new(vec![0.0, third, third, third]).unwrap();
        assert!((ce_bell_diagonal(&l, 2).unwrap() - (2.0 - 3f64.log2())).abs() < 1e-15);
        assert!(ce_bell_diagonal(&ProbVector::uniform(4), 2).unwrap().abs() < 1e-15);
        let mut point = vec![0.0; 9];
        point[0] = 1.0;
        let v = ce_bell_diagonal(&ProbVector::new(point).unwrap(), 3).unwrap();
        assert!((v - 2.0 * 3f64.log2()).abs() < 1e-15);
        assert!(ce_bell_diagonal(&ProbVector::uniform(4), 3).is_err());
    }

    #[test]
    fn numerical_unot() {
        let v = ce_numerical(&unot());
        assert!((v - (2.0 - 3f64.log2())).abs() < 1e-3, "{v}");
    }

    #[test]
    fn numerical_identity() {
        let v = ce_numerical(&QuantumChannel::identity());
        assert!((v - 2.0).abs() < 1e-3, "{v}");
    }

    #[test]
    fn numerical_matches_pauli_formula() {
        let mut rng = random::stream(21, 0);
        for _ in 0..10 {
            let w = random::random_simplex(4, &mut rng);
            let p = PauliParams::new(w[0], w[1], w[2], w[3]).unwrap();
            let v = ce_numerical(&pauli_channel(&p));
            assert!((v - ce_pauli(&p)).abs() < 1e-3);
        }
    }

    #[test]
    fn amplitude_damping_interior_optimum() {
        // C_E of amplitude damping is attained off the maximally mixed state
        // for strong damping; the search must beat the r = 0 value.
        let g: f64 = 0.9;
        let k0 = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, (1.0 - g).sqrt()]]);
        let k1 = CMatrix::from_real(&[&[0.0, g.sqrt()], &[0.0, 0.0]]);
        let ch = QuantumChannel::from_kraus(vec![k0, k1]).unwrap();
        let at_center = mutual_information(&ch, &CMatrix::diag(&[0.5, 0.5])).unwrap();
        assert!(ce_numerical(&ch) > at_center + 1e-3);
    }
}
