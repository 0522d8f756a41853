//! Base-2 entropies with the 0·log 0 = 0 convention.

use super::cmatrix::CMatrix;
use super::eigen::{hermitian_eigenvalues, PSD_TOL};
use super::prob::ProbVector;
use crate::error::{Error, Result};

fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Shannon entropy of a probability vector, in bits.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    -p.weights().iter().map(|&x| plogp(x)).sum::<f64>()
}

/// H₂(p) in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(format!("binary entropy argument {p}")));
    }
    Ok(-plogp(p) - plogp(1.0 - p))
}

/// Entropy of an eigenvalue list, clamping tiny negatives to zero.
pub fn spectrum_entropy(values: &[f64]) -> f64 {
    -values.iter().map(|&x| plogp(x.max(0.0))).sum::<f64>()
}

/// Von Neumann entropy −Tr ρ log₂ ρ.
pub fn vn_entropy(rho: &CMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(rho)?;
    if values[0] < -PSD_TOL {
        return Err(Error::NotDensity(format!("negative eigenvalue {}", values[0])));
    }
    let tr: f64 = values.iter().sum();
    if (tr - 1.0).abs() > 1e-10 {
        return Err(Error::NotDensity(format!("trace {tr}")));
    }
    Ok(spectrum_entropy(&values))
}

/// Topsøe's upper bound (4p(1−p))^{1/ln 4} on H₂(p).
pub fn topsoe_bound(p: f64) -> f64 {
    (4.0 * p * (1.0 - p)).powf(1.0 / 4f64.ln())
}
