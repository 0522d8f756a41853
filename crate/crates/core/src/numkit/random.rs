//! Seeded randomness. Every Monte Carlo routine takes a `u64` seed; independent
//! workers draw from distinct ChaCha streams of the same seed.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::cmatrix::{c, inner, CMatrix, C64};

pub type Rng = ChaCha8Rng;

/// Generator for stream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn complex_gaussian(rng: &mut Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

/// Haar-random n×n unitary: Gram–Schmidt (QR) of a complex Gaussian matrix,
/// with R's diagonal made positive.
pub fn haar_unitary(n: usize, rng: &mut Rng) -> CMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        for u in &cols {
            let proj = inner(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let nv = super::cmatrix::norm(&v);
        if nv < 1e-12 {
            continue;
        }
        // Gram–Schmidt already yields a positive real R diagonal.
        for vi in &mut v {
            *vi /= nv;
        }
        cols.push(v);
    }
    let mut u = CMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

/// Haar-random pure state of dimension n.
pub fn random_ket(n: usize, rng: &mut Rng) -> Vec<C64> {
    haar_unitary(n, rng).column(0)
}

/// Random full-rank density matrix G G† / Tr.
pub fn random_density(n: usize, rng: &mut Rng) -> CMatrix {
    let mut g = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = complex_gaussian(rng);
        }
    }
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    m.scale_re(1.0 / tr).hermitian_part()
}

/// Random point of the probability simplex (normalized exponentials).
pub fn random_simplex(n: usize, rng: &mut Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}
