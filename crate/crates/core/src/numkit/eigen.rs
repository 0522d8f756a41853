//! Cyclic Jacobi diagonalization for small Hermitian matrices.

use super::cmatrix::{c, CMatrix, C64};
use crate::error::{Error, Result};

/// Entrywise tolerance for accepting a matrix as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues at or above `-PSD_TOL` count as nonnegative.
pub const PSD_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and matching unit eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// Σ λ_k |v_k⟩⟨v_k|.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.values.len();
        let mut m = CMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            let v = self.vector(k);
            m = &m + &CMatrix::ket_bra(&v).scale_re(lam);
        }
        m
    }
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigensolver needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMatrix) -> Result<Eigen> {
    check_hermitian(m)?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, dst)] = v[(r, src)];
        }
    }
    Ok(Eigen { values, vectors })
}

/// Zeroes a[p][q] with a unitary rotation in the (p, q) plane.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag < 1e-300 {
        return;
    }
    let e = apq / mag;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;
    let n = a.rows();
    let ec = e.conj();

    // A ← A·J with J = [[c, s], [−s·ē, c·ē]] on columns (p, q).
    for r in 0..n {
        let ap = a[(r, p)];
        let aq = a[(r, q)];
        a[(r, p)] = ap * cs - aq * ec * sn;
        a[(r, q)] = ap * sn + aq * ec * cs;
        let vp = v[(r, p)];
        let vq = v[(r, q)];
        v[(r, p)] = vp * cs - vq * ec * sn;
        v[(r, q)] = vp * sn + vq * ec * cs;
    }
    // A ← J†·A on rows (p, q).
    for col in 0..n {
        let ap = a[(p, col)];
        let aq = a[(q, col)];
        a[(p, col)] = ap * cs - aq * e * sn;
        a[(q, col)] = ap * sn + aq * e * cs;
    }
    a[(p, q)] = c(0.0, 0.0);
    a[(q, p)] = c(0.0, 0.0);
    a[(p, p)] = c(a[(p, p)].re, 0.0);
    a[(q, q)] = c(a[(q, q)].re, 0.0);
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.values)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    hermitian_eigenvalues(m).map(|v| v[0])
}

/// PSD test with the crate-wide tolerance.
pub fn is_psd(m: &CMatrix) -> Result<bool> {
    Ok(min_eigenvalue(m)? >= -PSD_TOL)
}
