use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Shorthand for a complex number.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Which factor of a bipartite space an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        CMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a matrix from real row slices.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let cl = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), cl, "ragged rows");
                row.iter().map(|&x| c(x, 0.0))
            })
            .collect();
        CMatrix {
            rows: r,
            cols: cl,
            data,
        }
    }

    pub fn from_rows(rows: &[&[C64]]) -> Self {
        let r = rows.len();
        let cl = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), cl, "ragged rows");
                row.iter().copied()
            })
            .collect();
        CMatrix {
            rows: r,
            cols: cl,
            data,
        }
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = c(x, 0.0);
        }
        m
    }

    /// Projector |v⟩⟨v|.
    pub fn ket_bra(v: &[C64]) -> Self {
        Self::outer(v, v)
    }

    /// |u⟩⟨v|.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance ‖a − b‖₂.
    pub fn distance(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// (M + M†)/2.
    pub fn hermitian_part(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        m
    }

    /// A·v for a column vector v.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// U·M·U†.
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        &(u * self) * &u.adjoint()
    }

    /// Tr(A·B).
    pub fn trace_product(&self, other: &CMatrix) -> C64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = c(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        acc
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.5}{:+.5}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product a ⊗ b.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = CMatrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of two kets.
pub fn tensor_ket(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn check_bipartite(m: &CMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    let n = dim_a * dim_b;
    if m.rows != n || m.cols != n {
        return Err(Error::Dimension(format!(
            "expected {n}x{n} for a {dim_a}x{dim_b} bipartite operator, got {}x{}",
            m.rows, m.cols
        )));
    }
    Ok(())
}

/// Traces out one factor of an operator on A⊗B, keeping `keep`.
pub fn partial_trace(m: &CMatrix, dim_a: usize, dim_b: usize, keep: Subsystem) -> Result<CMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    let out = match keep {
        Subsystem::A => {
            let mut r = CMatrix::zeros(dim_a, dim_a);
            for i in 0..dim_a {
                for j in 0..dim_a {
                    r[(i, j)] = (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum();
                }
            }
            r
        }
        Subsystem::B => {
            let mut r = CMatrix::zeros(dim_b, dim_b);
            for k in 0..dim_b {
                for l in 0..dim_b {
                    r[(k, l)] = (0..dim_a).map(|i| m[(i * dim_b + k, i * dim_b + l)]).sum();
                }
            }
            r
        }
    };
    Ok(out)
}

/// Transposes the `which` factor of an operator on A⊗B.
pub fn partial_transpose(m: &CMatrix, dim_a: usize, dim_b: usize, which: Subsystem) -> Result<CMatrix> {
    check_bipartite(m, dim_a, dim_b)?;
    let mut r = CMatrix::zeros(m.rows, m.cols);
    for i in 0..dim_a {
        for k in 0..dim_b {
            for j in 0..dim_a {
                for l in 0..dim_b {
                    let (src_r, src_c) = match which {
                        Subsystem::A => (j * dim_b + k, i * dim_b + l),
                        Subsystem::B => (i * dim_b + l, j * dim_b + k),
                    };
                    r[(i * dim_b + k, j * dim_b + l)] = m[(src_r, src_c)];
                }
            }
        }
    }
    Ok(r)
}

// ---- Pauli operators and Bell states ----

pub fn pauli_i() -> CMatrix {
    CMatrix::identity(2)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_rows(&[&[c(0.0, 0.0), c(0.0, -1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// Paulis indexed 0..4 as I, X, Y, Z.
pub fn pauli(k: usize) -> CMatrix {
    match k {
        0 => pauli_i(),
        1 => pauli_x(),
        2 => pauli_y(),
        3 => pauli_z(),
        _ => panic!("Pauli index {k} out of range"),
    }
}

/// |Φ⁺⟩ = (|00⟩ + |11⟩)/√2.
pub fn phi_plus() -> Vec<C64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]
}

/// Bell state (σ_k ⊗ I)|Φ⁺⟩ for k = 0..4 (I, X, Y, Z).
pub fn bell_state(k: usize) -> Vec<C64> {
    tensor(&pauli(k), &pauli_i()).apply(&phi_plus())
}

pub fn ket0() -> Vec<C64> {
    vec![c(1.0, 0.0), c(0.0, 0.0)]
}

pub fn ket1() -> Vec<C64> {
    vec![c(0.0, 0.0), c(1.0, 0.0)]
}

pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
