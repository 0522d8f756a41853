//! Dense complex linear algebra for qubit-scale operators, entropies, exact
//! rationals and seeded randomness.

pub mod cmatrix;
pub mod eigen;
pub mod entropy;
pub mod prob;
pub mod random;

pub use cmatrix::{
    bell_state, c, inner, ket0, ket1, norm, partial_trace, partial_transpose, pauli, pauli_i, pauli_x, pauli_y,
    pauli_z, phi_plus, tensor, tensor_ket, CMatrix, Subsystem, C64,
};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, is_psd, min_eigenvalue, Eigen, PSD_TOL};
pub use entropy::{binary_entropy, shannon_entropy, spectrum_entropy, topsoe_bound, vn_entropy};
pub use prob::{check_distribution, parse_rational, rat, Prob, ProbVector, Rational};
pub use random::{haar_unitary, random_density, random_ket, random_simplex, stream, Rng};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_tensor() {
        let i4 = tensor(&pauli_i(), &pauli_i());
        assert_eq!(i4, CMatrix::identity(4));
    }

    #[test]
    fn projector_tensor() {
        let p0 = CMatrix::ket_bra(&ket0());
        let p1 = CMatrix::ket_bra(&ket1());
        assert_eq!(tensor(&p0, &p1), CMatrix::diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn xx_fixes_phi_plus() {
        let phi = CMatrix::ket_bra(&phi_plus());
        let xx = tensor(&pauli_x(), &pauli_x());
        assert!(phi.conjugate_by(&xx).distance(&phi) < 1e-15);
    }

    #[test]
    fn marginal_of_phi_plus() {
        let phi = CMatrix::ket_bra(&phi_plus());
        for keep in [Subsystem::A, Subsystem::B] {
            let r = partial_trace(&phi, 2, 2, keep).unwrap();
            assert!(r.distance(&CMatrix::diag(&[0.5, 0.5])) < 1e-15);
        }
    }

    #[test]
    fn product_partial_trace() {
        let rho = CMatrix::from_rows(&[&[c(0.7, 0.0), c(0.1, 0.2)], &[c(0.1, -0.2), c(0.3, 0.0)]]);
        let sigma = CMatrix::diag(&[2.0, 3.0]);
        let pt = partial_trace(&tensor(&rho, &sigma), 2, 2, Subsystem::A).unwrap();
        assert!(pt.distance(&rho.scale_re(5.0)) < 1e-15);
    }

    #[test]
    fn partial_trace_dimension_check() {
        assert!(partial_trace(&CMatrix::identity(3), 2, 2, Subsystem::A).is_err());
        assert!(partial_transpose(&CMatrix::identity(3), 2, 2, Subsystem::A).is_err());
    }

    #[test]
    fn partial_transpose_of_phi_plus() {
        let phi = CMatrix::ket_bra(&phi_plus());
        let pt = partial_transpose(&phi, 2, 2, Subsystem::B).unwrap();
        let v = hermitian_eigenvalues(&pt).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in v.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_product() {
        let rho = CMatrix::from_rows(&[&[c(0.6, 0.0), c(0.2, 0.3)], &[c(0.2, -0.3), c(0.4, 0.0)]]);
        let sigma = CMatrix::from_rows(&[&[c(0.5, 0.0), c(0.0, 0.5)], &[c(0.0, -0.5), c(0.5, 0.0)]]);
        let pt = partial_transpose(&tensor(&rho, &sigma), 2, 2, Subsystem::A).unwrap();
        assert_eq!(pt, tensor(&rho.transpose(), &sigma));
        let back = partial_transpose(&pt, 2, 2, Subsystem::A).unwrap();
        assert_eq!(back, tensor(&rho, &sigma));
    }

    #[test]
    fn bell_states_orthonormal() {
        for i in 0..4 {
            for j in 0..4 {
                let ov = inner(&bell_state(i), &bell_state(j)).norm();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ov - want).abs() < 1e-15);
            }
        }
    }
}
