//! Qubit channels: Kraus/Choi representations, the Pauli, UNOT, CQ and NOT
//! families, entanglement breaking, degradation and capacities.
//!
//! Choi convention: `Choi(N) = (I ⊗ N)(|Φ⁺⟩⟨Φ⁺|)` with the normalized Bell
//! state, so the first tensor factor is the reference and the second the
//! channel output. The Choi matrix has unit trace and `Tr_out Choi = I/2`.

mod capacity;
mod degrade;
pub mod spec;

pub use capacity::{ce_bell_diagonal, ce_numerical, ce_numerical_with, ce_pauli, mutual_information, CeSearch};
pub use degrade::{
    is_entanglement_breaking, is_not_channel, is_quantum_not_channel, max_degradation_weight, twirl_monte_carlo,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{
    c, hermitian_eigen, inner, ket0, ket1, norm, partial_trace, pauli, phi_plus, tensor, CMatrix, ProbVector,
    Subsystem, C64, PSD_TOL,
};

const TP_TOL: f64 = 1e-10;

/// A qubit→qubit CPTP map held as a Kraus list, with its Choi matrix cached.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    kraus: Vec<CMatrix>,
    choi: CMatrix,
}

impl QuantumChannel {
    /// Validates 2×2 shape and trace preservation Σ K†K = I.
    pub fn from_kraus(kraus: Vec<CMatrix>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::Channel("empty Kraus list".into()));
        }
        let mut sum = CMatrix::zeros(2, 2);
        for k in &kraus {
            if k.rows() != 2 || k.cols() != 2 {
                return Err(Error::Dimension(format!(
                    "Kraus operator is {}x{}, expected 2x2",
                    k.rows(),
                    k.cols()
                )));
            }
            sum = &sum + &(&k.adjoint() * k);
        }
        let dev = sum.distance(&CMatrix::identity(2));
        if dev > TP_TOL {
            return Err(Error::Channel(format!("Σ K†K deviates from I by {dev:.3e}")));
        }
        let choi = choi_from_kraus(&kraus);
        Ok(QuantumChannel { kraus, choi })
    }

    /// Rebuilds a channel from a Choi matrix via its spectral decomposition.
    pub fn from_choi(choi: &CMatrix) -> Result<Self> {
        if choi.rows() != 4 || choi.cols() != 4 {
            return Err(Error::Dimension("Choi matrix must be 4x4".into()));
        }
        let eig = hermitian_eigen(choi)?;
        if eig.values[0] < -PSD_TOL {
            return Err(Error::Channel(format!(
                "Choi matrix has negative eigenvalue {}",
                eig.values[0]
            )));
        }
        let marginal = partial_trace(choi, 2, 2, Subsystem::A)?;
        let dev = marginal.distance(&CMatrix::diag(&[0.5, 0.5]));
        if dev > TP_TOL {
            return Err(Error::Channel(format!("Choi marginal deviates from I/2 by {dev:.3e}")));
        }
        let mut kraus = Vec::new();
        for (k, &lam) in eig.values.iter().enumerate() {
            if lam <= 1e-14 {
                continue;
            }
            let v = eig.vector(k);
            let s = (2.0 * lam).sqrt();
            let mut op = CMatrix::zeros(2, 2);
            for i in 0..2 {
                for o in 0..2 {
                    op[(o, i)] = v[i * 2 + o] * s;
                }
            }
            kraus.push(op);
        }
        // Keep the supplied Choi: it is the reference object, Kraus are derived.
        let check = Self::from_kraus(kraus)?;
        Ok(QuantumChannel {
            kraus: check.kraus,
            choi: choi.hermitian_part(),
        })
    }

    pub fn identity() -> Self {
        Self::unitary(&CMatrix::identity(2)).expect("identity is unitary")
    }

    /// Conjugation by a 2×2 unitary.
    pub fn unitary(u: &CMatrix) -> Result<Self> {
        Self::from_kraus(vec![u.clone()])
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn choi(&self) -> &CMatrix {
        &self.choi
    }

    /// Σ K ρ K†.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        if rho.rows() != 2 || rho.cols() != 2 {
            return Err(Error::Dimension(format!(
                "channel input is {}x{}, expected 2x2",
                rho.rows(),
                rho.cols()
            )));
        }
        let mut out = CMatrix::zeros(2, 2);
        for k in &self.kraus {
            out = &out + &rho.conjugate_by(k);
        }
        Ok(out)
    }

    /// `outer ∘ self`: apply `self` first.
    pub fn then(&self, outer: &QuantumChannel) -> QuantumChannel {
        let mut ops = Vec::with_capacity(self.kraus.len() * outer.kraus.len());
        for a in &outer.kraus {
            for b in &self.kraus {
                ops.push(a * b);
            }
        }
        let choi = choi_from_kraus(&ops);
        QuantumChannel { kraus: ops, choi }
    }

    /// (N ⊗ I) applied to an operator on the 4-dim space Q⊗B.
    pub fn apply_first_factor(&self, m: &CMatrix) -> CMatrix {
        let id = CMatrix::identity(2);
        let mut out = CMatrix::zeros(4, 4);
        for k in &self.kraus {
            out = &out + &m.conjugate_by(&tensor(k, &id));
        }
        out
    }

    /// Convex combination Σ wᵢ Nᵢ, realized on the Kraus level.
    pub fn mixture(parts: &[(f64, QuantumChannel)]) -> Result<Self> {
        let weights = ProbVector::new(parts.iter().map(|(w, _)| *w).collect())?;
        let mut ops = Vec::new();
        for ((_, ch), &w) in parts.iter().zip(weights.weights()) {
            if w == 0.0 {
                continue;
            }
            for k in &ch.kraus {
                ops.push(k.scale_re(w.sqrt()));
            }
        }
        Self::from_kraus(ops)
    }
}

fn choi_from_kraus(kraus: &[CMatrix]) -> CMatrix {
    let phi = phi_plus();
    let id = CMatrix::identity(2);
    let mut out = CMatrix::zeros(4, 4);
    for k in kraus {
        let v = tensor(&id, k).apply(&phi);
        out = &out + &CMatrix::ket_bra(&v);
    }
    out
}

// ---- parameter types ----

/// Pauli-channel weights (p_I, p_X, p_Y, p_Z).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PauliParams(ProbVector);

impl PauliParams {
    pub fn new(p_i: f64, p_x: f64, p_y: f64, p_z: f64) -> Result<Self> {
        Ok(PauliParams(ProbVector::new(vec![p_i, p_x, p_y, p_z])?))
    }

    pub fn weights(&self) -> &[f64] {
        self.0.weights()
    }
}

impl TryFrom<Vec<f64>> for PauliParams {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        if v.len() != 4 {
            return Err(Error::Dimension(format!("{} Pauli weights, expected 4", v.len())));
        }
        PauliParams::new(v[0], v[1], v[2], v[3])
    }
}

impl From<PauliParams> for Vec<f64> {
    fn from(p: PauliParams) -> Vec<f64> {
        p.0.into()
    }
}

/// Orthonormal qubit basis (|ψ₀⟩, |ψ₁⟩).
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    psi: [Vec<C64>; 2],
}

impl Basis {
    pub fn new(psi0: Vec<C64>, psi1: Vec<C64>) -> Result<Self> {
        if psi0.len() != 2 || psi1.len() != 2 {
            return Err(Error::Dimension("basis kets must be 2-dimensional".into()));
        }
        let worst = [
            (norm(&psi0) - 1.0).abs(),
            (norm(&psi1) - 1.0).abs(),
            inner(&psi0, &psi1).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        if worst > 1e-12 {
            return Err(Error::NotOrthonormal(worst));
        }
        Ok(Basis { psi: [psi0, psi1] })
    }

    /// Eigenbasis of X, Y or Z (k = 1, 2, 3) ordered so σ|ψ_m⟩ = (−1)^m |ψ_m⟩.
    pub fn pauli(k: usize) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = match k {
            1 => [vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]],
            2 => [vec![c(h, 0.0), c(0.0, h)], vec![c(h, 0.0), c(0.0, -h)]],
            3 => [ket0(), ket1()],
            _ => panic!("Pauli basis index {k} out of range 1..=3"),
        };
        Basis { psi }
    }

    pub fn x() -> Self {
        Self::pauli(1)
    }

    pub fn y() -> Self {
        Self::pauli(2)
    }

    pub fn z() -> Self {
        Self::pauli(3)
    }

    /// Columns of a unitary as a basis.
    pub fn from_unitary(u: &CMatrix) -> Result<Self> {
        Self::new(u.column(0), u.column(1))
    }

    pub fn ket(&self, m: usize) -> &[C64] {
        &self.psi[m]
    }

    pub fn projector(&self, m: usize) -> CMatrix {
        CMatrix::ket_bra(&self.psi[m])
    }

    /// True when both bases define the same pair of projectors.
    pub fn same_projectors(&self, other: &Basis) -> bool {
        let ov = inner(&self.psi[0], &other.psi[0]).norm_sqr();
        !(1e-9..=1.0 - 1e-9).contains(&ov)
    }
}

/// Classical-quantum channel ρ ↦ Σ_m ⟨ψ_m|ρ|ψ_m⟩ σ_m.
#[derive(Debug, Clone)]
pub struct CQChannel {
    pub basis: Basis,
    pub outputs: [CMatrix; 2],
}

impl CQChannel {
    pub fn new(basis: Basis, sigma0: CMatrix, sigma1: CMatrix) -> Result<Self> {
        for s in [&sigma0, &sigma1] {
            check_density(s)?;
        }
        Ok(CQChannel {
            basis,
            outputs: [sigma0, sigma1],
        })
    }

    /// The NOT specialization: σ_m = |ψ_{m⊕1}⟩⟨ψ_{m⊕1}|.
    pub fn not(basis: Basis) -> Self {
        let outputs = [basis.projector(1), basis.projector(0)];
        CQChannel { basis, outputs }
    }
}

pub(crate) fn check_density(rho: &CMatrix) -> Result<()> {
    if rho.rows() != 2 || rho.cols() != 2 {
        return Err(Error::Dimension("expected a 2x2 density matrix".into()));
    }
    let eig = hermitian_eigen(rho)?;
    if eig.values[0] < -PSD_TOL {
        return Err(Error::NotDensity(format!("negative eigenvalue {}", eig.values[0])));
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > 1e-10 {
        return Err(Error::NotDensity(format!("trace {tr}")));
    }
    Ok(())
}

/// Weighted list of NOT channels in different bases.
#[derive(Debug, Clone)]
pub struct NotMixture {
    components: Vec<(f64, Basis)>,
}

impl NotMixture {
    pub fn new(components: Vec<(f64, Basis)>) -> Result<Self> {
        ProbVector::new(components.iter().map(|(w, _)| *w).collect())?;
        if components.iter().any(|(w, _)| *w <= 0.0) {
            return Err(Error::Probability("mixture weights must be positive".into()));
        }
        Ok(NotMixture { components })
    }

    /// Equal weights over the X, Y and Z eigenbases.
    pub fn uniform_xyz() -> Self {
        NotMixture {
            components: (1..=3).map(|k| (1.0 / 3.0, Basis::pauli(k))).collect(),
        }
    }

    pub fn components(&self) -> &[(f64, Basis)] {
        &self.components
    }

    /// At least two components with distinct projector pairs.
    pub fn is_quantum(&self) -> bool {
        let first = &self.components[0].1;
        self.components.iter().any(|(_, b)| !b.same_projectors(first))
    }
}

// ---- constructors ----

pub fn pauli_channel(p: &PauliParams) -> QuantumChannel {
    let mut ops = Vec::new();
    for (k, &w) in p.weights().iter().enumerate() {
        if w > 0.0 {
            ops.push(pauli(k).scale_re(w.sqrt()));
        }
    }
    QuantumChannel::from_kraus(ops).expect("Pauli weights form a distribution")
}

/// The universal NOT: ρ ↦ (2/3)Tr[ρ]I − ρ/3, the Pauli channel (0, 1/3, 1/3, 1/3).
pub fn unot() -> QuantumChannel {
    let third = 1.0 / 3.0;
    pauli_channel(&PauliParams::new(0.0, third, third, third).expect("valid weights"))
}

pub fn cq(ch: &CQChannel) -> QuantumChannel {
    let mut ops = Vec::new();
    for m in 0..2 {
        let eig = hermitian_eigen(&ch.outputs[m]).expect("outputs are Hermitian");
        for (k, &mu) in eig.values.iter().enumerate() {
            if mu <= 1e-15 {
                continue;
            }
            let op = CMatrix::outer(&eig.vector(k), ch.basis.ket(m)).scale_re(mu.sqrt());
            ops.push(op);
        }
    }
    QuantumChannel::from_kraus(ops).expect("CQ channel with validated parts is CPTP")
}

/// Measure in `basis`, prepare the other basis state.
pub fn cq_not(basis: &Basis) -> QuantumChannel {
    let ops = vec![
        CMatrix::outer(basis.ket(1), basis.ket(0)),
        CMatrix::outer(basis.ket(0), basis.ket(1)),
    ];
    QuantumChannel::from_kraus(ops).expect("orthonormal basis gives a CPTP map")
}

pub fn not_mixture(m: &NotMixture) -> QuantumChannel {
    let parts: Vec<(f64, QuantumChannel)> = m.components.iter().map(|(w, b)| (*w, cq_not(b))).collect();
    QuantumChannel::mixture(&parts).expect("mixture weights validated")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{bell_state, hermitian_eigenvalues, pauli_x, random, rat};

    fn p0() -> CMatrix {
        CMatrix::ket_bra(&ket0())
    }

    #[test]
    fn identity_apply() {
        let rho = CMatrix::diag(&[0.3, 0.7]);
        assert_eq!(QuantumChannel::identity().apply(&rho).unwrap(), rho);
    }

    #[test]
    fn unot_on_zero() {
        let out = unot().apply(&p0()).unwrap();
        assert!(out.distance(&CMatrix::diag(&[1.0 / 3.0, 2.0 / 3.0])) < 1e-15);
    }

    #[test]
    fn unot_formula() {
        // (2/3)Tr[ρ]I − ρ/3 on a generic state
        let mut rng = random::stream(11, 0);
        let rho = random::random_density(2, &mut rng);
        let want = &CMatrix::identity(2).scale_re(2.0 / 3.0) - &rho.scale_re(1.0 / 3.0);
        assert!(unot().apply(&rho).unwrap().distance(&want) < 1e-14);
    }

    #[test]
    fn unot_is_unital() {
        let half = CMatrix::diag(&[0.5, 0.5]);
        assert!(unot().apply(&half).unwrap().distance(&half) < 1e-15);
    }

    #[test]
    fn x_flip() {
        let ch = pauli_channel(&PauliParams::new(0.0, 1.0, 0.0, 0.0).unwrap());
        let out = ch.apply(&p0()).unwrap();
        assert!(out.distance(&CMatrix::ket_bra(&ket1())) < 1e-15);
    }

    #[test]
    fn apply_rejects_wrong_size() {
        assert!(unot().apply(&CMatrix::identity(4)).is_err());
    }

    #[test]
    fn identity_choi_is_phi_plus() {
        let want = CMatrix::ket_bra(&phi_plus());
        assert!(QuantumChannel::identity().choi().distance(&want) < 1e-15);
    }

    #[test]
    fn unot_choi_is_bell_diagonal() {
        let mut want = CMatrix::zeros(4, 4);
        for k in 1..4 {
            want = &want + &CMatrix::ket_bra(&bell_state(k)).scale_re(1.0 / 3.0);
        }
        let ch = unot();
        assert!(ch.choi().distance(&want) < 1e-15);
        let ev = hermitian_eigenvalues(ch.choi()).unwrap();
        let expected = [0.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        let marginal = partial_trace(ch.choi(), 2, 2, Subsystem::A).unwrap();
        assert!(marginal.distance(&CMatrix::diag(&[0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn pauli_choi_bell_diagonal() {
        let p = PauliParams::new(0.1, 0.2, 0.3, 0.4).unwrap();
        let ch = pauli_channel(&p);
        for k in 0..4 {
            // (I⊗σ)|Φ⁺⟩ and (σ⊗I)|Φ⁺⟩ agree up to phase, so populations match.
            let v = bell_state(k);
            let pop = inner(&v, &ch.choi().apply(&v)).re;
            assert!((pop - p.weights()[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn unot_equals_pauli_third() {
        let third = 1.0 / 3.0;
        let a = unot();
        let b = pauli_channel(&PauliParams::new(0.0, third, third, third).unwrap());
        assert_eq!(a.choi(), b.choi());
        assert_eq!(rat(1, 3) * rat(3, 1), rat(1, 1));
    }

    #[test]
    fn cq_not_matches_generic_cq() {
        for k in 1..=3 {
            let b = Basis::pauli(k);
            let generic = cq(&CQChannel::not(b.clone()));
            assert!(generic.choi().distance(cq_not(&b).choi()) < 1e-12);
        }
    }

    #[test]
    fn pauli_bases_are_eigenbases() {
        for k in 1..=3 {
            let b = Basis::pauli(k);
            for m in 0..2 {
                let sign = if m == 0 { 1.0 } else { -1.0 };
                let lhs = pauli(k).apply(b.ket(m));
                for (l, r) in lhs.iter().zip(b.ket(m)) {
                    assert!((l - r * sign).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn single_component_mixture() {
        let m = NotMixture::new(vec![(1.0, Basis::z())]).unwrap();
        assert!(not_mixture(&m).choi().distance(cq_not(&Basis::z()).choi()) < 1e-15);
        assert!(!m.is_quantum());
    }

    #[test]
    fn uniform_xyz_mixture_is_unot() {
        let m = NotMixture::uniform_xyz();
        assert!(m.is_quantum());
        assert!(not_mixture(&m).choi().distance(unot().choi()) < 1e-12);
    }

    #[test]
    fn basis_validation() {
        let bad = Basis::new(ket0(), ket0());
        assert!(matches!(bad, Err(Error::NotOrthonormal(_))));
        let neg_basis = Basis::new(ket1(), ket0()).unwrap();
        assert!(neg_basis.same_projectors(&Basis::z()));
        assert!(!Basis::x().same_projectors(&Basis::z()));
    }

    #[test]
    fn mixture_rejects_zero_weight() {
        assert!(NotMixture::new(vec![(1.0, Basis::z()), (0.0, Basis::x())]).is_err());
    }

    #[test]
    fn choi_round_trip() {
        let mut rng = random::stream(5, 0);
        let u = random::haar_unitary(2, &mut rng);
        let ch = QuantumChannel::mixture(&[(0.4, unot()), (0.6, QuantumChannel::unitary(&u).unwrap())]).unwrap();
        let back = QuantumChannel::from_choi(ch.choi()).unwrap();
        for _ in 0..20 {
            let rho = random::random_density(2, &mut rng);
            let d = ch.apply(&rho).unwrap().distance(&back.apply(&rho).unwrap());
            assert!(d < 1e-9);
        }
    }

    #[test]
    fn from_kraus_rejects_non_tp() {
        assert!(QuantumChannel::from_kraus(vec![pauli_x().scale_re(0.5)]).is_err());
    }

    #[test]
    fn composition_order() {
        // X after the Z-basis NOT maps |0⟩⟨0| back to |0⟩⟨0|.
        let x = QuantumChannel::unitary(&pauli_x()).unwrap();
        let ch = cq_not(&Basis::z()).then(&x);
        assert!(ch.apply(&p0()).unwrap().distance(&p0()) < 1e-15);
    }
}
