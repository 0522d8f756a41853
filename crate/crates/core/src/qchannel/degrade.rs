//! Entanglement breaking, stochastic degradation and the unitary twirl.

use super::{unot, QuantumChannel};
use crate::numkit::{min_eigenvalue, partial_transpose, random, CMatrix, Subsystem, PSD_TOL};

/// Threshold separating a strictly positive degradation weight from zero.
pub const DEGRADATION_THRESHOLD: f64 = 1e-6;

/// PPT test on the Choi matrix (exact for two qubits).
pub fn is_entanglement_breaking(ch: &QuantumChannel) -> bool {
    let pt = partial_transpose(ch.choi(), 2, 2, Subsystem::B).expect("Choi is 4x4");
    min_eigenvalue(&pt.hermitian_part()).expect("partial transpose is Hermitian") >= -PSD_TOL
}

fn residual_is_psd(target: &CMatrix, n: &CMatrix, lambda: f64) -> bool {
    let r = (target - &n.scale_re(lambda)).hermitian_part();
    min_eigenvalue(&r).expect("difference of Hermitian matrices") >= -PSD_TOL
}

/// Largest λ ∈ [0,1] with Choi(target) − λ·Choi(n) ⪰ 0, found by bisection.
///
/// The feasible set is an interval containing 0 because the smallest
/// eigenvalue is concave in λ.
pub fn max_degradation_weight(n: &QuantumChannel, target: &QuantumChannel) -> f64 {
    let (t, m) = (target.choi(), n.choi());
    if residual_is_psd(t, m, 1.0) {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if residual_is_psd(t, m, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// EB and degradable to UNOT with positive weight.
pub fn is_not_channel(ch: &QuantumChannel) -> bool {
    is_entanglement_breaking(ch) && max_degradation_weight(ch, &unot()) > DEGRADATION_THRESHOLD
}

/// A NOT channel that UNOT can also be degraded to.
pub fn is_quantum_not_channel(ch: &QuantumChannel) -> bool {
    is_not_channel(ch) && max_degradation_weight(&unot(), ch) > DEGRADATION_THRESHOLD
}

/// Monte Carlo average of U∘N∘U† over Haar unitaries.
pub fn twirl_monte_carlo(ch: &QuantumChannel, samples: usize, seed: u64) -> QuantumChannel {
    assert!(samples >= 1, "twirl needs at least one sample");
    let mut rng = random::stream(seed, 0);
    let mut acc = CMatrix::zeros(4, 4);
    for _ in 0..samples {
        let u = random::haar_unitary(2, &mut rng);
        let ud = u.adjoint();
        let ops: Vec<CMatrix> = ch.kraus().iter().map(|k| &(&u * k) * &ud).collect();
        let rotated = QuantumChannel::from_kraus(ops).expect("unitary conjugation keeps CPTP");
        acc = &acc + rotated.choi();
    }
    let avg = acc.scale_re(1.0 / samples as f64);
    QuantumChannel::from_choi(&avg).expect("average of Choi matrices is a Choi matrix")
}
