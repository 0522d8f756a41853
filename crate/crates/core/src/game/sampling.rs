//! Sampling of two-qubit protocols over quantum NOT channels, filtered by
//! bomb avoidance, to probe the 1/3 ceiling on the worst-case prize.
//!
//! Unstructured protocols essentially never avoid the bomb to 1e-9, so the
//! sampler mixes three families: dense coding dressed with random local
//! frames and a random relabelling (avoids the bomb by construction), the same
//! with a non-maximally entangled state (rejected unless nearly maximal), and
//! fully random states, unitaries and projective measurements.

use rayon::prelude::*;
use serde::Serialize;

use super::{eval_quantum_protocol, worst_bomb, worst_prize, Encodings, QuantumProtocolSpec};
use crate::numkit::{c, haar_unitary, pauli, phi_plus, random, random_ket, tensor, CMatrix, Rng, C64};
use crate::qchannel::{is_quantum_not_channel, not_mixture, Basis, NotMixture, QuantumChannel};
use rand::seq::SliceRandom;
use rand::Rng as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProtocolFamily {
    FramedDenseCoding,
    PartialEntanglement,
    Unstructured,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem4Report {
    pub seed: u64,
    pub wanted: usize,
    pub accepted: usize,
    pub attempts: usize,
    /// (family, attempts, accepted)
    pub per_family: Vec<(ProtocolFamily, usize, usize)>,
    pub max_worst_prize: f64,
    pub violations: usize,
}

/// Random NOT mixture over 2..=4 Haar-random bases.
pub fn random_quantum_not_mixture(rng: &mut Rng) -> NotMixture {
    loop {
        let k = rng.random_range(2..=4);
        let w = random::random_simplex(k, rng);
        let comps = w
            .into_iter()
            .map(|wi| {
                let u = haar_unitary(2, rng);
                (wi, Basis::from_unitary(&u).expect("unitary columns are orthonormal"))
            })
            .collect();
        if let Ok(m) = NotMixture::new(comps) {
            return m;
        }
    }
}

fn bell_projector(k: usize, frame: &CMatrix) -> CMatrix {
    let id = CMatrix::identity(2);
    let v = tensor(&id, frame).apply(&tensor(&pauli(k), &id).apply(&phi_plus()));
    CMatrix::ket_bra(&v)
}

fn framed(rng: &mut Rng, psi: Vec<C64>, channel: QuantumChannel) -> QuantumProtocolSpec {
    let va = haar_unitary(2, rng);
    let vb = haar_unitary(2, rng);
    let mut perm = [0usize, 1, 2, 3];
    perm.shuffle(rng);
    let state = CMatrix::ket_bra(&tensor(&va, &vb).apply(&psi));
    let vad = va.adjoint();
    let enc = (0..4)
        .map(|b| QuantumChannel::unitary(&(&pauli(perm[b]) * &vad)).expect("unitary"))
        .collect();
    let povm = (0..4).map(|y| bell_projector(perm[y], &vb)).collect();
    QuantumProtocolSpec::new(state, Encodings::PerBomb(enc), channel, povm).expect("framed dense coding is valid")
}

fn sample_one(rng: &mut Rng) -> (ProtocolFamily, QuantumProtocolSpec) {
    let channel = not_mixture(&random_quantum_not_mixture(rng));
    let roll: f64 = rng.random();
    if roll < 0.6 {
        (ProtocolFamily::FramedDenseCoding, framed(rng, phi_plus(), channel))
    } else if roll < 0.8 {
        let theta = rng.random_range(0.0..std::f64::consts::FRAC_PI_2);
        let psi = vec![c(theta.cos(), 0.0), c(0.0, 0.0), c(0.0, 0.0), c(theta.sin(), 0.0)];
        (ProtocolFamily::PartialEntanglement, framed(rng, psi, channel))
    } else {
        let state = CMatrix::ket_bra(&random_ket(4, rng));
        let enc = (0..12)
            .map(|_| QuantumChannel::unitary(&haar_unitary(2, rng)).expect("unitary"))
            .collect();
        let basis = haar_unitary(4, rng);
        let povm = (0..4).map(|k| CMatrix::ket_bra(&basis.column(k))).collect();
        let spec = QuantumProtocolSpec::new(state, Encodings::PerConfig(enc), channel, povm)
            .expect("random projective protocol is valid");
        (ProtocolFamily::Unstructured, spec)
    }
}

/// Samples protocols until `wanted` of them avoid the bomb (worst_bomb < 1e-9)
/// or `max_attempts` is reached, and checks worst_prize ≤ 1/3 + 1e-6 on each.
pub fn sample_bomb_avoiding_protocols(wanted: usize, max_attempts: usize, seed: u64) -> Theorem4Report {
    const BATCH: usize = 64;
    let families = [
        ProtocolFamily::FramedDenseCoding,
        ProtocolFamily::PartialEntanglement,
        ProtocolFamily::Unstructured,
    ];
    let mut per_family: Vec<(ProtocolFamily, usize, usize)> = families.iter().map(|&f| (f, 0, 0)).collect();
    let (mut accepted, mut attempts, mut violations) = (0, 0, 0);
    let mut max_prize: f64 = 0.0;

    while accepted < wanted && attempts < max_attempts {
        let n = BATCH.min(max_attempts - attempts);
        let results: Vec<(ProtocolFamily, f64, f64, bool)> = (attempts..attempts + n)
            .into_par_iter()
            .map(|k| {
                let mut rng = random::stream(seed, k as u64);
                let (fam, spec) = sample_one(&mut rng);
                let d = eval_quantum_protocol(&spec).expect("valid protocol evaluates");
                let quantum = is_quantum_not_channel(spec.channel());
                (fam, worst_bomb(&d).value, worst_prize(&d).value, quantum)
            })
            .collect();
        for (fam, wb, wp, quantum) in results {
            if accepted >= wanted {
                break;
            }
            attempts += 1;
            let slot = per_family.iter_mut().find(|e| e.0 == fam).expect("known family");
            slot.1 += 1;
            if wb < 1e-9 && quantum {
                slot.2 += 1;
                accepted += 1;
                max_prize = max_prize.max(wp);
                if wp > 1.0 / 3.0 + 1e-6 {
                    violations += 1;
                }
            }
        }
    }
    Theorem4Report {
        seed,
        wanted,
        accepted,
        attempts,
        per_family,
        max_worst_prize: max_prize,
        violations,
    }
}
