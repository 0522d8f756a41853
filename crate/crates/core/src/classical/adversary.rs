//! Heuristic minimization of the worst-case bomb probability over
//! shared-randomness strategies for a noisy bit channel.

use rand::Rng as _;
use rayon::prelude::*;

use super::{blahut_arimoto, eval_sr, BitChannel, ClassicalStrategy, SRStrategy};
use crate::game::{theorem1_bound, worst_bomb, GameConfig, BOXES};
use crate::numkit::random;

const HEDGE_ROUNDS: usize = 4000;
const MAX_ALTERNATIONS: usize = 100;

#[derive(Debug, Clone)]
pub struct AdversarialResult {
    pub worst_bomb: f64,
    pub bound: f64,
    pub capacity: f64,
    pub strategy: SRStrategy<f64>,
    pub restarts: usize,
    pub seed: u64,
}

/// Approximate minimax weights for the row player of a zero-sum game where
/// row i costs `costs[i][b]` against column b. The column player runs Hedge and
/// the row player best-responds; the returned weights are the empirical
/// frequencies of those best responses.
pub fn solve_min_max(costs: &[[f64; BOXES]], rounds: usize) -> Vec<f64> {
    let eta = (8.0 * (BOXES as f64).ln() / rounds as f64).sqrt();
    let mut adv = [1.0 / BOXES as f64; BOXES];
    let mut counts = vec![0usize; costs.len()];
    for _ in 0..rounds {
        let (best, _) = costs
            .iter()
            .enumerate()
            .map(|(i, c)| (i, (0..BOXES).map(|b| adv[b] * c[b]).sum::<f64>()))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        counts[best] += 1;
        for b in 0..BOXES {
            adv[b] *= (eta * costs[best][b]).exp();
        }
        let z: f64 = adv.iter().sum();
        adv.iter_mut().for_each(|a| *a /= z);
    }
    counts.iter().map(|&k| k as f64 / rounds as f64).collect()
}

fn max_cost(c: &[f64; BOXES]) -> f64 {
    c.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn mix_costs(costs: &[[f64; BOXES]], w: &[f64]) -> [f64; BOXES] {
    let mut out = [0.0; BOXES];
    for (c, &wi) in costs.iter().zip(w) {
        for b in 0..BOXES {
            out[b] += wi * c[b];
        }
    }
    out
}

/// p(open b | bomb b) for a bomb-only encoder and stochastic decoder.
fn bomb_costs(ch: &BitChannel<f64>, enc: &[usize; BOXES], dec: &[[f64; BOXES]; 2]) -> [f64; BOXES] {
    let mut c = [0.0; BOXES];
    for b in 0..BOXES {
        c[b] = (0..2).map(|mp| ch.p(mp, enc[b]) * dec[mp][b]).sum();
    }
    c
}

/// Decoder minimizing the worst bomb probability for a fixed encoder: the
/// better of the best deterministic decoder and an approximate minimax mixture
/// of all 16 deterministic decoders.
fn best_decoder(ch: &BitChannel<f64>, enc: &[usize; BOXES]) -> ([[f64; BOXES]; 2], f64) {
    let pure: Vec<[[f64; BOXES]; 2]> = (0..16)
        .map(|g| {
            let mut dec = [[0.0; BOXES]; 2];
            dec[0][g % 4] = 1.0;
            dec[1][g / 4] = 1.0;
            dec
        })
        .collect();
    let costs: Vec<[f64; BOXES]> = pure.iter().map(|d| bomb_costs(ch, enc, d)).collect();
    let (bi, bv) = costs
        .iter()
        .enumerate()
        .map(|(i, c)| (i, max_cost(c)))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let w = solve_min_max(&costs, HEDGE_ROUNDS);
    let mut mixed = [[0.0; BOXES]; 2];
    for (d, &wi) in pure.iter().zip(&w) {
        for mp in 0..2 {
            for y in 0..BOXES {
                mixed[mp][y] += wi * d[mp][y];
            }
        }
    }
    let mv = max_cost(&bomb_costs(ch, enc, &mixed));
    if mv < bv {
        (mixed, mv)
    } else {
        (pure[bi], bv)
    }
}

fn local_search(ch: &BitChannel<f64>, seed: u64, k: usize) -> ([usize; BOXES], [[f64; BOXES]; 2], f64) {
    let mut rng = random::stream(seed, k as u64);
    let mut dec = [[0.0; BOXES]; 2];
    for row in dec.iter_mut() {
        let w = random::random_simplex(BOXES, &mut rng);
        row.copy_from_slice(&w);
    }
    let mut enc = [0usize; BOXES];
    for e in enc.iter_mut() {
        *e = rng.random_range(0..2);
    }
    let mut value = max_cost(&bomb_costs(ch, &enc, &dec));
    for _ in 0..MAX_ALTERNATIONS {
        let mut next_enc = enc;
        for (b, e) in next_enc.iter_mut().enumerate() {
            let cost = |m: usize| (0..2).map(|mp| ch.p(mp, m) * dec[mp][b]).sum::<f64>();
            *e = if cost(1) < cost(0) { 1 } else { 0 };
        }
        let (next_dec, v) = best_decoder(ch, &next_enc);
        if v >= value - 1e-12 && next_enc == enc {
            break;
        }
        if v < value {
            enc = next_enc;
            dec = next_dec;
            value = v;
        } else {
            break;
        }
    }
    (enc, dec, value)
}

fn to_strategy(enc: &[usize; BOXES], dec: &[[f64; BOXES]; 2]) -> ClassicalStrategy<f64> {
    let rows: Vec<Vec<f64>> = enc
        .iter()
        .map(|&m| (0..2).map(|k| if k == m { 1.0 } else { 0.0 }).collect())
        .collect();
    let dec = dec.iter().map(|r| r.to_vec()).collect();
    ClassicalStrategy::bomb_only(2, &rows, dec).expect("search produces valid strategies")
}

/// Searches for a shared-randomness strategy with small worst-case bomb
/// probability. Each restart alternates encoder and decoder best responses from
/// a random decoder; the restarts are then mixed by a zero-sum solver.
///
/// Panics if the result falls below the capacity bound, which would contradict
/// the impossibility theorem.
pub fn adversarial_bomb_search(ch: &BitChannel<f64>, restarts: usize, seed: u64) -> AdversarialResult {
    let restarts = restarts.max(1);
    let runs: Vec<_> = (0..restarts)
        .into_par_iter()
        .map(|k| local_search(ch, seed, k))
        .collect();
    let costs: Vec<[f64; BOXES]> = runs.iter().map(|(e, d, _)| bomb_costs(ch, e, d)).collect();
    let w = solve_min_max(&costs, HEDGE_ROUNDS);

    let (best_i, _) = runs
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.2))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let mixed_value = max_cost(&mix_costs(&costs, &w));

    let strategy = if mixed_value < runs[best_i].2 {
        let comps = runs
            .iter()
            .zip(&w)
            .filter(|(_, &wi)| wi > 0.0)
            .map(|((e, d, _), &wi)| (wi, to_strategy(e, d)))
            .collect();
        SRStrategy::new(comps).expect("weights sum to one")
    } else {
        let (e, d, _) = &runs[best_i];
        SRStrategy::new(vec![(1.0, to_strategy(e, d))]).expect("single component")
    };

    let dist = eval_sr(&strategy, ch.as_channel()).expect("bit strategy over bit channel");
    let value = worst_bomb(&dist).value;
    let capacity = blahut_arimoto(ch.as_channel()).expect("valid bit channel");
    let bound = theorem1_bound(capacity);
    assert!(
        value >= bound - 1e-12,
        "strategy with worst bomb probability {value} beats the bound {bound}"
    );
    // Sanity: prize-agnostic encoders give the same bomb risk for every prize.
    debug_assert!(GameConfig::all().iter().all(|c| dist.p(c.bomb, *c) <= &(value + 1e-12)));
    AdversarialResult {
        worst_bomb: value,
        bound,
        capacity,
        strategy,
        restarts,
        seed,
    }
}
