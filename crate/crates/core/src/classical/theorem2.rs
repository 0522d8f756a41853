//! Zero-prize analysis for noiseless channels with fewer than four symbols:
//! every bomb-avoiding strategy leaves some configuration with no chance of
//! the prize.

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::{eval_classical, ClassicalChannel, ClassicalStrategy};
use crate::error::{Error, Result};
use crate::game::{worst_bomb, worst_prize, GameConfig, CONFIGS};
use crate::numkit::{random, Rational};

/// Which branch of the case analysis produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// Some box is in no decoder support; the prize goes there.
    UnionMissesBox,
    /// Two supports share at least two boxes.
    SharedPair,
    /// A box in exactly one support, which also holds another box.
    LoneBoxInLargerSet,
    /// A box that forms a singleton support on its own.
    LoneBoxSingleton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub config: GameConfig,
    pub case: WitnessCase,
}

fn mask(set: &[u8]) -> Result<u8> {
    if set.is_empty() {
        return Err(Error::Precondition("empty decoder support".into()));
    }
    set.iter().try_fold(0u8, |m, &y| {
        if (1..=4).contains(&y) {
            Ok(m | 1 << (y - 1))
        } else {
            Err(Error::Range(format!("box {y} outside 1..=4")))
        }
    })
}

fn lowest(m: u8) -> u8 {
    debug_assert!(m != 0);
    m.trailing_zeros() as u8 + 1
}

fn bit(y: u8) -> u8 {
    1 << (y - 1)
}

/// Given the decoder supports B_1..B_d (d ≤ 3, boxes 1-based) of a
/// bomb-avoiding strategy, returns a configuration (b, x) whose prize is
/// opened with probability zero by every strategy with those supports.
///
/// Bomb avoidance forces the supports to have empty common intersection; a
/// nonempty intersection is rejected. Two supports are padded to three by
/// repeating the second.
pub fn zero_prize_witness(supports: &[Vec<u8>]) -> Result<Witness> {
    if supports.is_empty() || supports.len() > 3 {
        return Err(Error::Range(format!("{} supports, expected 1..=3", supports.len())));
    }
    let mut s: Vec<u8> = supports.iter().map(|b| mask(b)).collect::<Result<_>>()?;
    if s.iter().fold(0b1111, |acc, &m| acc & m) != 0 {
        return Err(Error::Precondition(
            "supports share a common box, so no strategy with them avoids the bomb".into(),
        ));
    }
    while s.len() < 3 {
        s.push(*s.last().expect("nonempty"));
    }
    let config = |b: u8, x: u8| GameConfig::new(b, x).expect("distinct boxes");

    let union = s[0] | s[1] | s[2];
    if union != 0b1111 {
        let x = lowest(!union & 0b1111);
        let b = lowest(0b1111 & !bit(x));
        return Ok(Witness {
            config: config(b, x),
            case: WitnessCase::UnionMissesBox,
        });
    }

    const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
    for &(a, b) in &PAIRS {
        let inter = s[a] & s[b];
        if inter.count_ones() >= 2 {
            let y0 = lowest(inter);
            let y1 = lowest(inter & !bit(y0));
            return Ok(Witness {
                config: config(y0, y1),
                case: WitnessCase::SharedPair,
            });
        }
    }

    let shared = PAIRS.iter().fold(0u8, |acc, &(a, b)| acc | (s[a] & s[b]));
    let y0 = lowest(!shared & 0b1111);
    let alpha = (0..3).find(|&i| s[i] & bit(y0) != 0).expect("union covers every box");
    if s[alpha].count_ones() >= 2 {
        let y1 = lowest(s[alpha] & !bit(y0));
        return Ok(Witness {
            config: config(y1, y0),
            case: WitnessCase::LoneBoxInLargerSet,
        });
    }
    let others: Vec<usize> = (0..3).filter(|&i| i != alpha).collect();
    let beta = *others
        .iter()
        .find(|&&i| s[i].count_ones() >= 2)
        .expect("the other two supports cover three boxes with overlap at most one");
    let gamma = others.into_iter().find(|&i| i != beta).expect("two others");
    let y2 = lowest(s[beta] & !s[gamma]);
    let y1 = lowest(s[beta] & !bit(y2));
    Ok(Witness {
        config: config(y1, y2),
        case: WitnessCase::LoneBoxSingleton,
    })
}

/// The d = 4 strategy that sends the prize location and opens it.
pub fn send_prize_location() -> ClassicalStrategy<Rational> {
    let f: Vec<usize> = GameConfig::all().iter().map(|c| c.x0()).collect();
    ClassicalStrategy::deterministic(4, &f, &[1, 2, 3, 4]).expect("valid deterministic strategy")
}

#[derive(Debug, Clone, Serialize)]
pub struct DecoderRecord {
    /// Box opened for each message.
    pub decoder: Vec<u8>,
    pub encoders: u64,
    pub bomb_avoiding: u64,
    pub positive_prize: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Report {
    pub d: usize,
    pub seed: u64,
    pub deterministic_total: u64,
    pub bomb_avoiding: u64,
    /// Bomb-avoiding strategies with worst-case prize probability above zero.
    pub violations: u64,
    pub decoders: Vec<DecoderRecord>,
    pub stochastic_samples: usize,
    /// Sampled strategies that failed to avoid the bomb exactly.
    pub stochastic_bomb_failures: usize,
    pub stochastic_violations: usize,
}

/// Exhaustive check over all deterministic encoders {configs} → {0..d} and
/// decoders {0..d} → boxes, parallel over (decoder, first message) prefixes,
/// plus `samples` random stochastic bomb-avoiding strategies evaluated in exact
/// arithmetic.
pub fn enumerate_theorem2(d: usize, samples: usize, seed: u64) -> Result<Theorem2Report> {
    if !(2..=3).contains(&d) {
        return Err(Error::Range(format!("alphabet size {d} outside 2..=3")));
    }
    let configs = GameConfig::all();
    let decoders: Vec<Vec<u8>> = (0..4usize.pow(d as u32))
        .map(|g| (0..d).map(|m| ((g / 4usize.pow(m as u32)) % 4) as u8 + 1).collect())
        .collect();

    let work: Vec<(usize, usize)> = (0..decoders.len())
        .flat_map(|g| (0..d).map(move |m0| (g, m0)))
        .collect();
    let partial: Vec<(usize, u64, u64, u64)> = work
        .par_iter()
        .map(|&(gi, m0)| {
            let g = &decoders[gi];
            let (mut total, mut avoid, mut positive) = (0u64, 0u64, 0u64);
            let mut f = [0usize; CONFIGS];
            f[0] = m0;
            loop {
                total += 1;
                let mut bomb_free = true;
                let mut prize_everywhere = true;
                for (k, c) in configs.iter().enumerate() {
                    let y = g[f[k]];
                    bomb_free &= y != c.bomb;
                    prize_everywhere &= y == c.prize;
                }
                if bomb_free {
                    avoid += 1;
                    if prize_everywhere {
                        positive += 1;
                    }
                }
                // odometer over f[1..]
                let mut k = 1;
                while k < CONFIGS {
                    f[k] += 1;
                    if f[k] < d {
                        break;
                    }
                    f[k] = 0;
                    k += 1;
                }
                if k == CONFIGS {
                    break;
                }
            }
            (gi, total, avoid, positive)
        })
        .collect();

    let mut records: Vec<DecoderRecord> = decoders
        .iter()
        .map(|g| DecoderRecord {
            decoder: g.clone(),
            encoders: 0,
            bomb_avoiding: 0,
            positive_prize: 0,
        })
        .collect();
    for (gi, t, a, p) in partial {
        records[gi].encoders += t;
        records[gi].bomb_avoiding += a;
        records[gi].positive_prize += p;
    }

    let sampled: Vec<(bool, bool)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = random::stream(seed, k as u64);
            let s = random_bomb_avoiding(d, &mut rng);
            let dist = eval_classical(&s, &ClassicalChannel::identity(d)).expect("sizes match");
            let zero = Rational::from_integer(0);
            (worst_bomb(&dist).value != zero, worst_prize(&dist).value != zero)
        })
        .collect();

    Ok(Theorem2Report {
        d,
        seed,
        deterministic_total: records.iter().map(|r| r.encoders).sum(),
        bomb_avoiding: records.iter().map(|r| r.bomb_avoiding).sum(),
        violations: records.iter().map(|r| r.positive_prize).sum(),
        decoders: records,
        stochastic_samples: samples,
        stochastic_bomb_failures: sampled.iter().filter(|s| s.0).count(),
        stochastic_violations: sampled.iter().filter(|s| s.1).count(),
    })
}

fn random_weights(support: u8, width: usize, rng: &mut random::Rng) -> Vec<Rational> {
    let raw: Vec<i64> = (0..width)
        .map(|i| {
            if support & (1 << i) != 0 {
                rng.random_range(1..=6)
            } else {
                0
            }
        })
        .collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|w| Rational::new(w, total)).collect()
}

/// Random stochastic strategy whose decoder supports have empty common
/// intersection and whose encoder only uses messages that exclude the bomb.
fn random_bomb_avoiding(d: usize, rng: &mut random::Rng) -> ClassicalStrategy<Rational> {
    let supports: Vec<u8> = loop {
        let s: Vec<u8> = (0..d).map(|_| rng.random_range(1..16u8)).collect();
        if s.iter().fold(0b1111, |acc, &m| acc & m) == 0 {
            break s;
        }
    };
    let dec = supports.iter().map(|&m| random_weights(m, 4, rng)).collect();
    let enc = GameConfig::all()
        .iter()
        .map(|c| {
            let allowed = (0..d)
                .filter(|&m| supports[m] & bit(c.bomb) == 0)
                .fold(0u8, |acc, m| acc | 1 << m);
            let used = loop {
                let u = rng.random_range(1..(1u8 << d)) & allowed;
                if u != 0 {
                    break u;
                }
            };
            random_weights(used, d, rng)
        })
        .collect();
    ClassicalStrategy::new(d, enc, dec).expect("rows are normalized")
}
