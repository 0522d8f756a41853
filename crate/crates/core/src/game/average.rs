//! Capacity lower bounds on the bomb probability and the optimal
//! average-case strategy over a noiseless d-ary channel.

use super::{GameConfig, GameDistribution, Prior, BOXES, CONFIGS};
use crate::error::{Error, Result};
use crate::numkit::Prob;

/// (1 − C)^{ln 4} / 16: floor on the worst-case bomb probability of any
/// strategy over a noisy bit channel of capacity C.
pub fn theorem1_bound(capacity: f64) -> f64 {
    (1.0 - capacity).max(0.0).powf(4f64.ln()) / 16.0
}

/// π_min · (1 − C)^{ln 4} / 4 with π_min = min_b Σ_x π(b,x).
pub fn theorem1ave_bound<T: Prob>(capacity: f64, prior: &Prior<T>) -> f64 {
    let pi_min = prior
        .bomb_marginal()
        .iter()
        .map(|x| x.to_f64())
        .fold(f64::INFINITY, f64::min);
    pi_min * (1.0 - capacity).max(0.0).powf(4f64.ln()) / 4.0
}

/// Deterministic strategy maximizing the average prize probability while
/// never opening the bomb.
#[derive(Debug, Clone)]
pub struct AverageOptimum<T> {
    pub distribution: GameDistribution<T>,
    pub value: T,
    /// Message (0-based) sent for each configuration, in [`GameConfig::all`] order.
    pub encoder: Vec<usize>,
    /// Box (1-based) opened for each message.
    pub decoder: Vec<u8>,
}

/// Builds the partition A_1..A_d of configurations: with y_1..y_d the boxes
/// of largest prize marginal, message m is decoded as box y_m and is sent for
/// every (b, y_m) and for the prize-elsewhere configurations whose bomb sits
/// in y_{m+1}; the last message also absorbs the remaining configurations.
/// The value is the sum of the d largest prize marginals.
pub fn optimal_average_strategy<T: Prob>(prior: &Prior<T>, d: usize) -> Result<AverageOptimum<T>> {
    if !(2..=4).contains(&d) {
        return Err(Error::Range(format!("alphabet size {d} outside 2..=4")));
    }
    let marginal = prior.prize_marginal();
    let mut order: Vec<usize> = (0..BOXES).collect();
    // Stable sort keeps the lowest box first among ties.
    order.sort_by(|&a, &b| marginal[b].partial_cmp(&marginal[a]).expect("comparable"));
    let ys: Vec<usize> = order[..d].to_vec();
    let in_y = |box0: usize| ys.iter().position(|&y| y == box0);

    let mut encoder = vec![usize::MAX; CONFIGS];
    for cfg in GameConfig::all() {
        let (b, x) = (cfg.b0(), cfg.x0());
        let m = match (in_y(x), in_y(b)) {
            (Some(mx), _) => mx,
            // prize outside Y, bomb at y_{m+1} for m < d−1
            (None, Some(mb)) if mb >= 1 => mb - 1,
            // bomb at y_1 or outside Y
            (None, _) => d - 1,
        };
        encoder[cfg.index()] = m;
    }
    let decoder: Vec<u8> = ys.iter().map(|&y| (y + 1) as u8).collect();

    let rows = GameConfig::all()
        .iter()
        .map(|c| {
            let open = ys[encoder[c.index()]];
            (0..BOXES)
                .map(|y| if y == open { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let distribution = GameDistribution::new(rows)?;
    let value = ys.iter().fold(T::zero(), |acc, &y| acc + marginal[y].clone());
    Ok(AverageOptimum {
        distribution,
        value,
        encoder,
        decoder,
    })
}
