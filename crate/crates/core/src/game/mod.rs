//! The bomb-and-prize game: configurations, strategy distributions and their
//! worst-case and average figures of merit.
//!
//! Boxes are labelled 1..=4 in every public interface. A configuration
//! `(b, x)` places the bomb in box `b` and the prize in box `x ≠ b`; the twelve
//! configurations are ordered lexicographically.

mod average;
mod protocol;
mod sampling;

pub use average::{optimal_average_strategy, theorem1_bound, theorem1ave_bound, AverageOptimum};
pub use protocol::{dense_coding_protocol, eval_quantum_protocol, Encodings, QuantumProtocolSpec};
pub use sampling::{random_quantum_not_mixture, sample_bomb_avoiding_protocols, ProtocolFamily, Theorem4Report};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{check_distribution, Prob, Rational};

pub const BOXES: usize = 4;
pub const CONFIGS: usize = 12;

/// Bomb location `b` and prize location `x`, both in 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GameConfig {
    #[serde(rename = "b")]
    pub bomb: u8,
    #[serde(rename = "x")]
    pub prize: u8,
}

impl GameConfig {
    pub fn new(bomb: u8, prize: u8) -> Result<Self> {
        if !(1..=4).contains(&bomb) || !(1..=4).contains(&prize) {
            return Err(Error::Range(format!("boxes must be in 1..=4, got ({bomb}, {prize})")));
        }
        if bomb == prize {
            return Err(Error::Range(format!("bomb and prize share box {bomb}")));
        }
        Ok(GameConfig { bomb, prize })
    }

    /// All twelve configurations in lexicographic order.
    pub fn all() -> [GameConfig; CONFIGS] {
        let mut out = [GameConfig { bomb: 1, prize: 2 }; CONFIGS];
        let mut k = 0;
        for b in 1..=4u8 {
            for x in 1..=4u8 {
                if b != x {
                    out[k] = GameConfig { bomb: b, prize: x };
                    k += 1;
                }
            }
        }
        out
    }

    /// Position in [`GameConfig::all`].
    pub fn index(&self) -> usize {
        let b = (self.bomb - 1) as usize;
        let x = (self.prize - 1) as usize;
        b * 3 + if x > b { x - 1 } else { x }
    }

    /// Zero-based bomb and prize.
    pub fn b0(&self) -> usize {
        (self.bomb - 1) as usize
    }

    pub fn x0(&self) -> usize {
        (self.prize - 1) as usize
    }
}

/// p(y|b,x) for the twelve configurations, rows in [`GameConfig::all`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct GameDistribution<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Prob> GameDistribution<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        if rows.len() != CONFIGS || rows.iter().any(|r| r.len() != BOXES) {
            return Err(Error::Dimension("expected 12 rows of 4 probabilities".into()));
        }
        for r in &rows {
            check_distribution(r)?;
        }
        Ok(GameDistribution { rows })
    }

    pub fn from_fn(mut f: impl FnMut(GameConfig) -> Vec<T>) -> Result<Self> {
        Self::new(GameConfig::all().iter().map(|&c| f(c)).collect())
    }

    /// Distribution whose output ignores the prize: p(y|b,x) = m(y|b).
    pub fn from_bomb_matrix(m: &[Vec<T>]) -> Result<Self> {
        Self::from_fn(|c| (0..BOXES).map(|y| m[y][c.b0()].clone()).collect())
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<T>>) -> Self {
        GameDistribution { rows }
    }

    /// p(y|b,x) with y in 1..=4.
    pub fn p(&self, y: u8, cfg: GameConfig) -> &T {
        &self.rows[cfg.index()][(y - 1) as usize]
    }

    pub fn row(&self, cfg: GameConfig) -> &[T] {
        &self.rows[cfg.index()]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn to_f64(&self) -> GameDistribution<f64> {
        GameDistribution {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_f64()).collect())
                .collect(),
        }
    }
}

/// An extremal value and every configuration attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct Extremum<T> {
    pub value: T,
    pub configs: Vec<GameConfig>,
}

fn extremum<T: Prob>(values: Vec<(GameConfig, T)>, want_max: bool) -> Extremum<T> {
    let mut best = values[0].1.clone();
    for (_, v) in &values {
        let better = if want_max { *v > best } else { *v < best };
        if better {
            best = v.clone();
        }
    }
    let configs = values.iter().filter(|(_, v)| v.ties(&best)).map(|(c, _)| *c).collect();
    Extremum { value: best, configs }
}

/// min over configurations of p(x|b,x).
pub fn worst_prize<T: Prob>(d: &GameDistribution<T>) -> Extremum<T> {
    extremum(
        GameConfig::all()
            .iter()
            .map(|&c| (c, d.p(c.prize, c).clone()))
            .collect(),
        false,
    )
}

/// max over configurations of p(b|b,x).
pub fn worst_bomb<T: Prob>(d: &GameDistribution<T>) -> Extremum<T> {
    extremum(
        GameConfig::all().iter().map(|&c| (c, d.p(c.bomb, c).clone())).collect(),
        true,
    )
}

/// Prior π(b,x) over the twelve configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct Prior<T> {
    weights: Vec<T>,
}

impl<T: Prob> Prior<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.len() != CONFIGS {
            return Err(Error::Dimension(format!(
                "{} prior weights, expected 12",
                weights.len()
            )));
        }
        check_distribution(&weights)?;
        Ok(Prior { weights })
    }

    pub fn uniform() -> Self {
        Prior {
            weights: vec![T::from_ratio(1, CONFIGS as i64); CONFIGS],
        }
    }

    /// Point mass on one configuration.
    pub fn point(cfg: GameConfig) -> Self {
        let mut weights = vec![T::zero(); CONFIGS];
        weights[cfg.index()] = T::one();
        Prior { weights }
    }

    pub fn weight(&self, cfg: GameConfig) -> &T {
        &self.weights[cfg.index()]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// π_prize(x) = Σ_b π(b,x), indexed by zero-based box.
    pub fn prize_marginal(&self) -> Vec<T> {
        let mut m = vec![T::zero(); BOXES];
        for c in GameConfig::all() {
            m[c.x0()] = m[c.x0()].clone() + self.weight(c).clone();
        }
        m
    }

    /// π_bomb(b) = Σ_x π(b,x), indexed by zero-based box.
    pub fn bomb_marginal(&self) -> Vec<T> {
        let mut m = vec![T::zero(); BOXES];
        for c in GameConfig::all() {
            m[c.b0()] = m[c.b0()].clone() + self.weight(c).clone();
        }
        m
    }
}

fn weighted<T: Prob>(d: &GameDistribution<T>, prior: &Prior<T>, pick: impl Fn(GameConfig) -> u8) -> T {
    GameConfig::all().iter().fold(T::zero(), |acc, &c| {
        acc + prior.weight(c).clone() * d.p(pick(c), c).clone()
    })
}

/// Σ π(b,x) p(b|b,x).
pub fn avg_bomb<T: Prob>(d: &GameDistribution<T>, prior: &Prior<T>) -> T {
    weighted(d, prior, |c| c.bomb)
}

/// Σ π(b,x) p(x|b,x).
pub fn avg_prize<T: Prob>(d: &GameDistribution<T>, prior: &Prior<T>) -> T {
    weighted(d, prior, |c| c.prize)
}

// ---- JSON ----

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionRow {
    pub b: u8,
    pub x: u8,
    pub y: Vec<f64>,
}

/// `{"p":[{"b":1,"x":2,"y":[p1,p2,p3,p4]}, ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionJson {
    pub p: Vec<DistributionRow>,
}

impl From<&GameDistribution<f64>> for DistributionJson {
    fn from(d: &GameDistribution<f64>) -> Self {
        DistributionJson {
            p: GameConfig::all()
                .iter()
                .map(|&c| DistributionRow {
                    b: c.bomb,
                    x: c.prize,
                    y: d.row(c).to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&DistributionJson> for GameDistribution<f64> {
    type Error = Error;
    fn try_from(j: &DistributionJson) -> Result<Self> {
        let mut rows: Vec<Option<Vec<f64>>> = vec![None; CONFIGS];
        for r in &j.p {
            let cfg = GameConfig::new(r.b, r.x)?;
            if rows[cfg.index()].replace(r.y.clone()).is_some() {
                return Err(Error::Dimension(format!("duplicate row for ({}, {})", r.b, r.x)));
            }
        }
        let rows = rows
            .into_iter()
            .zip(GameConfig::all())
            .map(|(r, c)| r.ok_or_else(|| Error::Dimension(format!("missing row ({}, {})", c.bomb, c.prize))))
            .collect::<Result<Vec<_>>>()?;
        GameDistribution::new(rows)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PriorRow {
    pub b: u8,
    pub x: u8,
    pub w: f64,
}

/// `{"p":[{"b":1,"x":2,"w":0.1}, ...]}`; omitted configurations get weight 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PriorJson {
    pub p: Vec<PriorRow>,
}

impl TryFrom<&PriorJson> for Prior<f64> {
    type Error = Error;
    fn try_from(j: &PriorJson) -> Result<Self> {
        let mut w = vec![0.0; CONFIGS];
        for r in &j.p {
            w[GameConfig::new(r.b, r.x)?.index()] += r.w;
        }
        Prior::new(w)
    }
}

/// Exact distribution rendered with float entries.
pub fn rational_to_json(d: &GameDistribution<Rational>) -> DistributionJson {
    DistributionJson::from(&d.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rat;

    fn not_distribution() -> GameDistribution<Rational> {
        GameDistribution::from_fn(|c| {
            (1..=4u8)
                .map(|y| if y == c.bomb { rat(0, 1) } else { rat(1, 3) })
                .collect()
        })
        .unwrap()
    }

    #[test]
    fn config_indexing() {
        for (k, c) in GameConfig::all().iter().enumerate() {
            assert_eq!(c.index(), k);
            assert_ne!(c.bomb, c.prize);
        }
        assert!(GameConfig::new(2, 2).is_err());
        assert!(GameConfig::new(0, 2).is_err());
    }

    #[test]
    fn not_distribution_metrics() {
        let d = not_distribution();
        let wp = worst_prize(&d);
        let wb = worst_bomb(&d);
        assert_eq!(wp.value, rat(1, 3));
        assert_eq!(wb.value, rat(0, 1));
        assert_eq!(wp.configs.len(), 12);
        let u = Prior::uniform();
        assert_eq!(avg_bomb(&d, &u), rat(0, 1));
        assert_eq!(avg_prize(&d, &u), rat(1, 3));
    }

    #[test]
    fn always_box_one() {
        let d = GameDistribution::from_fn(|_| vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let wp = worst_prize(&d);
        assert_eq!(wp.value, 0.0);
        assert!(wp.configs.iter().all(|c| c.prize != 1));
        let wb = worst_bomb(&d);
        assert_eq!(wb.value, 1.0);
        assert_eq!(wb.configs.len(), 3);
        assert!(wb.configs.iter().all(|c| c.bomb == 1));
    }

    #[test]
    fn uniform_guessing() {
        let d = GameDistribution::from_fn(|_| vec![rat(1, 4); 4]).unwrap();
        assert_eq!(worst_prize(&d).value, rat(1, 4));
        assert_eq!(worst_bomb(&d).value, rat(1, 4));
    }

    #[test]
    fn point_prior_reads_one_entry() {
        let d = not_distribution();
        let cfg = GameConfig::new(1, 2).unwrap();
        assert_eq!(avg_prize(&d, &Prior::point(cfg)), *d.p(2, cfg));
    }

    #[test]
    fn rejects_unnormalized() {
        assert!(GameDistribution::from_fn(|_| vec![0.5, 0.0, 0.0, 0.0]).is_err());
        assert!(Prior::<f64>::new(vec![0.1; 12]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = not_distribution().to_f64();
        let j = DistributionJson::from(&d);
        let text = serde_json::to_string(&j).unwrap();
        let back: DistributionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(GameDistribution::try_from(&back).unwrap(), d);
        let mut partial = back.clone();
        partial.p.pop();
        assert!(GameDistribution::try_from(&partial).is_err());
    }

    #[test]
    fn prior_json() {
        let j: PriorJson = serde_json::from_str(r#"{"p":[{"b":1,"x":2,"w":1.0}]}"#).unwrap();
        let p = Prior::try_from(&j).unwrap();
        assert_eq!(*p.weight(GameConfig::new(1, 2).unwrap()), 1.0);
    }
}
