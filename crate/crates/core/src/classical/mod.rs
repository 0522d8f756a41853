//! Classical strategies over bit channels and noiseless d-ary channels:
//! evaluation, the ambiguous-probability bound chain, channel capacity, and the
//! exhaustive zero-prize analysis.

mod adversary;
mod capacity;
mod theorem2;

pub use adversary::{adversarial_bomb_search, solve_min_max, AdversarialResult};
pub use capacity::blahut_arimoto;
pub use theorem2::{
    enumerate_theorem2, send_prize_location, zero_prize_witness, DecoderRecord, Theorem2Report, Witness, WitnessCase,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameConfig, GameDistribution, BOXES, CONFIGS};
use crate::numkit::{binary_entropy, check_distribution, Prob};

/// Column-stochastic matrix w[out][in] = p(out|in).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalChannel<T> {
    w: Vec<Vec<T>>,
}

impl<T: Prob> ClassicalChannel<T> {
    pub fn new(w: Vec<Vec<T>>) -> Result<Self> {
        if w.is_empty() || w[0].is_empty() || w.iter().any(|r| r.len() != w[0].len()) {
            return Err(Error::Dimension(
                "channel matrix must be rectangular and nonempty".into(),
            ));
        }
        for i in 0..w[0].len() {
            let col: Vec<T> = w.iter().map(|r| r[i].clone()).collect();
            check_distribution(&col)?;
        }
        Ok(ClassicalChannel { w })
    }

    /// Noiseless channel on d symbols.
    pub fn identity(d: usize) -> Self {
        ClassicalChannel {
            w: (0..d)
                .map(|o| (0..d).map(|i| if i == o { T::one() } else { T::zero() }).collect())
                .collect(),
        }
    }

    pub fn inputs(&self) -> usize {
        self.w[0].len()
    }

    pub fn outputs(&self) -> usize {
        self.w.len()
    }

    /// p(out|in).
    pub fn p(&self, out: usize, inp: usize) -> &T {
        &self.w[out][inp]
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.w
    }
}

/// Binary channel p(m'|m), stored as `p[m'][m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BitChannel<T>(ClassicalChannel<T>);

impl<T: Prob> BitChannel<T> {
    pub fn new(p: [[T; 2]; 2]) -> Result<Self> {
        let w = p.into_iter().map(|r| r.to_vec()).collect();
        Ok(BitChannel(ClassicalChannel::new(w)?))
    }

    /// Binary symmetric channel with flip probability ε.
    pub fn bsc(eps: T) -> Result<Self> {
        let keep = T::one() - eps.clone();
        Self::new([[keep.clone(), eps.clone()], [eps, keep]])
    }

    pub fn identity() -> Self {
        BitChannel(ClassicalChannel::identity(2))
    }

    pub fn p(&self, out: usize, inp: usize) -> &T {
        self.0.p(out, inp)
    }

    pub fn as_channel(&self) -> &ClassicalChannel<T> {
        &self.0
    }
}

/// `{"p":[[p(0|0), p(0|1)], [p(1|0), p(1|1)]]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BitChannelJson {
    pub p: [[f64; 2]; 2],
}

impl TryFrom<&BitChannelJson> for BitChannel<f64> {
    type Error = Error;
    fn try_from(j: &BitChannelJson) -> Result<Self> {
        BitChannel::new(j.p)
    }
}

/// Stochastic encoder enc(m|b,x) and decoder dec(y|m') over a d-symbol alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalStrategy<T> {
    d: usize,
    enc: Vec<Vec<T>>,
    dec: Vec<Vec<T>>,
}

impl<T: Prob> ClassicalStrategy<T> {
    /// `enc` has 12 rows (configurations) of length d; `dec` has d rows of length 4.
    pub fn new(d: usize, enc: Vec<Vec<T>>, dec: Vec<Vec<T>>) -> Result<Self> {
        if d == 0 || enc.len() != CONFIGS || enc.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("encoder must be 12 rows of length {d}")));
        }
        if dec.len() != d || dec.iter().any(|r| r.len() != BOXES) {
            return Err(Error::Dimension(format!("decoder must be {d} rows of length 4")));
        }
        for r in enc.iter().chain(&dec) {
            check_distribution(r)?;
        }
        Ok(ClassicalStrategy { d, enc, dec })
    }

    /// Deterministic strategy: config k sends `f[k]`, message m opens box `g[m]` (1-based).
    pub fn deterministic(d: usize, f: &[usize], g: &[u8]) -> Result<Self> {
        if f.len() != CONFIGS || g.len() != d {
            return Err(Error::Dimension("deterministic strategy size mismatch".into()));
        }
        if f.iter().any(|&m| m >= d) || g.iter().any(|&y| !(1..=4).contains(&y)) {
            return Err(Error::Range("message or box out of range".into()));
        }
        let enc = f
            .iter()
            .map(|&m| (0..d).map(|k| if k == m { T::one() } else { T::zero() }).collect())
            .collect();
        let dec = g
            .iter()
            .map(|&y| (1..=4u8).map(|k| if k == y { T::one() } else { T::zero() }).collect())
            .collect();
        Self::new(d, enc, dec)
    }

    /// Encoder that depends on the bomb only: `enc_b[b-1]` is the row for bomb b.
    pub fn bomb_only(d: usize, enc_b: &[Vec<T>], dec: Vec<Vec<T>>) -> Result<Self> {
        if enc_b.len() != BOXES {
            return Err(Error::Dimension("need one encoder row per bomb box".into()));
        }
        let enc = GameConfig::all().iter().map(|c| enc_b[c.b0()].clone()).collect();
        Self::new(d, enc, dec)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn enc(&self, cfg: GameConfig) -> &[T] {
        &self.enc[cfg.index()]
    }

    pub fn dec(&self, m: usize) -> &[T] {
        &self.dec[m]
    }

    /// Boxes opened with positive probability on message m (1-based).
    pub fn support(&self, m: usize) -> Vec<u8> {
        (0..BOXES)
            .filter(|&y| self.dec[m][y] > T::zero())
            .map(|y| (y + 1) as u8)
            .collect()
    }
}

/// Shared-randomness mixture of classical strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct SRStrategy<T> {
    components: Vec<(T, ClassicalStrategy<T>)>,
}

impl<T: Prob> SRStrategy<T> {
    pub fn new(components: Vec<(T, ClassicalStrategy<T>)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Probability("empty mixture".into()));
        }
        let w: Vec<T> = components.iter().map(|(w, _)| w.clone()).collect();
        check_distribution(&w)?;
        Ok(SRStrategy { components })
    }

    pub fn components(&self) -> &[(T, ClassicalStrategy<T>)] {
        &self.components
    }
}

/// p(y|b,x) = Σ_{m,m'} dec(y|m') ch(m'|m) enc(m|b,x).
pub fn eval_classical<T: Prob>(s: &ClassicalStrategy<T>, ch: &ClassicalChannel<T>) -> Result<GameDistribution<T>> {
    if ch.inputs() != s.d || ch.outputs() != s.d {
        return Err(Error::Dimension(format!(
            "strategy alphabet {} vs channel {}x{}",
            s.d,
            ch.outputs(),
            ch.inputs()
        )));
    }
    let rows = GameConfig::all()
        .iter()
        .map(|&c| {
            let enc = s.enc(c);
            // received-message distribution
            let recv: Vec<T> = (0..s.d)
                .map(|mp| (0..s.d).fold(T::zero(), |acc, m| acc + ch.p(mp, m).clone() * enc[m].clone()))
                .collect();
            (0..BOXES)
                .map(|y| (0..s.d).fold(T::zero(), |acc, mp| acc + s.dec[mp][y].clone() * recv[mp].clone()))
                .collect()
        })
        .collect();
    Ok(GameDistribution::from_rows_unchecked(rows))
}

/// Weighted sum of component evaluations.
pub fn eval_sr<T: Prob>(s: &SRStrategy<T>, ch: &ClassicalChannel<T>) -> Result<GameDistribution<T>> {
    let mut acc = vec![vec![T::zero(); BOXES]; CONFIGS];
    for (w, comp) in &s.components {
        let d = eval_classical(comp, ch)?;
        for (row, src) in acc.iter_mut().zip(d.rows()) {
            for (a, v) in row.iter_mut().zip(src) {
                *a = a.clone() + w.clone() * v.clone();
            }
        }
    }
    Ok(GameDistribution::from_rows_unchecked(acc))
}

/// p_? = max_{m'} min_m p(m'|m).
pub fn ambiguous_probability<T: Prob>(ch: &BitChannel<T>) -> T {
    let row_min = |mp: usize| {
        let (a, b) = (ch.p(mp, 0).clone(), ch.p(mp, 1).clone());
        if a < b {
            a
        } else {
            b
        }
    };
    let (r0, r1) = (row_min(0), row_min(1));
    if r0 > r1 {
        r0
    } else {
        r1
    }
}

/// Symmetrizes p(m'|m) ↦ (p(m'|m) + p(m'⊕1|m⊕1))/2 and returns the flip
/// probability p_sym = min{p_sym(0|0), p_sym(1|0)} with C_sym = 1 − H₂(p_sym).
///
/// Panics if p_? < p_sym, which would contradict the bound chain.
pub fn symmetrized_capacity<T: Prob>(ch: &BitChannel<T>) -> (T, f64) {
    let two = T::one() + T::one();
    let stay = (ch.p(0, 0).clone() + ch.p(1, 1).clone()) / two.clone();
    let flip = (ch.p(1, 0).clone() + ch.p(0, 1).clone()) / two;
    let p_sym = if stay < flip { stay } else { flip };
    let p_amb = ambiguous_probability(ch);
    assert!(
        p_amb.to_f64() >= p_sym.to_f64() - 1e-15,
        "ambiguous probability {p_amb:?} below symmetrized flip probability {p_sym:?}"
    );
    let c = 1.0 - binary_entropy(p_sym.to_f64().clamp(0.0, 1.0)).expect("p_sym in [0,1]");
    (p_sym, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{worst_bomb, worst_prize};
    use crate::numkit::{rat, Rational};

    #[test]
    fn constant_message_opens_box_one() {
        let s = ClassicalStrategy::<Rational>::deterministic(2, &[0; 12], &[1, 2]).unwrap();
        let d = eval_classical(&s, BitChannel::identity().as_channel()).unwrap();
        for c in GameConfig::all() {
            assert_eq!(*d.p(1, c), rat(1, 1));
        }
    }

    #[test]
    fn randomizing_decoder() {
        let enc = vec![vec![rat(1, 2), rat(1, 2)]; 12];
        let dec = vec![vec![rat(1, 4); 4]; 2];
        let s = ClassicalStrategy::new(2, enc, dec).unwrap();
        let d = eval_classical(&s, &ClassicalChannel::identity(2)).unwrap();
        assert_eq!(worst_prize(&d).value, rat(1, 4));
        assert_eq!(worst_bomb(&d).value, rat(1, 4));
    }

    #[test]
    fn bsc_brute_force() {
        let eps = rat(1, 10);
        let ch = BitChannel::bsc(eps).unwrap();
        let f: Vec<usize> = GameConfig::all().iter().map(|c| (c.bomb <= 2) as usize).collect();
        let s = ClassicalStrategy::deterministic(2, &f, &[1, 3]).unwrap();
        let d = eval_classical(&s, ch.as_channel()).unwrap();
        for c in GameConfig::all() {
            for y in 1..=4u8 {
                let mut want = rat(0, 1);
                for m in 0..2 {
                    for mp in 0..2 {
                        let enc = if f[c.index()] == m { rat(1, 1) } else { rat(0, 1) };
                        let opened = [1u8, 3][mp];
                        let dec = if opened == y { rat(1, 1) } else { rat(0, 1) };
                        let chp = if m == mp { rat(9, 10) } else { rat(1, 10) };
                        want += enc * chp * dec;
                    }
                }
                assert_eq!(*d.p(y, c), want);
            }
        }
    }

    #[test]
    fn mixture_is_affine() {
        let a = ClassicalStrategy::<Rational>::deterministic(2, &[0; 12], &[1, 2]).unwrap();
        let b = ClassicalStrategy::<Rational>::deterministic(2, &[1; 12], &[1, 4]).unwrap();
        let ch = BitChannel::bsc(rat(1, 5)).unwrap();
        let sr = SRStrategy::new(vec![(rat(1, 3), a.clone()), (rat(2, 3), b.clone())]).unwrap();
        let mixed = eval_sr(&sr, ch.as_channel()).unwrap();
        let da = eval_classical(&a, ch.as_channel()).unwrap();
        let db = eval_classical(&b, ch.as_channel()).unwrap();
        for c in GameConfig::all() {
            for y in 1..=4u8 {
                assert_eq!(*mixed.p(y, c), rat(1, 3) * *da.p(y, c) + rat(2, 3) * *db.p(y, c));
            }
        }
    }

    #[test]
    fn ambiguous_examples() {
        assert_eq!(ambiguous_probability(&BitChannel::<f64>::identity()), 0.0);
        assert_eq!(ambiguous_probability(&BitChannel::bsc(rat(1, 5)).unwrap()), rat(1, 5));
        let constant = BitChannel::new([[1.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_eq!(ambiguous_probability(&constant), 1.0);
    }

    #[test]
    fn symmetrized_examples() {
        let (p, c) = symmetrized_capacity(&BitChannel::bsc(0.1).unwrap());
        assert!((p - 0.1).abs() < 1e-15);
        assert!((c - 0.5310).abs() < 1e-4);
        let (p, c) = symmetrized_capacity(&BitChannel::<f64>::identity());
        assert_eq!((p, c), (0.0, 1.0));
        let (_, c) = symmetrized_capacity(&BitChannel::bsc(0.5).unwrap());
        assert!(c.abs() < 1e-15);
    }

    #[test]
    fn size_mismatch() {
        let s = ClassicalStrategy::<f64>::deterministic(3, &[0; 12], &[1, 2, 3]).unwrap();
        assert!(eval_classical(&s, &ClassicalChannel::identity(2)).is_err());
        assert!(ClassicalStrategy::<f64>::deterministic(2, &[2; 12], &[1, 2]).is_err());
    }

    #[test]
    fn bit_channel_validation() {
        assert!(BitChannel::new([[0.5, 0.5], [0.6, 0.5]]).is_err());
        let j: BitChannelJson = serde_json::from_str(r#"{"p":[[0.9,0.2],[0.1,0.8]]}"#).unwrap();
        assert!(BitChannel::try_from(&j).is_ok());
    }
}
