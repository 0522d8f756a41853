//! Probability vectors and the scalar abstraction shared by exact and float code.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact probability. Denominators in this crate stay small, so 64-bit
/// components suffice.
pub type Rational = Ratio<i64>;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Parses "n/d" or "n".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Probability(format!("cannot parse rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
    }
}

/// Scalars that can hold a probability: `f64` or [`Rational`].
pub trait Prob: Clone + PartialOrd + Num + Debug + Send + Sync + 'static {
    fn to_f64(&self) -> f64;
    /// Equality used for ties and normalization: exact for rationals,
    /// within 1e-12 for floats.
    fn ties(&self, other: &Self) -> bool;
    fn from_ratio(n: i64, d: i64) -> Self;
}

impl Prob for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn ties(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-12
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
}

impl Prob for Rational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn ties(&self, other: &Self) -> bool {
        self == other
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        Rational::new(n, d)
    }
}

/// Checks that `row` is a probability distribution.
pub fn check_distribution<T: Prob>(row: &[T]) -> Result<()> {
    let zero = T::zero();
    let one = T::one();
    for x in row {
        if *x < zero || *x > one {
            return Err(Error::Probability(format!("entry {x:?} outside [0,1]")));
        }
    }
    let sum = row.iter().cloned().fold(T::zero(), |a, b| a + b);
    if !sum.ties(&one) {
        return Err(Error::Probability(format!("row sums to {sum:?}")));
    }
    Ok(())
}

/// Float probability vector with entries in [0,1] summing to 1 within 1e-12.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Probability("empty probability vector".into()));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::Probability("non-finite weight".into()));
        }
        check_distribution(&weights)?;
        Ok(ProbVector(weights))
    }

    pub fn uniform(n: usize) -> Self {
        ProbVector(vec![1.0 / n as f64; n])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for ProbVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        ProbVector::new(v)
    }
}

impl From<ProbVector> for Vec<f64> {
    fn from(p: ProbVector) -> Vec<f64> {
        p.0
    }
}

/// Serde adapters rendering rationals as "n/d" strings.
pub mod rational_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn to_string(r: &Rational) -> String {
        if *r.denom() == 1 {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let r = rat(2, -4);
        assert_eq!(*r.numer(), -1);
        assert_eq!(*r.denom(), 2);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational(" 2 ").unwrap(), rat(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(rational_str::to_string(&rat(4, 12)), "1/3");
        assert_eq!(rational_str::to_string(&rat(0, 5)), "0");
    }

    #[test]
    fn prob_vector_validation() {
        assert!(ProbVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbVector::new(vec![1.5, -0.5]).is_err());
        assert!(ProbVector::new(vec![]).is_err());
    }

    #[test]
    fn exact_distribution_check() {
        assert!(check_distribution(&[rat(1, 3), rat(2, 3)]).is_ok());
        assert!(check_distribution(&[rat(1, 3), rat(1, 3)]).is_err());
    }
}
