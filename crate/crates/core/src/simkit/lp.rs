//! Exact two-phase simplex over 128-bit rationals with Bland's rule.
//!
//! Problems are in standard form `A x = b, x ≥ 0`. Arithmetic is checked and
//! any overflow aborts with [`Error::Overflow`].

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Ratio<i128>;

fn add(a: &Q, b: &Q) -> Result<Q> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn sub(a: &Q, b: &Q) -> Result<Q> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

fn mul(a: &Q, b: &Q) -> Result<Q> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn div(a: &Q, b: &Q) -> Result<Q> {
    a.checked_div(b).ok_or(Error::Overflow)
}

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Linear equality system over nonnegative variables.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    vars: usize,
    rows: Vec<(Vec<(usize, Q)>, Q)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, x: Vec<Q> },
}

struct Tableau {
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.t[i][self.cols]
    }

    fn pivot(&mut self, r: usize, j: usize, obj: &mut [Q]) -> Result<()> {
        let p = self.t[r][j];
        for v in self.t[r].iter_mut() {
            *v = div(v, &p)?;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j];
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = sub(v, &mul(&f, pv)?)?;
                }
            }
        }
        if !obj[j].is_zero() {
            let f = obj[j];
            for (v, pv) in obj.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v = sub(v, &mul(&f, pv)?)?;
                }
            }
        }
        self.basis[r] = j;
        Ok(())
    }

    /// Minimizes with reduced-cost row `obj` (last entry is −objective value).
    /// Only columns with `allowed[j]` may enter. Returns false if unbounded.
    fn run(&mut self, obj: &mut [Q], allowed: &[bool]) -> Result<bool> {
        loop {
            let entering = (0..self.cols).find(|&j| allowed[j] && obj[j].is_negative());
            let Some(j) = entering else { return Ok(true) };
            let mut best: Option<(Q, usize)> = None;
            for i in 0..self.t.len() {
                if self.t[i][j].is_positive() {
                    let ratio = div(self.rhs(i), &self.t[i][j])?;
                    let better = match &best {
                        None => true,
                        Some((r, bi)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((_, r)) = best else { return Ok(false) };
            self.pivot(r, j, obj)?;
        }
    }
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    /// Appends a fresh variable and returns its index.
    pub fn add_var(&mut self) -> usize {
        self.vars += 1;
        self.vars - 1
    }

    /// Σ coef·x_var = rhs. Repeated indices are summed.
    pub fn add_eq(&mut self, terms: Vec<(usize, Q)>, rhs: Q) {
        debug_assert!(terms.iter().all(|(v, _)| *v < self.vars));
        self.rows.push((terms, rhs));
    }

    /// Σ coef·x_var ≤ rhs via a new slack variable.
    pub fn add_le(&mut self, mut terms: Vec<(usize, Q)>, rhs: Q) {
        let s = self.add_var();
        terms.push((s, Q::one()));
        self.add_eq(terms, rhs);
    }

    /// Minimizes c·x. `None` costs solve the feasibility problem only.
    pub fn minimize(&self, cost: Option<&[(usize, Q)]>) -> Result<LpOutcome> {
        let m = self.rows.len();
        let n = self.vars;
        let cols = n + m;
        let mut t = vec![vec![Q::zero(); cols + 1]; m];
        for (i, (terms, rhs)) in self.rows.iter().enumerate() {
            let neg = rhs.is_negative();
            for (v, c) in terms {
                let c = if neg { -*c } else { *c };
                t[i][*v] = add(&t[i][*v], &c)?;
            }
            t[i][n + i] = Q::one();
            t[i][cols] = if neg { -*rhs } else { *rhs };
        }
        let mut tab = Tableau {
            t,
            basis: (n..n + m).collect(),
            cols,
        };

        // phase 1: minimize the sum of artificials
        let mut obj = vec![Q::zero(); cols + 1];
        for row in &tab.t {
            for j in 0..n {
                obj[j] = sub(&obj[j], &row[j])?;
            }
            obj[cols] = sub(&obj[cols], &row[cols])?;
        }
        let all = vec![true; cols];
        tab.run(&mut obj, &all)?;
        if !obj[cols].is_zero() {
            return Ok(LpOutcome::Infeasible);
        }

        // drive artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < tab.t.len() {
            if tab.basis[i] >= n {
                match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                    Some(j) => {
                        let mut dummy = vec![Q::zero(); cols + 1];
                        tab.pivot(i, j, &mut dummy)?;
                    }
                    None => {
                        tab.t.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }

        let mut c = vec![Q::zero(); n];
        if let Some(cost) = cost {
            for (v, w) in cost {
                c[*v] = add(&c[*v], w)?;
            }
        }
        let mut obj = vec![Q::zero(); cols + 1];
        obj[..n].copy_from_slice(&c);
        for (i, &b) in tab.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for j in 0..=cols {
                if j < n || j == cols {
                    obj[j] = sub(&obj[j], &mul(&c[b], &tab.t[i][j])?)?;
                }
            }
        }
        let allowed: Vec<bool> = (0..cols).map(|j| j < n).collect();
        if !tab.run(&mut obj, &allowed)? {
            return Ok(LpOutcome::Unbounded);
        }
        let mut x = vec![Q::zero(); n];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < n {
                x[b] = *tab.rhs(i);
            }
        }
        Ok(LpOutcome::Optimal { value: -obj[cols], x })
    }

    pub fn maximize(&self, cost: &[(usize, Q)]) -> Result<LpOutcome> {
        let neg: Vec<(usize, Q)> = cost.iter().map(|(v, c)| (*v, -*c)).collect();
        Ok(match self.minimize(Some(&neg))? {
            LpOutcome::Optimal { value, x } => LpOutcome::Optimal { value: -value, x },
            other => other,
        })
    }

    pub fn feasible_point(&self) -> Result<Option<Vec<Q>>> {
        Ok(match self.minimize(None)? {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        })
    }

    /// Checks A x = b and x ≥ 0 exactly.
    pub fn satisfies(&self, x: &[Q]) -> bool {
        x.len() == self.vars
            && x.iter().all(|v| !v.is_negative())
            && self
                .rows
                .iter()
                .all(|(terms, rhs)| terms.iter().fold(Q::zero(), |acc, (v, c)| acc + *c * x[*v]) == *rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_optimum() {
        // max x + y s.t. x + 2y ≤ 4, 3x + y ≤ 6
        let mut lp = LinearProgram::new(2);
        lp.add_le(vec![(0, q(1, 1)), (1, q(2, 1))], q(4, 1));
        lp.add_le(vec![(0, q(3, 1)), (1, q(1, 1))], q(6, 1));
        match lp.maximize(&[(0, q(1, 1)), (1, q(1, 1))]).unwrap() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, q(14, 5));
                assert_eq!((x[0], x[1]), (q(8, 5), q(6, 5)));
                assert!(lp.satisfies(&x));
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(2);
        lp.add_eq(vec![(0, q(1, 1)), (1, q(1, 1))], q(1, 1));
        lp.add_eq(vec![(0, q(1, 1)), (1, q(1, 1))], q(2, 1));
        assert_eq!(lp.minimize(None).unwrap(), LpOutcome::Infeasible);
        let mut neg = LinearProgram::new(1);
        neg.add_eq(vec![(0, q(1, 1))], q(-1, 3));
        assert_eq!(neg.feasible_point().unwrap(), None);
    }

    #[test]
    fn unbounded_and_redundant() {
        let mut lp = LinearProgram::new(2);
        lp.add_eq(vec![(0, q(1, 1)), (1, q(-1, 1))], q(0, 1));
        lp.add_eq(vec![(0, q(2, 1)), (1, q(-2, 1))], q(0, 1));
        assert_eq!(lp.maximize(&[(0, q(1, 1))]).unwrap(), LpOutcome::Unbounded);
        match lp.minimize(Some(&[(0, q(1, 1))])).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(0, 1)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn degenerate_cycle_free() {
        // classic Beale example cycles under the textbook rule
        let mut lp = LinearProgram::new(4);
        lp.add_le(vec![(0, q(1, 4)), (1, q(-8, 1)), (2, q(-1, 1)), (3, q(9, 1))], q(0, 1));
        lp.add_le(vec![(0, q(1, 2)), (1, q(-12, 1)), (2, q(-1, 2)), (3, q(3, 1))], q(0, 1));
        lp.add_le(vec![(2, q(1, 1))], q(1, 1));
        let cost = [(0, q(-3, 4)), (1, q(20, 1)), (2, q(-1, 2)), (3, q(6, 1))];
        match lp.minimize(Some(&cost)).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-5, 4)),
            o => panic!("{o:?}"),
        }
    }
}
