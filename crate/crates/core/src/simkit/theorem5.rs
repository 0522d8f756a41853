//! Exact feasibility of decomposing the 4-dimensional NOT matrix into two or
//! three off-diagonal strategies of given subtypes.
//!
//! Only perfectly correlated shared randomness is modelled: a correlated
//! strategy can always be rewritten with perfectly correlated values without
//! changing its input-output behaviour, so a decomposition is a convex
//! combination Σ qᵢ Mᵢ = M_NOT of subtype matrices.
//!
//! Each block is written in scaled variables qᵢ·Mᵢ, which makes every subtype
//! linear except type (1,2), whose free column carries the product r·p. For
//! those blocks the system uses the convex hull of the scaled column pair
//! ({z ≤ x} entrywise), a relaxation: infeasibility and bounds on qᵢ carry over
//! to the exact problem. Feasibility is certified separately by an exact
//! witness, found by fixing p (which makes the product linear) and checked by
//! rebuilding the matrices with [`subtype_matrix`].

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::lp::{q, LinearProgram, LpOutcome, Q};
use super::{classical_not, subtype_matrix, StrategyMatrix, SubtypeId, SubtypeKind};
use crate::error::{Error, Result};
use crate::game::BOXES;
use crate::numkit::prob::rational_str;
use crate::numkit::{rat, Rational};

type Expr = Vec<(usize, Q)>;

struct Block {
    subtype: SubtypeId,
    q: usize,
    entry: Vec<Vec<Expr>>,
    /// Scaled parameters q·p and q·r.
    p: Expr,
    r: Expr,
    /// (x_c, z_c) variable indices of a (1,2) block, for reading p.
    x_c: Option<usize>,
}

fn one() -> Q {
    Q::one()
}

fn free_column(lp: &mut LinearProgram, qv: usize, rows: &[u8], b: u8, entry: &mut [Vec<Expr>]) -> Vec<usize> {
    let vars: Vec<usize> = rows.iter().map(|_| lp.add_var()).collect();
    let mut sum: Expr = vars.iter().map(|&v| (v, one())).collect();
    sum.push((qv, -one()));
    lp.add_eq(sum, Q::zero());
    for (&y, &v) in rows.iter().zip(&vars) {
        entry[(y - 1) as usize][(b - 1) as usize] = vec![(v, one())];
    }
    vars
}

fn fixed_column(qv: usize, row: u8, b: u8, entry: &mut [Vec<Expr>]) {
    entry[(row - 1) as usize][(b - 1) as usize] = vec![(qv, one())];
}

/// Adds block variables. `p_fixed` pins p for a (1,2) block and replaces the
/// hull constraints by the exact ratio condition.
fn add_block(lp: &mut LinearProgram, s: SubtypeId, p_fixed: Option<Q>) -> Block {
    let qv = lp.add_var();
    let mut entry = vec![vec![Expr::new(); BOXES]; BOXES];
    let (b0, b1) = s.sets();
    let get = |entry: &[Vec<Expr>], y: u8, b: u8| entry[(y - 1) as usize][(b - 1) as usize].clone();
    let mut x_c = None;
    let (p, r) = match s.kind() {
        SubtypeKind::T11 => {
            let (a, c) = (b0[0], b1[0]);
            let free: Vec<u8> = (1..=4).filter(|&y| y != a && y != c).collect();
            fixed_column(qv, c, a, &mut entry);
            fixed_column(qv, a, c, &mut entry);
            free_column(lp, qv, &[a, c], free[0], &mut entry);
            free_column(lp, qv, &[a, c], free[1], &mut entry);
            (get(&entry, a, free[0]), get(&entry, a, free[1]))
        }
        SubtypeKind::T12 => {
            let (a, c, d) = (b0[0], b1[0], b1[1]);
            let e = (1..=4).find(|y| ![a, c, d].contains(y)).expect("four boxes");
            let x = free_column(lp, qv, &[c, d], a, &mut entry);
            fixed_column(qv, a, c, &mut entry);
            fixed_column(qv, a, d, &mut entry);
            let z = free_column(lp, qv, &[a, c, d], e, &mut entry);
            match p_fixed {
                None => {
                    lp.add_le(vec![(z[1], one()), (x[0], -one())], Q::zero());
                    lp.add_le(vec![(z[2], one()), (x[1], -one())], Q::zero());
                }
                Some(p) => {
                    lp.add_eq(vec![(x[0], one()), (qv, -p)], Q::zero());
                    lp.add_eq(vec![(z[1], one() - p), (z[2], -p)], Q::zero());
                }
            }
            x_c = Some(x[0]);
            (vec![(x[0], one())], vec![(z[1], one()), (z[2], one())])
        }
        SubtypeKind::T13 => {
            let a = b0[0];
            free_column(lp, qv, &b1, a, &mut entry);
            for &b in &b1 {
                fixed_column(qv, a, b, &mut entry);
            }
            (get(&entry, b1[0], a), get(&entry, b1[1], a))
        }
        SubtypeKind::T22 => {
            // both bombs of a set share the decoder distribution of the other message
            free_column(lp, qv, &b1, b0[0], &mut entry);
            free_column(lp, qv, &b0, b1[0], &mut entry);
            for y in 0..BOXES {
                entry[y][(b0[1] - 1) as usize] = entry[y][(b0[0] - 1) as usize].clone();
                entry[y][(b1[1] - 1) as usize] = entry[y][(b1[0] - 1) as usize].clone();
            }
            (get(&entry, b1[0], b0[0]), get(&entry, b0[0], b1[0]))
        }
    };
    Block {
        subtype: s,
        q: qv,
        entry,
        p,
        r,
        x_c,
    }
}

struct System {
    lp: LinearProgram,
    blocks: Vec<Block>,
}

/// Σᵢ qᵢ Mᵢ = M_NOT with Σ qᵢ = 1. With `q_fixed`, every qᵢ is pinned.
fn system(subtypes: &[SubtypeId], q_fixed: Option<Q>, p_fixed: &[Option<Q>]) -> System {
    let mut lp = LinearProgram::new(0);
    let blocks: Vec<Block> = subtypes
        .iter()
        .zip(p_fixed)
        .map(|(&s, &p)| add_block(&mut lp, s, p))
        .collect();
    let target = q(1, 3);
    for y in 0..BOXES {
        for b in 0..BOXES {
            let terms: Expr = blocks.iter().flat_map(|bl| bl.entry[y][b].clone()).collect();
            let rhs = if y == b { Q::zero() } else { target };
            lp.add_eq(terms, rhs);
        }
    }
    lp.add_eq(blocks.iter().map(|b| (b.q, one())).collect(), one());
    if let Some(v) = q_fixed {
        for b in &blocks {
            lp.add_eq(vec![(b.q, one())], v);
        }
    }
    System { lp, blocks }
}

fn range(lp: &LinearProgram, e: &Expr) -> Result<(Q, Q)> {
    let lo = match lp.minimize(Some(e))? {
        LpOutcome::Optimal { value, .. } => value,
        o => return Err(Error::Precondition(format!("bounded system reported {o:?}"))),
    };
    let hi = match lp.maximize(e)? {
        LpOutcome::Optimal { value, .. } => value,
        o => return Err(Error::Precondition(format!("bounded system reported {o:?}"))),
    };
    Ok((lo, hi))
}

fn eval(e: &Expr, x: &[Q]) -> Q {
    e.iter().fold(Q::zero(), |acc, (v, c)| acc + *c * x[*v])
}

fn to_rational(x: Q) -> Result<Rational> {
    let n = i64::try_from(*x.numer()).map_err(|_| Error::Overflow)?;
    let d = i64::try_from(*x.denom()).map_err(|_| Error::Overflow)?;
    Ok(rat(n, d))
}

/// Rational rendered as "n/d" in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exact(pub Rational);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_str::to_string(&self.0))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairsReport {
    /// Ordered pairs of subtypes examined.
    pub checked: usize,
    pub feasible: Vec<[SubtypeId; 2]>,
}

impl PairsReport {
    pub fn all_infeasible(&self) -> bool {
        self.feasible.is_empty()
    }
}

/// A certified decomposition with exact weights and parameters, together
/// with the range each parameter can take among all decompositions (exact
/// for linear subtypes, an outer bound for type (1,2)).
#[derive(Debug, Clone, Serialize)]
pub struct TripleWitness {
    pub subtypes: [SubtypeId; 3],
    pub q: [Exact; 3],
    pub p: [Exact; 3],
    pub r: [Exact; 3],
    pub p_range: [[Exact; 2]; 3],
    pub r_range: [[Exact; 2]; 3],
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum TripleOutcome {
    Infeasible,
    Feasible(Box<TripleWitness>),
    /// Some decomposition of the relaxed system has qᵢ ≠ 1/3.
    QNotForced {
        q_min: [Exact; 3],
        q_max: [Exact; 3],
    },
    /// Relaxed system feasible with q = 1/3 forced, no exact witness found.
    Undetermined,
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleReport {
    /// Multisets of three subtypes examined.
    pub checked: usize,
    pub infeasible: usize,
    pub feasible: Vec<TripleWitness>,
    pub q_not_forced: Vec<[SubtypeId; 3]>,
    pub undetermined: Vec<[SubtypeId; 3]>,
}

impl TripleReport {
    /// No admissible triple allows weights other than 1/3 each.
    pub fn uniqueness_holds(&self) -> bool {
        self.q_not_forced.is_empty()
    }
}

/// Exact check over all 625 ordered pairs of subtypes.
pub fn theorem5_pairs() -> Result<PairsReport> {
    let all = SubtypeId::all();
    let pairs: Vec<[SubtypeId; 2]> = all.iter().flat_map(|&a| all.iter().map(move |&b| [a, b])).collect();
    let results: Vec<Option<[SubtypeId; 2]>> = pairs
        .par_iter()
        .map(|pair| {
            let sys = system(pair, None, &[None, None]);
            Ok(sys.lp.feasible_point()?.map(|_| *pair))
        })
        .collect::<Result<_>>()?;
    Ok(PairsReport {
        checked: pairs.len(),
        feasible: results.into_iter().flatten().collect(),
    })
}

fn p_grid() -> Vec<Q> {
    (0..=12).map(|k| q(k, 12)).collect()
}

fn witness_from(sys: &System, x: &[Q], relaxed: &System) -> Result<Option<TripleWitness>> {
    let third = rat(1, 3);
    let mut mats: Vec<StrategyMatrix> = Vec::new();
    let mut ps = [Exact(rat(0, 1)); 3];
    let mut rs = [Exact(rat(0, 1)); 3];
    let mut qs = [Exact(third); 3];
    let mut p_range = [[Exact(rat(0, 1)); 2]; 3];
    let mut r_range = [[Exact(rat(0, 1)); 2]; 3];
    for (i, b) in sys.blocks.iter().enumerate() {
        let qi = x[b.q];
        qs[i] = Exact(to_rational(qi)?);
        let p = to_rational(eval(&b.p, x) / qi)?;
        let r = to_rational(eval(&b.r, x) / qi)?;
        ps[i] = Exact(p);
        rs[i] = Exact(r);
        mats.push(subtype_matrix(b.subtype, p, r)?);
        let rb = &relaxed.blocks[i];
        let (plo, phi) = range(&relaxed.lp, &rb.p)?;
        let (rlo, rhi) = range(&relaxed.lp, &rb.r)?;
        let scale = |v: Q| to_rational(v / qi).map(Exact);
        p_range[i] = [scale(plo)?, scale(phi)?];
        r_range[i] = [scale(rlo)?, scale(rhi)?];
    }
    let parts: Vec<(Rational, &StrategyMatrix)> = qs.iter().map(|e| e.0).zip(mats.iter()).collect();
    if StrategyMatrix::convex_combination(&parts)? != classical_not() {
        return Ok(None);
    }
    let subtypes = [sys.blocks[0].subtype, sys.blocks[1].subtype, sys.blocks[2].subtype];
    Ok(Some(TripleWitness {
        subtypes,
        q: qs,
        p: ps,
        r: rs,
        p_range,
        r_range,
    }))
}

/// Decides one triple of subtypes.
pub fn theorem5_triple(subtypes: [SubtypeId; 3]) -> Result<TripleOutcome> {
    let relaxed = system(&subtypes, None, &[None, None, None]);
    let Some(point) = relaxed.lp.feasible_point()? else {
        return Ok(TripleOutcome::Infeasible);
    };
    let mut q_min = [Exact(rat(0, 1)); 3];
    let mut q_max = [Exact(rat(0, 1)); 3];
    let mut forced = true;
    for (i, b) in relaxed.blocks.iter().enumerate() {
        let (lo, hi) = range(&relaxed.lp, &vec![(b.q, one())])?;
        forced &= lo == q(1, 3) && hi == q(1, 3);
        q_min[i] = Exact(to_rational(lo)?);
        q_max[i] = Exact(to_rational(hi)?);
    }
    if !forced {
        return Ok(TripleOutcome::QNotForced { q_min, q_max });
    }

    let third = q(1, 3);
    let relaxed_fixed = system(&subtypes, Some(third), &[None, None, None]);
    let bilinear: Vec<usize> = (0..3).filter(|&i| subtypes[i].kind() == SubtypeKind::T12).collect();
    // p read off the relaxed point first, then a grid
    let mut candidates: Vec<Vec<Option<Q>>> = vec![relaxed
        .blocks
        .iter()
        .map(|b| b.x_c.map(|v| point[v] / point[b.q]))
        .collect()];
    if !bilinear.is_empty() {
        let grid = p_grid();
        let mut combos: Vec<Vec<Option<Q>>> = vec![vec![None; 3]];
        for &i in &bilinear {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    grid.iter().map(move |&p| {
                        let mut c = c.clone();
                        c[i] = Some(p);
                        c
                    })
                })
                .collect();
        }
        candidates.extend(combos);
    }
    for ps in candidates {
        let sys = system(&subtypes, Some(third), &ps);
        if let Some(x) = sys.lp.feasible_point()? {
            if let Some(w) = witness_from(&sys, &x, &relaxed_fixed)? {
                return Ok(TripleOutcome::Feasible(Box::new(w)));
            }
        }
    }
    Ok(TripleOutcome::Undetermined)
}

/// Exact check over all 2925 multisets of three subtypes.
pub fn theorem5_triples() -> Result<TripleReport> {
    let all = SubtypeId::all();
    let n = all.len();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                triples.push([all[i], all[j], all[k]]);
            }
        }
    }
    let outcomes: Vec<TripleOutcome> = triples.par_iter().map(|t| theorem5_triple(*t)).collect::<Result<_>>()?;
    let mut report = TripleReport {
        checked: triples.len(),
        infeasible: 0,
        feasible: Vec::new(),
        q_not_forced: Vec::new(),
        undetermined: Vec::new(),
    };
    for (t, o) in triples.into_iter().zip(outcomes) {
        match o {
            TripleOutcome::Infeasible => report.infeasible += 1,
            TripleOutcome::Feasible(w) => report.feasible.push(*w),
            TripleOutcome::QNotForced { .. } => report.q_not_forced.push(t),
            TripleOutcome::Undetermined => report.undetermined.push(t),
        }
    }
    Ok(report)
}
