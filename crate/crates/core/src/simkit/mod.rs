//! Classical simulations of NOT-type channels: strategy matrices of
//! bomb-only strategies over a noiseless bit, their classification into
//! subtypes, the exact shared-randomness analysis, and measure-and-prepare
//! simulations of entanglement-breaking qubit channels.

pub mod lp;
mod theorem5;

use std::fmt;

use rand::distr::{weighted::WeightedIndex, Distribution};
use serde::{Deserialize, Serialize, Serializer};

use crate::classical::{eval_classical, ClassicalChannel, ClassicalStrategy};
use crate::error::{Error, Result};
use crate::game::{GameConfig, GameDistribution, BOXES};
use crate::numkit::prob::rational_str;
use crate::numkit::{hermitian_eigen, parse_rational, random, rat, CMatrix, Prob, ProbVector, Rational};
use crate::qchannel::spec::{matrix2, BasisSpec, ComplexPair};
use crate::qchannel::{ce_numerical, cq, is_quantum_not_channel, Basis, CQChannel, QuantumChannel};

pub use theorem5::{
    theorem5_pairs, theorem5_triple, theorem5_triples, PairsReport, TripleOutcome, TripleReport, TripleWitness,
};

/// 4×4 column-stochastic matrix with entry (y, b) = p(y|b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyMatrix {
    m: [[Rational; BOXES]; BOXES],
}

impl StrategyMatrix {
    /// `m[y-1][b-1] = p(y|b)`.
    pub fn new(m: [[Rational; BOXES]; BOXES]) -> Result<Self> {
        for b in 0..BOXES {
            let col: Vec<Rational> = (0..BOXES).map(|y| m[y][b]).collect();
            crate::numkit::check_distribution(&col)?;
        }
        Ok(StrategyMatrix { m })
    }

    pub fn entry(&self, y: u8, b: u8) -> Rational {
        self.m[(y - 1) as usize][(b - 1) as usize]
    }

    pub fn rows(&self) -> &[[Rational; BOXES]; BOXES] {
        &self.m
    }

    /// True iff every diagonal entry vanishes.
    pub fn is_off_diagonal(&self) -> bool {
        (0..BOXES).all(|k| self.m[k][k] == rat(0, 1))
    }

    /// Σ wᵢ Mᵢ; errors unless the weights form a distribution.
    pub fn convex_combination(parts: &[(Rational, &StrategyMatrix)]) -> Result<Self> {
        let w: Vec<Rational> = parts.iter().map(|(w, _)| *w).collect();
        crate::numkit::check_distribution(&w)?;
        let mut m = [[rat(0, 1); BOXES]; BOXES];
        for (w, s) in parts {
            for y in 0..BOXES {
                for b in 0..BOXES {
                    m[y][b] += *w * s.m[y][b];
                }
            }
        }
        Self::new(m)
    }

    /// The game distribution p(y|b,x) = M(y, b).
    pub fn to_distribution(&self) -> GameDistribution<Rational> {
        let rows: Vec<Vec<Rational>> = self.m.iter().map(|r| r.to_vec()).collect();
        GameDistribution::from_bomb_matrix(&rows).expect("columns are distributions")
    }
}

impl fmt::Display for StrategyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            let cells: Vec<String> = row.iter().map(rational_str::to_string).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

/// `{"m":[["0","1/3",...],...]}` with rows indexed by the opened box.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StrategyMatrixJson {
    pub m: Vec<Vec<String>>,
}

impl From<&StrategyMatrix> for StrategyMatrixJson {
    fn from(s: &StrategyMatrix) -> Self {
        StrategyMatrixJson {
            m: s.m
                .iter()
                .map(|r| r.iter().map(rational_str::to_string).collect())
                .collect(),
        }
    }
}

impl TryFrom<&StrategyMatrixJson> for StrategyMatrix {
    type Error = Error;
    fn try_from(j: &StrategyMatrixJson) -> Result<Self> {
        if j.m.len() != BOXES || j.m.iter().any(|r| r.len() != BOXES) {
            return Err(Error::Dimension("strategy matrix must be 4x4".into()));
        }
        let mut m = [[rat(0, 1); BOXES]; BOXES];
        for (y, row) in j.m.iter().enumerate() {
            for (b, s) in row.iter().enumerate() {
                m[y][b] = parse_rational(s)?;
            }
        }
        StrategyMatrix::new(m)
    }
}

/// p_NOT(y|b) = (1 − δ_{y,b})/3.
pub fn classical_not() -> StrategyMatrix {
    let mut m = [[rat(1, 3); BOXES]; BOXES];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = rat(0, 1);
    }
    StrategyMatrix { m }
}

// ---- trit protocol ----

fn in_pair(b: u8, i: u8) -> bool {
    b == 1 || b == 1 + i
}

/// Strategy matrix of the trit protocol when Alice holds trit `i` and Bob
/// holds trit `j` (both in 1..=3): Alice sends 1 iff b ∈ {1, 1+i}; Bob opens a
/// uniformly random box outside {1, 1+j} on 1 and inside it on 0.
pub fn trit_branch(i: u8, j: u8) -> Result<StrategyMatrix> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::Range(format!("trits ({i}, {j}) outside 1..=3")));
    }
    let mut m = [[rat(0, 1); BOXES]; BOXES];
    for b in 1..=4u8 {
        let msg = in_pair(b, i);
        for y in 1..=4u8 {
            if in_pair(y, j) != msg {
                m[(y - 1) as usize][(b - 1) as usize] = rat(1, 2);
            }
        }
    }
    StrategyMatrix::new(m)
}

/// Average of the trit branches under uniformly random, perfectly correlated
/// trits.
pub fn trit_protocol_distribution() -> StrategyMatrix {
    let mut m = [[rat(0, 1); BOXES]; BOXES];
    for i in 1..=3u8 {
        for j in 1..=3u8 {
            let weight = if i == j { rat(1, 3) } else { rat(0, 1) };
            let branch = trit_branch(i, j).expect("trits in range");
            for y in 0..BOXES {
                for b in 0..BOXES {
                    m[y][b] += weight * branch.m[y][b];
                }
            }
        }
    }
    StrategyMatrix::new(m).expect("average of stochastic matrices")
}

// ---- subtypes ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SubtypeKind {
    #[serde(rename = "(1,1)")]
    T11,
    #[serde(rename = "(1,2)")]
    T12,
    #[serde(rename = "(1,3)")]
    T13,
    #[serde(rename = "(2,2)")]
    T22,
}

impl fmt::Display for SubtypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubtypeKind::T11 => "(1,1)",
            SubtypeKind::T12 => "(1,2)",
            SubtypeKind::T13 => "(1,3)",
            SubtypeKind::T22 => "(2,2)",
        };
        f.write_str(s)
    }
}

/// Unordered pair {B₀, B₁} of disjoint nonempty box sets, stored with the
/// smaller set first (the one holding box 1 when sizes tie).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubtypeId {
    first: u8,
    second: u8,
}

fn boxes_of(mask: u8) -> Vec<u8> {
    (1..=4u8).filter(|&y| mask & (1 << (y - 1)) != 0).collect()
}

fn mask_of(set: &[u8]) -> Result<u8> {
    let mut m = 0u8;
    for &y in set {
        if !(1..=4).contains(&y) {
            return Err(Error::Range(format!("box {y} outside 1..=4")));
        }
        m |= 1 << (y - 1);
    }
    Ok(m)
}

impl SubtypeId {
    pub fn new(b0: &[u8], b1: &[u8]) -> Result<Self> {
        Self::from_masks(mask_of(b0)?, mask_of(b1)?)
    }

    fn from_masks(a: u8, b: u8) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Precondition("subtype sets must be nonempty".into()));
        }
        if a & b != 0 {
            return Err(Error::Precondition("subtype sets must be disjoint".into()));
        }
        let key = |m: u8| (m.count_ones(), m.trailing_zeros());
        let (first, second) = if key(a) <= key(b) { (a, b) } else { (b, a) };
        Ok(SubtypeId { first, second })
    }

    /// All 25 subtypes, grouped by kind and ordered by their sets.
    pub fn all() -> Vec<SubtypeId> {
        let mut v = Vec::new();
        for a in 1..16u8 {
            for b in 1..16u8 {
                if a & b == 0 {
                    let s = Self::from_masks(a, b).expect("disjoint nonempty");
                    if !v.contains(&s) {
                        v.push(s);
                    }
                }
            }
        }
        v.sort_by_key(|s| (s.kind(), boxes_of(s.first), boxes_of(s.second)));
        v
    }

    pub fn kind(&self) -> SubtypeKind {
        match (self.first.count_ones(), self.second.count_ones()) {
            (1, 1) => SubtypeKind::T11,
            (1, 2) => SubtypeKind::T12,
            (1, 3) => SubtypeKind::T13,
            (2, 2) => SubtypeKind::T22,
            _ => unreachable!("two disjoint nonempty subsets of four boxes"),
        }
    }

    pub fn sets(&self) -> (Vec<u8>, Vec<u8>) {
        (boxes_of(self.first), boxes_of(self.second))
    }

    /// e.g. `1|23`.
    pub fn label(&self) -> String {
        let (a, b) = self.sets();
        let s = |v: Vec<u8>| v.iter().map(|y| y.to_string()).collect::<String>();
        format!("{}|{}", s(a), s(b))
    }
}

impl fmt::Display for SubtypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for SubtypeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

fn check_param(x: Rational, name: &str) -> Result<()> {
    if x < rat(0, 1) || x > rat(1, 1) {
        return Err(Error::Range(format!("{name} = {x} outside [0,1]")));
    }
    Ok(())
}

/// The general strategy matrix of an off-diagonal strategy of subtype `s`
/// with parameters p and r.
///
/// * (1,1) {a},{c}, a < c: bombs a and c are sent to the other box; the
///   smaller remaining bomb opens a with probability p, the larger with r.
/// * (1,2) {a},{c,d}: bomb a opens c with probability p and d otherwise;
///   bombs c, d open a; the remaining bomb opens a with probability 1 − r and
///   otherwise follows bomb a.
/// * (1,3) {a},{c,d,e}: bomb a opens c, d, e with probabilities p, r, 1−p−r;
///   every other bomb opens a.
/// * (2,2) with 1 ∈ B₀: bombs in B₀ open min B₁ with probability p, max B₁
///   otherwise; bombs in B₁ open 1 with probability r, max B₀ otherwise.
pub fn subtype_matrix(s: SubtypeId, p: Rational, r: Rational) -> Result<StrategyMatrix> {
    check_param(p, "p")?;
    check_param(r, "r")?;
    let one = rat(1, 1);
    let mut m = [[rat(0, 1); BOXES]; BOXES];
    let mut set = |y: u8, b: u8, v: Rational| m[(y - 1) as usize][(b - 1) as usize] = v;
    let (b0, b1) = s.sets();
    match s.kind() {
        SubtypeKind::T11 => {
            let (a, c) = (b0[0], b1[0]);
            set(c, a, one);
            set(a, c, one);
            let free: Vec<u8> = (1..=4).filter(|&y| y != a && y != c).collect();
            set(a, free[0], p);
            set(c, free[0], one - p);
            set(a, free[1], r);
            set(c, free[1], one - r);
        }
        SubtypeKind::T12 => {
            let (a, c, d) = (b0[0], b1[0], b1[1]);
            let e = (1..=4).find(|y| ![a, c, d].contains(y)).expect("four boxes");
            set(c, a, p);
            set(d, a, one - p);
            set(a, c, one);
            set(a, d, one);
            set(a, e, one - r);
            set(c, e, r * p);
            set(d, e, r * (one - p));
        }
        SubtypeKind::T13 => {
            if p + r > one {
                return Err(Error::Range(format!("p + r = {} exceeds 1", p + r)));
            }
            let a = b0[0];
            set(b1[0], a, p);
            set(b1[1], a, r);
            set(b1[2], a, one - p - r);
            for &b in &b1 {
                set(a, b, one);
            }
        }
        SubtypeKind::T22 => {
            for &b in &b0 {
                set(b1[0], b, p);
                set(b1[1], b, one - p);
            }
            for &b in &b1 {
                set(b0[0], b, r);
                set(b0[1], b, one - r);
            }
        }
    }
    StrategyMatrix::new(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Subtype(SubtypeId),
    NotOffDiagonal,
}

/// Classifies a two-message strategy over a noiseless bit by its decoder
/// supports B_m = {y : dec(y|m) > 0}; strategies that open the bomb with
/// positive probability for some configuration are rejected.
pub fn classify_strategy<T: Prob>(s: &ClassicalStrategy<T>) -> Result<Classification> {
    if s.d() != 2 {
        return Err(Error::Dimension(format!("expected 2 messages, got {}", s.d())));
    }
    let dist = eval_classical(s, &ClassicalChannel::identity(2))?;
    let hits = GameConfig::all().iter().any(|&c| *dist.p(c.bomb, c) > T::zero());
    if hits {
        return Ok(Classification::NotOffDiagonal);
    }
    let (b0, b1) = (s.support(0), s.support(1));
    Ok(Classification::Subtype(SubtypeId::new(&b0, &b1)?))
}

/// Strategy matrix of a two-message strategy whose encoder ignores the prize.
pub fn strategy_matrix(s: &ClassicalStrategy<Rational>) -> Result<StrategyMatrix> {
    if s.d() != 2 {
        return Err(Error::Dimension(format!("expected 2 messages, got {}", s.d())));
    }
    let cfgs = GameConfig::all();
    for c in &cfgs {
        let first = cfgs.iter().find(|o| o.bomb == c.bomb).expect("every bomb has configs");
        if s.enc(*c) != s.enc(*first) {
            return Err(Error::Precondition("encoder depends on the prize location".into()));
        }
    }
    let dist = eval_classical(s, &ClassicalChannel::identity(2))?;
    let mut m = [[rat(0, 1); BOXES]; BOXES];
    for c in cfgs {
        for y in 1..=4u8 {
            m[(y - 1) as usize][c.b0()] = *dist.p(y, c);
        }
    }
    StrategyMatrix::new(m)
}

// ---- entanglement-breaking simulations ----

/// Convex combination of classical-quantum qubit channels.
#[derive(Debug, Clone)]
pub struct CQMixture {
    components: Vec<(f64, CQChannel)>,
}

impl CQMixture {
    pub fn new(components: Vec<(f64, CQChannel)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Probability("empty mixture".into()));
        }
        ProbVector::new(components.iter().map(|(w, _)| *w).collect())?;
        if components.iter().any(|(w, _)| *w <= 0.0) {
            return Err(Error::Probability("mixture weights must be positive".into()));
        }
        Ok(CQMixture { components })
    }

    /// NOT channels in the X, Y and Z eigenbases with equal weights.
    pub fn uniform_xyz_not() -> Self {
        CQMixture {
            components: (1..=3).map(|k| (1.0 / 3.0, CQChannel::not(Basis::pauli(k)))).collect(),
        }
    }

    pub fn components(&self) -> &[(f64, CQChannel)] {
        &self.components
    }
}

/// One component of the CQ mixture JSON; missing outputs default to the NOT
/// specialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CQComponentJson {
    pub w: f64,
    pub basis: BasisSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma0: Option<Vec<ComplexPair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma1: Option<Vec<ComplexPair>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CQMixtureJson {
    pub components: Vec<CQComponentJson>,
}

impl TryFrom<&CQMixtureJson> for CQMixture {
    type Error = Error;
    fn try_from(j: &CQMixtureJson) -> Result<Self> {
        let comps = j
            .components
            .iter()
            .map(|c| {
                let basis = c.basis.to_basis()?;
                let ch = match (&c.sigma0, &c.sigma1) {
                    (None, None) => CQChannel::not(basis),
                    (Some(s0), Some(s1)) => CQChannel::new(basis, matrix2(s0)?, matrix2(s1)?)?,
                    _ => return Err(Error::Channel("give both sigma0 and sigma1 or neither".into())),
                };
                Ok((c.w, ch))
            })
            .collect::<Result<Vec<_>>>()?;
        CQMixture::new(comps)
    }
}

/// Measure-and-prepare Kraus operators √(q μ) |e⟩⟨ψ_m| of a weighted CQ channel.
fn measure_prepare_kraus(weight: f64, ch: &CQChannel, out: &mut Vec<CMatrix>) {
    for m in 0..2 {
        let eig = hermitian_eigen(&ch.outputs[m]).expect("outputs are Hermitian");
        for (k, &mu) in eig.values.iter().enumerate() {
            if mu * weight > 1e-300 {
                out.push(CMatrix::outer(&eig.vector(k), ch.basis.ket(m)).scale_re((weight * mu).sqrt()));
            }
        }
    }
}

/// Bob and Alice share i ~ q; Alice measures in basis Bᵢ and sends the bit m;
/// Bob prepares σ^(i)_m. Returns the averaged channel.
pub fn eb_simulation(mix: &CQMixture) -> QuantumChannel {
    let mut ops = Vec::new();
    for (w, ch) in &mix.components {
        measure_prepare_kraus(*w, ch, &mut ops);
    }
    QuantumChannel::from_kraus(ops).expect("weighted measure-and-prepare maps are CPTP")
}

/// One-bit simulation of the universal NOT: shared uniform i ∈ {X, Y, Z},
/// measurement in the eigenbasis of σᵢ, preparation of the orthogonal state.
pub fn unot_bit_simulation() -> QuantumChannel {
    let mut ops = Vec::new();
    for k in 1..=3 {
        let b = Basis::pauli(k);
        for m in 0..2 {
            ops.push(CMatrix::outer(b.ket(1 - m), b.ket(m)).scale_re((1.0f64 / 3.0).sqrt()));
        }
    }
    QuantumChannel::from_kraus(ops).expect("measure-and-prepare is CPTP")
}

/// One run of a measure-and-prepare simulation.
#[derive(Debug, Clone)]
pub struct Transcript {
    /// Index of the shared random value (0-based component index).
    pub shared: usize,
    /// Bit sent by Alice.
    pub bit: usize,
    /// State prepared by Bob.
    pub output: CMatrix,
}

fn born(basis: &Basis, rho: &CMatrix) -> [f64; 2] {
    let p0 = basis.projector(0).trace_product(rho).re.clamp(0.0, 1.0);
    [p0, 1.0 - p0]
}

/// Samples `runs` transcripts of the EB simulation on input `rho`.
pub fn eb_transcripts(mix: &CQMixture, rho: &CMatrix, runs: usize, seed: u64) -> Result<Vec<Transcript>> {
    crate::qchannel::check_density(rho)?;
    let mut rng = random::stream(seed, 0);
    let shared =
        WeightedIndex::new(mix.components.iter().map(|(w, _)| *w)).map_err(|e| Error::Probability(e.to_string()))?;
    (0..runs)
        .map(|_| {
            let i = shared.sample(&mut rng);
            let ch = &mix.components[i].1;
            let p = born(&ch.basis, rho);
            let bit = WeightedIndex::new(p)
                .map_err(|e| Error::Probability(e.to_string()))?
                .sample(&mut rng);
            Ok(Transcript {
                shared: i,
                bit,
                output: ch.outputs[bit].clone(),
            })
        })
        .collect()
}

/// Samples transcripts of the one-bit UNOT simulation; `shared` is 0, 1, 2
/// for the X, Y, Z bases.
pub fn unot_transcripts(rho: &CMatrix, runs: usize, seed: u64) -> Result<Vec<Transcript>> {
    eb_transcripts(&CQMixture::uniform_xyz_not(), rho, runs, seed)
}

#[derive(Debug, Clone, Serialize)]
pub struct RuskaiReport {
    /// Entanglement-assisted capacity of each component, in mixture order.
    pub component_capacities: Vec<f64>,
    pub mixture_capacity: f64,
    /// Every component carries one bit while the mixture carries less.
    pub holds: bool,
}

/// Capacities of the components of a quantum NOT mixture against the
/// capacity of the mixture itself.
pub fn noisy_ruskai_check(mix: &CQMixture) -> Result<RuskaiReport> {
    let channel = eb_simulation(mix);
    if !is_quantum_not_channel(&channel) {
        return Err(Error::Precondition("mixture is not a quantum NOT channel".into()));
    }
    let component_capacities: Vec<f64> = mix.components.iter().map(|(_, c)| ce_numerical(&cq(c))).collect();
    let mixture_capacity = ce_numerical(&channel);
    let holds = component_capacities.iter().all(|c| (c - 1.0).abs() < 1e-3) && mixture_capacity < 1.0;
    Ok(RuskaiReport {
        component_capacities,
        mixture_capacity,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchannel::{cq_not, unot};

    #[test]
    fn not_matrix_entries() {
        let n = classical_not();
        assert_eq!(n.entry(1, 1), rat(0, 1));
        assert_eq!(n.entry(2, 1), rat(1, 3));
        assert!(n.is_off_diagonal());
    }

    #[test]
    fn trit_branches() {
        let b = trit_branch(1, 1).unwrap();
        assert_eq!(
            (1..=4).map(|y| b.entry(y, 1)).collect::<Vec<_>>(),
            vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)]
        );
        assert_eq!(trit_protocol_distribution(), classical_not());
        assert!(trit_branch(0, 1).is_err());
    }

    #[test]
    fn twenty_five_subtypes() {
        let all = SubtypeId::all();
        assert_eq!(all.len(), 25);
        let count = |k| all.iter().filter(|s| s.kind() == k).count();
        assert_eq!(
            [
                count(SubtypeKind::T11),
                count(SubtypeKind::T12),
                count(SubtypeKind::T13),
                count(SubtypeKind::T22)
            ],
            [6, 12, 4, 3]
        );
        assert_eq!(all[0].label(), "1|2");
        assert_eq!(SubtypeId::new(&[3, 4], &[1, 2]).unwrap().label(), "12|34");
        assert_eq!(SubtypeId::new(&[2, 3], &[1]).unwrap().label(), "1|23");
        assert!(SubtypeId::new(&[1, 2], &[2]).is_err());
    }

    #[test]
    fn subtype_examples() {
        let m = subtype_matrix(SubtypeId::new(&[1], &[2]).unwrap(), rat(0, 1), rat(0, 1)).unwrap();
        assert_eq!(m.entry(2, 3), rat(1, 1));
        assert_eq!(m.entry(2, 4), rat(1, 1));
        let m = subtype_matrix(SubtypeId::new(&[1, 2], &[3, 4]).unwrap(), rat(1, 2), rat(1, 2)).unwrap();
        for y in 1..=4u8 {
            for b in 1..=4u8 {
                let same_half = (y <= 2) == (b <= 2);
                assert_eq!(m.entry(y, b), if same_half { rat(0, 1) } else { rat(1, 2) });
            }
        }
        let s = SubtypeId::new(&[1], &[2, 3, 4]).unwrap();
        let m = subtype_matrix(s, rat(1, 3), rat(1, 3)).unwrap();
        assert_eq!(
            (1..=4).map(|y| m.entry(y, 1)).collect::<Vec<_>>(),
            vec![rat(0, 1), rat(1, 3), rat(1, 3), rat(1, 3)]
        );
        assert!(subtype_matrix(s, rat(2, 3), rat(2, 3)).is_err());
        assert!(subtype_matrix(s, rat(-1, 3), rat(0, 1)).is_err());
    }

    #[test]
    fn classify_examples() {
        let f: Vec<usize> = GameConfig::all().iter().map(|c| (c.bomb == 1) as usize).collect();
        let s = ClassicalStrategy::<Rational>::deterministic(2, &f, &[1, 2]).unwrap();
        let c = classify_strategy(&s).unwrap();
        assert_eq!(c, Classification::Subtype(SubtypeId::new(&[1], &[2]).unwrap()));

        let f: Vec<usize> = GameConfig::all().iter().map(|c| (c.bomb <= 2) as usize).collect();
        let half = rat(1, 2);
        let z = rat(0, 1);
        let enc = f
            .iter()
            .map(|&m| if m == 0 { vec![rat(1, 1), z] } else { vec![z, rat(1, 1)] })
            .collect();
        let s = ClassicalStrategy::new(2, enc, vec![vec![half, half, z, z], vec![z, z, half, half]]).unwrap();
        match classify_strategy(&s).unwrap() {
            Classification::Subtype(id) => assert_eq!(id.kind(), SubtypeKind::T22),
            o => panic!("{o:?}"),
        }

        let enc = vec![vec![half, half]; 12];
        let s = ClassicalStrategy::new(2, enc, vec![vec![half, half, z, z], vec![z, half, half, z]]).unwrap();
        assert_eq!(classify_strategy(&s).unwrap(), Classification::NotOffDiagonal);
    }

    #[test]
    fn strategy_matrix_json_round_trip() {
        let j = StrategyMatrixJson::from(&classical_not());
        assert_eq!(j.m[1][0], "1/3");
        let text = serde_json::to_string(&j).unwrap();
        let back: StrategyMatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(StrategyMatrix::try_from(&back).unwrap(), classical_not());
    }

    #[test]
    fn unot_simulation_matches() {
        let sim = unot_bit_simulation();
        assert!(sim.choi().distance(unot().choi()) < 1e-12);
        let out = sim.apply(&CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]])).unwrap();
        assert!((out[(0, 0)].re - 1.0 / 3.0).abs() < 1e-12);
        assert!((out[(1, 1)].re - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn eb_simulation_single_component() {
        let mix = CQMixture::new(vec![(1.0, CQChannel::not(Basis::z()))]).unwrap();
        assert!(eb_simulation(&mix).choi().distance(cq_not(&Basis::z()).choi()) < 1e-13);
        assert!(noisy_ruskai_check(&mix).is_err());
    }

    #[test]
    fn z_branch_transcript() {
        let mix = CQMixture::new(vec![(1.0, CQChannel::not(Basis::z()))]).unwrap();
        let ket0 = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]);
        for t in eb_transcripts(&mix, &ket0, 20, 3).unwrap() {
            assert_eq!(t.bit, 0);
            assert!((t.output[(1, 1)].re - 1.0).abs() < 1e-15);
        }
        let ts = unot_transcripts(&ket0, 50, 1).unwrap();
        assert!(ts.iter().all(|t| t.shared < 3));
    }

    #[test]
    fn mixture_json() {
        let j: CQMixtureJson =
            serde_json::from_str(r#"{"components":[{"w":0.5,"basis":"X"},{"w":0.5,"basis":"Z"}]}"#).unwrap();
        let m = CQMixture::try_from(&j).unwrap();
        assert_eq!(m.components().len(), 2);
        let bad: CQMixtureJson =
            serde_json::from_str(r#"{"components":[{"w":1.0,"basis":"X","sigma0":[[1,0],[0,0],[0,0],[0,0]]}]}"#)
                .unwrap();
        assert!(CQMixture::try_from(&bad).is_err());
    }
}
