use std::time::Instant;

use clap::ValueEnum;
use rand::Rng as _;

use bombprize::classical::{
    adversarial_bomb_search, ambiguous_probability, blahut_arimoto, enumerate_theorem2, eval_classical,
    send_prize_location, symmetrized_capacity, BitChannel, ClassicalChannel,
};
use bombprize::game::{
    avg_bomb, dense_coding_protocol, eval_quantum_protocol, optimal_average_strategy, random_quantum_not_mixture,
    sample_bomb_avoiding_protocols, theorem1_bound, theorem1ave_bound, worst_bomb, worst_prize, GameConfig, Prior,
};
use bombprize::numkit::prob::rational_str;
use bombprize::numkit::{binary_entropy, random, rat, topsoe_bound, Rational};
use bombprize::qchannel::spec::ChannelSpec;
use bombprize::qchannel::{
    ce_numerical, ce_pauli, cq, cq_not, is_quantum_not_channel, max_degradation_weight, not_mixture, twirl_monte_carlo,
    unot, Basis, CQChannel, PauliParams, QuantumChannel,
};
use bombprize::simkit::{
    classical_not, eb_simulation, noisy_ruskai_check, theorem5_pairs, theorem5_triple, theorem5_triples,
    trit_protocol_distribution, unot_bit_simulation, CQMixture, SubtypeId, SubtypeKind, TripleOutcome,
};
use bombprize::CMatrix;

use crate::input::bad;
use crate::report::{Check, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// UNOT capacity (closed form and numerical) and classical NOT capacity.
    Capacity,
    /// Dense coding over a named channel.
    Protocol1,
    /// One-bit UNOT simulation.
    Protocol2,
    /// EB simulation of random CQ mixtures.
    Protocol3,
    /// Bit-channel bound chain and the entropy inequality grid.
    Thm1,
    /// Exhaustive zero-prize check for d = 2, 3 and the d = 4 strategy.
    Thm2,
    /// Sampled bomb-avoiding two-qubit protocols.
    Thm4,
    /// Subtype pairs and triples mixing to the classical NOT.
    Thm5,
    /// Trit protocol equals the classical NOT.
    Trit,
    /// Degradation weights and quantum NOT recognition.
    Degradation,
    /// Optimal average-case strategy.
    Average,
    /// Noisy additivity counterexample.
    Ruskai,
    /// Capacity of sampled NOT mixtures and twirling.
    Minimality,
    /// Every suite in turn.
    All,
}

impl Suite {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

pub struct Params {
    pub seed: u64,
    pub d: Option<usize>,
    pub channel: String,
    pub samples: Option<usize>,
    pub restarts: Option<usize>,
    pub grid: Option<usize>,
    pub timing: bool,
}

/// Runs `suite`, handing every output line to `emit`. Returns overall pass.
pub fn run(suite: Suite, p: &Params, emit: &mut dyn FnMut(String)) -> anyhow::Result<bool> {
    if suite == Suite::All {
        let mut pass = true;
        for s in Suite::value_variants().iter().filter(|s| **s != Suite::All) {
            pass &= run(*s, p, emit)?;
        }
        return Ok(pass);
    }
    let start = Instant::now();
    let checks = match suite {
        Suite::Capacity => capacity(),
        Suite::Protocol1 => protocol1(&p.channel)?,
        Suite::Protocol2 => vec![Check::at_most(
            "choi distance to unot",
            0.0,
            unot_bit_simulation().choi().distance(unot().choi()),
            1e-12,
        )],
        Suite::Protocol3 => protocol3(p.samples.unwrap_or(20), p.seed),
        Suite::Thm1 => thm1(
            p.samples.unwrap_or(200),
            p.restarts.unwrap_or(4),
            p.grid.unwrap_or(99),
            p.seed,
        ),
        Suite::Thm2 => thm2(p.d, p.samples.unwrap_or(10_000), p.seed, emit)?,
        Suite::Thm4 => thm4(p.samples.unwrap_or(100), p.seed),
        Suite::Thm5 => thm5()?,
        Suite::Trit => vec![Check::equal(
            "trit protocol equals classical NOT",
            true,
            trit_protocol_distribution() == classical_not(),
        )],
        Suite::Degradation => degradation(p.samples.unwrap_or(50), p.seed),
        Suite::Average => average()?,
        Suite::Ruskai => ruskai()?,
        Suite::Minimality => minimality(p.samples.unwrap_or(50), p.seed),
        Suite::All => unreachable!(),
    };
    let mut report = SuiteReport::new(&suite.name(), p.seed, checks);
    if p.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    emit(serde_json::to_string(&report)?);
    Ok(report.pass)
}

fn unot_capacity_value() -> f64 {
    2.0 - 3f64.log2()
}

fn capacity() -> Vec<Check> {
    let target = unot_capacity_value();
    let third = 1.0 / 3.0;
    let closed = ce_pauli(&PauliParams::new(0.0, third, third, third).expect("valid weights"));
    let not4: Vec<Vec<f64>> = (0..4)
        .map(|y| (0..4).map(|b| if y == b { 0.0 } else { third }).collect())
        .collect();
    let ba = blahut_arimoto(&ClassicalChannel::new(not4).expect("stochastic columns")).unwrap_or(f64::NAN);
    vec![
        Check::close("unot closed form", target, closed, 4.0 * f64::EPSILON),
        Check::close("unot numerical", target, ce_numerical(&unot()), 1e-3),
        Check::close("classical NOT via Blahut-Arimoto", target, ba, 1e-6),
    ]
}

fn protocol1(channel: &str) -> anyhow::Result<Vec<Check>> {
    let spec = ChannelSpec::from_name(channel).map_err(bad)?;
    let d = eval_quantum_protocol(&dense_coding_protocol(&spec.to_channel().map_err(bad)?))?;
    let wb = worst_bomb(&d).value;
    let wp = worst_prize(&d).value;
    Ok(match spec {
        ChannelSpec::Unot => vec![
            Check::close("worst_bomb", 0.0, wb, 1e-12),
            Check::close("worst_prize", 1.0 / 3.0, wp, 1e-12),
        ],
        ChannelSpec::Identity => {
            let min_bomb = GameConfig::all()
                .iter()
                .map(|&c| d.p(c.bomb, c))
                .fold(f64::INFINITY, |a, &b| a.min(b));
            vec![Check::close("min p(b|b,x)", 1.0, min_bomb, 1e-12)]
        }
        // A single-basis NOT leaves one box unreachable for each bomb.
        _ => vec![
            Check::close("worst_bomb", 0.0, wb, 1e-12),
            Check::close("worst_prize", 0.0, wp, 1e-12),
        ],
    })
}

fn protocol3(samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = random::stream(seed, 10);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let k = rng.random_range(1..=4);
        let w = random::random_simplex(k, &mut rng);
        let comps: Vec<(f64, CQChannel)> = w
            .into_iter()
            .map(|wi| {
                let basis = Basis::from_unitary(&random::haar_unitary(2, &mut rng)).expect("unitary columns");
                let s0 = random::random_density(2, &mut rng);
                let s1 = random::random_density(2, &mut rng);
                (wi, CQChannel::new(basis, s0, s1).expect("valid outputs"))
            })
            .collect();
        let mut avg = CMatrix::zeros(4, 4);
        for (wi, ch) in &comps {
            avg = &avg + &cq(ch).choi().scale_re(*wi);
        }
        let sim = eb_simulation(&CQMixture::new(comps).expect("positive weights"));
        worst = worst.max(sim.choi().distance(&avg));
    }
    vec![Check::at_most(
        "max choi distance to weighted average",
        0.0,
        worst,
        1e-13,
    )]
}

fn thm1(channels: usize, restarts: usize, grid: usize, seed: u64) -> Vec<Check> {
    let mut rng = random::stream(seed, 4);
    let (mut chain_violations, mut bound_violations) = (0usize, 0usize);
    let mut min_margin = f64::INFINITY;
    for i in 0..channels {
        let a: f64 = rng.random();
        let b: f64 = rng.random();
        let ch = BitChannel::new([[1.0 - a, b], [a, 1.0 - b]]).expect("stochastic");
        let (p_sym, c_sym) = symmetrized_capacity(&ch);
        if ambiguous_probability(&ch) < p_sym {
            chain_violations += 1;
        }
        let adv = adversarial_bomb_search(&ch, restarts.max(1), seed.wrapping_add(i as u64));
        let margin = adv.worst_bomb - theorem1_bound(c_sym);
        min_margin = min_margin.min(margin);
        if margin < 0.0 {
            bound_violations += 1;
        }
    }
    let topsoe_failures = (1..=grid)
        .filter(|&k| {
            let p = k as f64 / (grid + 1) as f64;
            binary_entropy(p).expect("p in [0,1]") > topsoe_bound(p) + 1e-15
        })
        .count();
    let mut checks = vec![
        Check::equal("p_ambiguous >= p_sym violations", 0, chain_violations),
        Check::equal("adversarial worst_bomb >= bound violations", 0, bound_violations),
        Check::equal("entropy inequality grid failures", 0, topsoe_failures),
    ];
    if channels > 0 {
        checks.push(Check::at_least("min adversarial margin", 0.0, min_margin, 0.0));
    }
    checks
}

fn thm2(d: Option<usize>, samples: usize, seed: u64, emit: &mut dyn FnMut(String)) -> anyhow::Result<Vec<Check>> {
    let ds = d.map_or(vec![2, 3, 4], |d| vec![d]);
    let mut checks = Vec::new();
    for d in ds {
        if d == 4 {
            let dist = eval_classical(&send_prize_location(), &ClassicalChannel::identity(4))?;
            checks.push(Check::equal(
                "d=4 worst_prize",
                "1".to_string(),
                worst_prize(&dist).value.to_string(),
            ));
            checks.push(Check::equal(
                "d=4 worst_bomb",
                "0".to_string(),
                worst_bomb(&dist).value.to_string(),
            ));
            continue;
        }
        let r = enumerate_theorem2(d, samples, seed)?;
        for rec in &r.decoders {
            emit(serde_json::to_string(&serde_json::json!({ "d": d, "decoder": rec }))?);
        }
        let total = (d as u64).pow(12) * 4u64.pow(d as u32);
        checks.push(Check::equal(
            &format!("d={d} deterministic strategies"),
            total,
            r.deterministic_total,
        ));
        checks.push(Check::equal(
            &format!("d={d} deterministic violations"),
            0,
            r.violations,
        ));
        checks.push(Check::equal(
            &format!("d={d} stochastic samples"),
            samples,
            r.stochastic_samples,
        ));
        checks.push(Check::equal(
            &format!("d={d} stochastic bomb failures"),
            0,
            r.stochastic_bomb_failures,
        ));
        checks.push(Check::equal(
            &format!("d={d} stochastic violations"),
            0,
            r.stochastic_violations,
        ));
    }
    Ok(checks)
}

fn thm4(samples: usize, seed: u64) -> Vec<Check> {
    let r = sample_bomb_avoiding_protocols(samples, samples.saturating_mul(2000).max(1000), seed);
    vec![
        Check::equal("bomb-avoiding protocols found", samples, r.accepted),
        Check::at_most("max worst_prize", 1.0 / 3.0, r.max_worst_prize, 1e-6),
        Check::equal("violations", 0, r.violations),
    ]
}

fn thm5() -> anyhow::Result<Vec<Check>> {
    let pairs = theorem5_pairs()?;
    let triples = theorem5_triples()?;
    let twos: Vec<SubtypeId> = SubtypeId::all()
        .into_iter()
        .filter(|s| s.kind() == SubtypeKind::T22)
        .collect();
    let half = rat(1, 2);
    let third = rational_str::to_string(&rat(1, 3));
    let (q22, pr22) = match theorem5_triple([twos[0], twos[1], twos[2]])? {
        TripleOutcome::Feasible(w) => {
            let q: Vec<String> = w.q.iter().map(|x| rational_str::to_string(&x.0)).collect();
            let pinned = w
                .p_range
                .iter()
                .chain(w.r_range.iter())
                .all(|r| r[0].0 == half && r[1].0 == half);
            (q, pinned)
        }
        other => (vec![format!("{other:?}")], false),
    };
    let forced_q: Vec<String> = triples
        .feasible
        .iter()
        .flat_map(|w| w.q.iter().map(|x| rational_str::to_string(&x.0)))
        .filter(|s| *s != third)
        .collect();
    Ok(vec![
        Check::equal("feasible pairs", 0, pairs.feasible.len()),
        Check::equal("pairs checked", 625, pairs.checked),
        Check::equal("triples checked", 2925, triples.checked),
        Check::equal(
            "triples with q other than 1/3",
            0,
            forced_q.len() + triples.q_not_forced.len(),
        ),
        Check::equal("undetermined triples", 0, triples.undetermined.len()),
        Check::equal("(2,2) triple q", vec![third.clone(), third.clone(), third], q22),
        Check::equal("(2,2) triple p = r = 1/2 forced", true, pr22),
    ])
}

fn degradation(samples: usize, seed: u64) -> Vec<Check> {
    let u = unot();
    let mut rng = random::stream(seed, 8);
    let recognised = (0..samples)
        .filter(|_| is_quantum_not_channel(&not_mixture(&random_quantum_not_mixture(&mut rng))))
        .count();
    let singles = [Basis::x(), Basis::y(), Basis::z()];
    let rejected = singles.iter().filter(|b| !is_quantum_not_channel(&cq_not(b))).count();
    vec![
        Check::close(
            "w(cq_not Z, unot)",
            2.0 / 3.0,
            max_degradation_weight(&cq_not(&Basis::z()), &u),
            1e-8,
        ),
        Check::close("w(unot, unot)", 1.0, max_degradation_weight(&u, &u), 1e-8),
        Check::close(
            "w(identity, unot)",
            0.0,
            max_degradation_weight(&QuantumChannel::identity(), &u),
            1e-8,
        ),
        Check::equal("sampled mixtures recognised as quantum NOT", samples, recognised),
        Check::equal("single-basis channels rejected", singles.len(), rejected),
    ]
}

fn average() -> anyhow::Result<Vec<Check>> {
    let prior = Prior::<Rational>::uniform();
    let mut checks = Vec::new();
    for (d, want) in [(2, rat(1, 2)), (3, rat(3, 4))] {
        let o = optimal_average_strategy(&prior, d)?;
        checks.push(Check::equal(
            &format!("d={d} average prize"),
            want.to_string(),
            o.value.to_string(),
        ));
        checks.push(Check::equal(
            &format!("d={d} average bomb"),
            "0".to_string(),
            avg_bomb(&o.distribution, &prior).to_string(),
        ));
    }
    checks.push(Check::close(
        "average bound at C=0",
        1.0 / 16.0,
        theorem1ave_bound(0.0, &prior),
        1e-15,
    ));
    Ok(checks)
}

fn ruskai() -> anyhow::Result<Vec<Check>> {
    let r = noisy_ruskai_check(&CQMixture::uniform_xyz_not())?;
    let mut checks: Vec<Check> = r
        .component_capacities
        .iter()
        .enumerate()
        .map(|(i, c)| Check::close(&format!("component {i} capacity"), 1.0, *c, 1e-3))
        .collect();
    checks.push(Check::at_most(
        "mixture capacity",
        unot_capacity_value(),
        r.mixture_capacity,
        1e-3,
    ));
    checks.push(Check::at_most(
        "mixture capacity below one bit",
        1.0,
        r.mixture_capacity,
        0.0,
    ));
    Ok(checks)
}

fn minimality(samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = random::stream(seed, 13);
    let min_c = (0..samples)
        .map(|_| ce_numerical(&not_mixture(&random_quantum_not_mixture(&mut rng))))
        .fold(f64::INFINITY, f64::min);
    let twirl_samples = (samples * 200).max(1);
    let twirl = twirl_monte_carlo(&cq_not(&Basis::z()), twirl_samples, seed)
        .choi()
        .distance(unot().choi());
    let mut checks = vec![Check::at_most("twirl distance to unot", 0.0, twirl, 0.05)];
    if samples > 0 {
        checks.insert(
            0,
            Check::at_least("min NOT-mixture capacity", unot_capacity_value(), min_c, 1e-3),
        );
    }
    checks
}
