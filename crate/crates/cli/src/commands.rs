use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use bombprize::classical::{
    blahut_arimoto, eval_classical, BitChannel, BitChannelJson, ClassicalChannel, ClassicalStrategy,
};
use bombprize::game::{
    avg_bomb, avg_prize, dense_coding_protocol, eval_quantum_protocol, theorem1_bound, worst_bomb, worst_prize,
    DistributionJson, Extremum, GameConfig, GameDistribution, Prior, PriorJson,
};
use bombprize::numkit::prob::rational_str;
use bombprize::numkit::{c, random, Prob, Rational};
use bombprize::qchannel::spec::{ChannelSpec, ComplexPair};
use bombprize::qchannel::{ce_numerical, ce_pauli, unot, QuantumChannel};
use bombprize::simkit::{
    classify_strategy, eb_simulation, eb_transcripts, unot_transcripts, CQMixture, CQMixtureJson, Classification,
    StrategyMatrix, StrategyMatrixJson, Transcript,
};
use bombprize::CMatrix;

use crate::input::{bad, invalid, parse};
use crate::SimProtocol;

// ---- capacity ----

#[derive(Debug, Deserialize)]
struct ClassicalInput {
    /// w[output][input]
    w: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct CapacityReport {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
    numerical: f64,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    gap: Option<f64>,
}

pub fn capacity(src: &str) -> anyhow::Result<String> {
    let value: Value = parse(src)?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .unwrap_or_default()
        .to_string();
    let report = if kind == "classical" {
        let input: ClassicalInput = serde_json::from_value(value).map_err(|e| bad(format!("malformed JSON: {e}")))?;
        let ch = invalid(ClassicalChannel::new(input.w))?;
        CapacityReport {
            kind,
            closed_form: None,
            numerical: blahut_arimoto(&ch)?,
            method: "blahut_arimoto",
            gap: None,
        }
    } else {
        let spec: ChannelSpec = serde_json::from_value(value).map_err(|e| bad(format!("malformed JSON: {e}")))?;
        let ch = invalid(spec.to_channel())?;
        let numerical = ce_numerical(&ch);
        let closed_form = spec.pauli_params().map(|p| ce_pauli(&p));
        CapacityReport {
            kind,
            closed_form,
            numerical,
            method: "entanglement_assisted",
            gap: closed_form.map(|cf| (cf - numerical).abs()),
        }
    };
    Ok(serde_json::to_string(&report)?)
}

// ---- bound curve ----

pub fn bound_curve(steps: usize, csv: bool) -> String {
    let points: Vec<(f64, f64)> = (0..steps)
        .map(|k| {
            let cap = k as f64 / (steps - 1) as f64;
            (cap, theorem1_bound(cap))
        })
        .collect();
    if csv {
        let mut out = String::from("capacity,bound");
        for (cap, b) in points {
            out.push_str(&format!("\n{cap},{b}"));
        }
        out
    } else {
        let rows: Vec<Value> = points
            .iter()
            .map(|(cap, b)| json!({ "capacity": cap, "bound": b }))
            .collect();
        Value::Array(rows).to_string()
    }
}

// ---- simulate ----

fn flat(m: &CMatrix) -> Vec<ComplexPair> {
    m.data().iter().map(|z| [z.re, z.im]).collect()
}

fn named_state(name: &str, seed: u64) -> anyhow::Result<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = match name {
        "0" => vec![c(1.0, 0.0), c(0.0, 0.0)],
        "1" => vec![c(0.0, 0.0), c(1.0, 0.0)],
        "+" => vec![c(s, 0.0), c(s, 0.0)],
        "-" => vec![c(s, 0.0), c(-s, 0.0)],
        "+i" => vec![c(s, 0.0), c(0.0, s)],
        "-i" => vec![c(s, 0.0), c(0.0, -s)],
        "random" => return Ok(random::random_density(2, &mut random::stream(seed, 99))),
        other => {
            return Err(bad(format!(
                "unknown state {other:?}; use 0, 1, +, -, +i, -i or random"
            )))
        }
    };
    Ok(CMatrix::ket_bra(&ket))
}

#[derive(Debug, Serialize)]
struct TranscriptOut {
    shared: usize,
    bit: usize,
    output: Vec<ComplexPair>,
}

#[derive(Debug, Serialize)]
struct SimulationReport {
    protocol: &'static str,
    seed: u64,
    runs: usize,
    input: Vec<ComplexPair>,
    transcripts: Vec<TranscriptOut>,
    empirical_output: Vec<ComplexPair>,
    channel_output: Vec<ComplexPair>,
    distance: f64,
}

pub fn simulate(
    protocol: SimProtocol,
    state: &str,
    runs: usize,
    mixture: Option<&str>,
    seed: u64,
) -> anyhow::Result<String> {
    if runs == 0 {
        return Err(bad("runs must be positive"));
    }
    let rho = named_state(state, seed)?;
    let (name, channel, transcripts): (_, QuantumChannel, Vec<Transcript>) = match protocol {
        SimProtocol::Unot => ("unot", unot(), unot_transcripts(&rho, runs, seed)?),
        SimProtocol::Eb => {
            let mix = match mixture {
                Some(src) => invalid(CQMixture::try_from(&parse::<CQMixtureJson>(src)?))?,
                None => CQMixture::uniform_xyz_not(),
            };
            let t = eb_transcripts(&mix, &rho, runs, seed)?;
            ("eb", eb_simulation(&mix), t)
        }
    };
    let mut avg = CMatrix::zeros(2, 2);
    for t in &transcripts {
        avg = &avg + &t.output;
    }
    let avg = avg.scale_re(1.0 / runs as f64);
    let expected = channel.apply(&rho)?;
    let report = SimulationReport {
        protocol: name,
        seed,
        runs,
        input: flat(&rho),
        distance: avg.distance(&expected),
        transcripts: transcripts
            .iter()
            .map(|t| TranscriptOut {
                shared: t.shared,
                bit: t.bit,
                output: flat(&t.output),
            })
            .collect(),
        empirical_output: flat(&avg),
        channel_output: flat(&expected),
    };
    Ok(serde_json::to_string(&report)?)
}

// ---- game ----

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum StrategyInput {
    Classical {
        d: usize,
        enc: Vec<Vec<f64>>,
        dec: Vec<Vec<f64>>,
        #[serde(default)]
        channel: Option<BitChannelJson>,
    },
    Matrix(StrategyMatrixJson),
    DenseCoding {
        channel: ChannelSpec,
    },
    Distribution(DistributionJson),
}

trait JsonValue {
    fn json(&self) -> Value;
}

impl JsonValue for f64 {
    fn json(&self) -> Value {
        json!(self)
    }
}

impl JsonValue for Rational {
    fn json(&self) -> Value {
        json!(rational_str::to_string(self))
    }
}

#[derive(Debug, Serialize)]
struct ExtremumOut {
    value: Value,
    configs: Vec<GameConfig>,
}

fn extremum<T: JsonValue>(e: Extremum<T>) -> ExtremumOut {
    ExtremumOut {
        value: e.value.json(),
        configs: e.configs,
    }
}

#[derive(Debug, Serialize)]
struct GameReport {
    worst_prize: ExtremumOut,
    worst_bomb: ExtremumOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    avg_prize: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    avg_bomb: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subtype: Option<String>,
    distribution: DistributionJson,
}

fn game_report<T: Prob + JsonValue>(d: &GameDistribution<T>, prior: Option<&Prior<f64>>) -> GameReport {
    let f = d.to_f64();
    GameReport {
        worst_prize: extremum(worst_prize(d)),
        worst_bomb: extremum(worst_bomb(d)),
        avg_prize: prior.map(|p| avg_prize(&f, p)),
        avg_bomb: prior.map(|p| avg_bomb(&f, p)),
        subtype: None,
        distribution: DistributionJson::from(&f),
    }
}

pub fn game(src: &str, prior: Option<&str>) -> anyhow::Result<String> {
    let input: StrategyInput = parse(src)?;
    let prior = match prior {
        Some(p) => Some(invalid(Prior::try_from(&parse::<PriorJson>(p)?))?),
        None => None,
    };
    let report = match input {
        StrategyInput::Classical { d, enc, dec, channel } => {
            let s = invalid(ClassicalStrategy::new(d, enc, dec))?;
            let dist = match &channel {
                Some(j) => {
                    if d != 2 {
                        return Err(bad("a bit channel needs d = 2"));
                    }
                    let ch = invalid(BitChannel::try_from(j))?;
                    invalid(eval_classical(&s, ch.as_channel()))?
                }
                None => invalid(eval_classical(&s, &ClassicalChannel::identity(d)))?,
            };
            let mut r = game_report(&dist, prior.as_ref());
            if d == 2 && channel.is_none() {
                r.subtype = Some(match classify_strategy(&s)? {
                    Classification::Subtype(id) => id.label(),
                    Classification::NotOffDiagonal => "not_off_diagonal".into(),
                });
            }
            r
        }
        StrategyInput::Matrix(j) => {
            let m = invalid(StrategyMatrix::try_from(&j))?;
            game_report::<Rational>(&m.to_distribution(), prior.as_ref())
        }
        StrategyInput::DenseCoding { channel } => {
            let ch = invalid(channel.to_channel())?;
            game_report(&eval_quantum_protocol(&dense_coding_protocol(&ch))?, prior.as_ref())
        }
        StrategyInput::Distribution(j) => {
            let d = invalid(GameDistribution::try_from(&j))?;
            game_report(&d, prior.as_ref())
        }
    };
    Ok(serde_json::to_string(&report)?)
}
