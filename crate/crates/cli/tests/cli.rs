use std::io::Write as _;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bombprize"));
    c.env_remove("BOMBPRIZE_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    serde_json::from_str(text.lines().last().expect("some output")).unwrap()
}

fn h2(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[test]
fn capacity_of_unot_and_identity() {
    let out = run(&["capacity", r#"{"kind":"unot"}"#]);
    assert!(out.status.success());
    let v = json(&out);
    let target = 2.0 - 3f64.log2();
    assert!((v["closed_form"].as_f64().unwrap() - target).abs() < 1e-12);
    assert!((v["numerical"].as_f64().unwrap() - target).abs() < 1e-3);

    let v = json(&run(&["capacity", r#"{"kind":"pauli","p":[1,0,0,0]}"#]));
    assert!((v["closed_form"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn classical_capacity_from_file() {
    let t = 1.0 / 3.0;
    let w: Vec<Vec<f64>> = (0..4)
        .map(|y| (0..4).map(|b| if y == b { 0.0 } else { t }).collect())
        .collect();
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{}", serde_json::json!({ "kind": "classical", "w": w })).unwrap();
    let out = run(&["capacity", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let c = json(&out)["numerical"].as_f64().unwrap();
    assert!((c - (2.0 - 3f64.log2())).abs() < 1e-6);
}

#[test]
fn malformed_input_exits_with_two() {
    assert_eq!(run(&["capacity", r#"{"kind":"#]).status.code(), Some(2));
    assert_eq!(
        run(&["capacity", r#"{"kind":"pauli","p":[0.5,0.5,0.5,0]}"#])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["capacity", "/nonexistent/channel.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["bound-curve", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "protocol1", "--channel", "teleporter"]).status.code(),
        Some(2)
    );
}

#[test]
fn bound_curve_csv() {
    let out = run(&["bound-curve", "--steps", "11", "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("capacity,bound"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0], (0.0, 0.0625));
    assert_eq!(rows[10], (1.0, 0.0));
    for w in rows.windows(2) {
        assert!(w[1].1 <= w[0].1);
    }
    for (c, b) in &rows {
        assert!((b - (1.0 - c).powf(4f64.ln()) / 16.0).abs() < 1e-15);
    }
    let c = 1.0 - h2(0.25);
    let want = h2(0.25).powf(2.0 * 2f64.ln()) / 16.0;
    assert!((bombprize::game::theorem1_bound(c) - want).abs() < 1e-15);
}

#[test]
fn bound_curve_json() {
    let v: Value = serde_json::from_slice(&run(&["bound-curve", "--steps", "2"]).stdout).unwrap();
    assert_eq!(v[0]["bound"].as_f64(), Some(0.0625));
    assert_eq!(v[1]["capacity"].as_f64(), Some(1.0));
}

#[test]
fn verify_thm5_and_protocol1() {
    let out = run(&["verify", "thm5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    let q = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "(2,2) triple q")
        .unwrap();
    assert_eq!(q["actual"], serde_json::json!(["1/3", "1/3", "1/3"]));

    let v = json(&run(&["verify", "protocol1", "--channel", "unot"]));
    assert_eq!(v["pass"], Value::Bool(true));
    let wp = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "worst_prize")
        .unwrap();
    assert!((wp["actual"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn thm2_streams_decoders_then_summary() {
    let out = run(&["verify", "thm2", "--d", "2", "--samples", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16 + 1);
    for l in &lines[..16] {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["d"], 2);
    }
    let summary: Value = serde_json::from_str(lines[16]).unwrap();
    assert_eq!(summary["suite"], "thm2");
    assert_eq!(summary["pass"], Value::Bool(true));
}

#[test]
fn same_seed_same_bytes() {
    let a = run(&[
        "--seed",
        "9",
        "verify",
        "thm1",
        "--samples",
        "3",
        "--restarts",
        "2",
        "--grid",
        "9",
    ]);
    let b = run(&[
        "--seed",
        "9",
        "verify",
        "thm1",
        "--samples",
        "3",
        "--restarts",
        "2",
        "--grid",
        "9",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s1 = run(&["--seed", "3", "simulate", "unot", "--runs", "5", "--state", "random"]);
    let s2 = run(&["--seed", "3", "simulate", "unot", "--runs", "5", "--state", "random"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn seed_from_environment() {
    let out = bin()
        .env("BOMBPRIZE_SEED", "77")
        .args(["verify", "protocol2"])
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 77);
}

#[test]
fn quiet_prints_nothing() {
    let out = run(&["--quiet", "verify", "trit"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn timing_is_opt_in() {
    let plain = json(&run(&["verify", "average"]));
    assert!(plain.get("wall_time_s").is_none());
    let timed = json(&run(&["verify", "average", "--timing"]));
    assert!(timed["wall_time_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn game_reports_worst_cases() {
    let v = json(&run(&["game", r#"{"kind":"dense_coding","channel":{"kind":"unot"}}"#]));
    assert!((v["worst_prize"]["value"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!(v["worst_bomb"]["value"].as_f64().unwrap().abs() < 1e-12);

    let third = "1/3";
    let m: Vec<Vec<&str>> = (0..4)
        .map(|y| (0..4).map(|b| if y == b { "0" } else { third }).collect())
        .collect();
    let v = json(&run(&[
        "game",
        &serde_json::json!({ "kind": "matrix", "m": m }).to_string(),
    ]));
    assert_eq!(v["worst_prize"]["value"], "1/3");
    assert_eq!(v["worst_bomb"]["value"], "0");

    // Bomb-only encoder: message 0 for bombs 1 and 3; decoders open box 2 and box 1.
    let enc: Vec<[u8; 2]> = (1..=4u8)
        .flat_map(|b| std::iter::repeat_n(if b == 1 || b == 3 { [1, 0] } else { [0, 1] }, 3))
        .collect();
    let strategy = serde_json::json!({ "kind": "classical", "d": 2, "enc": enc, "dec": [[0, 1, 0, 0], [1, 0, 0, 0]] });
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "{strategy}").unwrap();
    let v = json(&run(&[
        "game",
        f.path().to_str().unwrap(),
        "--prior",
        r#"{"p":[{"b":1,"x":2,"w":1}]}"#,
    ]));
    assert_eq!(v["worst_prize"]["value"].as_f64(), Some(0.0));
    assert_eq!(v["worst_bomb"]["value"].as_f64(), Some(0.0));
    assert_eq!(v["avg_prize"].as_f64(), Some(1.0));
    assert_eq!(v["subtype"], "1|2");
}

#[test]
fn simulate_matches_channel_on_average() {
    let v = json(&run(&["simulate", "unot", "--runs", "4000", "--state", "+i"]));
    assert_eq!(v["transcripts"].as_array().unwrap().len(), 4000);
    assert!(v["distance"].as_f64().unwrap() < 0.05);
    let out = run(&[
        "simulate",
        "eb",
        "--mixture",
        r#"{"components":[{"w":-1,"basis":"X"}]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_suite_exits_with_three() {
    // With one twirl sample the Monte Carlo average is far from the limit.
    let out = run(&["verify", "minimality", "--samples", "0"]);
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(false));
    assert_eq!(out.status.code(), Some(3));
}
