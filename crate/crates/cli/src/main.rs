mod commands;
mod input;
mod report;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::BadInput;

const EXIT_FAILURE: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_SUITE_FAILED: u8 = 3;

/// Bomb-and-prize toolkit: verification suites, capacities, bound curves,
/// protocol simulations and strategy evaluation.
#[derive(Debug, Parser)]
#[command(name = "bombprize", version)]
struct Cli {
    /// Seed for every random choice; the same seed gives byte-identical output.
    #[arg(long, global = true, env = "BOMBPRIZE_SEED", default_value_t = 2024)]
    seed: u64,

    /// Print nothing; report the outcome through the exit code only.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity of a quantum or classical channel.
    ///
    /// INPUT is a path, `-` for stdin, or inline JSON. Quantum channels use
    /// `{"kind":"unot"}`, `{"kind":"pauli","p":[..4]}`, `{"kind":"cq_not","basis":"Z"}`,
    /// `{"kind":"not_mixture","components":[{"w":..,"basis":"X"},..]}`,
    /// `{"kind":"cq",..}`, `{"kind":"kraus","ops":[..]}` or `{"kind":"identity"}`.
    /// Classical channels use `{"kind":"classical","w":[[..],..]}` with w[output][input].
    Capacity { input: String },

    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),

    /// Points (C, (1−C)^{ln 4}/16) of the worst-case bomb bound.
    BoundCurve {
        /// Number of evenly spaced capacities in [0, 1].
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
        steps: u64,
        /// Emit CSV with header `capacity,bound` instead of JSON.
        #[arg(long)]
        csv: bool,
    },

    /// Sample transcripts of a one-bit entanglement-breaking simulation.
    Simulate {
        #[arg(value_enum)]
        protocol: SimProtocol,
        /// Input state: 0, 1, +, -, +i, -i or random.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        state: String,
        #[arg(long, default_value_t = 8)]
        runs: usize,
        /// CQ mixture JSON for `eb` (path, `-` or inline); defaults to the uniform X/Y/Z NOT mixture.
        #[arg(long)]
        mixture: Option<String>,
    },

    /// Evaluate a strategy and report worst-case and average probabilities.
    ///
    /// INPUT is a path, `-` or inline JSON with a `kind` of `classical`
    /// (`d`, `enc` with 12 rows in (b,x) lexicographic order, `dec` with d rows,
    /// optional bit `channel`), `matrix` (4×4 rational strings m[y][b]),
    /// `dense_coding` (a quantum `channel`) or `distribution` (`p` rows).
    Game {
        input: String,
        /// Prior over configurations, `{"p":[{"b":1,"x":2,"w":..},..]}`.
        #[arg(long)]
        prior: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SimProtocol {
    /// Shared random Pauli basis, one bit, orthogonal preparation.
    Unot,
    /// Measure-and-prepare simulation of a CQ mixture.
    Eb,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: suites::Suite,
    /// Alphabet size for `thm2` (2, 3 or 4); all three by default.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=4))]
    d: Option<u64>,
    /// Channel for `protocol1`: unot, identity, cq_not_x, cq_not_y or cq_not_z.
    #[arg(long, default_value = "unot")]
    channel: String,
    /// Number of sampled instances (channels, strategies, protocols or mixtures).
    #[arg(long)]
    samples: Option<usize>,
    /// Adversarial restarts per channel in `thm1`.
    #[arg(long)]
    restarts: Option<usize>,
    /// Grid points for the entropy inequality in `thm1`.
    #[arg(long)]
    grid: Option<usize>,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<BadInput>().is_some() {
                ExitCode::from(EXIT_BAD_INPUT)
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let out = |s: String| {
        if !cli.quiet {
            println!("{s}");
        }
    };
    match &cli.command {
        Command::Capacity { input } => out(commands::capacity(input)?),
        Command::BoundCurve { steps, csv } => out(commands::bound_curve(*steps as usize, *csv)),
        Command::Simulate {
            protocol,
            state,
            runs,
            mixture,
        } => out(commands::simulate(
            *protocol,
            state,
            *runs,
            mixture.as_deref(),
            cli.seed,
        )?),
        Command::Game { input, prior } => out(commands::game(input, prior.as_deref())?),
        Command::Verify(args) => {
            let params = suites::Params {
                seed: cli.seed,
                d: args.d.map(|d| d as usize),
                channel: args.channel.clone(),
                samples: args.samples,
                restarts: args.restarts,
                grid: args.grid,
                timing: args.timing,
            };
            let pass = suites::run(args.suite, &params, &mut |line| out(line))?;
            return Ok(if pass { 0 } else { EXIT_SUITE_FAILED });
        }
    }
    Ok(0)
}
