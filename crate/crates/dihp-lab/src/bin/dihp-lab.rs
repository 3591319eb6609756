//! Command-line front door: load instances, run LP values, build games, run
//! distinguishing experiments, and run the verification suites.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 cap exceeded,
//! 4 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use dihp_lab::csp::{instance_from_json, Instance};
use dihp_lab::error::Error;
use dihp_lab::game::{
    advantage, AdvantageMode, ConstantProtocol, CycleConsistencyProtocol, EchoProtocol,
    FullInformationProtocol, GameSpec, Protocol,
};
use dihp_lab::ratio::{rat, rat_from_string, rat_to_string};
use dihp_lab::report::ExperimentRecord;
use dihp_lab::{Caps, Result};

#[derive(Parser)]
#[command(
    name = "dihp-lab",
    about = "Exact and statistical checks for streaming-CSP lower-bound machinery",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Master seed for stochastic commands; falls back to DIHP_LAB_SEED.
    #[arg(long)]
    seed: Option<u64>,
    /// Cap on brute-force assignment enumeration.
    #[arg(long, default_value_t = 1 << 22)]
    cap_enum: u128,
    /// Cap on dense transform sizes.
    #[arg(long, default_value_t = 1 << 24)]
    cap_fourier: u128,
    /// Output directory for JSON/CSV records.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonOpts {
    fn caps(&self) -> Caps {
        Caps {
            enumeration: self.cap_enum,
            fourier: self.cap_fourier,
            ..Caps::default()
        }
    }

    fn seed(&self) -> Result<u64> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var("DIHP_LAB_SEED") {
            Ok(v) => v
                .parse()
                .map_err(|_| Error::domain(format!("DIHP_LAB_SEED=`{v}` is not a u64"))),
            Err(_) => Err(Error::domain(
                "a seed is required: pass --seed or set DIHP_LAB_SEED",
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact instance value, BasicLP value, and their ratio.
    Lp {
        /// Instance JSON file.
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Build the game from an instance and measure a protocol's advantage.
    Game {
        /// Instance JSON file (omit with --preset).
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Named parameter preset (maxcut-tiny).
        #[arg(long)]
        preset: Option<String>,
        /// Blow-up factor.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Matching density as a rational `p/q`; `alpha·n` must be integral.
        #[arg(long, default_value = "1/8")]
        alpha: String,
        /// Players per edge.
        #[arg(long = "K", default_value_t = 4)]
        players: usize,
        /// Protocol: constant | echo | cycle-consistency | full-information.
        #[arg(long, default_value = "cycle-consistency")]
        protocol: String,
        /// exact | mc
        #[arg(long, default_value = "mc")]
        mode: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Emit a tidy CSV alongside the JSON record.
        #[arg(long)]
        csv_for_plot: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a verification suite and write its manifest.
    Verify {
        /// fourier | kernels | rectangles | combinatorics | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Lp { instance, common } => cmd_lp(&instance, &common),
        Command::Game {
            instance,
            preset,
            n,
            alpha,
            players,
            protocol,
            mode,
            trials,
            csv_for_plot,
            common,
        } => cmd_game(
            instance.as_deref(),
            preset.as_deref(),
            n,
            &alpha,
            players,
            &protocol,
            &mode,
            trials,
            csv_for_plot,
            &common,
        ),
        Command::Verify { suite, common } => cmd_verify(&suite, &common),
    }
}

fn load_instance(path: &std::path::Path) -> Result<Instance> {
    let json = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
    instance_from_json(&json)
}

fn cmd_lp(path: &std::path::Path, common: &CommonOpts) -> Result<ExitCode> {
    let caps = common.caps();
    let inst = load_instance(path)?;
    let val = dihp_lab::csp::max_value(&inst, &caps)?;
    let val_lp = dihp_lab::lp::lp_value(&inst)?;
    let ratio = &val / &val_lp;
    let payload = serde_json::json!({
        "instance_hash": inst.content_hash_hex(),
        "val": rat_to_string(&val),
        "val_lp": rat_to_string(&val_lp),
        "ratio": rat_to_string(&ratio),
    });
    println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
    if let Some(dir) = &common.out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("lp.json"), format!("{payload:#}\n"))?;
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_game(
    instance: Option<&std::path::Path>,
    preset: Option<&str>,
    n: usize,
    alpha: &str,
    players: usize,
    protocol: &str,
    mode: &str,
    trials: u64,
    csv_for_plot: bool,
    common: &CommonOpts,
) -> Result<ExitCode> {
    let caps = common.caps();
    let (spec, n, players) = match preset {
        Some("maxcut-tiny") => {
            let spec = dihp_lab::game::maxcut_spec(8, rat(1, 8), 4)?;
            (spec, 8, 4)
        }
        Some(other) => return Err(Error::domain(format!("unknown preset `{other}`"))),
        None => {
            let path = instance.ok_or_else(|| Error::domain("pass --instance or --preset"))?;
            let inst = load_instance(path)?;
            let alpha = rat_from_string(alpha)?;
            // Prefer the explicit value-1 solution; fall back to the LP optimum.
            let sol = match dihp_lab::lp::canonical_value1_solution(
                &inst,
                dihp_lab::csp::IndependenceOrder::One,
            )? {
                Some(s) => s,
                None => dihp_lab::lp::solve_basic_lp(&inst)?,
            };
            let graph = dihp_lab::blowup::reduce_to_graph(&inst, &sol)?;
            (GameSpec::new(graph, n, alpha, players)?, n, players)
        }
    };
    let _ = (n, players);
    let spec = Arc::new(spec);

    let proto: Box<dyn Protocol> = match protocol {
        "constant" => Box::new(ConstantProtocol { value: true }),
        "echo" => Box::new(EchoProtocol),
        "cycle-consistency" => {
            Box::new(CycleConsistencyProtocol::new(Arc::clone(&spec), caps.component_solver))
        }
        "full-information" => Box::new(FullInformationProtocol::new(Arc::clone(&spec))),
        other => return Err(Error::domain(format!("unknown protocol `{other}`"))),
    };

    let (mode_enum, seed) = match mode {
        "exact" => ("exact", 0),
        "mc" => ("mc", common.seed()?),
        other => return Err(Error::domain(format!("unknown mode `{other}`; expected exact|mc"))),
    };
    let outcome = match mode_enum {
        "exact" => advantage(proto.as_ref(), &spec, AdvantageMode::Exact, &caps)?,
        _ => advantage(proto.as_ref(), &spec, AdvantageMode::MonteCarlo { trials, seed }, &caps)?,
    };

    let record = ExperimentRecord {
        spec_hash: spec.spec_hash_hex(),
        protocol_name: proto.name().to_string(),
        mode: mode_enum.to_string(),
        trials: outcome.trials,
        estimate: outcome.estimate,
        ci_low: outcome.ci_low,
        ci_high: outcome.ci_high,
        seed,
    };
    println!("{}", record.to_json());
    if let Some(dir) = &common.out {
        std::fs::create_dir_all(dir)?;
        record.write_json(&dir.join("advantage.json"))?;
        record.write_csv(&dir.join("advantage.csv"))?;
        if csv_for_plot {
            let mut w = csv::Writer::from_path(dir.join("advantage_tidy.csv"))
                .map_err(|e| Error::Parse(format!("csv: {e}")))?;
            w.write_record(["protocol", "law", "rate"])
                .map_err(|e| Error::Parse(format!("csv: {e}")))?;
            w.write_record([proto.name(), "yes", &outcome.yes_rate.to_string()])
                .map_err(|e| Error::Parse(format!("csv: {e}")))?;
            w.write_record([proto.name(), "no", &outcome.no_rate.to_string()])
                .map_err(|e| Error::Parse(format!("csv: {e}")))?;
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: &str, common: &CommonOpts) -> Result<ExitCode> {
    let caps = common.caps();
    let seed = common.seed()?;
    let manifest = dihp_lab::suites::run_suite(suite, seed, &caps)?;
    for r in &manifest.records {
        let status = match r.status {
            dihp_lab::report::Status::Pass => "pass",
            dihp_lab::report::Status::Fail => "FAIL",
            dihp_lab::report::Status::Skipped => "skip",
        };
        println!("{status}  {}  [{}]", r.lemma_id, r.instantiation_hash);
    }
    println!(
        "suite {}: {} passed, {} failed, {} skipped",
        manifest.suite, manifest.passed, manifest.failed, manifest.skipped
    );
    if let Some(dir) = &common.out {
        std::fs::create_dir_all(dir)?;
        manifest.write_json(&dir.join(format!("manifest-{}.json", manifest.suite)))?;
        manifest.write_csv(&dir.join(format!("manifest-{}.csv", manifest.suite)))?;
    }
    if manifest.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failing checks: {:?}", manifest.failing_ids());
        Ok(ExitCode::from(4))
    }
}
