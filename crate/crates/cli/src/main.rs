use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use opineq_core::checks::{evaluate, CheckId, CheckReport, InstanceSpec, Verdict};
use opineq_core::fuzz::{self, FuzzConfig, Witness, FUZZ_TOL_REL};
use opineq_core::linalg::DEFAULT_TOL_REL;
use opineq_core::repro::reproduce_all;
use opineq_core::Error;

mod exit {
    pub const OK: u8 = 0;
    pub const FAILS: u8 = 1;
    pub const NUMERICAL: u8 = 2;
    pub const IO: u8 = 3;
    pub const HYPOTHESIS: u8 = 4;
    pub const INPUT: u8 = 5;
}

const TOL_ENV: &str = "OPINEQ_TOL";

#[derive(Parser)]
#[command(name = "opineq", version, about = "Numerical checks of operator inequalities in the Loewner order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the worked examples and compare with the reference values.
    Repro {
        /// Also write the results as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate a check on generated instances.
    Fuzz {
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// A single dimension or an inclusive range such as `2-6`.
        #[arg(long, default_value = "2-6")]
        dim: String,
        /// Comma-separated exponents, cycled by trial index. Defaults to the check's range.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        p: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON array of reports.
        #[arg(long)]
        json: Option<PathBuf>,
        /// One CSV row per report.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Where to write the failing instance. Defaults next to `--json`, or the working directory.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Run trials on one thread.
        #[arg(long)]
        serial: bool,
        /// Evaluate every trial instead of stopping at the first FAILS.
        #[arg(long)]
        keep_going: bool,
    },
    /// Evaluate a check on an instance file and print the report.
    Eval {
        #[arg(long)]
        check: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the check registry.
    List,
}

/// A failure mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Self::new(exit::IO, format!("{}: {e}", path.display()))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } => exit::NUMERICAL,
            _ => exit::INPUT,
        };
        Self::new(code, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn tol_from_env(default: f64) -> Result<f64, Failure> {
    match std::env::var(TOL_ENV) {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(Failure::new(exit::INPUT, format!("{TOL_ENV} must be a non-negative decimal, got {s:?}"))),
        },
        Err(_) => Ok(default),
    }
}

fn parse_check(s: &str) -> Result<CheckId, Failure> {
    CheckId::from_str(s).map_err(|e| Failure::new(exit::INPUT, format!("{e}; see `opineq list`")))
}

fn parse_dims(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::new(exit::INPUT, format!("--dim expects N or LO-HI, got {s:?}"));
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once('-') {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => parse(s).map(|n| (n, n)),
    }
}

fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::new(exit::IO, e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn repro(json: Option<PathBuf>) -> Outcome {
    let results = reproduce_all().map_err(|e| Failure::new(exit::NUMERICAL, e.to_string()))?;
    for r in &results {
        print!("{r}");
    }
    if let Some(path) = json {
        write_json(&path, &results)?;
    }
    let all = results.iter().all(|r| r.pass);
    println!("{}", if all { "all examples reproduced" } else { "MISMATCH" });
    Ok(if all { exit::OK } else { exit::FAILS })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    check_id: &'a str,
    dim: usize,
    p: f64,
    m: Option<f64>,
    #[serde(rename = "M")]
    big_m: Option<f64>,
    gap_min_eig: Option<f64>,
    verdict: &'a str,
    seed: Option<u64>,
    trial: Option<u64>,
}

fn write_csv(path: &Path, reports: &[CheckReport]) -> Result<(), Failure> {
    let csv_err = |e: csv::Error| Failure::new(exit::IO, format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in reports {
        w.serialize(CsvRow {
            check_id: r.check_id.as_str(),
            dim: r.params.dim,
            p: r.params.p,
            m: r.params.m,
            big_m: r.params.big_m,
            gap_min_eig: r.gap_min_eig,
            verdict: r.verdict.as_str(),
            seed: r.params.seed,
            trial: r.params.trial,
        })
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Failure::io(path, e))
}

fn witness_path(explicit: Option<PathBuf>, json: Option<&Path>, w: &Witness) -> PathBuf {
    if let Some(p) = explicit {
        return p;
    }
    let name = format!("{}-seed{}-trial{}.witness.json", w.check_id, w.seed, w.trial);
    match json.and_then(Path::parent) {
        Some(dir) => dir.join(name),
        None => PathBuf::from(name),
    }
}

#[allow(clippy::too_many_arguments)]
fn fuzz_cmd(
    check: &str,
    trials: usize,
    dim: &str,
    p: Option<Vec<f64>>,
    seed: u64,
    json: Option<PathBuf>,
    csv_path: Option<PathBuf>,
    witness: Option<PathBuf>,
    serial: bool,
    keep_going: bool,
) -> Outcome {
    let cfg = FuzzConfig {
        check: parse_check(check)?,
        trials,
        dims: parse_dims(dim)?,
        p_list: p,
        seed,
        tol_rel: tol_from_env(FUZZ_TOL_REL)?,
        parallel: !serial,
        keep_going,
    };
    let run = fuzz::run(&cfg)?;
    if let Some(path) = &json {
        write_json(path, &run.reports)?;
    }
    if let Some(path) = &csv_path {
        write_csv(path, &run.reports)?;
    }
    let violated = run.count(Verdict::HypothesisViolated);
    println!(
        "{}: {} trials, {} holds, {} hypothesis violated, {} fails",
        cfg.check,
        run.reports.len(),
        run.count(Verdict::Holds),
        violated,
        run.count(Verdict::Fails)
    );
    match run.witness {
        Some(w) => {
            let path = witness_path(witness, json.as_deref(), &w);
            write_json(&path, &w)?;
            println!("first FAILS at trial {} (p = {}); witness written to {}", w.trial, w.report.params.p, path.display());
            Ok(exit::FAILS)
        }
        None => Ok(exit::OK),
    }
}

fn eval_cmd(check: &str, input: &Path, json: Option<PathBuf>) -> Outcome {
    let id = parse_check(check)?;
    let text = fs::read_to_string(input).map_err(|e| Failure::io(input, e))?;
    let inst = InstanceSpec::from_json(&text)?;
    let report = evaluate(id, &inst, tol_from_env(DEFAULT_TOL_REL)?)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if let Some(path) = json {
        write_json(&path, &report)?;
    }
    Ok(match report.verdict {
        Verdict::Holds => exit::OK,
        Verdict::Fails => exit::FAILS,
        Verdict::HypothesisViolated => exit::HYPOTHESIS,
    })
}

fn list() -> Outcome {
    for id in CheckId::ALL {
        println!("{:<22} {}", id.as_str(), id.statement());
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Repro { json } => repro(json),
        Command::Fuzz { check, trials, dim, p, seed, json, csv, witness, serial, keep_going } => {
            fuzz_cmd(&check, trials, &dim, p, seed, json, csv, witness, serial, keep_going)
        }
        Command::Eval { check, input, json } => eval_cmd(&check, &input, json),
        Command::List => list(),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
