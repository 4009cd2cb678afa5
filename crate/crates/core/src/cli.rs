//! Command-line surface. Every subcommand prints one JSON document.
//!
//! Exit codes: 0 success, 2 malformed input, 3 non-unitary matrix,
//! 4 size limit exceeded.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::correspondence::{
    classify_detailed, extract_counterpart, search_counterparts, BasisAssignment, Counterpart,
    SearchSpace,
};
use crate::error::Error;
use crate::matrix::CMatrix;
use crate::oracle::{
    bv_function, format_bits, parse_bits, phase_oracle, standard_oracle, BVInstance,
    BooleanFunction,
};
use crate::query::{
    deterministic_query_complexity, oracle_family, run_bv_quantum, run_parity_quantum,
    speedup_report, NamedOracle, ProblemKind, ProblemSpec, SpeedupConfig,
};

#[derive(Debug, Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Quantum-classical oracle correspondence toolkit"
)]
pub struct Cli {
    /// Pretty-print the JSON output
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Absolute tolerance for all numerical comparisons
    #[arg(long, global = true, env = "QCORR_TOL", default_value_t = crate::DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Makhlin invariants and classical-counterpart class of a 4x4 unitary
    Classify {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Classical counterparts of an oracle under basis assignments
    Counterparts(CounterpartsArgs),
    /// Exact deterministic classical query complexity
    Complexity {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        n: usize,
        /// OS, OA, OB, OBT or extracted:WORD
        #[arg(long)]
        oracle: String,
    },
    /// Simulate a quantum algorithm and count oracle queries
    Simulate(SimulateArgs),
    /// Quantum vs. best classical counterpart report
    Speedup {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        n: usize,
        /// GRID or random:COUNT:SEED
        #[arg(long, default_value = "GRID")]
        bases: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProblemArg {
    Parity,
    Bv,
}

impl From<ProblemArg> for ProblemKind {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Parity => ProblemKind::Parity,
            ProblemArg::Bv => ProblemKind::BvIdentify,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleKind {
    Standard,
    Phase,
}

#[derive(Debug, Args)]
pub struct CounterpartsArgs {
    #[arg(long, value_enum)]
    oracle: OracleKind,
    /// Boolean function JSON file
    #[arg(long, conflicts_with = "bv")]
    function: Option<PathBuf>,
    /// BV instance JSON file
    #[arg(long)]
    bv: Option<PathBuf>,
    /// GRID, a C/H word, or random:COUNT:SEED
    #[arg(long, default_value = "GRID")]
    bases: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Algorithm {
    Bv,
    Parity,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// BV instance JSON file
    #[arg(long)]
    bv: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Secret string, e.g. 1011
    #[arg(long)]
    k: Option<String>,
    #[arg(long, default_value_t = 0)]
    k0: u8,
    /// Boolean function JSON file
    #[arg(long)]
    function: Option<PathBuf>,
    /// Truth table string, e.g. 0110
    #[arg(long)]
    truth: Option<String>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotUnitary { .. } => 3,
            Error::SizeLimit { .. } => 4,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn malformed(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| malformed(format!("cannot parse {}: {e}", path.display())))
}

fn counterpart_json(c: &Counterpart, tol: f64) -> Value {
    json!({
        "bases": c.bases.word(),
        "permutation": c.map.cycle_notation(),
        "phases_present": c.map.has_nontrivial_phases(tol),
    })
}

fn counterparts(args: &CounterpartsArgs, tol: f64) -> Result<Value, CliError> {
    let oracle = match (args.oracle, &args.function, &args.bv) {
        (OracleKind::Standard, Some(path), None) => {
            standard_oracle(&read_json::<BooleanFunction>(path)?)
        }
        (OracleKind::Standard, None, Some(path)) => {
            standard_oracle(&bv_function(&read_json::<BVInstance>(path)?))
        }
        (OracleKind::Phase, None, Some(path)) => phase_oracle(&read_json::<BVInstance>(path)?),
        (OracleKind::Phase, _, None) => return Err(malformed("phase oracle needs --bv")),
        _ => return Err(malformed("give exactly one of --function or --bv")),
    };
    let found = match args.bases.parse::<SearchSpace>() {
        Ok(space) => search_counterparts(&oracle, space, tol)?,
        Err(_) => {
            let bases: BasisAssignment = args.bases.parse()?;
            extract_counterpart(&oracle, &bases, tol)?
                .map(|map| Counterpart { bases, map })
                .into_iter()
                .collect()
        }
    };
    Ok(Value::Array(
        found.iter().map(|c| counterpart_json(c, tol)).collect(),
    ))
}

fn simulate(args: &SimulateArgs) -> Result<Value, CliError> {
    match args.algorithm {
        Algorithm::Bv => {
            let inst = match (&args.bv, &args.k) {
                (Some(path), None) => read_json::<BVInstance>(path)?,
                (None, Some(k)) => {
                    let bits = parse_bits(k)?;
                    if let Some(n) = args.n.filter(|&n| n != bits.len()) {
                        return Err(malformed(format!(
                            "--k has {} bits but --n is {n}",
                            bits.len()
                        )));
                    }
                    let k0 = match args.k0 {
                        0 => false,
                        1 => true,
                        other => return Err(malformed(format!("--k0 {other} is not a bit"))),
                    };
                    BVInstance::new(bits.len(), k0, bits)?
                }
                _ => return Err(malformed("BV simulation needs --bv FILE or --k BITS")),
            };
            let (k, queries) = run_bv_quantum(&inst)?;
            Ok(json!({ "k": format_bits(&k), "queries": queries }))
        }
        Algorithm::Parity => {
            let f = match (&args.function, &args.truth) {
                (Some(path), None) => read_json::<BooleanFunction>(path)?,
                (None, Some(t)) => BooleanFunction::parse_truth(t)?,
                _ => {
                    return Err(malformed(
                        "PARITY simulation needs --function FILE or --truth BITS",
                    ))
                }
            };
            let (parity, queries) = run_parity_quantum(&f)?;
            Ok(json!({ "parity": parity as u8, "queries": queries }))
        }
    }
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    }
}

/// Runs a parsed command and returns the JSON text to print.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(malformed(format!("tolerance {tol} must be positive")));
    }
    let value = match &cli.command {
        Command::Classify { matrix } => {
            let m: CMatrix = read_json(matrix)?;
            if m.dim() != 4 {
                return Err(malformed(format!(
                    "expected a 4x4 matrix, got {0}x{0}",
                    m.dim()
                )));
            }
            serde_json::to_value(classify_detailed(&m, tol)?).expect("serializable")
        }
        Command::Counterparts(args) => counterparts(args, tol)?,
        Command::Complexity { problem, n, oracle } => {
            let p = ProblemSpec::new((*problem).into(), *n)?;
            let oracle: NamedOracle = oracle.parse()?;
            let fam = oracle_family(&p, &oracle, tol)?;
            json!({ "queries": deterministic_query_complexity(&p, &fam)? })
        }
        Command::Simulate(args) => simulate(args)?,
        Command::Speedup { problem, n, bases } => {
            let p = ProblemSpec::new((*problem).into(), *n)?;
            let cfg = SpeedupConfig {
                space: bases.parse()?,
                tol,
            };
            serde_json::to_value(speedup_report(&p, &cfg)?).expect("serializable")
        }
    };
    Ok(render(&value, cli.pretty))
}
