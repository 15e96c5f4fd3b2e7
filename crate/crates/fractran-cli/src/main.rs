//! Command-line front end: run programs, compile flowcharts, compute
//! digits, and drive the verification suites.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 budget exhausted (attempt-class runs), 3 input or parse error.

mod digits;
mod run;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_BUDGET_EXHAUSTED: u8 = 2;
pub const EXIT_INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fractran",
    about = "Exact FRACTRAN toolkit: virtual machine, flowchart compiler, digit oracles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Step-by-step on a single big integer.
    Plain,
    /// Step-by-step on an exponent vector (fast default).
    Factored,
    /// Exponent vector with single-fraction loop compression.
    Accelerated,
}

impl EngineArg {
    pub fn kind(self) -> fractran::vm::EngineKind {
        match self {
            EngineArg::Plain => fractran::vm::EngineKind::Monolithic,
            EngineArg::Factored => fractran::vm::EngineKind::Factored,
            EngineArg::Accelerated => fractran::vm::EngineKind::Accelerated,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute a program until it halts or the budget runs out.
    Run {
        /// Catalog program name (ADDGAME, PIGAME, SQRT2GAME, NRSQRT2GAME).
        #[arg(long, conflicts_with = "file")]
        catalog: Option<String>,
        /// Program file (one NUM/DEN per line, # comments).
        #[arg(long)]
        file: Option<PathBuf>,
        /// Start register: decimal or factored (e.g. 2^3*3^4*89).
        #[arg(long)]
        start: String,
        #[arg(long, value_enum, default_value = "factored")]
        engine: EngineArg,
        /// True-step budget.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        /// Compressed-step budget (accelerated engine only).
        #[arg(long, default_value_t = 10_000_000)]
        accel_budget: u64,
        /// Comma-separated node primes to trace.
        #[arg(long, value_delimiter = ',')]
        trace_nodes: Vec<u64>,
        /// Comma-separated primes stored in snapshot payloads.
        #[arg(long, value_delimiter = ',')]
        snapshot_primes: Vec<u64>,
    },
    /// Print digits 0..=n of a constant by the chosen method, checked
    /// against the reference generator.
    Digits {
        /// Constant: sqrt2 or pi.
        constant: String,
        #[arg(long)]
        method: String,
        #[arg(short = 'n', long)]
        n: u32,
        /// VM budget when --method vm.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        suite: String,
        /// Largest truncation length for sweep suites.
        #[arg(long, default_value_t = 2000)]
        max_e: u64,
        /// Truncation length for injected runs.
        #[arg(long, default_value_t = 10)]
        e: u64,
        /// Digit index (or maximum digit index) for digit suites.
        #[arg(short = 'n', long, default_value_t = 0)]
        n: u32,
        /// Largest iterate index for the contraction suite.
        #[arg(long, default_value_t = 60)]
        max_k: u64,
        /// Step budget for VM suites.
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u128,
        /// Case count for the engine-equivalence fuzz suite.
        #[arg(long, default_value_t = 10_000)]
        cases: u64,
        /// Print every record, not just failures and summaries.
        #[arg(long)]
        records: bool,
    },
    /// Compile a flowchart DSL file into a program file.
    Compile {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Provenance sidecar path (default: <output>.prov).
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Write a catalog program in the program file format.
    ExportCatalog {
        #[arg(long)]
        name: String,
        #[arg(long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version are successful exits; real parse errors map to
            // the input-error code.
            let code = if e.use_stderr() {
                eprint!("{e}");
                EXIT_INPUT_ERROR
            } else {
                print!("{e}");
                EXIT_OK
            };
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Run {
            catalog,
            file,
            start,
            engine,
            budget,
            accel_budget,
            trace_nodes,
            snapshot_primes,
        } => run::cmd_run(
            catalog,
            file,
            &start,
            engine,
            budget,
            accel_budget,
            trace_nodes,
            snapshot_primes,
        ),
        Command::Digits {
            constant,
            method,
            n,
            budget,
        } => digits::cmd_digits(&constant, &method, n, budget),
        Command::Verify {
            suite,
            max_e,
            e,
            n,
            max_k,
            budget,
            cases,
            records,
        } => verify::cmd_verify(&suite, max_e, e, n, max_k, budget, cases, records),
        Command::Compile {
            input,
            output,
            provenance,
        } => run::cmd_compile(&input, &output, provenance.as_deref()),
        Command::ExportCatalog { name, output } => run::cmd_export_catalog(&name, &output),
    };
    ExitCode::from(code)
}
