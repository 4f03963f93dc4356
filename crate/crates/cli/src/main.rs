use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use onecall::generate::generate;
use onecall::{params_report, solve_cvp, solve_svp, verify, CliError, Instance, OracleKind, ResultRecord, Verdict};

/// One-call search SVP/CVP solver with exact verification.
#[derive(Parser)]
#[command(name = "onecall", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random nonsingular instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_entry: i64,
        #[arg(long)]
        seed: u64,
        /// Also draw a target with entries in [-B, B].
        #[arg(long, value_name = "B")]
        target_bound: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a shortest nonzero lattice vector.
    SolveSvp(SolveArgs),
    /// Find a lattice vector closest to the instance target.
    SolveCvp(SolveArgs),
    /// Print the reduction parameters for a dimension and entry bound.
    Params {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_entry: BigInt,
    },
    /// Brute-force an instance, optionally checking a result file.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        result: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file; if omitted, one is generated from --n/--max-entry/--seed.
    #[arg(required_unless_present_all = ["n", "max_entry", "seed"])]
    instance: Option<PathBuf>,
    #[arg(long, conflicts_with = "instance")]
    n: Option<usize>,
    #[arg(long, conflicts_with = "instance")]
    max_entry: Option<i64>,
    #[arg(long, conflicts_with = "instance")]
    seed: Option<u64>,
    /// Target entry bound for generated CVP instances.
    #[arg(long, conflicts_with = "instance", default_value_t = 4)]
    target_bound: i64,
    #[arg(long, value_enum, default_value_t = OracleKind::Enum)]
    oracle: OracleKind,
    /// Print parameters and the decoded digit table to stderr.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(args: &SolveArgs, with_target: bool) -> Result<Instance, CliError> {
    match (&args.instance, args.n, args.max_entry, args.seed) {
        (Some(path), ..) => Instance::from_json(&read(path)?),
        (None, Some(n), Some(m), Some(seed)) => {
            generate(n, m, seed, with_target.then_some(args.target_bound))
        }
        _ => Err(CliError::BadInput("give an instance file or --n, --max-entry and --seed".into())),
    }
}

fn solve(args: &SolveArgs, cvp: bool) -> Result<Verdict, CliError> {
    let inst = load_instance(args, cvp)?;
    let output = if cvp {
        solve_cvp(&inst, args.oracle, args.trace)?
    } else {
        solve_svp(&inst, args.oracle, args.trace)?
    };
    eprint!("{}", output.trace);
    emit(&output.record.to_json(), args.out.as_deref())?;
    Ok(output.verdict)
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    match cli.command {
        Command::Gen { n, max_entry, seed, target_bound, out } => {
            let inst = generate(n, max_entry, seed, target_bound)?;
            emit(&inst.to_json(), out.as_deref())?;
            Ok(Verdict::Verified)
        }
        Command::SolveSvp(args) => solve(&args, false),
        Command::SolveCvp(args) => solve(&args, true),
        Command::Params { n, max_entry } => {
            print!("{}", params_report(n, &max_entry)?);
            Ok(Verdict::Verified)
        }
        Command::Verify { instance, result } => {
            let inst = Instance::from_json(&read(&instance)?)?;
            let record = result
                .map(|path| read(&path).and_then(|text| ResultRecord::from_json(&text)))
                .transpose()?;
            let (report, verdict) = verify(&inst, record.as_ref())?;
            print!("{report}");
            Ok(verdict)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which would collide with the
    // pipeline-inconsistency code
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(verdict) => ExitCode::from(verdict.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
