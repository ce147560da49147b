//! The `matchmanip` command line. [`run`] does all the work and returns the
//! process exit code so the binary and the tests share one path.
//!
//! Exit codes: 0 success (including a "NO" answer), 1 a witness that fails
//! verification, 2 bad usage or input, 3 a refused oracle budget.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use matchmanip::experiment::{run_experiment, ExperimentGrid};
use matchmanip::hardness::{gen_random, gen_reduction, ReductionParams};
use matchmanip::io::{self, WitnessFile};
use matchmanip::oracle::{brute_coalition, brute_single};
use matchmanip::{evaluate, Error, Instance, ManipResult, OracleBudget, PreferenceOrder, Side};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNVERIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "matchmanip", version, about = "Borda team manipulation of Gale-Shapley matching")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Men,
    Women,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Men => Side::Men,
            SideArg::Women => Side::Women,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SidesArg {
    Men,
    Women,
    Both,
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Overrides the target stored in the instance.
    #[arg(long)]
    target: Option<usize>,
    /// Refuse the instance unless the team is on this side.
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    /// Write the witness ballots here as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether one manipulator can reach the target.
    SolveSingle(SolveArgs),
    /// Run the coalition solver.
    SolveCoalition {
        #[command(flatten)]
        solve: SolveArgs,
        /// Overrides the coalition size stored in the instance.
        #[arg(long)]
        manipulators: Option<usize>,
    },
    /// Exhaustive search over all ballots or ballot multisets.
    Oracle {
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long)]
        manipulators: Option<usize>,
        /// Maximum number of enumerated objects.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Uniformly random instance.
    GenRandom {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        voters: usize,
        #[arg(long, default_value_t = 1)]
        manipulators: usize,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Permutation Sum gadget for a sorted X summing to q(q+1).
    GenReduction {
        #[arg(long = "X", alias = "x", value_delimiter = ',', required = true, allow_hyphen_values = true)]
        x: Vec<i64>,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        c: Option<i64>,
        #[arg(long)]
        z: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a witness file against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Compare solvers with the oracles over a grid of random instances.
    Experiment {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        ks: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,3")]
        voters: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        manipulators: Vec<usize>,
        #[arg(long, value_enum, default_value = "both")]
        side: SidesArg,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u128>,
        /// Write the CSV report here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut report = String::new();
    let result = dispatch(cli.command, &mut report);
    let _ = out.write_all(report.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load(args: &SolveArgs) -> Result<(Instance, usize), Failure> {
    let instance = io::parse(&read(&args.instance)?)?;
    if let Some(side) = args.side {
        let side = Side::from(side);
        if instance.team().side != side {
            return Err(usage(format!(
                "--side {side} but the instance's team is on the {} side",
                instance.team().side
            )));
        }
    }
    let target = match args.target {
        Some(t) => instance.with_target(t)?.target(),
        None => instance.target(),
    };
    Ok((instance, target))
}

fn line(order: &PreferenceOrder) -> String {
    order.ranking().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Prints a found profile after re-checking it independently.
fn found(
    report: &mut String,
    instance: &Instance,
    target: usize,
    ballots: &[PreferenceOrder],
    out: Option<&Path>,
) -> Result<i32, Failure> {
    let v = evaluate(instance, ballots, target)?;
    if !v.holds() {
        let _ = writeln!(report, "UNVERIFIED");
        let _ = writeln!(report, "target: {target}");
        let _ = writeln!(report, "spouse: {}", v.spouse);
        return Ok(EXIT_UNVERIFIED);
    }
    let _ = writeln!(report, "YES");
    let _ = writeln!(report, "target: {target}");
    for b in ballots {
        let _ = writeln!(report, "ballot: {}", line(b));
    }
    let _ = writeln!(report, "aggregate: {}", line(&v.aggregate));
    let scores: Vec<String> = v.scores.as_slice().iter().map(|s| s.to_string()).collect();
    let _ = writeln!(report, "scores: {}", scores.join(" "));
    let _ = writeln!(report, "spouse: {}", v.spouse);
    if let Some(path) = out {
        write(path, &io::serialize_witness(&WitnessFile::new(target, ballots)))?;
    }
    Ok(EXIT_OK)
}

fn answer(
    report: &mut String,
    instance: &Instance,
    target: usize,
    result: ManipResult,
    out: Option<&Path>,
) -> Result<i32, Failure> {
    match result {
        ManipResult::Found(w) => found(report, instance, target, &w.ballots, out),
        ManipResult::NotFound(reason) => {
            let _ = writeln!(report, "NO");
            let _ = writeln!(report, "target: {target}");
            let _ = writeln!(report, "reason: {}", reason.as_str());
            Ok(EXIT_OK)
        }
    }
}

fn budget_of(limit: Option<u128>) -> OracleBudget {
    limit.map_or_else(OracleBudget::default, OracleBudget::with_enumerations)
}

fn emit(report: &mut String, bytes: &[u8], out: Option<&Path>) -> Result<i32, Failure> {
    match out {
        Some(path) => {
            write(path, bytes)?;
            let _ = writeln!(report, "wrote {}", path.display());
        }
        None => report.push_str(&String::from_utf8_lossy(bytes)),
    }
    Ok(EXIT_OK)
}

fn dispatch(command: Command, report: &mut String) -> Result<i32, Failure> {
    match command {
        Command::SolveSingle(args) => {
            let (instance, target) = load(&args)?;
            let result = matchmanip::solve_single(&instance, target)?;
            answer(report, &instance, target, result, args.out.as_deref())
        }
        Command::SolveCoalition {
            solve,
            manipulators,
        } => {
            let (mut instance, target) = load(&solve)?;
            if let Some(n) = manipulators {
                instance = instance.with_manipulators(n);
            }
            let result = matchmanip::solve_coalition(&instance, target)?;
            answer(report, &instance, target, result, solve.out.as_deref())
        }
        Command::Oracle {
            solve,
            manipulators,
            budget,
        } => {
            let (mut instance, target) = load(&solve)?;
            if let Some(n) = manipulators {
                instance = instance.with_manipulators(n);
            }
            let budget = budget_of(budget);
            let n = instance.num_manipulators();
            let ballots = if n == 1 {
                brute_single(&instance, target, &budget)?.map(|b| vec![b])
            } else {
                brute_coalition(&instance, n, target, &budget)?
            };
            let result = match ballots {
                Some(b) => return found(report, &instance, target, &b, solve.out.as_deref()),
                None => ManipResult::NotFound(matchmanip::Reason::Exhausted),
            };
            answer(report, &instance, target, result, None)
        }
        Command::GenRandom {
            k,
            voters,
            manipulators,
            side,
            seed,
            out,
        } => {
            let instance = gen_random(k, voters, manipulators, side.into(), seed)?;
            emit(report, &io::serialize(&instance), out.as_deref())
        }
        Command::GenReduction { x, side, c, z, out } => {
            let instance = gen_reduction(&x, side.into(), ReductionParams { c, z })?;
            emit(report, &io::serialize(&instance), out.as_deref())
        }
        Command::Verify { instance, witness } => {
            let instance = io::parse(&read(&instance)?)?;
            let file = io::parse_witness(&read(&witness)?)?;
            instance.with_target(file.target)?;
            let ballots = file.orders(instance.k())?;
            let v = evaluate(&instance, &ballots, file.target)?;
            let _ = writeln!(report, "{}", if v.holds() { "OK" } else { "FAILED" });
            let _ = writeln!(report, "target: {}", file.target);
            let _ = writeln!(report, "spouse: {}", v.spouse);
            let _ = writeln!(report, "aggregate: {}", line(&v.aggregate));
            Ok(if v.holds() { EXIT_OK } else { EXIT_UNVERIFIED })
        }
        Command::Experiment {
            ks,
            voters,
            manipulators,
            side,
            trials,
            seed,
            budget,
            out,
        } => {
            let sides = match side {
                SidesArg::Men => vec![Side::Men],
                SidesArg::Women => vec![Side::Women],
                SidesArg::Both => vec![Side::Men, Side::Women],
            };
            let grid = ExperimentGrid {
                ks,
                voters,
                manipulators,
                sides,
                trials,
                seed,
            };
            let csv = run_experiment(&grid, &budget_of(budget))?.to_csv();
            if let Some(path) = out {
                write(&path, csv.as_bytes())?;
            }
            report.push_str(&csv);
            Ok(EXIT_OK)
        }
    }
}
