//! The `balchains` command line.
//!
//! Results go to standard output (or `--out`), diagnostics and a JSON error
//! object to standard error. Exit codes: 0 success, 2 parameter error,
//! 3 verification failure, 4 solver non-convergence.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chain::{build, validate, ChainFamily, StochasticMatrix};
use crate::error::Error;
use crate::io::{self, Format};
use crate::quad_ring::{beta_power_identity, silver_ratio_gap_with_digits};
use crate::rational::{parse_rational, DEFAULT_DIGITS};
use crate::sequence::{sequence, SequenceKind};
use crate::steady_state::{power_iteration, simulate, solve_exact, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::verifier::{run_suite, truncation_convergence_with_digits, verify_family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARAMETER: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;

pub const FAMILY_SLUGS: [&str; 10] = [
    "balancing",
    "balancing-q",
    "pell-ratio",
    "lucas",
    "lucas-q",
    "lucas-cobalancing",
    "truncated-infinite",
    "truncated-infinite-q",
    "balancing-like",
    "balancing-like-q",
];

#[derive(Debug, Parser)]
#[command(
    name = "balchains",
    version,
    about = "Balancing-number Markov chains in exact arithmetic"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "csv")]
    format: Format,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print terms of an integer sequence.
    Seq {
        #[arg(value_enum)]
        kind: SeqKind,
        #[arg(long)]
        count: usize,
        /// Coefficient of a balancing-like sequence.
        #[arg(long)]
        a: Option<u32>,
    },
    /// Print a transition matrix.
    Chain {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Compute a stationary distribution.
    Solve {
        #[command(flatten)]
        family: FamilyArgs,
        /// Matrix written by `chain`, as JSON or CSV.
        #[arg(long, conflicts_with = "family")]
        matrix_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
        max_iter: usize,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Check closed forms and identities against exact computation.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Run every family for n up to --max-n plus the identity checks.
        #[arg(long, conflicts_with_all = ["family", "beta_identity"])]
        all: bool,
        /// Check beta^(n+1) = beta*B_(n+1) - B_n for n up to --max-n.
        #[arg(long, alias = "corollary-4-2", conflicts_with = "family")]
        beta_identity: bool,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Distances to the infinite chain or to the silver-ratio limit.
    Limit {
        /// Comma-separated truncation sizes.
        #[arg(long, value_delimiter = ',', conflicts_with = "ratio")]
        sizes: Vec<usize>,
        /// Gaps |B_(n-1)/B_n - beta| for n = 2..=max-n.
        #[arg(long, requires = "max_n")]
        ratio: bool,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(FAMILY_SLUGS))]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<u32>,
    /// Step probability as `num/den`.
    #[arg(long)]
    q: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeqKind {
    Balancing,
    LucasBalancing,
    Cobalancing,
    LucasCobalancing,
    Pell,
    BalancingLike,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Power,
    Simulate,
}

/// A failed command: exit code plus message.
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn parameter(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARAMETER,
            kind: "parameter",
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VERIFICATION,
            kind: "verification",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } => Failure {
                code: EXIT_NON_CONVERGENCE,
                kind: "non-convergence",
                message: e.to_string(),
            },
            _ => Failure::parameter(e.to_string()),
        }
    }
}

/// Output text plus an optional failure raised after it was produced.
type Outcome = Result<(String, Option<Failure>), Failure>;

impl FamilyArgs {
    fn is_set(&self) -> bool {
        self.family.is_some()
    }

    fn resolve(&self) -> Result<ChainFamily, Failure> {
        let slug = self
            .family
            .as_deref()
            .ok_or_else(|| Failure::parameter("a chain family is required"))?;
        let n = self
            .n
            .ok_or_else(|| Failure::parameter("--n is required"))?;
        let q = self.q.as_deref().map(parse_rational).transpose()?;
        Ok(ChainFamily::from_parts(slug, n, self.a, q)?)
    }
}

fn seq_kind(kind: SeqKind, a: Option<u32>) -> Result<SequenceKind, Failure> {
    Ok(match kind {
        SeqKind::Balancing => SequenceKind::Balancing,
        SeqKind::LucasBalancing => SequenceKind::LucasBalancing,
        SeqKind::Cobalancing => SequenceKind::Cobalancing,
        SeqKind::LucasCobalancing => SequenceKind::LucasCobalancing,
        SeqKind::Pell => SequenceKind::Pell,
        SeqKind::BalancingLike => {
            let a = a.ok_or_else(|| Failure::parameter("balancing-like needs --a"))?;
            if a < 2 {
                return Err(Failure::parameter(format!(
                    "--a must be at least 2, got {a}"
                )));
            }
            SequenceKind::BalancingLike(a)
        }
    })
}

fn load_matrix(path: &PathBuf) -> Result<StochasticMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parameter(format!("cannot read {}: {e}", path.display())))?;
    let m = io::parse_matrix(&text)?;
    let report = validate(&m);
    if !report.is_ok() {
        return Err(Failure::parameter(format!(
            "{} is not a valid chain: {report}",
            path.display()
        )));
    }
    Ok(m)
}

fn execute(cmd: Command, format: Format, diag: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Seq { kind, count, a } => {
            let terms = sequence(seq_kind(kind, a)?, count);
            Ok((io::sequence_output(&terms, format), None))
        }
        Command::Chain { family } => {
            let f = family.resolve()?;
            let m = build(&f)?;
            let report = validate(&m);
            if !report.is_ok() {
                return Err(Failure::verification(format!("{f}: {report}")));
            }
            Ok((io::matrix_output(&m, f.slug(), format), None))
        }
        Command::Solve {
            family,
            matrix_file,
            method,
            tol,
            max_iter,
            steps,
            seed,
            start,
        } => {
            let m = match &matrix_file {
                Some(path) => load_matrix(path)?,
                None => build(&family.resolve()?)?,
            };
            let text = match method {
                Method::Exact => io::exact_vector_output(&solve_exact(&m)?, format),
                Method::Power => {
                    let p = power_iteration(&m, tol, max_iter)?;
                    let _ = writeln!(diag, "power iteration converged in {} steps", p.iterations);
                    io::power_output(&p, format)
                }
                Method::Simulate => {
                    let s = simulate(&m, steps, seed, start)?;
                    let _ = writeln!(diag, "simulation rng: {}", s.rng);
                    io::simulation_output(&s, format)
                }
            };
            Ok((text, None))
        }
        Command::Verify {
            family,
            all,
            beta_identity,
            max_n,
        } => {
            if all {
                let suite = run_suite(max_n.unwrap_or(25))?;
                let green = suite.all_green();
                let _ = writeln!(
                    diag,
                    "{} family instances checked, all green: {green}",
                    suite.reports.len()
                );
                let fail = (!green).then(|| Failure::verification("verification suite failed"));
                Ok((io::suite_output(&suite, format), fail))
            } else if beta_identity {
                let max_n = max_n.unwrap_or(100);
                if max_n == 0 {
                    return Err(Failure::parameter("--max-n must be at least 1"));
                }
                let failures: Vec<usize> =
                    (1..=max_n).filter(|&n| !beta_power_identity(n)).collect();
                let holds = failures.is_empty();
                let text = match format {
                    Format::Csv => {
                        format!("check,max_n,holds\nbeta-power-identity,{max_n},{holds}\n")
                    }
                    Format::Json => format!(
                        "{}\n",
                        serde_json::json!({
                            "check": "beta-power-identity",
                            "max_n": max_n,
                            "holds": holds,
                            "failures": failures,
                        })
                    ),
                };
                let fail = (!holds).then(|| {
                    Failure::verification(format!("beta-power identity fails at n = {failures:?}"))
                });
                Ok((text, fail))
            } else if family.is_set() {
                let r = verify_family(&family.resolve()?)?;
                let fail = (!r.exact_match).then(|| {
                    Failure::verification(format!("{}: closed form does not match", r.family))
                });
                Ok((io::report_output(&r, format), fail))
            } else {
                Err(Failure::parameter(
                    "verify needs a family, --all or --beta-identity",
                ))
            }
        }
        Command::Limit {
            sizes,
            ratio,
            max_n,
            digits,
        } => {
            if digits == 0 {
                return Err(Failure::parameter("--digits must be positive"));
            }
            let rows = if ratio {
                let max_n = max_n.unwrap_or(0);
                if max_n < 2 {
                    return Err(Failure::parameter("--ratio needs --max-n >= 2"));
                }
                (2..=max_n)
                    .map(|n| (n, silver_ratio_gap_with_digits(n, digits)))
                    .collect()
            } else {
                if sizes.is_empty() {
                    return Err(Failure::parameter("limit needs --sizes or --ratio"));
                }
                if let Some(bad) = sizes.iter().find(|&&n| n < 3) {
                    return Err(Failure::parameter(format!("size {bad} is below 3")));
                }
                io::truncation_pairs(&truncation_convergence_with_digits(&sizes, digits)?)
            };
            Ok((io::gap_table_output(&rows, format), None))
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::parameter(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::parameter(format!("cannot write output: {e}"))),
    }
}

fn report(f: &Failure, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {}", f.message);
    let _ = stderr.write_all(io::error_json(f.kind, &f.message, f.code).as_bytes());
    f.code
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{e}");
            let _ = stderr.write_all(
                io::error_json("parameter", e.kind().to_string().as_str(), EXIT_PARAMETER)
                    .as_bytes(),
            );
            return EXIT_PARAMETER;
        }
    };
    let outcome = execute(cli.command, cli.format, stderr)
        .and_then(|(text, fail)| emit(&text, cli.out.as_ref(), stdout).map(|_| fail));
    match outcome {
        Ok(None) => EXIT_OK,
        Ok(Some(f)) | Err(f) => report(&f, stderr),
    }
}
