//! The `scottmax` command line.
//!
//! Every subcommand produces a [`Report`]. It is printed as text, or as JSON
//! with `--json`, and its [`Status`] decides the exit code.

mod commands;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use scottmax::domain::LElem;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Environment variable holding the default `diag` budget.
pub const BUDGET_ENV: &str = "SCOTTMAX_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Indeterminate => EXIT_INDETERMINATE,
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub summary: String,
    pub detail: serde_json::Value,
    /// Extra lines for the text rendering.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    fn new(command: &str, status: Status, summary: impl Into<String>, detail: serde_json::Value) -> Report {
        Report {
            command: command.into(),
            status,
            summary: summary.into(),
            detail,
            lines: Vec::new(),
        }
    }

    fn line(mut self, l: impl Into<String>) -> Report {
        self.lines.push(l.into());
        self
    }
}

/// A failure that maps to the usage exit code.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "scottmax",
    version,
    about = "Order theory of an omega-algebraic domain whose maximal points are not G-delta"
)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare two elements of L.
    Order { u: LElem, v: LElem },
    /// Check that a finite-poset JSON file describes a partial order.
    PosetVerify(PosetVerifyArgs),
    /// Decide whether a subset of a finite poset is a G-delta set.
    PosetGdelta(PosetGdeltaArgs),
    /// Supremum of a finite set, in L, in a finite poset, or in the two-chains poset.
    Sup(SupArgs),
    /// Order-theoretic properties of elements of L.
    LCheck {
        #[arg(required = true)]
        elems: Vec<LElem>,
    },
    /// Diagonalize against a family of open sets and emit a certificate.
    Diag(DiagArgs),
    /// Re-check a diagonalization certificate.
    CertVerify(CertVerifyArgs),
    /// Run the invariant suites.
    Suites(SuitesArgs),
}

#[derive(Debug, Args)]
struct PosetVerifyArgs {
    file: std::path::PathBuf,
    /// Check the relation as given (reflexive pairs implicit) without taking the transitive closure.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct PosetGdeltaArgs {
    file: std::path::PathBuf,
    /// Comma-separated labels; defaults to the maximal elements.
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct SupArgs {
    /// Element labels, L elements, or for `--twin` elements like `x_3` or one of `x-chain`, `y-chain`.
    #[arg(required = true)]
    elems: Vec<String>,
    /// Take labels from a finite-poset JSON file.
    #[arg(long, conflicts_with = "twin")]
    poset: Option<std::path::PathBuf>,
    /// Work in the two-chains poset under the given order.
    #[arg(long, value_enum)]
    twin: Option<TwinArg>,
    /// Truncation depth for searching bounds in L; the answer is re-checked at twice this depth.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=3))]
    depth: u64,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum TwinArg {
    Split,
    Joined,
}

#[derive(Debug, Args)]
struct DiagArgs {
    /// Family JSON file, or `canonical`.
    family: String,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    /// Membership tests per level [default: $SCOTTMAX_BUDGET or 10000].
    #[arg(long)]
    budget: Option<u64>,
    /// Write the certificate here instead of printing it.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Skip the check that every open set contains all maximal elements.
    #[arg(long)]
    no_cover_check: bool,
}

#[derive(Debug, Args)]
struct CertVerifyArgs {
    cert: std::path::PathBuf,
    /// Family JSON file, or `canonical`.
    #[arg(long)]
    family: String,
}

#[derive(Debug, Args)]
struct SuitesArgs {
    /// seq, L, finite or all.
    scope: scottmax::suites::Scope,
    /// Entry bound of the exhaustive truncation.
    #[arg(long = "b", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
    bound: u64,
    /// Length bound of the exhaustive truncation.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=4))]
    depth: u64,
    /// Random instances per randomized check.
    #[arg(long, default_value_t = 10_000)]
    random: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest finite posets to enumerate.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(0..=5))]
    max_elems: u64,
}

fn dispatch(command: Command, budget_env: Option<&str>) -> Result<Report, UsageError> {
    match command {
        Command::Order { u, v } => Ok(commands::order(&u, &v)),
        Command::PosetVerify(a) => commands::poset_verify(&a.file, a.strict),
        Command::PosetGdelta(a) => commands::poset_gdelta(&a.file, a.set.as_deref()),
        Command::Sup(a) => match (a.poset, a.twin) {
            (Some(file), _) => commands::sup_finite(&file, &a.elems),
            (None, Some(TwinArg::Split)) => commands::sup_twin(scottmax::poset::TwinOrder::Split, &a.elems),
            (None, Some(TwinArg::Joined)) => commands::sup_twin(scottmax::poset::TwinOrder::Joined, &a.elems),
            (None, None) => commands::sup_l(&a.elems, a.depth),
        },
        Command::LCheck { elems } => Ok(commands::l_check(&elems)),
        Command::Diag(a) => {
            let budget = match (a.budget, budget_env) {
                (Some(b), _) => b,
                (None, Some(v)) => v
                    .trim()
                    .parse()
                    .map_err(|_| UsageError(format!("{BUDGET_ENV} must be a non-negative integer, got {v:?}")))?,
                (None, None) => scottmax::diagonal::DEFAULT_BUDGET,
            };
            commands::diag(&a.family, a.depth, budget, !a.no_cover_check, a.out.as_deref())
        }
        Command::CertVerify(a) => commands::cert_verify(&a.cert, &a.family),
        Command::Suites(a) => {
            let config = scottmax::suites::SuiteConfig {
                truncation: scottmax::domain::Truncation::new(a.bound, a.depth),
                random_cases: a.random,
                seed: a.seed,
                max_elems: a.max_elems as usize,
                ..Default::default()
            };
            Ok(commands::suites(a.scope, &config))
        }
    }
}

fn render(report: &Report, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        return s;
    }
    let mut s = format!("{}: {}\n", status_word(report.status), report.summary);
    for l in &report.lines {
        s.push_str(l);
        s.push('\n');
    }
    s
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Indeterminate => "indeterminate",
    }
}

/// Runs the command line with explicit arguments, output streams and budget
/// environment value, returning the exit code.
pub fn run<I, T>(args: I, budget_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_PASS {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, budget_env) {
        Ok(report) => {
            let _ = out.write_all(render(&report, cli.json).as_bytes());
            report.status.exit_code()
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
