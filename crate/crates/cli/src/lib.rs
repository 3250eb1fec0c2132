//! The `cobord` command line: argument definitions, dispatch and exit codes.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage
//! or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod gens_input;
pub mod acceptance;
pub mod report;

pub use config::{Format, RunConfig};
pub use report::{Check, Report, Status, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, configuration or input; exit 2.
    Usage(String),
    /// An internal consistency check failed; exit 1.
    Failure(String),
}

impl From<cobord::Error> for CliError {
    fn from(e: cobord::Error) -> Self {
        match e {
            cobord::Error::Inconsistent(_) => CliError::Failure(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cobord", version, about = "Exact computations in complex cobordism")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Coefficient fields, e.g. q,3,5.
    #[arg(long, global = true, default_value = "q,3,5")]
    pub fields: String,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized property suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall time in the report; such reports are no longer reproducible byte for byte.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Truncation {
    /// Truncation: largest total dimension computed; also bounds the names
    /// an expression may use.
    #[arg(long, default_value_t = 24)]
    pub upto: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients alpha_ij of the formal group law with s-numbers.
    Fgl {
        #[command(flatten)]
        trunc: Truncation,
    },
    /// All Chern numbers of a class.
    Chern {
        /// Class expression or a file holding one.
        #[arg(long)]
        class: String,
        #[command(flatten)]
        trunc: Truncation,
    },
    /// Whether a class is SU.
    SuCheck {
        #[arg(long)]
        class: String,
        #[command(flatten)]
        trunc: Truncation,
    },
    /// Novikov's criterion for an s-number in dimension 2n.
    Novikov {
        /// Half-dimension; taken from --class when omitted.
        #[arg(long)]
        n: Option<u64>,
        /// The s-number as a rational.
        #[arg(long)]
        s: Option<String>,
        #[arg(long, conflicts_with_all = ["n", "s"])]
        class: Option<String>,
        #[command(flatten)]
        trunc: Truncation,
    },
    /// Generator families.
    Gens {
        #[command(subcommand)]
        cmd: GensCmd,
    },
    /// Regular sequences, ideal membership and normal forms.
    Regseq {
        #[command(subcommand)]
        cmd: RegseqCmd,
    },
    /// Binomial gcds d(m) and d2(m).
    Numth {
        #[command(subcommand)]
        cmd: NumthCmd,
    },
    /// Value of the genus classifying the quotient by a regular sequence.
    Genus {
        #[arg(long)]
        class: String,
        /// Generators: a builtin family, a file or a ';'-separated list.
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        trunc: Truncation,
    },
    /// Coefficients a_i of u = sum a_i v^i for the inverse series.
    Gseries {
        #[arg(long, default_value_t = 20)]
        upto: u32,
    },
    /// Runs the full acceptance suite.
    VerifyPaper {
        #[command(flatten)]
        trunc: Truncation,
        /// Replace the regularity sequence, e.g. "x2; x2^2" as a negative control.
        #[arg(long)]
        gens: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    X,
    E,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum LatticeArg {
    E,
    Cp,
}

#[derive(Debug, Subcommand)]
pub enum GensCmd {
    /// Builds x_2..x_K, e_1..e_K or y_3..y_K.
    Build {
        #[arg(long, value_enum)]
        family: Family,
        /// Largest generator index.
        #[arg(long, default_value_t = 8)]
        upto: u32,
    },
    /// Searches for an SU class in dimension 2n with minimal s-number.
    FindSu {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "e")]
        lattice: LatticeArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum RegseqCmd {
    /// Certifies regularity degree by degree through --upto.
    Verify {
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        trunc: Truncation,
    },
    /// Membership of a class in the ideal, with a certificate.
    Member {
        #[arg(long)]
        class: String,
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        trunc: Truncation,
    },
    /// Normal form of a class in the quotient over Q.
    Nf {
        #[arg(long)]
        class: String,
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        trunc: Truncation,
    },
}

#[derive(Debug, Subcommand)]
pub enum NumthCmd {
    /// d(m) = gcd of C(m+1, i), 1 <= i <= m-1.
    D {
        #[arg(long)]
        m: usize,
    },
    /// d2(m) = gcd of C(m+1, i), 2 <= i <= m-2.
    D2 {
        #[arg(long)]
        m: usize,
    },
    /// Checks d2(m) = d(m) d(m-1) and the closed form of d(m) for 3 <= m <= M.
    Verify {
        #[arg(long, default_value_t = 500)]
        upto: usize,
    },
}

/// Parses `args` (including the program name), runs the command, writes the
/// report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let mut report = match commands::execute(&cli) {
        Ok(r) => r,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            return EXIT_USAGE;
        }
        Err(CliError::Failure(m)) => {
            eprintln!("check failed: {m}");
            return EXIT_FAIL;
        }
    };
    if cli.global.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis());
    }
    let text = report.render(cli.global.format);
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(m) = written {
        eprintln!("error: {m}");
        return EXIT_USAGE;
    }
    if report.ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
