//! `polarcert`: certified polar-derivative bounds from the command line.
//!
//! Exit codes: 0 every verdict holds, 2 a certified violation, 3 an
//! inconclusive verdict, 1 bad input.

mod commands;
mod report;
mod spec;

use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polarcert::{BoundId, Complex64, DEFAULT_REL_TOL};

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<polarcert::Error> for InputError {
    fn from(e: polarcert::Error) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "polarcert", version, about = "Certified Bernstein-type bounds for polar derivatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct Common {
    /// JSON spec file; stdin when omitted or "-"
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    /// Write one CSV row per check to this path
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Identities,
    Theorem1,
    Theorem2,
    Chain,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Check one inequality for each spec
    Bound {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_bound_id)]
        bound: BoundId,
        /// Polar point, "re" or "re,im"
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        delta: Option<Complex64>,
        /// Radius for malik, aziz_polar and corollary (default from the profile)
        #[arg(long)]
        k: Option<f64>,
    },
    /// Run a suite of certified and pointwise checks
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Option<Complex64>,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        delta: Option<Complex64>,
        /// Pointwise checks use max(1024, this * degree) angles
        #[arg(long, default_value_t = 64)]
        samples_per_degree: usize,
        /// Check this many seeded random instances instead of reading input
        #[arg(long)]
        random: Option<u64>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Hill-climb for instances that come close to a bound
    Search {
        /// JSON search configuration; stdin when omitted or "-"
        config: Option<PathBuf>,
        /// Write the per-iteration trace to this path
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Certified maximum modulus on the unit circle
    Maxmod {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_bound_id(s: &str) -> Result<BoundId, String> {
    BoundId::from_name(s).ok_or_else(|| {
        let names: Vec<_> = BoundId::ALL.iter().map(|b| b.name()).collect();
        format!("unknown bound \"{s}\" (expected one of {})", names.join(", "))
    })
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("\"{p}\": {e}"));
    let z = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected \"re\" or \"re,im\", got \"{s}\"")),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("\"{s}\" is not finite"))
    }
}

pub fn read_input(path: Option<&Path>) -> Result<(String, String), InputError> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p)
            .map(|text| (p.display().to_string(), text))
            .map_err(|e| InputError(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Result<(String, String), InputError> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text).map_err(|e| InputError(format!("<stdin>: {e}")))?;
    Ok(("<stdin>".into(), text))
}

fn run(cli: Cli, argv: Vec<String>) -> Result<u8, InputError> {
    match cli.command {
        Command::Bound { common, bound, alpha, delta, k } => commands::bound(argv, &common, bound, alpha, delta, k),
        Command::Verify { common, suite, alpha, delta, samples_per_degree, random, degree, seed } => {
            let opts = commands::VerifyOptions { suite, alpha, delta, samples_per_degree, random, degree, seed };
            commands::verify(argv, &common, &opts)
        }
        Command::Search { config, csv, format } => commands::search(argv, config.as_deref(), csv.as_deref(), format),
        Command::Maxmod { common } => commands::maxmod(argv, &common),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli, argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
