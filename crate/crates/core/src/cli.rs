//! Command-line front end for the `esig` binary.
//!
//! Exit codes: `0` success, `1` identity-check failure or I/O error,
//! `2` invalid arguments.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::check::run_identity_checks;
use crate::expected::{brownian_expected_signature, pwl_expected_signature};
use crate::monte_carlo::estimate_expected_signature;
use crate::rate::{concentration_report, rate_json, rate_table, write_rate_csv};
use crate::scalar::{parse_rational, Rational};
use crate::words::{enumerate, WordClass};
use crate::Error;

pub const MAX_LEVEL: usize = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn parse_horizon(s: &str) -> Result<Rational, String> {
    let t = parse_rational(s).map_err(|e| e.to_string())?;
    if t <= Rational::from_integer(0.into()) {
        return Err(format!("T must be positive, got {s}"));
    }
    Ok(t)
}

fn parse_level(s: &str) -> Result<usize, String> {
    let level: usize = s.parse().map_err(|_| format!("`{s}` is not a level"))?;
    if level > MAX_LEVEL {
        return Err(format!("level {level} exceeds {MAX_LEVEL}"));
    }
    Ok(level)
}

fn parse_class(s: &str) -> Result<WordClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "esig", version, about = "Exact expected signatures of Brownian motion and its piecewise-linear approximations")]
pub struct Cli {
    /// Worker threads (default: all cores). Outputs do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Dim {
    #[arg(long = "d", value_parser = clap::value_parser!(u8).range(2..=9))]
    pub d: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit an exact expected signature as a JSON series.
    #[command(name = "expected-sig", subcommand)]
    ExpectedSig(ExpectedSig),
    /// List the words of a class with their count.
    Words {
        #[arg(long, value_parser = parse_class)]
        class: WordClass,
        #[command(flatten)]
        dim: Dim,
        /// Half word length; defaults to 2.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scaled level-2n gap for several M, as CSV (and optionally JSON).
    #[command(name = "rate-table")]
    RateTable {
        #[command(flatten)]
        dim: Dim,
        #[arg(long)]
        n: usize,
        #[arg(long = "T", value_parser = parse_horizon)]
        t: Rational,
        #[arg(long = "M", value_delimiter = ',', num_args = 1.., required = true)]
        m: Vec<u64>,
        #[arg(long, value_parser = parse_level)]
        level: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Split of the level-2n gap over word classes.
    Concentration {
        #[command(flatten)]
        dim: Dim,
        #[arg(long)]
        n: usize,
        #[arg(long = "T", value_parser = parse_horizon)]
        t: Rational,
        #[arg(long = "M")]
        m: u64,
        #[arg(long, value_parser = parse_level)]
        level: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Monte Carlo estimate of the piecewise-linear expected signature.
    #[command(name = "mc-verify")]
    McVerify {
        #[command(flatten)]
        dim: Dim,
        #[arg(long = "T", value_parser = parse_horizon)]
        t: Rational,
        #[arg(long = "M")]
        m: u64,
        #[arg(long, value_parser = parse_level)]
        level: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the exact identity suite; exits 1 on any violation.
    Check {
        #[command(flatten)]
        dim: Dim,
        #[arg(long)]
        n: usize,
        #[arg(long = "T", value_parser = parse_horizon)]
        t: Rational,
        #[arg(long = "M", value_delimiter = ',', num_args = 1.., required = true)]
        m: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExpectedSig {
    /// Brownian motion on [0, T].
    Brownian {
        #[command(flatten)]
        dim: Dim,
        #[arg(long = "T", value_parser = parse_horizon)]
        t: Rational,
        #[arg(long, value_parser = parse_level)]
        level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// M-piece piecewise-linear interpolation on [0, T].
    Pwl {
        #[command(flatten)]
        dim: Dim,
        #[arg(long = "T", value_parser = parse_horizon)]
        t: Rational,
        #[arg(long = "M")]
        m: u64,
        #[arg(long, value_parser = parse_level)]
        level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct WordListing {
    class: String,
    d: usize,
    n: usize,
    count: usize,
    words: Vec<String>,
}

fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(text.as_bytes()),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn rate_level(n: usize, level: Option<usize>) -> Result<usize, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    let level = level.unwrap_or(2 * n);
    if level > MAX_LEVEL || 2 * n > MAX_LEVEL {
        return Err(Error::InvalidParameter(format!("level {} exceeds {MAX_LEVEL}", level.max(2 * n))));
    }
    Ok(level)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => EXIT_CHECK_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    if let Some(threads) = cli.threads {
        // a second initialisation (e.g. in tests) keeps the existing pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("esig: {e}");
            exit_code_for(&e)
        }
    }
}

fn execute(command: Command) -> Result<i32, Error> {
    match command {
        Command::ExpectedSig(ExpectedSig::Brownian { dim, t, level, out }) => {
            let sig = brownian_expected_signature(dim.d as usize, &t, level)?;
            emit(out.as_deref(), &sig.to_json_string()?)?;
        }
        Command::ExpectedSig(ExpectedSig::Pwl { dim, t, m, level, out }) => {
            let sig = pwl_expected_signature(dim.d as usize, &t, m, level)?;
            emit(out.as_deref(), &sig.to_json_string()?)?;
        }
        Command::Words { class, dim, n, out } => {
            let words = enumerate(class, dim.d as usize, n)?;
            let listing = WordListing {
                class: class.to_string(),
                d: dim.d as usize,
                n,
                count: words.len(),
                words: words.iter().map(ToString::to_string).collect(),
            };
            emit(out.as_deref(), &serde_json::to_string_pretty(&listing)?)?;
        }
        Command::RateTable { dim, n, t, m, level, csv, json } => {
            let level = rate_level(n, level)?;
            let rows = rate_table(dim.d as usize, n, &t, &m, level)?;
            if let Some(path) = &json {
                emit(Some(path), &rate_json(&rows)?)?;
            }
            match (&csv, &json) {
                (Some(path), _) => write_rate_csv(&rows, File::create(path)?)?,
                (None, None) => write_rate_csv(&rows, io::stdout().lock())?,
                (None, Some(_)) => {}
            }
        }
        Command::Concentration { dim, n, t, m, level, json } => {
            let level = rate_level(n, level)?;
            let report = concentration_report(dim.d as usize, n, &t, m, level)?;
            emit(json.as_deref(), &serde_json::to_string_pretty(&report.to_doc()?)?)?;
        }
        Command::McVerify { dim, t, m, level, samples, seed, json } => {
            let est = estimate_expected_signature(dim.d as usize, &t, m, level, samples, seed)?;
            let doc = est.to_doc();
            if let Some(s) = &doc.nonzero_target_summary {
                eprintln!(
                    "|z| over nonzero targets: median {:.3}, q95 {:.3}, max {:.3} ({} coefficients)",
                    s.median, s.q95, s.max, s.count
                );
            }
            emit(json.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
        }
        Command::Check { dim, n, t, m } => {
            if 2 * n.max(2) > MAX_LEVEL {
                return Err(Error::InvalidParameter(format!("level {} exceeds {MAX_LEVEL}", 2 * n)));
            }
            if m.contains(&0) {
                return Err(Error::InvalidParameter("M must be at least 1".into()));
            }
            let outcomes = run_identity_checks(dim.d as usize, n, &t, &m)?;
            let mut failed = 0;
            for o in &outcomes {
                let tag = if o.passed { "ok  " } else { "FAIL" };
                println!("{tag} M={:<4} {:<24} {}", o.m, o.name, o.detail);
                failed += usize::from(!o.passed);
            }
            println!("{} checks, {failed} failed", outcomes.len());
            if failed > 0 {
                return Ok(EXIT_CHECK_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}
