//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cayley::{basis_product, oct_mul, Octonion};
use crate::checks;
use crate::derivation::{G2Basis, G2_DIM};
use crate::error::{Error, Result};
use crate::linalg::format_rational;
use crate::orbit::{parse_tau, Classifier, NamingConvention};
use crate::roots::RootSystem;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "g2orbit", version, about = "Octonions, g2 and its adjoint orbit types")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the octonion multiplication table.
    Table {
        /// Emit JSON (each product as an array of 8 rational strings).
        #[arg(long)]
        json: bool,
    },
    /// Emit the 14 basis derivations and the structure constants as JSON.
    Derivations,
    /// Emit the 12 roots with squared lengths and length classes as JSON.
    Roots,
    /// Classify the adjoint orbit type of a Cartan element.
    Classify {
        /// Three rationals p/q,p/q,p/q summing to zero.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Subtract the mean instead of rejecting a nonzero sum.
        #[arg(long)]
        project: bool,
        #[arg(long)]
        json: bool,
        /// Which rank-one stabilizer name goes with the short-root class.
        #[arg(long, default_value = "short=sp1xu1")]
        convention: String,
    },
    /// Classify every integer lattice point with max |tau_i| <= radius.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        radius: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the full invariant suite.
    Check,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Internal(format!("write failed: {e}"))
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(out, "{s}").map_err(io_err)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Table { json } => table(out, json)?,
        Command::Derivations => print_json(out, &derivations_json(G2Basis::shared()))?,
        Command::Roots => {
            let roots = RootSystem::shared();
            print_json(out, &json!({ "roots": roots.roots() }))?;
        }
        Command::Classify {
            tau,
            project,
            json,
            convention,
        } => {
            let convention: NamingConvention = convention.parse()?;
            let tau = parse_tau(&tau, project)?;
            let report = Classifier::shared(convention).classify(&tau)?;
            if json {
                print_json(out, &report.to_json())?;
            } else {
                writeln!(out, "{report}").map_err(io_err)?;
            }
        }
        Command::Scan { radius, format } => {
            let census = Classifier::shared(NamingConvention::default()).scan(radius);
            match format {
                Format::Json => print_json(out, &census.to_json())?,
                Format::Csv => write!(out, "{}", census.to_csv()).map_err(io_err)?,
            }
            if !census.only_expected_dims() {
                return Err(Error::Internal(format!(
                    "stabilizer dimensions outside {{2, 4, 14}} at {:?}",
                    census.anomalies().iter().map(|e| e.tau).collect::<Vec<_>>()
                )));
            }
        }
        Command::Check => {
            let outcomes = checks::run_all();
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {:<24} {}", o.name, o.detail).map_err(io_err)?;
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(EXIT_INTERNAL);
            }
        }
    }
    Ok(EXIT_OK)
}

fn table(out: &mut dyn Write, as_json: bool) -> Result<()> {
    if as_json {
        let rows: Vec<Vec<Octonion>> = (0..8)
            .map(|i| (0..8).map(|j| oct_mul(&Octonion::basis(i), &Octonion::basis(j))).collect())
            .collect();
        return print_json(out, &json!({ "products": rows }));
    }
    let mut text = String::from("  *  |");
    for j in 0..8 {
        text.push_str(&format!("  e{j} "));
    }
    text.push('\n');
    text.push_str(&format!("-----+{}\n", "-".repeat(40)));
    for i in 0..8 {
        text.push_str(&format!("  e{i} |"));
        for j in 0..8 {
            let (s, k) = basis_product(i, j);
            let sign = if s < 0 { '-' } else { '+' };
            text.push_str(&format!(" {sign}e{k} "));
        }
        text.push('\n');
    }
    write!(out, "{text}").map_err(io_err)
}

pub fn derivations_json(g: &G2Basis) -> Value {
    let basis: Vec<Vec<Vec<String>>> = g
        .basis()
        .iter()
        .map(|d| {
            (0..8)
                .map(|r| (0..8).map(|c| format_rational(&d.matrix()[(r, c)])).collect())
                .collect()
        })
        .collect();
    let constants: Vec<Vec<Vec<String>>> = (0..G2_DIM)
        .map(|i| {
            (0..G2_DIM)
                .map(|j| (0..G2_DIM).map(|k| format_rational(g.structure_constant(i, j, k))).collect())
                .collect()
        })
        .collect();
    json!({
        "dim": g.dim(),
        "basis": basis,
        "structure_constants": constants,
    })
}
