//! `orlicz-lab` — command-line front end for the numerical laboratory.
//!
//! Every subcommand prints one report (CSV by default, JSON with
//! `--format json`) built from the same deterministic library calls,
//! with the resolved configuration echoed into the report header.
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration
//! error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use orlicz_lab::{Error, Result};

use commands::CommandOutput;
use config::{Resolver, Settings};

#[derive(Parser)]
#[command(
    name = "orlicz-lab",
    version,
    about = "Orlicz-space embeddings on irregular domains: norms, potentials, and counterexamples"
)]
struct Cli {
    /// INI-style config file ([subcommand] sections; flags win).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Report format: csv or json.
    #[arg(long, global = true, value_name = "FMT")]
    format: Option<String>,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate F⁻¹ with round-trip and conjugate self-checks.
    HFunction(HFunctionArgs),
    /// John constants (α, β) from a cigar constant and diameter.
    JohnConstants(JohnArgs),
    /// Dyadic kernel-sum bound with constant C(n, α).
    Hedberg(HedbergArgs),
    /// Random-bump test of H(potential) ≤ C·(maximal function)^p.
    Pointwise(PointwiseArgs),
    /// Poincaré ratio sweep over test functions and resolutions.
    Poincare(PoincareArgs),
    /// Ratio stability along a nested exhaustion of an unbounded domain.
    Exhaustion(ExhaustionArgs),
    /// Predicted vs. measured target exponents for power boundary growth.
    SjohnTable(SJohnArgs),
    /// Witness families with fixed gradient energy and growing norms.
    Counterexample(CounterexampleArgs),
}

impl Command {
    fn section(&self) -> &'static str {
        match self {
            Command::HFunction(_) => "h-function",
            Command::JohnConstants(_) => "john-constants",
            Command::Hedberg(_) => "hedberg",
            Command::Pointwise(_) => "pointwise",
            Command::Poincare(_) => "poincare",
            Command::Exhaustion(_) => "exhaustion",
            Command::SjohnTable(_) => "sjohn-table",
            Command::Counterexample(_) => "counterexample",
        }
    }
}

#[derive(Args)]
pub struct HFunctionArgs {
    /// Growth function: power:<s> or powerlog:<alpha>,<beta>.
    #[arg(long)]
    phi: Option<String>,
    /// Spatial dimension (2 or 3).
    #[arg(long)]
    dim: Option<u32>,
    /// Gradient exponent p in [1, dim).
    #[arg(long)]
    p: Option<f64>,
    /// Multiplicative scale on F⁻¹.
    #[arg(long)]
    scale: Option<f64>,
    /// Lower end of the sample range.
    #[arg(long)]
    t_min: Option<f64>,
    /// Upper end of the sample range.
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of log-spaced sample points.
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args)]
pub struct JohnArgs {
    /// Growth function: power:<s> or powerlog:<alpha>,<beta>.
    #[arg(long)]
    phi: Option<String>,
    /// Cigar constant c_J ≥ 1.
    #[arg(long)]
    cigar: Option<f64>,
    /// Comma-separated diameters, e.g. "1,10,100".
    #[arg(long)]
    diams: Option<String>,
}

#[derive(Args)]
pub struct HedbergArgs {
    /// Growth function: power:<s> or powerlog:<alpha>,<beta>.
    #[arg(long)]
    phi: Option<String>,
    /// Spatial dimension (2 or 3).
    #[arg(long)]
    dim: Option<u32>,
    /// Kernel exponent α in [1, dim/(dim−1)).
    #[arg(long)]
    alpha: Option<f64>,
    /// Lower end of the t sample range.
    #[arg(long)]
    t_min: Option<f64>,
    /// Upper end of the t sample range.
    #[arg(long)]
    t_max: Option<f64>,
    /// Number of log-spaced sample points.
    #[arg(long)]
    points: Option<usize>,
    /// Truncation depth of the dyadic sum.
    #[arg(long)]
    terms: Option<u32>,
}

#[derive(Args)]
pub struct PointwiseArgs {
    /// Growth function: power:<s> or powerlog:<alpha>,<beta>.
    #[arg(long)]
    phi: Option<String>,
    /// Spatial dimension (2 or 3).
    #[arg(long)]
    dim: Option<u32>,
    /// Gradient exponent p in [1, dim).
    #[arg(long)]
    p: Option<f64>,
    /// Domain: box:S0,S1[,S2], cusp:HEIGHT, or mushrooms:M_MAX.
    #[arg(long)]
    domain: Option<String>,
    /// Grid cell size.
    #[arg(long)]
    h: Option<f64>,
    /// Number of random trial fields.
    #[arg(long)]
    trials: Option<u32>,
    /// RNG seed; equal seeds give byte-identical reports.
    #[arg(long)]
    seed: Option<u64>,
    /// Repeat on the half-cell refinement and report the drift.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    refine: Option<bool>,
}

#[derive(Args)]
pub struct PoincareArgs {
    /// Growth function: power:<s> or powerlog:<alpha>,<beta>.
    #[arg(long)]
    phi: Option<String>,
    /// Spatial dimension (2 or 3).
    #[arg(long)]
    dim: Option<u32>,
    /// Gradient exponent p in [1, dim).
    #[arg(long)]
    p: Option<f64>,
    /// Domain: box:S0,S1[,S2], cusp:HEIGHT, or mushrooms:M_MAX.
    #[arg(long)]
    domain: Option<String>,
    /// Test functions: polynomials, radial-bumps, or cusp-profiles.
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated grid sizes, strictly decreasing.
    #[arg(long)]
    resolutions: Option<String>,
}

#[derive(Args)]
pub struct ExhaustionArgs {
    /// Growth function: power:<s> or powerlog:<alpha>,<beta>.
    #[arg(long)]
    phi: Option<String>,
    /// Spatial dimension (2 or 3).
    #[arg(long)]
    dim: Option<u32>,
    /// Gradient exponent p in [1, dim).
    #[arg(long)]
    p: Option<f64>,
    /// Unbounded prototype: cusp or mushrooms.
    #[arg(long)]
    prototype: Option<String>,
    /// Comma-separated truncation scales, strictly increasing
    /// (mushrooms need every scale ≥ 4).
    #[arg(long)]
    scales: Option<String>,
    /// Grid cell size.
    #[arg(long)]
    h: Option<f64>,
    /// Field on the largest member: bump:WIDTH or axis-pow:GAMMA.
    #[arg(long)]
    field: Option<String>,
    /// Mushroom decoration depth (prototype = mushrooms only).
    #[arg(long)]
    m_max: Option<u32>,
}

#[derive(Args)]
pub struct SJohnArgs {
    /// Spatial dimension (2 or 3).
    #[arg(long)]
    dim: Option<u32>,
    /// Comma-separated boundary-growth exponents s ≥ 1.
    #[arg(long)]
    s_list: Option<String>,
    /// Comma-separated gradient exponents p in [1, dim).
    #[arg(long)]
    p_list: Option<String>,
}

#[derive(Args)]
pub struct CounterexampleArgs {
    /// Which witness family: mushroom or farfield.
    #[arg(long)]
    kind: Option<String>,
    /// Growth function: power:<s> or powerlog:<alpha>,<beta>.
    #[arg(long)]
    phi: Option<String>,
    /// Spatial dimension (2 or 3).
    #[arg(long)]
    dim: Option<u32>,
    /// Gradient exponent p in [1, dim).
    #[arg(long)]
    p: Option<f64>,
    /// Target norm exponent q.
    #[arg(long)]
    q: Option<f64>,
    /// Mushroom decoration depth (kind = mushroom).
    #[arg(long)]
    m_max: Option<u32>,
    /// Comma-separated scales (kind = farfield).
    #[arg(long)]
    scales: Option<String>,
}

fn init_threads() -> Result<()> {
    match std::env::var("ORLICZ_LAB_THREADS") {
        Ok(text) => {
            let count: usize = text.parse().map_err(|_| {
                Error::Parameter(format!(
                    "ORLICZ_LAB_THREADS must be a positive integer, got `{text}`"
                ))
            })?;
            if count == 0 {
                return Err(Error::Parameter(
                    "ORLICZ_LAB_THREADS must be a positive integer, got 0".into(),
                ));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(count)
                .build_global()
                .map_err(|e| Error::Parameter(format!("thread pool setup failed: {e}")))
        }
        Err(_) => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    init_threads()?;
    let settings = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::empty(),
    };
    let section = cli.command.section();
    let mut format_resolver = Resolver::new(&settings, section);
    let format = format_resolver.get("format", cli.format.clone(), "csv".to_string())?;
    if format != "csv" && format != "json" {
        return Err(Error::Parameter(format!(
            "format must be csv or json, got `{format}`"
        )));
    }

    let resolver = Resolver::new(&settings, section);
    let output: CommandOutput = match cli.command {
        Command::HFunction(a) => commands::h_function(a, resolver)?,
        Command::JohnConstants(a) => commands::john(a, resolver)?,
        Command::Hedberg(a) => commands::hedberg(a, resolver)?,
        Command::Pointwise(a) => commands::pointwise(a, resolver)?,
        Command::Poincare(a) => commands::poincare(a, resolver)?,
        Command::Exhaustion(a) => commands::exhaustion(a, resolver)?,
        Command::SjohnTable(a) => commands::sjohn_table(a, resolver)?,
        Command::Counterexample(a) => commands::counterexample(a, resolver)?,
    };

    let text = match format.as_str() {
        "csv" => {
            let mut csv = output.csv;
            let mut head: Vec<(String, String)> = vec![
                ("command".into(), section.to_string()),
                ("version".into(), env!("CARGO_PKG_VERSION").to_string()),
            ];
            for (k, v) in &output.echo {
                head.push((format!("arg.{k}"), v.clone()));
            }
            csv.prepend_meta(head);
            csv.render()
        }
        _ => {
            let settings_map: std::collections::BTreeMap<String, String> =
                output.echo.into_iter().collect();
            let doc = serde_json::json!({
                "command": section,
                "version": env!("CARGO_PKG_VERSION"),
                "settings": settings_map,
                "report": output.json,
            });
            let mut text = serde_json::to_string_pretty(&doc)
                .map_err(|e| Error::Numeric(format!("JSON rendering failed: {e}")))?;
            text.push('\n');
            text
        }
    };

    match cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
