mod config;
mod emit;
mod limits;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gnf_core::verify::{run_suite, SuiteConfig, Summary, Tolerances};
use serde_json::json;

use config::Config;

/// Emit R-matrices and twists, run verification suites, tabulate limits.
#[derive(Parser, Debug)]
#[command(name = "gnf", version)]
struct Cli {
    /// TOML file with defaults for any subcommand; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate one catalog entry and print its matrix
    Emit {
        #[arg(long)]
        family: Option<String>,
        /// k=v; complex values as "a+bi" or "re,im"
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run a verification suite and stream its reports as NDJSON
    Check {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Convergence table of a limit between families, as CSV
    Limits {
        #[arg(long, value_enum)]
        which: Option<Which>,
        /// comma-separated values, or geom:START:STOP:COUNT
        #[arg(long)]
        grid: Option<String>,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    P0,
    Scaling,
}

/// Failure with its exit code: 1 verification, 2 invalid input.
pub struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind: "usage".into(),
            message: message.into(),
        }
    }
}

impl From<gnf_core::Error> for Failure {
    fn from(e: gnf_core::Error) -> Self {
        Failure {
            code: if e.is_invalid_input() { 2 } else { 1 },
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            kind: "io".into(),
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let err = json!({"error": {"kind": f.kind, "message": f.message}});
            eprintln!("{err}");
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match cli.cmd {
        Cmd::Emit {
            family,
            params,
            format,
        } => {
            let family = family
                .or(cfg.emit.family)
                .ok_or_else(|| Failure::usage("--family is required"))?;
            let params = merge_params(cfg.emit.params, &params)?;
            let format = format.or(cfg.emit.format).unwrap_or(Format::Json);
            emit::emit(&mut out, &family, params, format)?;
            0
        }
        Cmd::Check {
            suite,
            seed,
            samples,
        } => {
            let suite = suite
                .or(cfg.check.suite)
                .ok_or_else(|| Failure::usage("--suite is required"))?;
            let sc = SuiteConfig {
                seed: seed.or(cfg.check.seed).unwrap_or(0),
                samples: samples.or(cfg.check.samples).unwrap_or(20),
                tolerances: tolerances_from_env()?,
            };
            let reports = run_suite(&suite, &sc)?;
            for r in &reports {
                serde_json::to_writer(&mut out, r).map_err(|e| Failure::usage(e.to_string()))?;
                writeln!(out)?;
            }
            let s = Summary::of(&reports);
            writeln!(
                out,
                "{}",
                json!({"summary": {"suite": suite, "total": s.total, "passed": s.passed, "failed": s.failed}})
            )?;
            u8::from(s.failed > 0)
        }
        Cmd::Limits {
            which,
            grid,
            params,
        } => {
            let which = which
                .or(cfg.limits.which)
                .ok_or_else(|| Failure::usage("--which is required"))?;
            let grid = grid
                .or(cfg.limits.grid)
                .ok_or_else(|| Failure::usage("--grid is required"))?;
            let params = merge_params(cfg.limits.params, &params)?;
            limits::limits(&mut out, which, &grid, &params)?;
            0
        }
    };
    out.flush()?;
    Ok(code)
}

/// Config-file parameters overridden key by key by `--param k=v` flags.
fn merge_params(
    mut base: BTreeMap<String, String>,
    flags: &[String],
) -> Result<BTreeMap<String, String>, Failure> {
    for p in flags {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("parameter '{p}' is not of the form k=v")))?;
        if k.trim().is_empty() {
            return Err(Failure::usage(format!("parameter '{p}' has an empty key")));
        }
        base.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(base)
}

/// GNF_TOL_OVERRIDE replaces the suite tolerances; with CI set it can only
/// tighten them.
fn tolerances_from_env() -> Result<Tolerances, Failure> {
    let ci = std::env::var("CI")
        .map(|v| !v.is_empty() && v != "0" && v != "false")
        .unwrap_or(false);
    let override_tol = match std::env::var("GNF_TOL_OVERRIDE") {
        Ok(v) if !v.trim().is_empty() => {
            let t: f64 = v
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("GNF_TOL_OVERRIDE '{v}' is not a number")))?;
            if !(t.is_finite() && t > 0.0) {
                return Err(Failure::usage("GNF_TOL_OVERRIDE must be positive"));
            }
            Some(t)
        }
        _ => None,
    };
    Ok(Tolerances { override_tol, ci })
}
