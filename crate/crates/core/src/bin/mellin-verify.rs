//! `mellin-verify`: evaluate single functions and run identity sweeps.
//!
//! Exit status: 0 when every checked identity holds, 1 when any fails,
//! 2 on bad arguments, grid files or I/O errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use legendre_mellin::verify::{
    default_grid, emit_report, eval_point, run_sweep, write_report, EvalFunction, GridOverrides,
    Identity, LogLevel, SweepReport, SweepSpec,
};

#[derive(Parser)]
#[command(name = "mellin-verify", version, about = "Mellin transforms of Riesz kernels: evaluation and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function, e.g. `eval ferrers --mu=0 --nu=1 --xi=0.25`.
    Eval {
        /// riesz, h, kq, gegenbauer, ferrers, mellin_h_numeric, mellin_h_closed or corollary
        function: String,
        /// Parameters as --name=value (complex values like 0.3+0.2i).
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "--PARAM=VALUE")]
        params: Vec<String>,
    },
    /// Run a verification sweep for one identity, or `all`.
    Verify {
        /// eq1, eq2, by_parts, corollary, gegenbauer_gf, duplication, recurrence, h_bound, kq_reduction or all
        identity: String,
        /// JSON file overriding grid lists (lambdas, ns, qs, xis, re_s, im_s, points).
        #[arg(long)]
        grid_file: Option<PathBuf>,
        /// Tolerance of the identity's main comparison.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for randomized grids (required by recurrence, kq_reduction and all).
        #[arg(long)]
        seed: Option<u64>,
        /// CSV output path; the report goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for `verify all` reports, one `<identity>.csv` each.
        #[arg(long, default_value = "verify-reports")]
        out_dir: PathBuf,
    },
}

/// Failure before any identity was checked.
struct UsageError(String);

fn usage<E: std::fmt::Display>(e: E) -> UsageError {
    UsageError(e.to_string())
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, String>, UsageError> {
    let mut out = BTreeMap::new();
    let mut iter = raw.iter();
    while let Some(arg) = iter.next() {
        let Some(body) = arg.strip_prefix("--") else {
            return Err(UsageError(format!("expected --name=value, got '{arg}'")));
        };
        let (name, value) = match body.split_once('=') {
            Some((n, v)) => (n.to_string(), v.to_string()),
            None => {
                let v = iter
                    .next()
                    .ok_or_else(|| UsageError(format!("--{body} needs a value")))?;
                (body.to_string(), v.clone())
            }
        };
        if out.insert(name.clone(), value).is_some() {
            return Err(UsageError(format!("--{name} given twice")));
        }
    }
    Ok(out)
}

fn log_report(level: LogLevel, report: &SweepReport) {
    if level == LogLevel::PerPoint {
        for r in &report.records {
            eprintln!(
                "{} {:?} lhs={} rhs={} rel_err={:.3e} [{}] {}",
                r.identity,
                r.params,
                r.lhs,
                r.rhs,
                r.rel_err,
                r.oracle,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
    }
    if level != LogLevel::Silent {
        eprintln!("{}", report.summary);
    }
}

fn needs_seed(identity: Identity) -> bool {
    matches!(identity, Identity::Recurrence | Identity::KqReduction)
}

fn verify_one(
    identity: Identity,
    grid_file: Option<&Path>,
    tol: Option<f64>,
    seed: Option<u64>,
    out: Option<&Path>,
    level: LogLevel,
) -> Result<bool, UsageError> {
    if needs_seed(identity) && seed.is_none() {
        return Err(UsageError(format!("{identity} uses a random grid: pass --seed")));
    }
    let mut grid = default_grid(identity);
    if let Some(path) = grid_file {
        let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        grid = grid.apply(GridOverrides::from_json(&text).map_err(usage)?);
    }
    let spec = SweepSpec::new(
        identity,
        grid,
        tol.unwrap_or_else(|| identity.default_tol()),
        seed.unwrap_or(0),
    )
    .map_err(usage)?;
    let report = run_sweep(&spec);
    match out {
        Some(path) => emit_report(&report.records, path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        None => write_report(&report.records, std::io::stdout().lock()).map_err(usage)?,
    }
    log_report(level, &report);
    Ok(report.summary.pass)
}

fn verify_all(seed: Option<u64>, out_dir: &Path, level: LogLevel) -> Result<bool, UsageError> {
    let seed = seed.ok_or_else(|| UsageError("verify all includes random grids: pass --seed".into()))?;
    std::fs::create_dir_all(out_dir).map_err(|e| UsageError(format!("{}: {e}", out_dir.display())))?;
    let mut passed = 0;
    for identity in Identity::ALL {
        let spec = SweepSpec::with_defaults(identity, seed).map_err(usage)?;
        let report = run_sweep(&spec);
        let path = out_dir.join(format!("{identity}.csv"));
        emit_report(&report.records, &path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        log_report(level, &report);
        passed += usize::from(report.summary.pass);
    }
    if level != LogLevel::Silent {
        eprintln!("all: {passed}/{} identities pass", Identity::ALL.len());
    }
    Ok(passed == Identity::ALL.len())
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Eval { function, params } => {
            let function: EvalFunction = function.parse().map_err(usage)?;
            let params = parse_params(&params)?;
            let expected = function.params();
            if let Some(extra) = params.keys().find(|k| !expected.contains(&k.as_str())) {
                return Err(UsageError(format!("{}: unknown parameter --{extra}", function.name())));
            }
            // `form` is the only optional parameter
            if let Some(missing) = expected.iter().find(|p| **p != "form" && !params.contains_key(**p)) {
                return Err(UsageError(format!("{}: missing parameter --{missing}", function.name())));
            }
            match eval_point(function, &params) {
                Ok(value) => {
                    let mut out = std::io::stdout().lock();
                    writeln!(out, "{value}").map_err(usage)?;
                    Ok(true)
                }
                Err(e) => {
                    eprintln!("{}: {e}", function.name());
                    Ok(false)
                }
            }
        }
        Command::Verify { identity, grid_file, tol, seed, out, out_dir } => {
            let level = LogLevel::from_env().map_err(usage)?;
            if identity == "all" {
                if grid_file.is_some() || tol.is_some() || out.is_some() {
                    return Err(UsageError("verify all takes only --seed and --out-dir".into()));
                }
                return verify_all(seed, &out_dir, level);
            }
            let identity: Identity = identity.parse().map_err(usage)?;
            verify_one(identity, grid_file.as_deref(), tol, seed, out.as_deref(), level)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
