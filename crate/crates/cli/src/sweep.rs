use std::env;
use std::fmt::Write as _;
use std::fs;

use kb_core::report::fmt_f64;
use kb_core::{EquilibriumModel, InitialCondition, RunReport, SchemeConfig};
use rayon::prelude::*;

use crate::args::SweepArgs;
use crate::error::{CliError, EXIT_OK};
use crate::params;
use crate::run::{apply_duration, check_speed_and_rates};

pub const SWEEP_HEADER: &str = "scheme,alpha,lambda,s2,s3,diverged,l1_error,shock_width,shock_speed,overshoot";

/// Final time used when neither `--steps` nor `--t-final` is given.
pub const DEFAULT_T_FINAL: f64 = 2.0;

/// Worker count from `KB_THREADS`; unset, empty or 0 means sequential.
pub fn threads_from_env() -> Result<usize, CliError> {
    match env::var("KB_THREADS") {
        Err(_) => Ok(0),
        Ok(s) if s.trim().is_empty() => Ok(0),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::flag("KB_THREADS", format!("'{s}' is not a thread count"))),
    }
}

pub fn execute(args: &SweepArgs) -> Result<i32, CliError> {
    let alphas = params::parse_values("--alpha", &args.alpha)?;
    let lambdas = params::parse_values("--lambda", &args.lambda)?;
    let rates = params::parse_values("--s", &args.s)?;
    let probe = params::model(&args.scheme, alphas[0], args.c0)?;
    let ic = params::initial_condition(&args.ic, &probe)?;
    let grid = params::grid(&args.grid, &ic)?;
    // alpha only varies the centered D1Q3 scheme
    let alpha_axis: Vec<Option<f64>> = match probe {
        EquilibriumModel::CenteredD1Q3 { .. } => alphas.iter().copied().map(Some).collect(),
        _ => vec![None],
    };

    let mut jobs = vec![];
    for &alpha in &alpha_axis {
        let model = params::model(&args.scheme, alpha.unwrap_or(alphas[0]), args.c0)?;
        for &lambda in &lambdas {
            for &s in &rates {
                check_speed_and_rates(lambda, s, s)?;
                let config = SchemeConfig::new(model, lambda, grid)
                    .with_rates(s, s)
                    .with_snapshot_every(1)
                    .with_boundary(params::boundary(&args.grid));
                let config = apply_duration(config, &args.duration, Some(DEFAULT_T_FINAL))?;
                jobs.push((alpha, config));
            }
        }
    }

    let rows = run_jobs(&jobs, &ic, threads_from_env()?)?;
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for ((alpha, _), report) in jobs.iter().zip(&rows) {
        csv.push_str(&row(*alpha, report));
        csv.push('\n');
    }
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let path = args.out.join("sweep.csv");
    fs::write(&path, &csv).map_err(|e| CliError::io(&path, e))?;
    print!("{csv}");
    Ok(EXIT_OK)
}

fn run_jobs(
    jobs: &[(Option<f64>, SchemeConfig)],
    ic: &InitialCondition,
    threads: usize,
) -> Result<Vec<RunReport>, CliError> {
    let one = |(_, config): &(Option<f64>, SchemeConfig)| kb_core::run(config, ic);
    let reports: Result<Vec<_>, _> = if threads == 0 {
        jobs.iter().map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::flag("KB_THREADS", e.to_string()))?;
        pool.install(|| jobs.par_iter().map(one).collect())
    };
    Ok(reports?)
}

/// One CSV row; parameters use shortest round-trip formatting, metrics the
/// fixed 17-digit format, and unavailable metrics are left empty.
pub fn row(alpha: Option<f64>, report: &RunReport) -> String {
    let c = &report.config;
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    let mut out = String::new();
    let _ = write!(
        out,
        "{},{},{},{},{},{},{},{},{},{}",
        c.model.name(),
        alpha.map(|a| a.to_string()).unwrap_or_default(),
        c.lambda,
        c.s2,
        c.s3,
        u8::from(report.diverged),
        opt(report.l1_error),
        report.shock.map(|m| m.width_cells.to_string()).unwrap_or_default(),
        opt(report.shock_speed),
        opt(report.shock.map(|m| m.overshoot)),
    );
    out
}
