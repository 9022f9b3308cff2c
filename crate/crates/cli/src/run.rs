use std::fs;
use std::path::Path;

use kb_core::report::fmt_f64;
use kb_core::{RunReport, SchemeConfig};

use crate::args::{DurationArgs, RunArgs};
use crate::error::{CliError, EXIT_DIVERGED, EXIT_OK};
use crate::params;

pub const DEFAULT_STEPS: usize = 100;

pub fn check_speed_and_rates(lambda: f64, s2: f64, s3: f64) -> Result<(), CliError> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(CliError::flag("--lambda", format!("must be positive and finite, got {lambda}")));
    }
    for (flag, s) in [("--s2", s2), ("--s3", s3)] {
        if !(s > 0.0 && s <= 2.0) {
            return Err(CliError::flag(flag, format!("must lie in (0, 2], got {s}")));
        }
    }
    Ok(())
}

/// Applies `--steps`/`--t-final`, falling back to `default_t` and then to
/// [`DEFAULT_STEPS`].
pub fn apply_duration(config: SchemeConfig, args: &DurationArgs, default_t: Option<f64>) -> Result<SchemeConfig, CliError> {
    match (args.steps, args.t_final.or(default_t)) {
        (Some(n), _) => Ok(config.with_steps(n)),
        (None, Some(t)) if t > 0.0 && t.is_finite() => Ok(config.until(t)),
        (None, Some(t)) => Err(CliError::flag("--t-final", format!("must be positive, got {t}"))),
        (None, None) => Ok(config.with_steps(DEFAULT_STEPS)),
    }
}

pub fn execute(args: &RunArgs) -> Result<i32, CliError> {
    let model = params::model(&args.scheme.scheme, args.scheme.alpha, args.scheme.c0)?;
    let ic = params::initial_condition(&args.ic, &model)?;
    let grid = params::grid(&args.grid, &ic)?;
    check_speed_and_rates(args.lambda, args.s2, args.s3)?;
    if args.snapshot_every == 0 {
        return Err(CliError::flag("--snapshot-every", "must be at least 1"));
    }
    let config = SchemeConfig::new(model, args.lambda, grid)
        .with_rates(args.s2, args.s3)
        .with_snapshot_every(args.snapshot_every)
        .with_boundary(params::boundary(&args.grid));
    let config = apply_duration(config, &args.duration, None)?;

    let report = kb_core::run(&config, &ic)?;
    write_outputs(&args.out, &report)?;
    print_summary(&report);
    eprintln!("wall time: {:.3} s", report.wall_time.as_secs_f64());

    Ok(if report.diverged { EXIT_DIVERGED } else { EXIT_OK })
}

pub fn write_outputs(dir: &Path, report: &RunReport) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let write = |name: &str, body: &str| {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| CliError::io(path, e))
    };
    for snap in &report.snapshots {
        write(&snap.file_name(), &snap.to_csv())?;
    }
    write("entropy.csv", &report.entropy_csv())?;
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    write("report.json", &(json + "\n"))
}

fn print_summary(report: &RunReport) {
    let opt = |v: Option<f64>| v.map_or_else(|| "none".to_string(), fmt_f64);
    println!(
        "scheme={} steps={} time={} diverged={}",
        report.config.model.name(),
        report.final_state.step,
        fmt_f64(report.final_time()),
        report.diverged
    );
    if let Some(m) = report.shock {
        println!(
            "shock position={} width_cells={} overshoot={} undershoot={}",
            fmt_f64(m.position),
            m.width_cells,
            fmt_f64(m.overshoot),
            fmt_f64(m.undershoot)
        );
    }
    println!("l1_error={} shock_speed={}", opt(report.l1_error), opt(report.shock_speed));
}
