use std::fmt::Write as _;
use std::fs;

use kb_core::fv::{equivalence_check, EQUIVALENCE_TOL};
use kb_core::report::fmt_f64;
use kb_core::{InitialCondition, SchemeConfig};

use crate::args::CompareArgs;
use crate::error::{CliError, EXIT_OK};
use crate::params;
use crate::run::check_speed_and_rates;

pub const COMPARE_HEADER: &str = "step,time,max_deviation";

pub fn execute(args: &CompareArgs) -> Result<i32, CliError> {
    check_speed_and_rates(args.lambda, args.s2, args.s3)?;
    for (flag, s) in [("--s2", args.s2), ("--s3", args.s3)] {
        if s != 1.0 {
            return Err(CliError::flag(
                flag,
                format!(
                    "got {s}; the lattice scheme equals a finite-volume scheme only at s2 = s3 = 1, \
                     since for other rates the interface flux depends on the non-equilibrium populations"
                ),
            ));
        }
    }
    let model = params::model(&args.scheme.scheme, args.scheme.alpha, args.scheme.c0)?;
    if !model.is_burgers() {
        return Err(CliError::flag("--scheme", "comparison is defined for the Burgers schemes"));
    }
    let ic = match args.ic.ic {
        None if args.ic.profile.is_none() => InitialCondition::riemann_shock(),
        _ => params::initial_condition(&args.ic, &model)?,
    };
    let grid = params::grid(&args.grid, &ic)?;
    let config = SchemeConfig::new(model, args.lambda, grid)
        .with_rates(args.s2, args.s3)
        .with_boundary(params::boundary(&args.grid));

    let report = equivalence_check(&config, &ic, args.steps)?;
    let dt = config.dt();
    let mut csv = String::from(COMPARE_HEADER);
    csv.push('\n');
    for (k, dev) in report.per_step.iter().enumerate() {
        let step = k + 1;
        let _ = writeln!(csv, "{step},{},{}", fmt_f64(step as f64 * dt), fmt_f64(*dev));
    }
    fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    let path = args.out.join("compare.csv");
    fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;

    println!(
        "scheme={} steps={} max_deviation={} tolerance={} within_tolerance={}",
        config.model.name(),
        args.steps,
        fmt_f64(report.max_deviation),
        fmt_f64(EQUIVALENCE_TOL),
        report.max_deviation <= EQUIVALENCE_TOL
    );
    Ok(EXIT_OK)
}
