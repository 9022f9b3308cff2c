//! Flag parsing shared by the subcommands.

use std::fs;
use std::path::Path;

use kb_core::{Boundary, EquilibriumModel, Grid, InitialCondition};

use crate::args::{GridArgs, IcArgs};
use crate::error::CliError;

pub fn model(name: &str, alpha: f64, c0: f64) -> Result<EquilibriumModel, CliError> {
    EquilibriumModel::from_name(name, alpha, c0).map_err(|e| CliError::flag("--scheme", e.to_string()))
}

/// Resolves `--ic`/`--profile`. Without `--ic`, Burgers schemes default to
/// the converging ramp and the acoustic scheme to the Gaussian pulse.
pub fn initial_condition(args: &IcArgs, model: &EquilibriumModel) -> Result<InitialCondition, CliError> {
    match (args.ic.as_deref(), &args.profile) {
        (None | Some("custom"), Some(path)) => Ok(InitialCondition::Custom {
            values: read_profile(path)?,
        }),
        (Some("custom"), None) => Err(CliError::flag("--ic", "custom needs --profile <file>")),
        (Some(_), Some(_)) => Err(CliError::flag("--profile", "only valid with --ic custom")),
        (Some(name), None) => InitialCondition::from_name(name).map_err(|e| CliError::flag("--ic", e.to_string())),
        (None, None) if model.is_burgers() => Ok(InitialCondition::ConvergingShock),
        (None, None) => Ok(InitialCondition::gaussian()),
    }
}

pub fn read_profile(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut values = vec![];
    for line in text.lines().filter(|l| !l.trim_start().starts_with('#')) {
        for token in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: f64 = token
                .parse()
                .map_err(|_| CliError::flag("--profile", format!("'{token}' is not a number")))?;
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(CliError::flag("--profile", format!("{} holds no values", path.display())));
    }
    Ok(values)
}

/// The initial condition's default grid with any flag overrides applied.
pub fn grid(args: &GridArgs, ic: &InitialCondition) -> Result<Grid, CliError> {
    let d = ic.default_grid();
    let grid = Grid::new(
        args.xmin.unwrap_or(d.x_min()),
        args.xmax.unwrap_or(d.x_max()),
        args.cells.unwrap_or(d.n_cells()),
    );
    grid.map_err(|e| CliError::flag("--cells/--xmin/--xmax", e.to_string()))
}

pub fn boundary(args: &GridArgs) -> Boundary {
    if args.periodic {
        Boundary::Periodic
    } else {
        Boundary::Dirichlet
    }
}

/// Parses `a,b,c` or the inclusive range `start:stop:step` into sorted,
/// de-duplicated values. Range points are `start + k·step` rounded to 12
/// decimals.
pub fn parse_values(flag: &'static str, spec: &str) -> Result<Vec<f64>, CliError> {
    let number = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::flag(flag, format!("'{t}' is not a finite number")))
    };
    let mut values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(CliError::flag(flag, format!("range '{spec}' must be start:stop:step")));
        };
        let (a, b, step) = (number(a)?, number(b)?, number(step)?);
        if step <= 0.0 {
            return Err(CliError::flag(flag, format!("range step must be positive, got {step}")));
        }
        let n = ((b - a) / step + 1e-9).floor();
        if n < 0.0 {
            return Err(CliError::flag(flag, format!("range '{spec}' is empty")));
        }
        (0..=n as usize)
            .map(|k| round12(a + k as f64 * step))
            .collect()
    } else {
        spec.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(number)
            .collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err(CliError::flag(flag, "empty value list"));
    }
    values.sort_by(f64::total_cmp);
    values.dedup();
    Ok(values)
}

fn round12(v: f64) -> f64 {
    format!("{v:.12}").parse().expect("formatted float parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(
            parse_values("--lambda", "1.8:3.0:0.2").unwrap(),
            vec![1.8, 2.0, 2.2, 2.4, 2.6, 2.8, 3.0]
        );
        assert_eq!(parse_values("--s", "2,1,1.7,1").unwrap(), vec![1.0, 1.7, 2.0]);
        assert_eq!(parse_values("--s", "1.5").unwrap(), vec![1.5]);
        assert_eq!(parse_values("--s", "1:1:0.1").unwrap(), vec![1.0]);
    }

    #[test]
    fn empty_or_malformed_ranges_fail() {
        for bad in ["3:1:0.2", "1:2:0", "1:2", "", ",", "a,b", "1:2:x"] {
            assert!(parse_values("--lambda", bad).is_err(), "{bad}");
        }
    }
}
