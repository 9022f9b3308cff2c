use serde::{Deserialize, Serialize};

use crate::error::{config_err, Result};
use crate::lattice::Grid;

/// Initial data. Burgers profiles give `u`; the acoustic pulse gives `ρ`
/// with `q = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialCondition {
    /// `1` for `x <= 0`, `1 - x` on `[0, 1]`, `0` for `x >= 1`.
    ConvergingShock,
    /// `1` left of `x0`, `0` right of it.
    RiemannShock { x0: f64 },
    /// `0` left of `x0`, `1` right of it.
    RiemannRarefaction { x0: f64 },
    /// Values sampled at the interior cell centers.
    Custom { values: Vec<f64> },
    GaussianPulse {
        center: f64,
        width: f64,
        amplitude: f64,
    },
}

impl InitialCondition {
    pub const RIEMANN_X0: f64 = 0.2;

    pub fn riemann_shock() -> Self {
        InitialCondition::RiemannShock { x0: Self::RIEMANN_X0 }
    }

    pub fn riemann_rarefaction() -> Self {
        InitialCondition::RiemannRarefaction { x0: Self::RIEMANN_X0 }
    }

    pub fn gaussian() -> Self {
        InitialCondition::GaussianPulse {
            center: 0.5,
            width: 0.05,
            amplitude: 1.0,
        }
    }

    /// Builds one of the named presets used on the command line.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "converging" => InitialCondition::ConvergingShock,
            "riemann-shock" => Self::riemann_shock(),
            "riemann-rarefaction" => Self::riemann_rarefaction(),
            "gaussian" => Self::gaussian(),
            other => return config_err(format!("unknown initial condition '{other}'")),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            InitialCondition::ConvergingShock => "converging",
            InitialCondition::RiemannShock { .. } => "riemann-shock",
            InitialCondition::RiemannRarefaction { .. } => "riemann-rarefaction",
            InitialCondition::Custom { .. } => "custom",
            InitialCondition::GaussianPulse { .. } => "gaussian",
        }
    }

    pub fn is_acoustic(&self) -> bool {
        matches!(self, InitialCondition::GaussianPulse { .. })
    }

    pub fn default_grid(&self) -> Grid {
        let (a, b, n) = match self {
            InitialCondition::ConvergingShock => (-0.5, 2.5, 300),
            InitialCondition::Custom { values } => (0.0, 1.0, values.len()),
            _ => (0.0, 1.0, 200),
        };
        Grid::new(a, b, n).expect("preset grids are valid")
    }

    /// Pointwise profile; `None` for sampled data.
    pub fn profile(&self, x: f64) -> Option<f64> {
        let step = |x0: f64, left: f64, right: f64| {
            if x < x0 {
                left
            } else if x > x0 {
                right
            } else {
                0.5 * (left + right)
            }
        };
        match *self {
            InitialCondition::ConvergingShock => Some(if x <= 0.0 {
                1.0
            } else if x <= 1.0 {
                1.0 - x
            } else {
                0.0
            }),
            InitialCondition::RiemannShock { x0 } => Some(step(x0, 1.0, 0.0)),
            InitialCondition::RiemannRarefaction { x0 } => Some(step(x0, 0.0, 1.0)),
            InitialCondition::Custom { .. } => None,
            InitialCondition::GaussianPulse {
                center,
                width,
                amplitude,
            } => {
                let z = (x - center) / width;
                Some(amplitude * (-z * z).exp())
            }
        }
    }

    /// Cell-center samples on `grid`.
    pub fn sample(&self, grid: &Grid) -> Result<Vec<f64>> {
        let values = match self {
            InitialCondition::Custom { values } => {
                if values.len() != grid.n_cells() {
                    return config_err(format!(
                        "custom profile has {} values but the grid has {} cells",
                        values.len(),
                        grid.n_cells()
                    ));
                }
                values.clone()
            }
            _ => grid
                .centers()
                .into_iter()
                .map(|x| self.profile(x).expect("analytic profile"))
                .collect(),
        };
        if values.iter().any(|v| !v.is_finite()) {
            return config_err("initial profile contains non-finite values");
        }
        Ok(values)
    }

    /// Values held by the left and right ghost cells: the profile at the
    /// ghost centers, or the end samples of a custom profile.
    pub fn far_field(&self, grid: &Grid) -> (f64, f64) {
        match self {
            InitialCondition::Custom { values } => (
                values.first().copied().unwrap_or(0.0),
                values.last().copied().unwrap_or(0.0),
            ),
            _ => {
                let left = grid.x_min() - 0.5 * grid.dx();
                let right = grid.x_max() + 0.5 * grid.dx();
                (
                    self.profile(left).expect("analytic profile"),
                    self.profile(right).expect("analytic profile"),
                )
            }
        }
    }
}
