//! Entropy solutions of the Burgers test problems and the metrics used to
//! compare numerical profiles against them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initial::InitialCondition;
use crate::lattice::Grid;

/// Exact entropy solution `u(x, t)` for the analytic Burgers problems.
/// `None` for custom data and the acoustic pulse.
pub fn exact_solution(ic: &InitialCondition, x: f64, t: f64) -> Option<f64> {
    match *ic {
        InitialCondition::ConvergingShock => Some(if t < 1.0 {
            if x <= t {
                1.0
            } else if x <= 1.0 {
                (1.0 - x) / (1.0 - t)
            } else {
                0.0
            }
        } else if x < 0.5 * (1.0 + t) {
            1.0
        } else {
            0.0
        }),
        InitialCondition::RiemannShock { x0 } => {
            Some(if x < x0 + 0.5 * t { 1.0 } else { 0.0 })
        }
        InitialCondition::RiemannRarefaction { x0 } => Some(if x <= x0 {
            0.0
        } else if x >= x0 + t {
            1.0
        } else {
            (x - x0) / t
        }),
        InitialCondition::Custom { .. } | InitialCondition::GaussianPulse { .. } => None,
    }
}

/// Location of the exact shock, when one exists at time `t`.
pub fn exact_shock_position(ic: &InitialCondition, t: f64) -> Option<f64> {
    match *ic {
        InitialCondition::ConvergingShock if t >= 1.0 => Some(0.5 * (1.0 + t)),
        InitialCondition::RiemannShock { x0 } => Some(x0 + 0.5 * t),
        _ => None,
    }
}

/// `Σ |u_i − u_exact(x_i, t)| dx` over the interior cells.
pub fn l1_error(profile: &[f64], ic: &InitialCondition, t: f64, grid: &Grid) -> Option<f64> {
    let mut sum = 0.0;
    for (i, &u) in profile.iter().enumerate().take(grid.n_cells()) {
        sum += (u - exact_solution(ic, grid.center(i), t)?).abs();
    }
    Some(sum * grid.dx())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShockMetrics {
    /// Linear-interpolated crossing of the half level `(uL + uR)/2`.
    pub position: f64,
    /// Cells strictly inside the 10–90% band of the jump.
    pub width_cells: usize,
    /// `max(u) − max(uL, uR)`.
    pub overshoot: f64,
    /// `min(uL, uR) − min(u)`.
    pub undershoot: f64,
}

pub fn shock_metrics(x: &[f64], u: &[f64], u_left: f64, u_right: f64) -> Result<ShockMetrics> {
    if x.len() != u.len() || u.len() < 2 {
        return Err(Error::Metric("profile needs at least two matching samples".into()));
    }
    let jump = u_left - u_right;
    if jump == 0.0 || !jump.is_finite() {
        return Err(Error::Metric("plateaus must differ".into()));
    }
    let mid = 0.5 * (u_left + u_right);
    // orient so the profile crosses the half level from above
    let sign = jump.signum();
    let position = u
        .windows(2)
        .position(|w| sign * (w[0] - mid) >= 0.0 && sign * (w[1] - mid) < 0.0)
        .map(|i| {
            let t = (u[i] - mid) / (u[i] - u[i + 1]);
            x[i] + t * (x[i + 1] - x[i])
        })
        .ok_or_else(|| Error::Metric("profile never crosses the half level".into()))?;

    let (lo, hi) = (u_left.min(u_right), u_left.max(u_right));
    let band = 0.1 * jump.abs();
    let width_cells = u.iter().filter(|&&v| v > lo + band && v < hi - band).count();
    let max = u.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = u.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ShockMetrics {
        position,
        width_cells,
        overshoot: max - hi,
        undershoot: lo - min,
    })
}

/// Least-squares slope of `y` against `t`.
pub fn least_squares_slope(t: &[f64], y: &[f64]) -> Option<f64> {
    let n = t.len().min(y.len());
    if n < 2 {
        return None;
    }
    let tm = t[..n].iter().sum::<f64>() / n as f64;
    let ym = y[..n].iter().sum::<f64>() / n as f64;
    let (mut sty, mut stt) = (0.0, 0.0);
    for i in 0..n {
        sty += (t[i] - tm) * (y[i] - ym);
        stt += (t[i] - tm) * (t[i] - tm);
    }
    (stt > 0.0).then(|| sty / stt)
}
