//! Finite-volume reading of the lattice Boltzmann update.
//!
//! Streaming after collision is the conservative update
//!
//! ```text
//!     u_i(t+Δt) = u_i(t) − (Δt/Δx) [ψ_{i+½} − ψ_{i−½}],   ψ_{i+½} = λ (f₊*_i − f₋*_{i+1})
//! ```
//!
//! With unit relaxation rates `f* = f^eq`, so `ψ` becomes the flux-split
//! form `F₊(u_i) + F₋(u_{i+1})` with `F₊ = λ f₊^eq`, `F₋ = −λ f₋^eq`. For the
//! upwind equilibrium this is the Engquist–Osher flux.

use serde::{Deserialize, Serialize};

use crate::equilibria::EquilibriumModel;
use crate::error::{config_err, Result};
use crate::initial::InitialCondition;
use crate::lattice::Populations;
use crate::solver::{Boundary, SchemeConfig, Solver};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterfaceFluxField {
    /// `n_cells + 1` values; entry `k` sits between full-array cells `k`
    /// and `k + 1` (entry 0 is the left ghost face).
    pub values: Vec<f64>,
    pub time: f64,
}

/// `ψ = λ (f₊*(x) − f₋*(x + Δx))` at the face right of full-array cell `i`.
pub fn interface_flux_psi(post_collision: &[Populations], i: usize, lambda: f64) -> f64 {
    lambda * (post_collision[i].plus - post_collision[i + 1].minus)
}

pub fn interface_fluxes(post_collision: &[Populations], lambda: f64, time: f64) -> InterfaceFluxField {
    InterfaceFluxField {
        values: (0..post_collision.len() - 1)
            .map(|i| interface_flux_psi(post_collision, i, lambda))
            .collect(),
        time,
    }
}

/// `(F₊, F₋) = (λ f₊^eq(u), −λ f₋^eq(u))`.
pub fn flux_split(u: f64, model: &EquilibriumModel, lambda: f64) -> (f64, f64) {
    let f = model.equilibrium_f(u, lambda);
    (lambda * f.plus, -lambda * f.minus)
}

/// Engquist–Osher flux for Burgers: `max(uL,0)²/2 + min(uR,0)²/2`.
pub fn engquist_osher_flux(u_left: f64, u_right: f64) -> f64 {
    let l = u_left.max(0.0);
    let r = u_right.min(0.0);
    0.5 * l * l + 0.5 * r * r
}

/// Numerical flux used by the finite-volume reference path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FvFlux {
    EngquistOsher,
    /// `F₊(uL) + F₋(uR)` from a model's equilibrium.
    Split {
        model: EquilibriumModel,
        lambda: f64,
    },
}

impl FvFlux {
    /// The reference flux paired with a lattice scheme.
    pub fn for_model(model: &EquilibriumModel, lambda: f64) -> Self {
        match model {
            EquilibriumModel::UpwindD1Q3 => FvFlux::EngquistOsher,
            _ => FvFlux::Split {
                model: *model,
                lambda,
            },
        }
    }

    pub fn eval(&self, u_left: f64, u_right: f64) -> f64 {
        match self {
            FvFlux::EngquistOsher => engquist_osher_flux(u_left, u_right),
            FvFlux::Split { model, lambda } => {
                flux_split(u_left, model, *lambda).0 + flux_split(u_right, model, *lambda).1
            }
        }
    }
}

/// One conservative step on `u` including one ghost value per side; the
/// ghosts are copied through unchanged.
pub fn fv_step<F>(u: &[f64], flux: F, dx: f64, dt: f64) -> Vec<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let psi: Vec<f64> = u.windows(2).map(|w| flux(w[0], w[1])).collect();
    let ratio = dt / dx;
    let mut out = u.to_vec();
    for i in 1..u.len() - 1 {
        out[i] = u[i] - ratio * (psi[i] - psi[i - 1]);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// Max-norm gap between the two paths after each step.
    pub per_step: Vec<f64>,
    pub max_deviation: f64,
}

/// Default tolerance of the unit-rate equivalence.
pub const EQUIVALENCE_TOL: f64 = 1e-13;

/// Runs the lattice scheme and the finite-volume scheme with `flux` side by
/// side from the same data, with no restriction on the relaxation rates.
pub fn deviation_series(
    config: &SchemeConfig,
    ic: &InitialCondition,
    steps: usize,
    flux: FvFlux,
) -> Result<EquivalenceReport> {
    if !config.model.is_burgers() {
        return config_err("finite-volume comparison is defined for the Burgers schemes");
    }
    let solver = Solver::new(config.clone(), ic)?;
    let mut state = solver.init_state();
    let (left, right) = ic.far_field(&config.grid);
    let periodic = config.boundary == Boundary::Periodic;

    let mut u = Vec::with_capacity(config.grid.n_cells() + 2);
    u.push(left);
    u.extend(state.conserved());
    u.push(right);
    let wrap = |u: &mut Vec<f64>| {
        if periodic {
            let n = u.len();
            u[0] = u[n - 2];
            u[n - 1] = u[1];
        }
    };
    wrap(&mut u);

    let (dx, dt) = (config.grid.dx(), config.dt());
    let mut per_step = Vec::with_capacity(steps);
    for _ in 0..steps {
        solver.step(&mut state);
        u = fv_step(&u, |a, b| flux.eval(a, b), dx, dt);
        wrap(&mut u);
        let gap = state
            .conserved()
            .iter()
            .zip(&u[1..u.len() - 1])
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        per_step.push(gap);
    }
    let max_deviation = per_step.iter().copied().fold(0.0, f64::max);
    Ok(EquivalenceReport {
        per_step,
        max_deviation,
    })
}

/// Unit-rate equivalence between a lattice scheme and its reference flux.
/// Rejects configurations with `s2` or `s3` other than 1.
pub fn equivalence_check(config: &SchemeConfig, ic: &InitialCondition, steps: usize) -> Result<EquivalenceReport> {
    if config.s2 != 1.0 || config.s3 != 1.0 {
        return config_err(format!(
            "finite-volume equivalence needs s2 = s3 = 1, got s2 = {}, s3 = {}",
            config.s2, config.s3
        ));
    }
    deviation_series(config, ic, steps, FvFlux::for_model(&config.model, config.lambda))
}
