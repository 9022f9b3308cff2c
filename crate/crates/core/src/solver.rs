//! Time stepping: relaxation in moment space followed by streaming along
//! the three lattice velocities.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::diagnostics::{EntropyRecord, EntropySeries};
use crate::equilibria::EquilibriumModel;
use crate::error::{config_err, Result};
use crate::exact::{exact_shock_position, l1_error, least_squares_slope, shock_metrics};
use crate::initial::InitialCondition;
use crate::lattice::{Grid, MomentMatrix, Moments, Populations, GHOST};
use crate::report::{RunReport, Snapshot};

/// Default relaxation rate for the non-conserved moments.
pub const DEFAULT_RATE: f64 = 1.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    /// Ghost cells hold the equilibrium of the initial far-field values.
    #[default]
    Dirichlet,
    /// Wrap-around; used for conservation and equivariance checks.
    Periodic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    pub model: EquilibriumModel,
    pub lambda: f64,
    pub s2: f64,
    pub s3: f64,
    pub grid: Grid,
    pub steps: usize,
    pub snapshot_every: usize,
    pub boundary: Boundary,
}

impl SchemeConfig {
    pub fn new(model: EquilibriumModel, lambda: f64, grid: Grid) -> Self {
        Self {
            model,
            lambda,
            s2: DEFAULT_RATE,
            s3: DEFAULT_RATE,
            grid,
            steps: 100,
            snapshot_every: 10,
            boundary: Boundary::Dirichlet,
        }
    }

    pub fn with_rates(mut self, s2: f64, s3: f64) -> Self {
        self.s2 = s2;
        self.s3 = s3;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_snapshot_every(mut self, every: usize) -> Self {
        self.snapshot_every = every;
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    /// Runs until `t_final`, rounded to the nearest whole step.
    pub fn until(mut self, t_final: f64) -> Self {
        self.steps = (t_final / self.dt()).round() as usize;
        self
    }

    /// Time step `Δx / λ`.
    pub fn dt(&self) -> f64 {
        self.grid.dx() / self.lambda
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        MomentMatrix::new(self.lambda)?;
        for (name, s) in [("s2", self.s2), ("s3", self.s3)] {
            if !(s > 0.0 && s <= 2.0) {
                return config_err(format!("{name} must lie in (0, 2], got {s}"));
            }
        }
        if self.snapshot_every == 0 {
            return config_err("snapshot cadence must be at least 1");
        }
        Ok(())
    }
}

/// Populations over the interior plus one ghost cell per side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub populations: Vec<Populations>,
    pub time: f64,
    pub step: usize,
    pub diverged: bool,
}

impl State {
    pub fn interior(&self) -> &[Populations] {
        &self.populations[GHOST..self.populations.len() - GHOST]
    }

    pub fn interior_mut(&mut self) -> &mut [Populations] {
        let n = self.populations.len();
        &mut self.populations[GHOST..n - GHOST]
    }

    /// First moment per interior cell (`u`, or `ρ` for acoustics).
    pub fn conserved(&self) -> Vec<f64> {
        self.interior().iter().map(Populations::density).collect()
    }

    /// `λ (f₊ − f₋)` per interior cell (`q` for acoustics).
    pub fn flux_moment(&self, lambda: f64) -> Vec<f64> {
        self.interior()
            .iter()
            .map(|f| lambda * (f.plus - f.minus))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct Solver {
    config: SchemeConfig,
    moments: MomentMatrix,
    initial: Vec<f64>,
    far_field: (Populations, Populations),
    divergence_threshold: f64,
}

impl Solver {
    pub fn new(config: SchemeConfig, ic: &InitialCondition) -> Result<Self> {
        config.validate()?;
        if ic.is_acoustic() != !config.model.is_burgers() {
            return config_err(format!(
                "initial condition '{}' does not fit the {} scheme",
                ic.name(),
                config.model.name()
            ));
        }
        let initial = ic.sample(&config.grid)?;
        let (left, right) = ic.far_field(&config.grid);
        let lambda = config.lambda;
        let far_field = (
            config.model.equilibrium_f(left, lambda),
            config.model.equilibrium_f(right, lambda),
        );
        let peak = initial.iter().fold(0.0f64, |a, u| a.max(u.abs()));
        Ok(Self {
            moments: MomentMatrix::new(lambda)?,
            divergence_threshold: 10.0 * (1.0 + peak),
            initial,
            far_field,
            config,
        })
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.config
    }

    pub fn far_field(&self) -> (Populations, Populations) {
        self.far_field
    }

    /// Every interior cell at the equilibrium of the initial profile.
    pub fn init_state(&self) -> State {
        let lambda = self.config.lambda;
        let mut populations = Vec::with_capacity(self.initial.len() + 2 * GHOST);
        populations.push(self.far_field.0);
        populations.extend(
            self.initial
                .iter()
                .map(|&u| self.config.model.equilibrium_f(u, lambda)),
        );
        populations.push(self.far_field.1);
        let mut state = State {
            populations,
            time: 0.0,
            step: 0,
            diverged: false,
        };
        self.apply_boundaries(&mut state);
        state
    }

    /// Relaxed moments `m*`: conserved entries are copied, the others move a
    /// fraction `s_k` of the way to equilibrium.
    pub fn relax_moments(&self, m: &Moments) -> Moments {
        let cfg = &self.config;
        let meq = cfg.model.equilibrium_moments_of(m, cfg.lambda);
        let toward = |mk: f64, eq: f64, s: f64| mk + s * (eq - mk);
        match cfg.model {
            EquilibriumModel::AcousticD1Q3 { .. } => Moments::new(m.m1, m.m2, toward(m.m3, meq.m3, cfg.s3)),
            // m3 is slaved to m1 when the rest population is pinned at zero
            EquilibriumModel::CenteredD1Q2 => Moments::new(m.m1, toward(m.m2, meq.m2, cfg.s2), m.m3),
            _ => Moments::new(m.m1, toward(m.m2, meq.m2, cfg.s2), toward(m.m3, meq.m3, cfg.s3)),
        }
    }

    /// Post-collision populations of one cell.
    ///
    /// Evaluated as `f* = f^eq + M⁻¹ (m* − m^eq)`, where the non-equilibrium
    /// part `(1 − s_k)(m_k − m_k^eq)` of every conserved or slaved moment is
    /// exactly zero. This equals `M⁻¹ m*` and reproduces `f^eq` bit for bit
    /// when `s = 1`.
    pub fn collide_cell(&self, f: &Populations) -> Populations {
        let cfg = &self.config;
        let lambda = cfg.lambda;
        let m = self.moments.to_moments(f);
        let feq = cfg.model.equilibrium_of(&m, lambda);
        let meq = cfg.model.equilibrium_moments_of(&m, lambda);
        let (d2, d3) = match cfg.model {
            EquilibriumModel::AcousticD1Q3 { .. } => (0.0, (1.0 - cfg.s3) * (m.m3 - meq.m3)),
            EquilibriumModel::CenteredD1Q2 => ((1.0 - cfg.s2) * (m.m2 - meq.m2), 0.0),
            _ => (
                (1.0 - cfg.s2) * (m.m2 - meq.m2),
                (1.0 - cfg.s3) * (m.m3 - meq.m3),
            ),
        };
        let flux = 0.5 * d2 / lambda;
        let energy = d3 / (lambda * lambda);
        Populations {
            minus: feq.minus + (0.5 * energy - flux),
            zero: feq.zero - energy,
            plus: feq.plus + (0.5 * energy + flux),
        }
    }

    pub fn collide(&self, state: &mut State) {
        for f in state.interior_mut() {
            *f = self.collide_cell(f);
        }
    }

    pub fn apply_boundaries(&self, state: &mut State) {
        let n = state.populations.len();
        match self.config.boundary {
            Boundary::Dirichlet => {
                state.populations[0] = self.far_field.0;
                state.populations[n - 1] = self.far_field.1;
            }
            Boundary::Periodic => {
                state.populations[0] = state.populations[n - 2];
                state.populations[n - 1] = state.populations[1];
            }
        }
    }

    /// Collide, fill ghosts, stream, then check for divergence.
    pub fn step(&self, state: &mut State) {
        self.collide(state);
        self.apply_boundaries(state);
        stream(&mut state.populations);
        state.step += 1;
        state.time = state.step as f64 * self.config.dt();
        state.diverged = self.detect_divergence(state);
    }

    /// True when a population is non-finite or `max|u|` exceeds
    /// `10 (1 + max|u₀|)`.
    pub fn detect_divergence(&self, state: &State) -> bool {
        state.interior().iter().any(|f| {
            !f.is_finite() || f.density().abs() > self.divergence_threshold
        })
    }

    pub fn divergence_threshold(&self) -> f64 {
        self.divergence_threshold
    }

    pub fn record(&self, state: &State) -> EntropyRecord {
        EntropyRecord::of(state, &self.config)
    }
}

/// Shifts `f₊` one cell right and `f₋` one cell left. Ghost cells act as
/// sources and are left holding stale values.
pub fn stream(populations: &mut [Populations]) {
    let n = populations.len();
    for i in (1..n).rev() {
        populations[i].plus = populations[i - 1].plus;
    }
    for i in 0..n - 1 {
        populations[i].minus = populations[i + 1].minus;
    }
}

/// Full run with snapshots, entropy series and error metrics. Stops early
/// once the state diverges.
pub fn run(config: &SchemeConfig, ic: &InitialCondition) -> Result<RunReport> {
    let started = Instant::now();
    let solver = Solver::new(config.clone(), ic)?;
    let mut state = solver.init_state();
    let mut snapshots = vec![Snapshot::of(&state, config)];
    let mut entropy = EntropySeries::default();
    entropy.push(solver.record(&state));

    while state.step < config.steps && !state.diverged {
        solver.step(&mut state);
        entropy.push(solver.record(&state));
        if state.step % config.snapshot_every == 0 || state.step == config.steps || state.diverged {
            snapshots.push(Snapshot::of(&state, config));
        }
    }

    let grid = &config.grid;
    let x = grid.centers();
    let u = state.conserved();
    let (mut shock, mut shock_speed, mut l1) = (None, None, None);
    if config.model.is_burgers() && !state.diverged {
        let (left, right) = ic.far_field(grid);
        shock = shock_metrics(&x, &u, left, right).ok();
        l1 = l1_error(&u, ic, state.time, grid);
        let (mut times, mut positions) = (vec![], vec![]);
        for snap in &snapshots {
            if exact_shock_position(ic, snap.time).is_none() {
                continue;
            }
            if let Ok(m) = shock_metrics(&x, &snap.u, left, right) {
                times.push(snap.time);
                positions.push(m.position);
            }
        }
        shock_speed = least_squares_slope(&times, &positions);
    }

    Ok(RunReport {
        config: config.clone(),
        initial_condition: ic.clone(),
        diverged: state.diverged,
        diverged_at: state.diverged.then_some(state.step),
        snapshots,
        entropy,
        shock,
        shock_speed,
        l1_error: l1,
        final_state: state,
        wall_time: started.elapsed(),
    })
}
