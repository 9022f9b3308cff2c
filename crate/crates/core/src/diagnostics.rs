//! Entropy accounting and run-health instrumentation.

use serde::{Deserialize, Serialize};

use crate::equilibria::{acoustic_energy, EquilibriumModel};
use crate::lattice::Populations;
use crate::solver::{SchemeConfig, State};

/// `Σ_i Σ_j h_j(f_j,i) dx`, or `None` as soon as one population leaves the
/// entropy domain of its slot.
pub fn total_entropy(cells: &[Populations], model: &EquilibriumModel, lambda: f64, dx: f64) -> Option<f64> {
    let mut sum = 0.0;
    for f in cells {
        sum += model.cell_entropy(f, lambda).ok()?;
    }
    Some(sum * dx)
}

/// Macroscopic acoustic energy `Σ (ρ²/2 + q²/2c0²) dx`.
pub fn total_acoustic_energy(cells: &[Populations], c0: f64, lambda: f64, dx: f64) -> f64 {
    cells
        .iter()
        .map(|f| acoustic_energy(f.density(), lambda * (f.plus - f.minus), c0))
        .sum::<f64>()
        * dx
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    pub step: usize,
    pub time: f64,
    pub total_h: Option<f64>,
    pub total_mass: f64,
    pub max_abs_u: f64,
    pub in_convexity_domain: bool,
}

impl EntropyRecord {
    pub fn of(state: &State, config: &SchemeConfig) -> Self {
        let cells = state.interior();
        let (lambda, dx) = (config.lambda, config.grid.dx());
        let domain = config.model.convexity_bound(lambda);
        let (mut mass, mut max_abs) = (0.0, 0.0f64);
        let mut inside = true;
        for f in cells {
            let u = f.density();
            mass += u;
            max_abs = max_abs.max(u.abs());
            inside &= domain.contains(u);
        }
        Self {
            step: state.step,
            time: state.time,
            total_h: total_entropy(cells, &config.model, lambda, dx),
            total_mass: mass * dx,
            max_abs_u: max_abs,
            in_convexity_domain: inside,
        }
    }

    pub fn entropy_defined(&self) -> bool {
        self.total_h.is_some()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EntropySeries {
    records: Vec<EntropyRecord>,
}

impl EntropySeries {
    /// Appends a record; steps must be strictly increasing.
    pub fn push(&mut self, record: EntropyRecord) {
        if let Some(last) = self.records.last() {
            assert!(record.step > last.step, "entropy records must advance in step");
        }
        self.records.push(record);
    }

    pub fn records(&self) -> &[EntropyRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

impl FromIterator<EntropyRecord> for EntropySeries {
    fn from_iter<I: IntoIterator<Item = EntropyRecord>>(iter: I) -> Self {
        let mut s = EntropySeries::default();
        for r in iter {
            s.push(r);
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    /// Largest single-step increase of the total entropy (negative if it
    /// strictly decreased every step).
    pub max_increase: f64,
    pub tolerance: f64,
    pub monotone: bool,
}

/// Relative tolerance on per-step entropy growth, scaled by `|H₀|`.
pub const MONOTONE_RTOL: f64 = 1e-12;

/// `None` if the series is shorter than two records or the entropy is
/// undefined anywhere in it.
pub fn entropy_monotonicity_report(series: &EntropySeries) -> Option<MonotonicityReport> {
    let values: Option<Vec<f64>> = series.records().iter().map(|r| r.total_h).collect();
    let values = values?;
    if values.len() < 2 {
        return None;
    }
    let tolerance = MONOTONE_RTOL * values[0].abs();
    let max_increase = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    Some(MonotonicityReport {
        max_increase,
        tolerance,
        monotone: max_increase <= tolerance,
    })
}
