//! Shared fixtures for the criterion benchmarks.

use kb_core::{EquilibriumModel, Grid, InitialCondition, SchemeConfig};

/// The stable converging-shock configuration at a given resolution.
pub fn converging_config(model: EquilibriumModel, lambda: f64, cells: usize) -> (SchemeConfig, InitialCondition) {
    let grid = Grid::new(-0.5, 2.5, cells).expect("valid grid");
    let config = SchemeConfig::new(model, lambda, grid).until(2.0);
    (config, InitialCondition::ConvergingShock)
}
