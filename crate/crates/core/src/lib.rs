//! Entropy-stable lattice Boltzmann schemes for the 1D Burgers equation and
//! linear acoustics.
//!
//! The equilibria come from kinetic decompositions of the dual entropy
//! ([`equilibria`]); a D1Q3 moment-space solver advances them
//! ([`solver`]). Around it sit exact solutions of the classic shock and
//! rarefaction problems ([`exact`]), entropy diagnostics
//! ([`diagnostics`]), a finite-volume reference path ([`fv`]) and a
//! numerical Legendre transform used to check the closed forms
//! ([`legendre`]).

pub mod diagnostics;
pub mod equilibria;
pub mod error;
pub mod exact;
pub mod fv;
pub mod initial;
pub mod lattice;
pub mod legendre;
pub mod report;
pub mod solver;

pub use equilibria::{ConvexityDomain, EquilibriumModel, Slot};
pub use error::{Error, Result};
pub use exact::ShockMetrics;
pub use initial::InitialCondition;
pub use lattice::{Grid, MomentMatrix, Moments, Populations};
pub use report::{RunReport, Snapshot};
pub use solver::{run, Boundary, SchemeConfig, Solver, State};
