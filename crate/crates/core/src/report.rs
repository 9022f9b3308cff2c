//! Run reports and their CSV renderings.
//!
//! Floats are written with 17 significant digits in scientific notation,
//! which round-trips every `f64` and keeps output byte-stable.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::diagnostics::EntropySeries;
use crate::exact::ShockMetrics;
use crate::initial::InitialCondition;
use crate::lattice::Populations;
use crate::solver::{SchemeConfig, State};

pub const SNAPSHOT_HEADER: &str = "x,u,f_minus,f_zero,f_plus";
pub const ENTROPY_HEADER: &str = "step,time,total_H,total_mass,max_abs_u,entropy_defined";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub step: usize,
    pub time: f64,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
    pub populations: Vec<Populations>,
}

impl Snapshot {
    pub fn of(state: &State, config: &SchemeConfig) -> Self {
        Self {
            step: state.step,
            time: state.time,
            x: config.grid.centers(),
            u: state.conserved(),
            populations: state.interior().to_vec(),
        }
    }

    pub fn file_name(&self) -> String {
        format!("snap_{}.csv", self.step)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(96 * self.x.len());
        out.push_str(SNAPSHOT_HEADER);
        out.push('\n');
        for ((x, u), f) in self.x.iter().zip(&self.u).zip(&self.populations) {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt_f64(*x),
                fmt_f64(*u),
                fmt_f64(f.minus),
                fmt_f64(f.zero),
                fmt_f64(f.plus)
            );
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub config: SchemeConfig,
    pub initial_condition: InitialCondition,
    pub diverged: bool,
    pub diverged_at: Option<usize>,
    #[serde(skip)]
    pub snapshots: Vec<Snapshot>,
    #[serde(skip)]
    pub entropy: EntropySeries,
    pub shock: Option<ShockMetrics>,
    pub shock_speed: Option<f64>,
    pub l1_error: Option<f64>,
    #[serde(skip)]
    pub final_state: State,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn final_time(&self) -> f64 {
        self.final_state.time
    }

    pub fn final_profile(&self) -> Vec<f64> {
        self.final_state.conserved()
    }

    pub fn entropy_csv(&self) -> String {
        entropy_csv(&self.entropy)
    }
}

impl Default for State {
    fn default() -> Self {
        State {
            populations: Vec::new(),
            time: 0.0,
            step: 0,
            diverged: false,
        }
    }
}

pub fn entropy_csv(series: &EntropySeries) -> String {
    let mut out = String::new();
    out.push_str(ENTROPY_HEADER);
    out.push('\n');
    for r in series.records() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.step,
            fmt_f64(r.time),
            fmt_f64(r.total_h.unwrap_or(f64::NAN)),
            fmt_f64(r.total_mass),
            fmt_f64(r.max_abs_u),
            u8::from(r.entropy_defined())
        );
    }
    out
}

/// 17 significant digits, scientific notation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}
