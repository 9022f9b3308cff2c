//! Property suites bundled behind `kb verify`.

use std::f64::consts::PI;

use kb_core::diagnostics::{entropy_monotonicity_report, total_acoustic_energy};
use kb_core::fv::{equivalence_check, EQUIVALENCE_TOL};
use kb_core::legendre::{dual_part_oracle, population_interval};
use kb_core::{Boundary, EquilibriumModel, Grid, InitialCondition, MomentMatrix, SchemeConfig, Slot, Solver};

use crate::args::VerifyArgs;
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY};

pub const SUITES: [&str; 5] = [
    "dual-identity",
    "legendre-oracle",
    "fv-equivalence",
    "h-theorem",
    "acoustic-energy",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl SuiteResult {
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!("{status} {} {}", self.name, self.detail)
    }
}

/// Dual entropy parts as seen by the suites; `plus_shift` adds
/// `plus_shift·y²` to `h₊*`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Duals {
    pub plus_shift: f64,
}

impl Duals {
    pub fn part(&self, model: &EquilibriumModel, slot: Slot, y: f64, lambda: f64) -> f64 {
        let shift = if slot == Slot::Plus { self.plus_shift * y * y } else { 0.0 };
        model.dual_part(slot, y, lambda) + shift
    }
}

pub fn execute(args: &VerifyArgs) -> Result<i32, CliError> {
    for name in &args.suite {
        if !SUITES.contains(&name.as_str()) {
            return Err(CliError::flag(
                "--suite",
                format!("unknown suite '{name}' (known: {})", SUITES.join(", ")),
            ));
        }
    }
    let duals = Duals {
        plus_shift: args.perturb_dual_plus,
    };
    let selected: Vec<&str> = SUITES
        .iter()
        .copied()
        .filter(|s| args.suite.is_empty() || args.suite.iter().any(|a| a == s))
        .collect();

    let mut failing = vec![];
    for name in selected {
        let result = run_suite(name, duals);
        println!("{}", result.line());
        if !result.pass {
            failing.push(result.name);
        }
    }
    if failing.is_empty() {
        println!("all suites passed");
        Ok(EXIT_OK)
    } else {
        println!("failing: {}", failing.join(","));
        Ok(EXIT_VERIFY)
    }
}

pub fn run_suite(name: &str, duals: Duals) -> SuiteResult {
    match name {
        "dual-identity" => dual_identity(duals),
        "legendre-oracle" => legendre_oracle(duals),
        "fv-equivalence" => fv_equivalence(),
        "h-theorem" => h_theorem(),
        "acoustic-energy" => acoustic_energy(),
        other => panic!("unknown suite {other}"),
    }
}

fn burgers_cases() -> [(EquilibriumModel, f64); 4] {
    [
        (EquilibriumModel::CenteredD1Q3 { alpha: 0.5 }, 3.0),
        (EquilibriumModel::CenteredD1Q3 { alpha: 0.3 }, 2.0),
        (EquilibriumModel::UpwindD1Q3, 1.1),
        (EquilibriumModel::CenteredD1Q2, 1.5),
    ]
}

/// Sum and odd-moment identities of the dual parts, their derivative
/// against the equilibrium, and convexity inside (and, for the centered
/// family, its loss outside) the convexity domain.
pub fn dual_identity(duals: Duals) -> SuiteResult {
    let (mut identity, mut derivative) = (0.0f64, 0.0f64);
    let (mut curvature, mut sharp) = (f64::INFINITY, true);
    let second = |m: &EquilibriumModel, slot: Slot, phi: f64, lambda: f64| {
        let h = 1e-4;
        let d = |p: f64| duals.part(m, slot, p, lambda);
        (d(phi + h) - 2.0 * d(phi) + d(phi - h)) / (h * h)
    };
    for (model, lambda) in burgers_cases() {
        let phi_max = model.convexity_bound(lambda).phi_max;
        for k in 0..200 {
            let phi = phi_max * (-1.0 + 2.0 * k as f64 / 199.0);
            let parts = Slot::ALL.map(|s| duals.part(&model, s, phi, lambda));
            identity = identity
                .max((parts.iter().sum::<f64>() - 0.5 * phi * phi).abs())
                .max((lambda * (parts[2] - parts[0]) - phi.powi(3) / 6.0).abs());
            let feq = model.equilibrium_f(phi, lambda);
            for &slot in model.active_slots() {
                let h = 1e-6;
                let fd = (duals.part(&model, slot, phi + h, lambda) - duals.part(&model, slot, phi - h, lambda)) / (2.0 * h);
                derivative = derivative.max((fd - slot.of(&feq)).abs());
                if phi.abs() < phi_max * (1.0 - 1e-3) {
                    curvature = curvature.min(second(&model, slot, phi, lambda));
                }
            }
        }
        if model != EquilibriumModel::UpwindD1Q3 {
            for phi in [-1.2 * phi_max, 1.2 * phi_max] {
                let worst = Slot::ALL
                    .iter()
                    .map(|&s| second(&model, s, phi, lambda))
                    .fold(f64::INFINITY, f64::min);
                sharp &= worst < 0.0;
            }
        }
    }
    SuiteResult {
        name: "dual-identity",
        pass: identity <= 1e-12 && derivative <= 1e-6 && curvature >= -1e-10 && sharp,
        detail: format!(
            "identity_residual={identity:.3e} derivative_residual={derivative:.3e} \
             min_curvature_inside={curvature:.3e} nonconvex_outside={sharp}"
        ),
    }
}

/// Numerical conjugates of the closed-form entropies against the dual parts.
pub fn legendre_oracle(duals: Duals) -> SuiteResult {
    let (mut worst, mut failures) = (0.0f64, 0usize);
    let mut check = |model: &EquilibriumModel, slot: Slot, y: f64, lambda: f64, window: (f64, f64)| {
        match dual_part_oracle(model, slot, y, lambda, window) {
            Ok(v) => worst = worst.max((v - duals.part(model, slot, y, lambda)).abs()),
            Err(_) => failures += 1,
        }
    };
    for (model, lambda) in burgers_cases() {
        let phi_max = model.convexity_bound(lambda).phi_max;
        for &slot in model.active_slots() {
            let window = population_interval(&model, slot, lambda, phi_max, 0.05);
            for k in 0..100 {
                let y = 0.98 * phi_max * (-1.0 + 2.0 * k as f64 / 99.0);
                check(&model, slot, y, lambda, window);
            }
        }
    }
    let acoustic = EquilibriumModel::AcousticD1Q3 { c0: 1.0 };
    for slot in Slot::ALL {
        for k in 0..100 {
            let y = -2.0 + 4.0 * k as f64 / 99.0;
            check(&acoustic, slot, y, 1.5, (-3.0, 3.0));
        }
    }
    SuiteResult {
        name: "legendre-oracle",
        pass: worst <= 1e-6 && failures == 0,
        detail: format!("max_error={worst:.3e} oracle_failures={failures}"),
    }
}

pub fn fv_equivalence() -> SuiteResult {
    let ic = InitialCondition::riemann_shock();
    let mut worst = 0.0f64;
    let mut parts = vec![];
    for (model, lambda) in [
        (EquilibriumModel::UpwindD1Q3, 1.5),
        (EquilibriumModel::CenteredD1Q3 { alpha: 0.5 }, 3.0),
        (EquilibriumModel::CenteredD1Q2, 1.5),
    ] {
        let config = SchemeConfig::new(model, lambda, ic.default_grid()).with_rates(1.0, 1.0);
        let dev = equivalence_check(&config, &ic, 50).map_or(f64::INFINITY, |r| r.max_deviation);
        worst = worst.max(dev);
        parts.push(format!("{}={dev:.3e}", model.name()));
    }
    SuiteResult {
        name: "fv-equivalence",
        pass: worst <= EQUIVALENCE_TOL,
        detail: parts.join(" "),
    }
}

/// Unit-rate periodic runs inside the convexity domain must not increase
/// the total entropy.
pub fn h_theorem() -> SuiteResult {
    let grid = Grid::new(0.0, 1.0, 200).expect("valid grid");
    let smooth = InitialCondition::Custom {
        values: grid
            .centers()
            .iter()
            .map(|x| 0.5 + 0.3 * (2.0 * PI * x).sin())
            .collect(),
    };
    let shock = InitialCondition::riemann_shock();
    let mut pass = true;
    let mut worst = f64::NEG_INFINITY;
    for (model, lambda) in [
        (EquilibriumModel::CenteredD1Q3 { alpha: 0.5 }, 3.0),
        (EquilibriumModel::UpwindD1Q3, 1.1),
        (EquilibriumModel::CenteredD1Q2, 1.5),
    ] {
        for ic in [&smooth, &shock] {
            let config = SchemeConfig::new(model, lambda, grid)
                .with_rates(1.0, 1.0)
                .with_boundary(Boundary::Periodic)
                .with_steps(300);
            let Ok(report) = kb_core::run(&config, ic) else {
                pass = false;
                continue;
            };
            let in_domain = report.entropy.records().iter().all(|r| r.in_convexity_domain);
            match entropy_monotonicity_report(&report.entropy) {
                Some(m) => {
                    pass &= m.monotone && in_domain;
                    worst = worst.max(m.max_increase / m.tolerance.max(f64::MIN_POSITIVE));
                }
                None => pass = false,
            }
        }
    }
    SuiteResult {
        name: "h-theorem",
        pass,
        detail: format!("max_increase_over_tolerance={worst:.3e}"),
    }
}

/// Acoustic collision conserves `(ρ, q)`, sets `m3` to `c0²ρ` and the
/// quadratic energy does not grow.
pub fn acoustic_energy() -> SuiteResult {
    let (c0, lambda) = (1.0, 1.5);
    let ic = InitialCondition::gaussian();
    let model = EquilibriumModel::AcousticD1Q3 { c0 };
    let config = SchemeConfig::new(model, lambda, ic.default_grid()).with_rates(1.0, 1.0);
    let solver = Solver::new(config.clone(), &ic).expect("valid acoustic preset");
    let mm = MomentMatrix::new(lambda).expect("valid speed");
    let mut state = solver.init_state();
    let dx = config.grid.dx();

    let (mut drift, mut m3) = (0.0f64, 0.0f64);
    let mut energy = total_acoustic_energy(state.interior(), c0, lambda, dx);
    let tolerance = 1e-12 * energy;
    let mut growth = f64::NEG_INFINITY;
    for _ in 0..500 {
        for f in state.interior() {
            let before = mm.to_moments(f);
            let after = mm.to_moments(&solver.collide_cell(f));
            drift = drift.max((after.m1 - before.m1).abs()).max((after.m2 - before.m2).abs());
            m3 = m3.max((model.equilibrium_moments_of(&before, lambda).m3 - c0 * c0 * before.m1).abs());
        }
        solver.step(&mut state);
        let next = total_acoustic_energy(state.interior(), c0, lambda, dx);
        growth = growth.max(next - energy);
        energy = next;
    }
    SuiteResult {
        name: "acoustic-energy",
        pass: drift <= 1e-14 && m3 <= 1e-14 && growth <= tolerance,
        detail: format!("collision_drift={drift:.3e} m3_residual={m3:.3e} max_energy_increase={growth:.3e}"),
    }
}
