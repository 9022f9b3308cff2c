//! Kinetic decompositions of the dual entropy and the equilibria they induce.
//!
//! Each model splits the dual entropy `η*(φ)` into one convex function per
//! velocity, `h₋*`, `h₀*`, `h₊*`, such that
//!
//! ```text
//!     h₋* + h₀* + h₊* = η*(φ)        λ (h₊* − h₋*) = ζ*(φ)
//! ```
//!
//! For Burgers with the quadratic entropy `η* = φ²/2`, `ζ* = φ³/6` and the
//! entropy variable is `φ = u`. The equilibrium of slot `j` is the derivative
//! `(h_j*)'` evaluated at the slot's entropy variable, and the microscopic
//! entropy `h_j` is the Legendre dual of `h_j*`. The models are stable while
//! every `h_j*` stays convex, which is a bound on `|φ|`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{config_err, Error, Result};
use crate::lattice::{Moments, Populations};

/// One of the three discrete velocities `-λ`, `0`, `+λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Slot {
    Minus,
    Zero,
    Plus,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Minus, Slot::Zero, Slot::Plus];

    pub fn index(self) -> usize {
        match self {
            Slot::Minus => 0,
            Slot::Zero => 1,
            Slot::Plus => 2,
        }
    }

    /// Velocity in units of `λ`.
    pub fn direction(self) -> f64 {
        match self {
            Slot::Minus => -1.0,
            Slot::Zero => 0.0,
            Slot::Plus => 1.0,
        }
    }

    pub fn of(self, f: &Populations) -> f64 {
        match self {
            Slot::Minus => f.minus,
            Slot::Zero => f.zero,
            Slot::Plus => f.plus,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::Minus => "minus",
            Slot::Zero => "zero",
            Slot::Plus => "plus",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EquilibriumModel {
    /// Centered D1Q3 family, `h₀* = (1-α) φ²/2`. Requires `0 < α < 1`.
    #[serde(rename = "centered-d1q3")]
    CenteredD1Q3 { alpha: f64 },
    /// Upwind D1Q3: one of `h₊*`, `h₋*` vanishes on each side of `φ = 0`.
    #[serde(rename = "upwind-d1q3")]
    UpwindD1Q3,
    /// The `α = 1` member of the centered family; the rest particle is inactive.
    #[serde(rename = "centered-d1q2")]
    CenteredD1Q2,
    /// Linear acoustics `(ρ, q)` with sound speed `c0`.
    #[serde(rename = "acoustic-d1q3")]
    AcousticD1Q3 { c0: f64 },
}

/// Range of entropy variables on which every `h_j*` of a model is convex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityDomain {
    /// Bound on `|φ|`. Infinite for acoustics, whose parts are quadratic.
    pub phi_max: f64,
    /// For acoustics, whether `c0 <= λ`. Always true for the Burgers models.
    pub lattice_ok: bool,
}

impl ConvexityDomain {
    pub fn contains(&self, phi: f64) -> bool {
        self.lattice_ok && phi.abs() <= self.phi_max
    }
}

impl EquilibriumModel {
    pub fn validate(&self) -> Result<()> {
        match *self {
            EquilibriumModel::CenteredD1Q3 { alpha } => {
                if alpha == 1.0 {
                    return config_err("alpha = 1 degenerates the rest slot; use the centered-d1q2 scheme");
                }
                if !(alpha > 0.0 && alpha < 1.0) {
                    return config_err(format!("alpha must lie in (0, 1), got {alpha}"));
                }
            }
            EquilibriumModel::AcousticD1Q3 { c0 } => {
                if !(c0 > 0.0 && c0.is_finite()) {
                    return config_err(format!("sound speed c0 must be positive, got {c0}"));
                }
            }
            EquilibriumModel::UpwindD1Q3 | EquilibriumModel::CenteredD1Q2 => {}
        }
        Ok(())
    }

    /// The CLI name of the scheme.
    pub fn name(&self) -> &'static str {
        match self {
            EquilibriumModel::CenteredD1Q3 { .. } => "centered-d1q3",
            EquilibriumModel::UpwindD1Q3 => "upwind-d1q3",
            EquilibriumModel::CenteredD1Q2 => "centered-d1q2",
            EquilibriumModel::AcousticD1Q3 { .. } => "acoustic-d1q3",
        }
    }

    /// Builds a model from its CLI name. `alpha` and `c0` are only read by
    /// the models that take them.
    pub fn from_name(name: &str, alpha: f64, c0: f64) -> Result<Self> {
        let model = match name {
            "centered-d1q3" => EquilibriumModel::CenteredD1Q3 { alpha },
            "upwind-d1q3" => EquilibriumModel::UpwindD1Q3,
            "centered-d1q2" => EquilibriumModel::CenteredD1Q2,
            "acoustic-d1q3" => EquilibriumModel::AcousticD1Q3 { c0 },
            other => return config_err(format!("unknown scheme '{other}'")),
        };
        model.validate()?;
        Ok(model)
    }

    pub fn is_burgers(&self) -> bool {
        !matches!(self, EquilibriumModel::AcousticD1Q3 { .. })
    }

    /// Weight `α` of the centered family (1 for D1Q2).
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            EquilibriumModel::CenteredD1Q3 { alpha } => Some(alpha),
            EquilibriumModel::CenteredD1Q2 => Some(1.0),
            _ => None,
        }
    }

    /// Slots carrying a microscopic entropy.
    pub fn active_slots(&self) -> &'static [Slot] {
        match self {
            EquilibriumModel::CenteredD1Q2 => &[Slot::Minus, Slot::Plus],
            _ => &Slot::ALL,
        }
    }

    /// Burgers equilibrium populations at state `u`. For the acoustic model
    /// `u` is read as `ρ` with `q = 0`.
    pub fn equilibrium_f(&self, u: f64, lambda: f64) -> Populations {
        match *self {
            EquilibriumModel::CenteredD1Q3 { alpha } => centered_f(alpha, u, lambda),
            EquilibriumModel::CenteredD1Q2 => {
                let f = centered_f(1.0, u, lambda);
                Populations::new(f.minus, 0.0, f.plus)
            }
            EquilibriumModel::UpwindD1Q3 => {
                let k = u * u / (2.0 * lambda);
                if u >= 0.0 {
                    Populations::new(0.0, u - k, k)
                } else {
                    Populations::new(-k, u + k, 0.0)
                }
            }
            EquilibriumModel::AcousticD1Q3 { c0 } => acoustic_equilibrium_f(u, 0.0, c0, lambda),
        }
    }

    /// Equilibrium moments in closed form (not via the moment matrix).
    pub fn equilibrium_moments(&self, u: f64, lambda: f64) -> Moments {
        let flux = 0.5 * u * u;
        match *self {
            EquilibriumModel::CenteredD1Q3 { alpha } => {
                Moments::new(u, flux, alpha * lambda * lambda * u)
            }
            EquilibriumModel::CenteredD1Q2 => Moments::new(u, flux, lambda * lambda * u),
            EquilibriumModel::UpwindD1Q3 => Moments::new(u, flux, lambda * sgn(u) * flux),
            EquilibriumModel::AcousticD1Q3 { c0 } => acoustic_equilibrium_moments(u, 0.0, c0),
        }
    }

    /// Equilibrium populations for the conserved part of `m`: `m1` for
    /// Burgers, `(m1, m2) = (ρ, q)` for acoustics.
    pub fn equilibrium_of(&self, m: &Moments, lambda: f64) -> Populations {
        match *self {
            EquilibriumModel::AcousticD1Q3 { c0 } => acoustic_equilibrium_f(m.m1, m.m2, c0, lambda),
            _ => self.equilibrium_f(m.m1, lambda),
        }
    }

    pub fn equilibrium_moments_of(&self, m: &Moments, lambda: f64) -> Moments {
        match *self {
            EquilibriumModel::AcousticD1Q3 { c0 } => acoustic_equilibrium_moments(m.m1, m.m2, c0),
            _ => self.equilibrium_moments(m.m1, lambda),
        }
    }

    /// The dual entropy part `h_j*(y)` of one slot.
    pub fn dual_part(&self, slot: Slot, y: f64, lambda: f64) -> f64 {
        let cubic = y * y * y / (12.0 * lambda);
        match *self {
            EquilibriumModel::CenteredD1Q3 { alpha } => match slot {
                Slot::Minus => 0.25 * alpha * y * y - cubic,
                Slot::Zero => 0.5 * (1.0 - alpha) * y * y,
                Slot::Plus => 0.25 * alpha * y * y + cubic,
            },
            EquilibriumModel::CenteredD1Q2 => match slot {
                Slot::Minus => 0.25 * y * y - cubic,
                Slot::Zero => 0.0,
                Slot::Plus => 0.25 * y * y + cubic,
            },
            EquilibriumModel::UpwindD1Q3 => {
                let c = 2.0 * cubic;
                match slot {
                    Slot::Minus if y <= 0.0 => -c,
                    Slot::Plus if y >= 0.0 => c,
                    Slot::Minus | Slot::Plus => 0.0,
                    Slot::Zero => 0.5 * y * y - c.abs(),
                }
            }
            EquilibriumModel::AcousticD1Q3 { c0 } => {
                let r = c0 * c0 / (lambda * lambda);
                match slot {
                    Slot::Zero => 0.5 * (1.0 - r) * y * y,
                    Slot::Minus | Slot::Plus => 0.25 * r * y * y,
                }
            }
        }
    }

    /// `(h₋*, h₀*, h₊*)` at a scalar entropy variable `φ`. Every slot sees
    /// `φ` itself since the conserved row of the moment matrix is `(1, 1, 1)`.
    pub fn dual_entropy_parts(&self, phi: f64, lambda: f64) -> [f64; 3] {
        Slot::ALL.map(|s| self.dual_part(s, phi, lambda))
    }

    /// Microscopic entropy `h_j(f)`, the Legendre dual of `h_j*`.
    pub fn micro_entropy(&self, slot: Slot, f: f64, lambda: f64) -> Result<f64> {
        let out = || Error::EntropyDomain { slot, value: f };
        if !f.is_finite() {
            return Err(out());
        }
        match *self {
            EquilibriumModel::CenteredD1Q3 { alpha } => match slot {
                Slot::Plus => centered_side_entropy(alpha, f, lambda).ok_or_else(out),
                Slot::Minus => centered_side_entropy(alpha, -f, lambda).ok_or_else(out),
                Slot::Zero => Ok(f * f / (2.0 * (1.0 - alpha))),
            },
            EquilibriumModel::CenteredD1Q2 => match slot {
                Slot::Plus => centered_side_entropy(1.0, f, lambda).ok_or_else(out),
                Slot::Minus => centered_side_entropy(1.0, -f, lambda).ok_or_else(out),
                Slot::Zero => Err(out()),
            },
            EquilibriumModel::UpwindD1Q3 => match slot {
                Slot::Plus if f >= 0.0 => Ok(2.0 / 3.0 * f * (2.0 * lambda * f).sqrt()),
                Slot::Minus if f <= 0.0 => Ok(-2.0 / 3.0 * f * (-2.0 * lambda * f).sqrt()),
                Slot::Zero if f.abs() <= 0.5 * lambda => {
                    // (λ²/3)[(1-a)^{3/2} + 3a/2 - 1] with a = 2|f|/λ, rewritten
                    // as (λ²/3)(1-r)²(r+½), r = √(1-a), to avoid cancellation.
                    let a = 2.0 * f.abs() / lambda;
                    let r = (1.0 - a).sqrt();
                    let d = a / (1.0 + r);
                    Ok(lambda * lambda / 3.0 * d * d * (r + 0.5))
                }
                _ => Err(out()),
            },
            EquilibriumModel::AcousticD1Q3 { c0 } => {
                let r = c0 * c0 / (lambda * lambda);
                match slot {
                    Slot::Minus | Slot::Plus => Ok(f * f / r),
                    Slot::Zero if r < 1.0 => Ok(f * f / (2.0 * (1.0 - r))),
                    Slot::Zero => Err(out()),
                }
            }
        }
    }

    /// Microscopic entropy of a whole population triple, summed over the
    /// model's active slots.
    pub fn cell_entropy(&self, f: &Populations, lambda: f64) -> Result<f64> {
        self.active_slots()
            .iter()
            .map(|&s| self.micro_entropy(s, s.of(f), lambda))
            .sum()
    }

    pub fn convexity_bound(&self, lambda: f64) -> ConvexityDomain {
        match *self {
            EquilibriumModel::CenteredD1Q3 { alpha } => ConvexityDomain {
                phi_max: alpha * lambda,
                lattice_ok: true,
            },
            EquilibriumModel::UpwindD1Q3 | EquilibriumModel::CenteredD1Q2 => ConvexityDomain {
                phi_max: lambda,
                lattice_ok: true,
            },
            EquilibriumModel::AcousticD1Q3 { c0 } => ConvexityDomain {
                phi_max: f64::INFINITY,
                lattice_ok: c0 <= lambda,
            },
        }
    }
}

/// `sgn(0) = 0`.
fn sgn(u: f64) -> f64 {
    if u > 0.0 {
        1.0
    } else if u < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn centered_f(alpha: f64, u: f64, lambda: f64) -> Populations {
    let half = 0.5 * alpha * u;
    let k = u * u / (4.0 * lambda);
    Populations::new(half - k, (1.0 - alpha) * u, half + k)
}

/// `h₊` of the centered family; `h₋(f) = h₊(-f)`.
///
/// Closed form `(λ²/6)[(α² + 4f/λ)^{3/2} − α³ − 6αf/λ]`, evaluated as
/// `λ² d² (2s + α)/12` with `s = √(α² + 4f/λ)` and `d = s − α`.
fn centered_side_entropy(alpha: f64, f: f64, lambda: f64) -> Option<f64> {
    let t = 4.0 * f / lambda;
    let disc = alpha * alpha + t;
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let d = if s + alpha > 0.0 { t / (s + alpha) } else { 0.0 };
    Some(lambda * lambda * d * d * (2.0 * s + alpha) / 12.0)
}

/// Acoustic equilibrium `f± = (c0²/2λ²)(ρ ± λq/c0²)`, `f₀ = (1 − c0²/λ²)ρ`.
pub fn acoustic_equilibrium_f(rho: f64, q: f64, c0: f64, lambda: f64) -> Populations {
    let r = c0 * c0 / (lambda * lambda);
    let side = 0.5 * r * rho;
    let flux = 0.5 * q / lambda;
    Populations::new(side - flux, (1.0 - r) * rho, side + flux)
}

pub fn acoustic_equilibrium_moments(rho: f64, q: f64, c0: f64) -> Moments {
    Moments::new(rho, q, c0 * c0 * rho)
}

/// Acoustic dual parts `(h₋*, h₀*, h₊*)` at the particle entropy variables
/// `ρ − λq/c0²`, `ρ`, `ρ + λq/c0²`.
pub fn acoustic_dual_parts(rho: f64, q: f64, c0: f64, lambda: f64) -> [f64; 3] {
    let model = EquilibriumModel::AcousticD1Q3 { c0 };
    let [ym, y0, yp] = acoustic_particle_variables(rho, q, c0, lambda);
    [
        model.dual_part(Slot::Minus, ym, lambda),
        model.dual_part(Slot::Zero, y0, lambda),
        model.dual_part(Slot::Plus, yp, lambda),
    ]
}

pub fn acoustic_particle_variables(rho: f64, q: f64, c0: f64, lambda: f64) -> [f64; 3] {
    let shift = lambda * q / (c0 * c0);
    [rho - shift, rho, rho + shift]
}

/// Acoustic energy `ρ²/2 + q²/(2c0²)`.
pub fn acoustic_energy(rho: f64, q: f64, c0: f64) -> f64 {
    0.5 * rho * rho + 0.5 * q * q / (c0 * c0)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CENTERED: EquilibriumModel = EquilibriumModel::CenteredD1Q3 { alpha: 0.5 };
    const BURGERS: [EquilibriumModel; 4] = [
        CENTERED,
        EquilibriumModel::CenteredD1Q3 { alpha: 0.3 },
        EquilibriumModel::UpwindD1Q3,
        EquilibriumModel::CenteredD1Q2,
    ];

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn equilibrium_examples() {
        for m in BURGERS {
            assert_eq!(m.equilibrium_f(0.0, 2.0).as_array().map(f64::abs), [0.0; 3]);
        }
        let f = CENTERED.equilibrium_f(1.0, 3.0);
        assert!(close(f.minus, 1.0 / 6.0, 1e-15));
        assert!(close(f.zero, 0.5, 1e-15));
        assert!(close(f.plus, 1.0 / 3.0, 1e-15));

        let f = EquilibriumModel::UpwindD1Q3.equilibrium_f(-1.0, 2.0);
        assert_eq!(f, Populations::new(-0.25, -0.75, 0.0));

        let f = EquilibriumModel::CenteredD1Q2.equilibrium_f(1.0, 2.0);
        assert_eq!(f, Populations::new(0.375, 0.0, 0.625));
    }

    #[test]
    fn equilibrium_moment_examples() {
        let m = CENTERED.equilibrium_moments(1.0, 3.0);
        assert_eq!(m, Moments::new(1.0, 0.5, 4.5));
        let m = EquilibriumModel::UpwindD1Q3.equilibrium_moments(-2.0, 3.0);
        assert_eq!(m, Moments::new(-2.0, 2.0, -6.0));
        let m = EquilibriumModel::AcousticD1Q3 { c0: 1.0 }.equilibrium_moments(1.0, 2.0);
        assert_eq!(m, Moments::new(1.0, 0.0, 1.0));
        // both upwind branches agree at the origin
        let m = EquilibriumModel::UpwindD1Q3.equilibrium_moments(0.0, 3.0);
        assert_eq!(m.m3, 0.0);
    }

    #[test]
    fn acoustic_examples() {
        let f = acoustic_equilibrium_f(1.0, 0.0, 1.0, 2.0);
        // f₀ = (h₀*)'(ρ) = (1 − c0²/λ²) ρ, so that the populations sum to ρ
        assert_eq!(f, Populations::new(0.125, 0.75, 0.125));
        assert_eq!(acoustic_equilibrium_f(0.0, 0.0, 1.0, 2.0), Populations::ZERO);
    }

    #[test]
    fn upwind_dual_example() {
        let h = EquilibriumModel::UpwindD1Q3.dual_entropy_parts(1.0, 2.0);
        assert_eq!(h[0], 0.0);
        assert!(close(h[1], 5.0 / 12.0, 1e-15));
        assert!(close(h[2], 1.0 / 12.0, 1e-15));
    }

    #[test]
    fn dual_at_lattice_speed() {
        let lambda = 1.7;
        for m in BURGERS {
            let h = m.dual_entropy_parts(lambda, lambda);
            let sum: f64 = h.iter().sum();
            assert!(close(sum, lambda * lambda / 2.0, 1e-14), "{m:?}");
            assert!(close(lambda * (h[2] - h[0]), lambda.powi(3) / 6.0, 1e-14), "{m:?}");
        }
    }

    #[test]
    fn micro_entropy_examples() {
        for m in BURGERS {
            for &s in m.active_slots() {
                assert_eq!(m.micro_entropy(s, 0.0, 2.0).unwrap(), 0.0, "{m:?} {s}");
            }
        }
        let lambda = 2.5;
        let h = EquilibriumModel::UpwindD1Q3
            .micro_entropy(Slot::Plus, lambda / 2.0, lambda)
            .unwrap();
        assert!(close(h, lambda * lambda / 3.0, 1e-14));
        let h = CENTERED.micro_entropy(Slot::Zero, 0.1, 3.0).unwrap();
        assert!(close(h, 0.01, 1e-16));
        assert_eq!(
            EquilibriumModel::CenteredD1Q2.micro_entropy(Slot::Zero, 0.0, 2.0),
            Err(Error::EntropyDomain {
                slot: Slot::Zero,
                value: 0.0
            })
        );
    }

    #[test]
    fn micro_entropy_domains() {
        let up = EquilibriumModel::UpwindD1Q3;
        assert!(up.micro_entropy(Slot::Plus, -1e-3, 2.0).is_err());
        assert!(up.micro_entropy(Slot::Minus, 1e-3, 2.0).is_err());
        assert!(up.micro_entropy(Slot::Zero, 1.0 + 1e-12, 2.0).is_err());
        assert!(up.micro_entropy(Slot::Zero, -1.0, 2.0).is_ok());
        // α² + 4f/λ < 0
        assert!(CENTERED.micro_entropy(Slot::Plus, -0.2, 3.0).is_err());
        assert!(CENTERED.micro_entropy(Slot::Minus, 0.2, 3.0).is_err());
        assert!(CENTERED.micro_entropy(Slot::Plus, f64::NAN, 3.0).is_err());
        let ac = EquilibriumModel::AcousticD1Q3 { c0: 2.0 };
        assert!(ac.micro_entropy(Slot::Zero, 0.1, 2.0).is_err());
        assert!(ac.micro_entropy(Slot::Plus, 0.1, 2.0).is_ok());
    }

    #[test]
    fn centered_closed_form_matches_stable_rewrite() {
        let (alpha, lambda) = (0.5, 3.0);
        for k in 0..50 {
            let f = -0.18 + 0.01 * k as f64;
            let disc: f64 = alpha * alpha + 4.0 * f / lambda;
            let direct = lambda * lambda / 6.0
                * (disc.powf(1.5) - (alpha.powi(3) + 6.0 * alpha * f / lambda));
            let h = CENTERED.micro_entropy(Slot::Plus, f, lambda).unwrap();
            assert!(close(h, direct, 1e-13), "f={f}");
            let direct_minus = lambda * lambda / 6.0
                * ((alpha * alpha - 4.0 * f / lambda).max(0.0).powf(1.5) + 6.0 * alpha * f / lambda
                    - alpha.powi(3));
            if let Ok(h) = CENTERED.micro_entropy(Slot::Minus, f, lambda) {
                assert!(close(h, direct_minus, 1e-13), "f={f}");
            }
        }
    }

    #[test]
    fn convexity_bounds() {
        assert!(close(CENTERED.convexity_bound(1.8).phi_max, 0.9, 1e-15));
        assert!(close(CENTERED.convexity_bound(3.0).phi_max, 1.5, 1e-15));
        assert_eq!(EquilibriumModel::UpwindD1Q3.convexity_bound(1.1).phi_max, 1.1);
        assert_eq!(EquilibriumModel::CenteredD1Q2.convexity_bound(1.5).phi_max, 1.5);
        assert!(EquilibriumModel::AcousticD1Q3 { c0: 1.0 }.convexity_bound(1.5).lattice_ok);
        assert!(!EquilibriumModel::AcousticD1Q3 { c0: 2.0 }.convexity_bound(1.5).lattice_ok);
    }

    #[test]
    fn validation() {
        assert!(EquilibriumModel::CenteredD1Q3 { alpha: 1.0 }.validate().is_err());
        assert!(EquilibriumModel::CenteredD1Q3 { alpha: 0.0 }.validate().is_err());
        assert!(EquilibriumModel::AcousticD1Q3 { c0: 0.0 }.validate().is_err());
        assert!(EquilibriumModel::from_name("lax", 0.5, 1.0).is_err());
        assert_eq!(
            EquilibriumModel::from_name("upwind-d1q3", 0.5, 1.0).unwrap(),
            EquilibriumModel::UpwindD1Q3
        );
    }

    #[test]
    fn mirror_symmetry_of_centered_models() {
        for m in [CENTERED, EquilibriumModel::CenteredD1Q2] {
            for k in 0..41 {
                let u = -2.0 + 0.1 * k as f64;
                let (a, b) = (m.equilibrium_f(u, 3.0), m.equilibrium_f(-u, 3.0));
                assert!(close(b.plus, -a.minus, 1e-15));
                assert!(close(b.zero, -a.zero, 1e-15));
            }
        }
    }
}
