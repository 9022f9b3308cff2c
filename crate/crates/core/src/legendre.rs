//! Numerical Legendre–Fenchel conjugates, used to check the closed-form
//! entropies against their duals.
//!
//! Functions are extended-valued: `None` means `+∞` (outside the domain),
//! so a search interval may overhang the domain and a boundary maximizer
//! is still bracketed.

use crate::equilibria::{EquilibriumModel, Slot};
use crate::error::{Error, Result};

const SAMPLES: usize = 2001;
const GOLDEN_ITERS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conjugate {
    pub value: f64,
    pub argmax: f64,
}

/// `sup_{x ∈ [lo, hi]} (slope·x − g(x))` by grid sampling refined with a
/// golden-section search around the best sample.
///
/// Fails when the best sample sits on an end of the interval, i.e. the
/// interval does not bracket the maximizer.
pub fn conjugate<G>(g: G, slope: f64, lo: f64, hi: f64) -> Result<Conjugate>
where
    G: Fn(f64) -> Option<f64>,
{
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::Oracle(format!("invalid interval [{lo}, {hi}]")));
    }
    let objective = |x: f64| match g(x) {
        Some(v) if v.is_finite() => slope * x - v,
        _ => f64::NEG_INFINITY,
    };
    let h = (hi - lo) / (SAMPLES - 1) as f64;
    let at = |k: usize| if k == SAMPLES - 1 { hi } else { lo + k as f64 * h };

    let (mut best_k, mut best) = (0, f64::NEG_INFINITY);
    for k in 0..SAMPLES {
        let v = objective(at(k));
        if v > best {
            best = v;
            best_k = k;
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::Oracle("function is +inf on the whole interval".into()));
    }
    if best_k == 0 || best_k == SAMPLES - 1 {
        return Err(Error::Oracle(format!(
            "maximizer at interval end {} for slope {slope}",
            at(best_k)
        )));
    }

    let (mut a, mut b) = (at(best_k - 1), at(best_k + 1));
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (objective(c), objective(d));
    for _ in 0..GOLDEN_ITERS {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    let mut out = Conjugate {
        value: best,
        argmax: at(best_k),
    };
    for x in [c, d, 0.5 * (a + b)] {
        let v = objective(x);
        if v > out.value {
            out = Conjugate { value: v, argmax: x };
        }
    }
    Ok(out)
}

/// Numerical `h_j*(y) = sup_f (y f − h_j(f))` from the closed-form
/// microscopic entropy, searched over `f ∈ [lo, hi]`.
pub fn dual_part_oracle(
    model: &EquilibriumModel,
    slot: Slot,
    y: f64,
    lambda: f64,
    (lo, hi): (f64, f64),
) -> Result<f64> {
    conjugate(|f| model.micro_entropy(slot, f, lambda).ok(), y, lo, hi).map(|c| c.value)
}

/// Numerical `h_j(f) = sup_y (f y − h_j*(y))` with `h_j*` restricted to
/// `|y| <= phi_max`, searched over `y ∈ [lo, hi]`.
pub fn micro_entropy_oracle(
    model: &EquilibriumModel,
    slot: Slot,
    f: f64,
    lambda: f64,
    phi_max: f64,
    (lo, hi): (f64, f64),
) -> Result<f64> {
    let restricted = |y: f64| (y.abs() <= phi_max).then(|| model.dual_part(slot, y, lambda));
    conjugate(restricted, f, lo, hi).map(|c| c.value)
}

/// Search interval for `f` covering the image of `[-phi_max, phi_max]`
/// under the slot's equilibrium, widened by `margin` of its length.
pub fn population_interval(
    model: &EquilibriumModel,
    slot: Slot,
    lambda: f64,
    phi_max: f64,
    margin: f64,
) -> (f64, f64) {
    let a = slot.of(&model.equilibrium_f(-phi_max, lambda));
    let b = slot.of(&model.equilibrium_f(phi_max, lambda));
    let (lo, hi) = (a.min(b), a.max(b));
    let pad = margin * (hi - lo).max(f64::EPSILON);
    (lo - pad, hi + pad)
}
