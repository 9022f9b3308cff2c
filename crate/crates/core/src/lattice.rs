//! Uniform 1D grids and the D1Q3 particle/moment representations.
//!
//! Populations are stored in the velocity order `(-λ, 0, +λ)`. The moment
//! transform is
//!
//! ```text
//!         |  1   1   1  |
//!     M = | -λ   0   λ  |        m = M f
//!         |  λ²  0   λ² |
//! ```
//!
//! so `m1` is the conserved quantity, `m2` its flux and `m3` the
//! energy-like moment.

use serde::{Deserialize, Serialize};

use crate::error::{config_err, Result};

/// Number of ghost cells on each side of the interior.
pub const GHOST: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_cells: usize,
    dx: f64,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return config_err("grid bounds must be finite");
        }
        if x_max <= x_min {
            return config_err(format!("grid needs x_max > x_min, got [{x_min}, {x_max}]"));
        }
        if n_cells < 4 {
            return config_err(format!("grid needs at least 4 cells, got {n_cells}"));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
            dx: (x_max - x_min) / n_cells as f64,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// Center of interior cell `i` (0-based, ghosts excluded).
    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|i| self.center(i)).collect()
    }
}

/// Particle densities `(f₋, f₀, f₊)` attached to velocities `(-λ, 0, +λ)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Populations {
    pub minus: f64,
    pub zero: f64,
    pub plus: f64,
}

impl Populations {
    pub const ZERO: Self = Self {
        minus: 0.0,
        zero: 0.0,
        plus: 0.0,
    };

    pub fn new(minus: f64, zero: f64, plus: f64) -> Self {
        Self { minus, zero, plus }
    }

    /// Zeroth moment `f₋ + f₀ + f₊`.
    pub fn density(&self) -> f64 {
        self.minus + self.zero + self.plus
    }

    pub fn is_finite(&self) -> bool {
        self.minus.is_finite() && self.zero.is_finite() && self.plus.is_finite()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.minus, self.zero, self.plus]
    }
}

impl From<[f64; 3]> for Populations {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

impl Moments {
    pub fn new(m1: f64, m2: f64, m3: f64) -> Self {
        Self { m1, m2, m3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.m1, self.m2, self.m3]
    }
}

/// The D1Q3 moment transform for a given lattice speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentMatrix {
    lambda: f64,
    inv_lambda: f64,
    inv_lambda2: f64,
}

impl MomentMatrix {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return config_err(format!("lattice speed must be positive and finite, got {lambda}"));
        }
        Ok(Self {
            lambda,
            inv_lambda: 1.0 / lambda,
            inv_lambda2: 1.0 / (lambda * lambda),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let l = self.lambda;
        [[1.0, 1.0, 1.0], [-l, 0.0, l], [l * l, 0.0, l * l]]
    }

    pub fn inverse_matrix(&self) -> [[f64; 3]; 3] {
        let (il, il2) = (self.inv_lambda, self.inv_lambda2);
        [
            [0.0, -0.5 * il, 0.5 * il2],
            [1.0, 0.0, -il2],
            [0.0, 0.5 * il, 0.5 * il2],
        ]
    }

    pub fn to_moments(&self, f: &Populations) -> Moments {
        let l = self.lambda;
        Moments {
            m1: f.minus + f.zero + f.plus,
            m2: l * (f.plus - f.minus),
            m3: l * l * (f.plus + f.minus),
        }
    }

    pub fn from_moments(&self, m: &Moments) -> Populations {
        let flux = 0.5 * m.m2 * self.inv_lambda;
        let energy = m.m3 * self.inv_lambda2;
        Populations {
            minus: 0.5 * energy - flux,
            zero: m.m1 - energy,
            plus: 0.5 * energy + flux,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut c = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    }

    #[test]
    fn matrix_rows_at_unit_speed() {
        let m = MomentMatrix::new(1.0).unwrap().matrix();
        assert_eq!(m, [[1.0, 1.0, 1.0], [-1.0, 0.0, 1.0], [1.0, 0.0, 1.0]]);
    }

    #[test]
    fn inverse_is_inverse() {
        for &lambda in &[0.3, 1.0, 1.1, 1.8, 3.0, 7.5] {
            let mm = MomentMatrix::new(lambda).unwrap();
            for prod in [
                matmul(&mm.matrix(), &mm.inverse_matrix()),
                matmul(&mm.inverse_matrix(), &mm.matrix()),
            ] {
                for i in 0..3 {
                    for j in 0..3 {
                        let id = if i == j { 1.0 } else { 0.0 };
                        assert!((prod[i][j] - id).abs() <= 1e-14, "λ={lambda} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_speed() {
        assert!(MomentMatrix::new(0.0).is_err());
        assert!(MomentMatrix::new(-1.0).is_err());
        assert!(MomentMatrix::new(f64::NAN).is_err());
    }

    #[test]
    fn moment_examples() {
        let mm = MomentMatrix::new(2.0).unwrap();
        assert_eq!(
            mm.to_moments(&Populations::new(1.0, 0.0, 0.0)),
            Moments::new(1.0, -2.0, 4.0)
        );
        assert_eq!(mm.to_moments(&Populations::ZERO), Moments::default());

        let mm = MomentMatrix::new(3.0).unwrap();
        let m = mm.to_moments(&Populations::new(1.0 / 6.0, 0.5, 1.0 / 3.0));
        assert!((m.m1 - 1.0).abs() < 1e-15);
        assert!((m.m2 - 0.5).abs() < 1e-15);
        assert!((m.m3 - 4.5).abs() < 1e-14);
    }

    #[test]
    fn grid_geometry() {
        let g = Grid::new(-0.5, 2.5, 300).unwrap();
        assert!((g.dx() - 0.01).abs() < 1e-15);
        assert!((g.center(0) + 0.495).abs() < 1e-15);
        assert!((g.center(299) - 2.495).abs() < 1e-12);
        assert!(Grid::new(0.0, 1.0, 3).is_err());
        assert!(Grid::new(1.0, 1.0, 10).is_err());
    }
}
