use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{self, Grid};

/// Real periodic field on a [`Grid`], stored with its normalized Fourier coefficients.
///
/// The coefficients are kept exactly Hermitian, so `values` is always the real
/// synthesis of `coeffs`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightField {
    grid: Grid,
    values: Vec<f64>,
    coeffs: Vec<Complex64>,
}

/// Any real scalar density on the grid (forces, remainders, pressures).
pub type ScalarField = HeightField;

impl HeightField {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Shape(format!(
                "expected {} grid values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("height values must be finite".into()));
        }
        let mut coeffs = spectral::forward(&grid, &values);
        spectral::hermitian_symmetrize(&grid, &mut coeffs);
        Ok(Self {
            grid,
            values,
            coeffs,
        })
    }

    pub fn from_coeffs(grid: Grid, mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::Shape(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        spectral::hermitian_symmetrize(&grid, &mut coeffs);
        let values = spectral::inverse(&grid, &coeffs);
        Ok(Self {
            grid,
            values,
            coeffs,
        })
    }

    pub fn from_fn(grid: Grid, f: impl Fn([f64; 2]) -> f64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.point(i))).collect();
        Self::from_values(grid, values).expect("sampled field matches the grid")
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Spatial mean, read off the zero Fourier coefficient.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    /// `L^2` norm with the flat cell measure.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.cell_area()).sqrt()
    }

    /// Flat `L^2` inner product.
    pub fn dot(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * self.grid.cell_area()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + s * b)
                .collect(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + s * b)
                .collect(),
        }
    }

    /// Applies a real multiplier `m(xi)` to every coefficient.
    pub fn map_modes(&self, m: impl Fn(usize) -> f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * m(i))
            .collect();
        Self::from_coeffs(self.grid, coeffs).expect("same grid")
    }

    /// Circular shift by whole grid cells.
    pub fn translated(&self, di: usize, dj: usize) -> Self {
        let n = self.grid.n();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[((i + di) % n) * n + (j + dj) % n] = self.values[i * n + j];
            }
        }
        Self::from_values(self.grid, values).expect("same grid")
    }

    /// Trigonometric interpolant at an arbitrary point.
    pub fn eval_at(&self, x: [f64; 2]) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let [a, b] = self.grid.wavevector(i);
                (c * Complex64::from_polar(1.0, a * x[0] + b * x[1])).re
            })
            .sum()
    }

    /// Fraction of nonzero-mode spectral mass carried by modes with `max|k_i| > N/4`.
    pub fn tail_fraction(&self) -> f64 {
        let quarter = (self.grid.n() / 4) as i64;
        let n = self.grid.n();
        let (mut tail, mut total) = (0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let w = c.norm_sqr();
            total += w;
            let k = self
                .grid
                .wavenumber(i / n)
                .abs()
                .max(self.grid.wavenumber(i % n).abs());
            if k > quarter {
                tail += w;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            tail / total
        }
    }

    pub(crate) fn ensure_tubular(&self, gamma: f64) -> Result<()> {
        let max_abs = self.max_abs();
        if max_abs >= gamma {
            Err(Error::TubularViolation { max_abs, gamma })
        } else {
            Ok(())
        }
    }
}

/// Tangential vector field in reference coordinates, stored by covariant components.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentField {
    grid: Grid,
    v1: Vec<f64>,
    v2: Vec<f64>,
}

impl TangentField {
    pub fn new(grid: Grid, v1: Vec<f64>, v2: Vec<f64>) -> Result<Self> {
        if v1.len() != grid.len() || v2.len() != grid.len() {
            return Err(Error::Shape("tangent components must match the grid".into()));
        }
        Ok(Self { grid, v1, v2 })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            v1: vec![0.0; grid.len()],
            v2: vec![0.0; grid.len()],
        }
    }

    /// Flat gradient of a scalar field.
    pub fn gradient_of(f: &HeightField) -> Self {
        let g = *f.grid();
        Self {
            grid: g,
            v1: spectral::derivative(&g, f.coeffs(), 1, 0),
            v2: spectral::derivative(&g, f.coeffs(), 0, 1),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn components(&self) -> (&[f64], &[f64]) {
        (&self.v1, &self.v2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn grid() -> Grid {
        Grid::new(16, 2.0 * PI).unwrap()
    }

    proptest! {
        #[test]
        fn round_trip_is_consistent(vals in proptest::collection::vec(-1.0f64..1.0, 256)) {
            let g = grid();
            let h = HeightField::from_values(g, vals.clone()).unwrap();
            let back = HeightField::from_coeffs(g, h.coeffs().to_vec()).unwrap();
            let scale = vals.iter().fold(1e-300f64, |m, v| m.max(v.abs()));
            for (a, b) in vals.iter().zip(back.values()) {
                prop_assert!((a - b).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn coefficients_are_hermitian(vals in proptest::collection::vec(-1.0f64..1.0, 256)) {
            let g = grid();
            let h = HeightField::from_values(g, vals).unwrap();
            for i in 0..g.len() {
                let c = h.coeffs()[i];
                let d = h.coeffs()[g.conjugate_index(i)];
                prop_assert_eq!(c, d.conj());
            }
        }
    }

    #[test]
    fn interpolant_reproduces_grid_values_and_smooth_modes() {
        let g = grid();
        let h = HeightField::from_fn(g, |[x, y]| (x - 2.0 * y).sin() + 0.3 * (3.0 * x).cos());
        for i in [0, 17, 100, 255] {
            assert!((h.eval_at(g.point(i)) - h.values()[i]).abs() < 1e-12);
        }
        let p: [f64; 2] = [0.123, 4.56];
        let exact = (p[0] - 2.0 * p[1]).sin() + 0.3 * (3.0 * p[0]).cos();
        assert!((h.eval_at(p) - exact).abs() < 1e-12);
    }

    #[test]
    fn tail_fraction_separates_scales() {
        let g = grid();
        let low = HeightField::from_fn(g, |[x, _]| x.cos());
        let high = HeightField::from_fn(g, |[x, _]| (6.0 * x).cos());
        assert!(low.tail_fraction() < 1e-25);
        assert!((high.tail_fraction() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(HeightField::from_values(grid(), vec![0.0; 10]).is_err());
    }
}
