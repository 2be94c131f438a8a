//! Periodic square grids and normalized 2-D discrete Fourier transforms.
//!
//! Coefficients follow `c(k) = N^{-2} sum_x f(x) e^{-i xi.x}` with `xi = 2 pi k / L`,
//! so that `f(x) = sum_k c(k) e^{i xi.x}`. Arrays are row-major with the first
//! spatial index (x1) as the slow index.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};

/// Uniform N x N grid on the square torus of side `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    l: f64,
}

impl Grid {
    pub fn new(n: usize, l: f64) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("N must be even and >= 4, got {n}")));
        }
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidGrid(format!("period must be positive, got {l}")));
        }
        Ok(Self { n, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> f64 {
        self.l
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.l / self.n as f64
    }

    /// Area of one grid cell.
    pub fn cell_area(&self) -> f64 {
        let dx = self.spacing();
        dx * dx
    }

    /// Signed integer wavenumber of FFT index `i`; the Nyquist index maps to `+N/2`.
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i <= self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    pub fn is_nyquist(&self, i: usize) -> bool {
        i == self.n / 2
    }

    /// Physical wavevector of flat index `idx`.
    pub fn wavevector(&self, idx: usize) -> [f64; 2] {
        let s = 2.0 * PI / self.l;
        [
            s * self.wavenumber(idx / self.n) as f64,
            s * self.wavenumber(idx % self.n) as f64,
        ]
    }

    pub fn xi_norm(&self, idx: usize) -> f64 {
        let [a, b] = self.wavevector(idx);
        a.hypot(b)
    }

    /// Flat index of the mode `-k`.
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let (i, j) = (idx / self.n, idx % self.n);
        ((self.n - i) % self.n) * self.n + (self.n - j) % self.n
    }

    /// Spatial coordinates of flat index `idx`.
    pub fn point(&self, idx: usize) -> [f64; 2] {
        let dx = self.spacing();
        [(idx / self.n) as f64 * dx, (idx % self.n) as f64 * dx]
    }

    /// Flat index for the signed wavenumber pair `(k1, k2)`, if representable.
    pub fn mode_index(&self, k1: i64, k2: i64) -> Option<usize> {
        let n = self.n as i64;
        let wrap = |k: i64| -> Option<usize> {
            if k > n / 2 || k <= -n / 2 {
                None
            } else {
                Some(k.rem_euclid(n) as usize)
            }
        };
        Some(wrap(k1)? * self.n + wrap(k2)?)
    }

    /// Whether mode `idx` survives the 2/3 truncation (`|k_i| <= N/3` per axis).
    pub fn retained(&self, idx: usize) -> bool {
        let cut = (self.n / 3) as i64;
        self.wavenumber(idx / self.n).abs() <= cut && self.wavenumber(idx % self.n).abs() <= cut
    }
}

type PlanKey = (usize, bool);
type PlanCache = Mutex<HashMap<PlanKey, Arc<dyn Fft<f64>>>>;

pub(crate) fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<PlanCache> = OnceLock::new();
    let key = (n, matches!(direction, FftDirection::Forward));
    let mut plans = PLANS
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("fft plan cache poisoned");
    plans
        .entry(key)
        .or_insert_with(|| FftPlanner::new().plan_fft(n, direction))
        .clone()
}

fn transpose(n: usize, data: &mut [Complex64]) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

fn fft2_in_place(n: usize, data: &mut [Complex64], direction: FftDirection) {
    let fft = plan(n, direction);
    data.par_chunks_mut(n).for_each(|row| fft.process(row));
    transpose(n, data);
    data.par_chunks_mut(n).for_each(|row| fft.process(row));
    transpose(n, data);
}

/// Normalized forward transform of real grid values.
pub fn forward(grid: &Grid, values: &[f64]) -> Vec<Complex64> {
    let mut data: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    forward_complex(grid, &mut data);
    data
}

/// Normalized forward transform in place.
pub fn forward_complex(grid: &Grid, data: &mut [Complex64]) {
    assert_eq!(data.len(), grid.len(), "grid/array size mismatch");
    fft2_in_place(grid.n, data, FftDirection::Forward);
    let scale = 1.0 / grid.len() as f64;
    data.iter_mut().for_each(|c| *c *= scale);
}

/// Synthesis `sum_k c(k) e^{i xi.x}` in place.
pub fn inverse_complex(grid: &Grid, data: &mut [Complex64]) {
    assert_eq!(data.len(), grid.len(), "grid/array size mismatch");
    fft2_in_place(grid.n, data, FftDirection::Inverse);
}

/// Real part of the synthesis of `coeffs`.
pub fn inverse(grid: &Grid, coeffs: &[Complex64]) -> Vec<f64> {
    let mut data = coeffs.to_vec();
    inverse_complex(grid, &mut data);
    data.into_iter().map(|c| c.re).collect()
}

/// Projects coefficients onto those of a real field: `c(-k) = conj c(k)`.
pub fn hermitian_symmetrize(grid: &Grid, coeffs: &mut [Complex64]) {
    let src = coeffs.to_vec();
    for (idx, c) in coeffs.iter_mut().enumerate() {
        let partner = src[grid.conjugate_index(idx)];
        *c = 0.5 * (src[idx] + partner.conj());
    }
}

/// Coefficients of the mixed derivative `d^a/dx1^a d^b/dx2^b`.
///
/// Odd derivatives along an axis drop that axis' Nyquist column, which has no
/// real-valued derivative.
pub fn derivative_coeffs(grid: &Grid, coeffs: &[Complex64], a: u32, b: u32) -> Vec<Complex64> {
    let n = grid.n;
    coeffs
        .iter()
        .enumerate()
        .map(|(idx, &c)| {
            let (i, j) = (idx / n, idx % n);
            if (a % 2 == 1 && grid.is_nyquist(i)) || (b % 2 == 1 && grid.is_nyquist(j)) {
                return Complex64::new(0.0, 0.0);
            }
            let [x1, x2] = grid.wavevector(idx);
            c * Complex64::new(0.0, x1).powu(a) * Complex64::new(0.0, x2).powu(b)
        })
        .collect()
}

/// Grid values of a mixed derivative.
pub fn derivative(grid: &Grid, coeffs: &[Complex64], a: u32, b: u32) -> Vec<f64> {
    inverse(grid, &derivative_coeffs(grid, coeffs, a, b))
}

/// Zeroes the modes removed by the 2/3 rule.
pub fn dealias(grid: &Grid, coeffs: &mut [Complex64]) {
    coeffs
        .iter_mut()
        .enumerate()
        .filter(|(idx, _)| !grid.retained(*idx))
        .for_each(|(_, c)| *c = Complex64::new(0.0, 0.0));
}

/// Forward transform followed by 2/3 truncation.
pub fn forward_dealiased(grid: &Grid, values: &[f64]) -> Vec<Complex64> {
    let mut c = forward(grid, values);
    dealias(grid, &mut c);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid() -> Grid {
        Grid::new(16, 2.0 * PI).unwrap()
    }

    #[test]
    fn single_mode_lands_on_expected_coefficients() {
        let g = grid();
        let vals: Vec<f64> = (0..g.len())
            .map(|i| {
                let [x, y] = g.point(i);
                (2.0 * x + 3.0 * y).cos()
            })
            .collect();
        let c = forward(&g, &vals);
        let p = g.mode_index(2, 3).unwrap();
        let m = g.mode_index(-2, -3).unwrap();
        assert_relative_eq!(c[p].re, 0.5, epsilon = 1e-14);
        assert_relative_eq!(c[m].re, 0.5, epsilon = 1e-14);
        let rest: f64 = c
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != p && *i != m)
            .map(|(_, z)| z.norm())
            .sum();
        assert!(rest < 1e-13);
    }

    #[test]
    fn derivative_of_sine() {
        let g = grid();
        let vals: Vec<f64> = (0..g.len()).map(|i| (3.0 * g.point(i)[1]).sin()).collect();
        let d = derivative(&g, &forward(&g, &vals), 0, 1);
        for (i, v) in d.iter().enumerate() {
            assert_relative_eq!(*v, 3.0 * (3.0 * g.point(i)[1]).cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn conjugate_index_is_an_involution() {
        let g = grid();
        for i in 0..g.len() {
            assert_eq!(g.conjugate_index(g.conjugate_index(i)), i);
        }
        assert_eq!(g.conjugate_index(0), 0);
    }

    #[test]
    fn dealias_keeps_low_modes() {
        let g = grid();
        assert!(g.retained(g.mode_index(5, -5).unwrap()));
        assert!(!g.retained(g.mode_index(6, 0).unwrap()));
        assert!(g.mode_index(8, 0).is_some());
        assert!(g.mode_index(-8, 0).is_none());
    }

    #[test]
    fn rejects_odd_grids() {
        assert!(Grid::new(7, 1.0).is_err());
        assert!(Grid::new(2, 1.0).is_err());
        assert!(Grid::new(8, -1.0).is_err());
    }
}
