use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftDirection;

use crate::error::{Error, Result};
use crate::spectral::Grid;

/// Periodic normal axis `[-Y, Y)` with `M` points; `y = 0` sits at index `M/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YGrid {
    m: usize,
    extent: f64,
}

impl YGrid {
    pub fn new(m: usize, extent: f64) -> Result<Self> {
        if m < 4 || !m.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!("y resolution must be even and >= 4, got {m}")));
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidGrid(format!("y extent must be positive, got {extent}")));
        }
        Ok(Self { m, extent })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / self.m as f64
    }

    pub fn origin(&self) -> usize {
        self.m / 2
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.m)
            .map(|j| -self.extent + j as f64 * self.spacing())
            .collect()
    }

    /// Nodes `0, dy, ..., Y` of the closed upper half.
    pub fn half_points(&self) -> Vec<f64> {
        (0..=self.m / 2).map(|j| j as f64 * self.spacing()).collect()
    }

    /// Angular wavenumber of FFT index `j`; the Nyquist index is dropped from odd derivatives.
    pub fn wavenumber(&self, j: usize) -> f64 {
        let k = if j <= self.m / 2 {
            j as f64
        } else {
            j as f64 - self.m as f64
        };
        PI / self.extent * k
    }

    pub(crate) fn is_nyquist(&self, j: usize) -> bool {
        j == self.m / 2
    }

    /// Forward transform with the `1/M` normalization, indexed from `y = -Y`.
    pub(crate) fn forward(&self, data: &mut [Complex64]) {
        crate::spectral::plan(self.m, FftDirection::Forward).process(data);
        let s = 1.0 / self.m as f64;
        data.iter_mut().for_each(|c| *c *= s);
    }

    pub(crate) fn inverse(&self, data: &mut [Complex64]) {
        crate::spectral::plan(self.m, FftDirection::Inverse).process(data);
    }

    /// Spectral `d/dy` of samples on this grid.
    pub fn derivative(&self, values: &[Complex64], order: u32) -> Vec<Complex64> {
        let mut c = values.to_vec();
        self.forward(&mut c);
        for (j, v) in c.iter_mut().enumerate() {
            if order % 2 == 1 && self.is_nyquist(j) {
                *v = Complex64::new(0.0, 0.0);
            } else {
                *v *= Complex64::new(0.0, self.wavenumber(j)).powu(order);
            }
        }
        self.inverse(&mut c);
        c
    }
}

/// Normal coordinates of a bulk field.
#[derive(Debug, Clone, PartialEq)]
pub enum YAxis {
    Periodic(YGrid),
    Samples(Vec<f64>),
}

impl YAxis {
    pub fn values(&self) -> Vec<f64> {
        match self {
            YAxis::Periodic(g) => g.points(),
            YAxis::Samples(v) => v.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            YAxis::Periodic(g) => g.len(),
            YAxis::Samples(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Mode-by-height samples of a bulk quantity: entry `(mode, j)` is the Fourier
/// coefficient of lattice mode `mode` at height `y_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bulk<T> {
    lattice: Grid,
    y: YAxis,
    data: Vec<T>,
}

pub type BulkVector = Bulk<[Complex64; 3]>;
pub type BulkScalar = Bulk<Complex64>;

/// Velocity `(v1, v2, w)` and pressure.
#[derive(Debug, Clone, PartialEq)]
pub struct BulkField {
    pub u: BulkVector,
    pub pi: BulkScalar,
}

impl<T: Copy + Default + Send + Sync> Bulk<T> {
    pub fn new(lattice: Grid, y: YAxis, data: Vec<T>) -> Result<Self> {
        if data.len() != lattice.len() * y.len() {
            return Err(Error::Shape(format!(
                "bulk data has {} entries, expected {} modes x {} heights",
                data.len(),
                lattice.len(),
                y.len()
            )));
        }
        Ok(Self { lattice, y, data })
    }

    pub fn zeros(lattice: Grid, y: YAxis) -> Self {
        let n = lattice.len() * y.len();
        Self {
            lattice,
            y,
            data: vec![T::default(); n],
        }
    }

    /// Samples `f(mode, y)` for every lattice mode and height.
    pub fn from_fn(lattice: Grid, y: YAxis, f: impl Fn(usize, f64) -> T) -> Self {
        let ys = y.values();
        let data = (0..lattice.len())
            .flat_map(|k| ys.iter().map(move |&yy| (k, yy)))
            .map(|(k, yy)| f(k, yy))
            .collect();
        Self { lattice, y, data }
    }

    pub fn lattice(&self) -> &Grid {
        &self.lattice
    }

    pub fn axis(&self) -> &YAxis {
        &self.y
    }

    pub fn ny(&self) -> usize {
        self.y.len()
    }

    pub fn at(&self, mode: usize, j: usize) -> T {
        self.data[mode * self.ny() + j]
    }

    /// All heights of one mode.
    pub fn profile(&self, mode: usize) -> &[T] {
        let ny = self.ny();
        &self.data[mode * ny..(mode + 1) * ny]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

/// Parity of a reflected component about `y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Extends samples on the half nodes `0, dy, ..., Y` to the periodic grid.
///
/// Odd components vanish at `y = 0`; the value at `y = -Y` is the reflection of
/// the value at `Y`.
pub fn reflect_extend(half: &[Complex64], parity: Parity, grid: &YGrid) -> Result<Vec<Complex64>> {
    let h = grid.len() / 2;
    if half.len() != h + 1 {
        return Err(Error::Shape(format!(
            "half-line profile needs {} samples, got {}",
            h + 1,
            half.len()
        )));
    }
    let s = parity.sign();
    let mut out = vec![Complex64::new(0.0, 0.0); grid.len()];
    out[h..2 * h].copy_from_slice(&half[..h]);
    for j in 1..=h {
        out[h - j] = half[j] * s;
    }
    if parity == Parity::Odd {
        out[h] = Complex64::new(0.0, 0.0);
    }
    Ok(out)
}

/// [`reflect_extend`] applied to every mode of a half-line bulk vector, one parity per component.
pub(crate) fn reflect_vector(
    half: &BulkVector,
    parity: [Parity; 3],
    grid: &YGrid,
) -> Result<BulkVector> {
    let lattice = *half.lattice();
    let mut data = Vec::with_capacity(lattice.len() * grid.len());
    for k in 0..lattice.len() {
        let prof = half.profile(k);
        let comps: Vec<Vec<Complex64>> = (0..3)
            .map(|c| {
                let p: Vec<Complex64> = prof.iter().map(|u| u[c]).collect();
                reflect_extend(&p, parity[c], grid)
            })
            .collect::<Result<_>>()?;
        data.extend((0..grid.len()).map(|j| [comps[0][j], comps[1][j], comps[2][j]]));
    }
    Bulk::new(lattice, YAxis::Periodic(*grid), data)
}

pub(crate) fn reflect_scalar(half: &BulkScalar, parity: Parity, grid: &YGrid) -> Result<BulkScalar> {
    let lattice = *half.lattice();
    let mut data = Vec::with_capacity(lattice.len() * grid.len());
    for k in 0..lattice.len() {
        data.extend(reflect_extend(half.profile(k), parity, grid)?);
    }
    Bulk::new(lattice, YAxis::Periodic(*grid), data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn reflection_examples() {
        let g = YGrid::new(8, 2.0).unwrap();
        let ys = g.half_points();
        let odd: Vec<_> = ys.iter().map(|&y| c(y)).collect();
        let ext = reflect_extend(&odd, Parity::Odd, &g).unwrap();
        for (v, y) in ext.iter().zip(g.points()) {
            assert!((v.re - y).abs() < 1e-15 || (y + 2.0).abs() < 1e-15);
        }
        assert_eq!(ext[g.origin()], c(0.0));
        let ones = vec![c(1.0); ys.len()];
        assert!(reflect_extend(&ones, Parity::Even, &g).unwrap().iter().all(|v| *v == c(1.0)));
        let bumped: Vec<_> = ys.iter().map(|_| c(5.0)).collect();
        assert_eq!(reflect_extend(&bumped, Parity::Odd, &g).unwrap()[g.origin()], c(0.0));
    }

    #[test]
    fn spectral_y_derivative() {
        let g = YGrid::new(128, 12.0).unwrap();
        let f: Vec<_> = g.points().iter().map(|&y| c((-y * y).exp())).collect();
        let d = g.derivative(&f, 1);
        for (v, y) in d.iter().zip(g.points()) {
            assert!((v.re + 2.0 * y * (-y * y).exp()).abs() < 1e-12);
        }
    }
}
