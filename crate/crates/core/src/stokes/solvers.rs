use num_complex::Complex64;
use rayon::prelude::*;

use super::bulk::{
    reflect_scalar, reflect_vector, Bulk, BulkField, BulkScalar, BulkVector, Parity, YAxis, YGrid,
};
use crate::error::{Error, Result};
use crate::params::MaterialParams;
use crate::spectral::Grid;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn require_shift(params: &MaterialParams) -> Result<()> {
    if params.eta() > 0.0 {
        Ok(())
    } else {
        Err(Error::Shift { eta: params.eta() })
    }
}

fn periodic(axis: &YAxis) -> Result<YGrid> {
    match axis {
        YAxis::Periodic(g) => Ok(*g),
        YAxis::Samples(_) => Err(Error::Shape(
            "whole-space solve needs data on a periodic y grid".into(),
        )),
    }
}

/// Whole-space resolvent Stokes problem `eta u - mu_b Lap u + grad pi = f`,
/// `div u = g`, periodic in all directions.
///
/// Per wavevector `K = (xi, k_y)`: `pi = (eta/|K|^2 + mu_b) g - i K.f / |K|^2` and
/// `u = (f - i K pi) / (eta + mu_b |K|^2)`. The `K = 0` pressure is gauged to zero.
pub fn wholespace_solve(f: &BulkVector, g: &BulkScalar, params: &MaterialParams) -> Result<BulkField> {
    require_shift(params)?;
    let grid = periodic(f.axis())?;
    if periodic(g.axis())? != grid || f.lattice() != g.lattice() {
        return Err(Error::Shape("forcing and divergence datum must share grids".into()));
    }
    let lattice = *f.lattice();
    let m = grid.len();
    let (eta, mb) = (params.eta(), params.mu_b());

    // Mean of the zero lattice mode of g over y.
    let mean = g.profile(0).iter().sum::<Complex64>() / m as f64;
    let scale = g.data().iter().fold(0.0f64, |s, v| s.max(v.norm()));
    if mean.norm() > 1e-12 * (1.0 + scale) {
        return Err(Error::Compatibility {
            mean_modulus: mean.norm(),
        });
    }

    let per_mode: Vec<(Vec<[Complex64; 3]>, Vec<Complex64>)> = (0..lattice.len())
        .into_par_iter()
        .map(|k| {
            let xi = lattice.wavevector(k);
            let mut fc: [Vec<Complex64>; 3] =
                std::array::from_fn(|c| f.profile(k).iter().map(|u| u[c]).collect());
            let mut gc = g.profile(k).to_vec();
            for v in fc.iter_mut() {
                grid.forward(v);
            }
            grid.forward(&mut gc);
            let mut pc = vec![ZERO; m];
            for j in 0..m {
                // The y Nyquist column has no real first derivative.
                let ky = if grid.is_nyquist(j) { 0.0 } else { grid.wavenumber(j) };
                let kk = [xi[0], xi[1], ky];
                let k2 = xi[0] * xi[0] + xi[1] * xi[1] + grid.wavenumber(j).powi(2);
                if k2 == 0.0 {
                    pc[j] = ZERO;
                    for v in fc.iter_mut() {
                        v[j] /= eta;
                    }
                    continue;
                }
                let div_f = I * (kk[0] * fc[0][j] + kk[1] * fc[1][j] + kk[2] * fc[2][j]);
                let p = gc[j] * (eta / k2 + mb) - div_f / k2;
                pc[j] = p;
                let denom = eta + mb * k2;
                for (c, v) in fc.iter_mut().enumerate() {
                    v[j] = (v[j] - I * kk[c] * p) / denom;
                }
            }
            for v in fc.iter_mut() {
                grid.inverse(v);
            }
            grid.inverse(&mut pc);
            let u = (0..m).map(|j| [fc[0][j], fc[1][j], fc[2][j]]).collect();
            (u, pc)
        })
        .collect();

    let (mut u, mut pi) = (Vec::with_capacity(lattice.len() * m), Vec::with_capacity(lattice.len() * m));
    for (a, b) in per_mode {
        u.extend(a);
        pi.extend(b);
    }
    Ok(BulkField {
        u: Bulk::new(lattice, YAxis::Periodic(grid), u)?,
        pi: Bulk::new(lattice, YAxis::Periodic(grid), pi)?,
    })
}

/// Per-mode decaying solution of the homogeneous problem on `y > 0`.
#[derive(Debug, Clone, Copy)]
struct UpperProfile {
    z_v: [Complex64; 2],
    z_w: Complex64,
    zeta: [f64; 2],
    zeta_norm: f64,
    varpi: f64,
    a: f64,
    k: f64,
    pi_scale: f64,
}

impl UpperProfile {
    fn new(xi: [f64; 2], params: &MaterialParams) -> Self {
        let sm = params.mu_b().sqrt();
        let zeta = [sm * xi[0], sm * xi[1]];
        let zeta_norm = zeta[0].hypot(zeta[1]);
        let varpi = (params.eta() + zeta_norm * zeta_norm).sqrt();
        Self {
            z_v: [ZERO; 2],
            z_w: ZERO,
            zeta,
            zeta_norm,
            varpi,
            a: varpi / sm,
            k: xi[0].hypot(xi[1]),
            pi_scale: params.eta() * sm,
        }
    }

    fn i_zeta_dot(&self, a: [Complex64; 2]) -> Complex64 {
        I * (self.zeta[0] * a[0] + self.zeta[1] * a[1])
    }

    /// `z_v` from the velocity trace once `z_w` is known: `varpi z_v - i zeta z_w = g_tau`.
    fn with_tangential_trace(mut self, g_tau: [Complex64; 2], z_w: Complex64) -> Self {
        self.z_w = z_w;
        self.z_v = [
            (g_tau[0] + I * self.zeta[0] * z_w) / self.varpi,
            (g_tau[1] + I * self.zeta[1] * z_w) / self.varpi,
        ];
        self
    }

    fn eval(&self, y: f64) -> ([Complex64; 3], Complex64) {
        let (ea, ek) = ((-self.a * y).exp(), (-self.k * y).exp());
        let v = [
            self.varpi * self.z_v[0] * ea - I * self.zeta[0] * self.z_w * ek,
            self.varpi * self.z_v[1] * ea - I * self.zeta[1] * self.z_w * ek,
        ];
        let w = self.i_zeta_dot(self.z_v) * ea + self.zeta_norm * self.z_w * ek;
        ([v[0], v[1], w], self.pi_scale * self.z_w * ek)
    }
}

fn check_traces(lattice: &Grid, g_tau: &[[Complex64; 2]], g_nu: &[Complex64]) -> Result<()> {
    if g_tau.len() != lattice.len() || g_nu.len() != lattice.len() {
        return Err(Error::Shape("trace data must have one entry per lattice mode".into()));
    }
    Ok(())
}

fn sample_upper(
    lattice: Grid,
    y: &[f64],
    profile: impl Fn(usize, f64) -> Result<([Complex64; 3], Complex64)> + Sync,
) -> Result<BulkField> {
    if y.iter().any(|&v| v < 0.0) {
        return Err(Error::Shape("half-space samples must satisfy y >= 0".into()));
    }
    let rows: Vec<Vec<([Complex64; 3], Complex64)>> = (0..lattice.len())
        .into_par_iter()
        .map(|k| y.iter().map(|&yy| profile(k, yy)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let axis = YAxis::Samples(y.to_vec());
    let u = rows.iter().flatten().map(|r| r.0).collect();
    let pi = rows.iter().flatten().map(|r| r.1).collect();
    Ok(BulkField {
        u: Bulk::new(lattice, axis.clone(), u)?,
        pi: Bulk::new(lattice, axis, pi)?,
    })
}

/// Homogeneous problem on `y > 0` with prescribed velocity trace `(g_tau, g_nu)`.
///
/// `z_w = varpi (varpi + |zeta|) (g_nu - i zeta.g_tau / varpi) / (|zeta| eta)`.
/// The zero lattice mode admits only tangential data and decays like
/// `exp(-sqrt(eta/mu_b) y)`.
pub fn halfspace_dirichlet_solve(
    lattice: &Grid,
    g_tau: &[[Complex64; 2]],
    g_nu: &[Complex64],
    y: &[f64],
    params: &MaterialParams,
) -> Result<BulkField> {
    require_shift(params)?;
    check_traces(lattice, g_tau, g_nu)?;
    let tol = 1e-14 * (1.0 + g_nu.iter().fold(0.0f64, |s, v| s.max(v.norm())));
    if g_nu[0].norm() > tol {
        return Err(Error::ZeroMode);
    }
    let rate0 = (params.eta() / params.mu_b()).sqrt();
    sample_upper(*lattice, y, |k, yy| {
        if k == 0 {
            let e = (-rate0 * yy).exp();
            return Ok(([g_tau[0][0] * e, g_tau[0][1] * e, ZERO], ZERO));
        }
        let base = UpperProfile::new(lattice.wavevector(k), params);
        let (w, zn) = (base.varpi, base.zeta_norm);
        let z_w = w * (w + zn) * (g_nu[k] - base.i_zeta_dot(g_tau[k]) / w) / (zn * params.eta());
        Ok(base.with_tangential_trace(g_tau[k], z_w).eval(yy))
    })
}

/// Homogeneous problem on `y > 0` with prescribed tangential velocity and pressure traces.
fn pressure_trace_homogeneous(
    lattice: &Grid,
    g_tau: &[[Complex64; 2]],
    g_nu: &[Complex64],
    y: &[f64],
    params: &MaterialParams,
) -> Result<BulkField> {
    let rate0 = (params.eta() / params.mu_b()).sqrt();
    sample_upper(*lattice, y, |k, yy| {
        if k == 0 {
            let e = (-rate0 * yy).exp();
            return Ok(([g_tau[0][0] * e, g_tau[0][1] * e, ZERO], g_nu[0]));
        }
        let base = UpperProfile::new(lattice.wavevector(k), params);
        let z_w = g_nu[k] / base.pi_scale;
        Ok(base.with_tangential_trace(g_tau[k], z_w).eval(yy))
    })
}

fn restrict_upper(field: &BulkField, grid: &YGrid) -> (Vec<[Complex64; 3]>, Vec<Complex64>) {
    let lattice = field.u.lattice();
    let h = grid.origin();
    let mut u = Vec::with_capacity(lattice.len() * (h + 1));
    let mut pi = Vec::with_capacity(lattice.len() * (h + 1));
    for k in 0..lattice.len() {
        let (pu, pp) = (field.u.profile(k), field.pi.profile(k));
        for j in 0..=h {
            // The node at +Y is the periodic image of -Y.
            let idx = (h + j) % grid.len();
            u.push(pu[idx]);
            pi.push(pp[idx]);
        }
    }
    (u, pi)
}

fn half_axis_check(f: &BulkVector, g: &BulkScalar, grid: &YGrid) -> Result<()> {
    let expect = grid.half_points();
    for axis in [f.axis(), g.axis()] {
        match axis {
            YAxis::Samples(v) if v.len() == expect.len() => {}
            _ => {
                return Err(Error::Shape(
                    "half-space forcing must be sampled on YGrid::half_points".into(),
                ))
            }
        }
    }
    Ok(())
}

fn combine(
    lattice: Grid,
    grid: &YGrid,
    particular: (Vec<[Complex64; 3]>, Vec<Complex64>),
    homogeneous: BulkField,
) -> Result<BulkField> {
    let axis = YAxis::Samples(grid.half_points());
    let u = particular
        .0
        .iter()
        .zip(homogeneous.u.data())
        .map(|(a, b)| [a[0] + b[0], a[1] + b[1], a[2] + b[2]])
        .collect();
    let pi = particular
        .1
        .iter()
        .zip(homogeneous.pi.data())
        .map(|(a, b)| a + b)
        .collect();
    Ok(BulkField {
        u: Bulk::new(lattice, axis.clone(), u)?,
        pi: Bulk::new(lattice, axis, pi)?,
    })
}

/// Forced problem on `y > 0` with tangential velocity trace `g_tau` and pressure
/// trace `g_nu`.
///
/// Tangential forcing and the divergence datum are extended oddly, the normal
/// forcing evenly; the whole-space solution then has vanishing tangential velocity
/// and pressure at `y = 0`, and a homogeneous half-space solution supplies the traces.
/// Forcing is sampled on `grid.half_points()`.
pub fn halfspace_pressure_trace_solve(
    f: &BulkVector,
    g_p: &BulkScalar,
    g_tau: &[[Complex64; 2]],
    g_nu: &[Complex64],
    grid: &YGrid,
    params: &MaterialParams,
) -> Result<BulkField> {
    require_shift(params)?;
    half_axis_check(f, g_p, grid)?;
    let lattice = *f.lattice();
    check_traces(&lattice, g_tau, g_nu)?;
    let fe = reflect_vector(f, [Parity::Odd, Parity::Odd, Parity::Even], grid)?;
    let ge = reflect_scalar(g_p, Parity::Odd, grid)?;
    let whole = wholespace_solve(&fe, &ge, params)?;
    let particular = restrict_upper(&whole, grid);
    let hom = pressure_trace_homogeneous(&lattice, g_tau, g_nu, &grid.half_points(), params)?;
    combine(lattice, grid, particular, hom)
}

/// Forced problem on `y > 0` with prescribed velocity trace.
///
/// Tangential forcing and the divergence datum are extended evenly, the normal
/// forcing oddly, so the whole-space normal velocity vanishes on `y = 0`; the
/// remaining trace mismatch is removed with [`halfspace_dirichlet_solve`].
pub fn halfspace_dirichlet_forced_solve(
    f: &BulkVector,
    g: &BulkScalar,
    g_tau: &[[Complex64; 2]],
    g_nu: &[Complex64],
    grid: &YGrid,
    params: &MaterialParams,
) -> Result<BulkField> {
    require_shift(params)?;
    half_axis_check(f, g, grid)?;
    let lattice = *f.lattice();
    check_traces(&lattice, g_tau, g_nu)?;
    let fe = reflect_vector(f, [Parity::Even, Parity::Even, Parity::Odd], grid)?;
    let ge = reflect_scalar(g, Parity::Even, grid)?;
    let whole = wholespace_solve(&fe, &ge, params)?;
    let particular = restrict_upper(&whole, grid);
    let stride = grid.origin() + 1;
    let residual_tau: Vec<[Complex64; 2]> = (0..lattice.len())
        .map(|k| {
            let u0 = particular.0[k * stride];
            [g_tau[k][0] - u0[0], g_tau[k][1] - u0[1]]
        })
        .collect();
    let residual_nu: Vec<Complex64> = (0..lattice.len())
        .map(|k| g_nu[k] - particular.0[k * stride][2])
        .collect();
    let hom = halfspace_dirichlet_solve(&lattice, &residual_tau, &residual_nu, &grid.half_points(), params)?;
    combine(lattice, grid, particular, hom)
}
