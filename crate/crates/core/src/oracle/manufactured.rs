//! Manufactured solutions of the resolvent Stokes problems with Gaussian profiles
//! in the normal direction on a small lattice.

use num_complex::Complex64;

use crate::error::Result;
use crate::params::MaterialParams;
use crate::spectral::Grid;
use crate::stokes::{
    halfspace_dirichlet_forced_solve, halfspace_pressure_trace_solve, wholespace_solve, Bulk,
    BulkField, YAxis, YGrid,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Gaussian `exp(-y^2)` and its first three derivatives.
fn gauss(y: f64) -> [f64; 4] {
    let g = (-y * y).exp();
    [
        g,
        -2.0 * y * g,
        (4.0 * y * y - 2.0) * g,
        (12.0 * y - 8.0 * y * y * y) * g,
    ]
}

/// `y exp(-y^2)` and its first two derivatives.
fn ygauss(y: f64) -> [f64; 3] {
    let g = (-y * y).exp();
    [y * g, (1.0 - 2.0 * y * y) * g, (4.0 * y * y * y - 6.0 * y) * g]
}

/// Smooth exact fields `(u, pi)` of one mode together with `(f, div u)`.
pub struct Manufactured {
    pub u: [Complex64; 3],
    pub pi: Complex64,
    pub f: [Complex64; 3],
    pub g: Complex64,
}

/// Fields built from profiles `p[c] = [value, d/dy, d2/dy2]` for `u` and
/// `[value, d/dy]` for the pressure.
pub fn manufacture(
    xi: [f64; 2],
    u: [[Complex64; 3]; 3],
    pi: [Complex64; 2],
    p: &MaterialParams,
) -> Manufactured {
    let k2 = xi[0] * xi[0] + xi[1] * xi[1];
    let (eta, mb) = (p.eta(), p.mu_b());
    let lin = |q: [Complex64; 3]| (eta + mb * k2) * q[0] - mb * q[2];
    Manufactured {
        u: [u[0][0], u[1][0], u[2][0]],
        pi: pi[0],
        f: [
            lin(u[0]) + I * xi[0] * pi[0],
            lin(u[1]) + I * xi[1] * pi[0],
            lin(u[2]) + pi[1],
        ],
        g: I * (xi[0] * u[0][0] + xi[1] * u[1][0]) + u[2][1],
    }
}

fn even(a: Complex64, y: f64) -> [Complex64; 3] {
    let g = gauss(y);
    [a * g[0], a * g[1], a * g[2]]
}

fn odd(a: Complex64, y: f64) -> [Complex64; 3] {
    let g = ygauss(y);
    [a * g[0], a * g[1], a * g[2]]
}

fn max_err(a: &BulkField, exact: impl Fn(usize, f64) -> ([Complex64; 3], Complex64)) -> f64 {
    let ys = a.u.axis().values();
    let mut err = 0.0f64;
    for k in 0..a.u.lattice().len() {
        for (j, &y) in ys.iter().enumerate() {
            let (u, pi) = exact(k, y);
            let got = a.u.at(k, j);
            for comp in 0..3 {
                err = err.max((got[comp] - u[comp]).norm());
            }
            err = err.max((a.pi.at(k, j) - pi).norm());
        }
    }
    err
}

/// Lattice with `L = 2 pi` so integer wavenumbers are the wavevectors.
fn lattice() -> Grid {
    Grid::new(4, 2.0 * std::f64::consts::PI).expect("valid lattice")
}

fn wholespace_case(k: usize, y: f64, lat: &Grid, p: &MaterialParams) -> Manufactured {
    let xi = lat.wavevector(k);
    if k == 0 {
        // Pressure-free zero mode with vanishing mean divergence.
        return manufacture(
            xi,
            [even(c(0.3, 0.0), y), odd(c(0.0, 0.2), y), even(c(0.5, 0.0), y)],
            [c(0.0, 0.0); 2],
            p,
        );
    }
    let s = 1.0 + k as f64 * 0.1;
    let pg = gauss(y);
    manufacture(
        xi,
        [
            even(c(0.4 * s, -0.1), y),
            odd(c(-0.2, 0.3 * s), y),
            even(c(0.1, 0.25), y),
        ],
        [c(0.6, -0.2 * s) * pg[0], c(0.6, -0.2 * s) * pg[1]],
        p,
    )
}

/// Decaying homogeneous mode with free amplitudes, written out directly.
pub fn homogeneous_mode(
    xi: [f64; 2],
    z_v: [Complex64; 2],
    z_w: Complex64,
    y: f64,
    p: &MaterialParams,
) -> ([[Complex64; 3]; 3], [Complex64; 2]) {
    let sm = p.mu_b().sqrt();
    let zeta = [sm * xi[0], sm * xi[1]];
    let zn = zeta[0].hypot(zeta[1]);
    let varpi = (p.eta() + zn * zn).sqrt();
    let (a, k) = (varpi / sm, xi[0].hypot(xi[1]));
    let (ea, ek) = ((-a * y).exp(), (-k * y).exp());
    let jet = |ca: Complex64, ck: Complex64| {
        [ca * ea + ck * ek, -a * ca * ea - k * ck * ek, a * a * ca * ea + k * k * ck * ek]
    };
    let izv = I * (zeta[0] * z_v[0] + zeta[1] * z_v[1]);
    let pi = p.eta() * sm * z_w;
    (
        [
            jet(varpi * z_v[0], -I * zeta[0] * z_w),
            jet(varpi * z_v[1], -I * zeta[1] * z_w),
            jet(izv, zn * z_w),
        ],
        [pi * ek, -k * pi * ek],
    )
}

/// Maximum error of the whole-space solver against the manufactured solution.
pub fn wholespace_error(p: &MaterialParams) -> Result<f64> {
    let lat = lattice();
    let grid = YGrid::new(256, 10.0)?;
    let axis = YAxis::Periodic(grid);
    let f = Bulk::from_fn(lat, axis.clone(), |k, y| wholespace_case(k, y, &lat, p).f);
    let g = Bulk::from_fn(lat, axis, |k, y| wholespace_case(k, y, &lat, p).g);
    let sol = wholespace_solve(&f, &g, p)?;
    Ok(max_err(&sol, |k, y| {
        let m = wholespace_case(k, y, &lat, p);
        (m.u, m.pi)
    }))
}

/// Maximum error of the pressure-trace half-space solver against a manufactured solution.
pub fn pressure_trace_error(p: &MaterialParams) -> Result<f64> {
    let lat = lattice();
    let grid = YGrid::new(256, 10.0)?;
    let z_v = |k: usize| [c(0.1 * k as f64, 0.2), c(-0.3, 0.05 * k as f64)];
    let z_w = |k: usize| c(0.4, -0.1 * k as f64);
    // Parity-structured part plus a decaying homogeneous mode.
    let exact = |k: usize, y: f64| -> Manufactured {
        let xi = lat.wavevector(k);
        let s = 1.0 + 0.2 * k as f64;
        let mut u = [odd(c(0.5 * s, 0.1), y), odd(c(-0.2, 0.3), y), even(c(0.3, -0.4 * s), y)];
        let q = ygauss(y);
        let mut pi = [c(0.2, 0.7) * q[0], c(0.2, 0.7) * q[1]];
        if k == 0 {
            pi = [c(0.0, 0.0); 2];
            u[2] = [c(0.0, 0.0); 3];
        }
        let (hu, hp) = if k == 0 {
            let r = (p.eta() / p.mu_b()).sqrt();
            let e = (-r * y).exp();
            let a = z_v(0);
            (
                [
                    [a[0] * e, -r * a[0] * e, r * r * a[0] * e],
                    [a[1] * e, -r * a[1] * e, r * r * a[1] * e],
                    [c(0.0, 0.0); 3],
                ],
                [c(0.25, 0.0), c(0.0, 0.0)],
            )
        } else {
            homogeneous_mode(xi, z_v(k), z_w(k), y, p)
        };
        for a in 0..3 {
            for d in 0..3 {
                u[a][d] += hu[a][d];
            }
        }
        manufacture(xi, u, [pi[0] + hp[0], pi[1] + hp[1]], p)
    };
    let half = YAxis::Samples(grid.half_points());
    let f = Bulk::from_fn(lat, half.clone(), |k, y| exact(k, y).f);
    let g = Bulk::from_fn(lat, half, |k, y| exact(k, y).g);
    let tau: Vec<[Complex64; 2]> = (0..lat.len())
        .map(|k| {
            let u = exact(k, 0.0).u;
            [u[0], u[1]]
        })
        .collect();
    let nu: Vec<Complex64> = (0..lat.len()).map(|k| exact(k, 0.0).pi).collect();
    let sol = halfspace_pressure_trace_solve(&f, &g, &tau, &nu, &grid, p)?;
    Ok(max_err(&sol, |k, y| {
        let m = exact(k, y);
        (m.u, m.pi)
    }))
}

/// Maximum error of the forced Dirichlet half-space solver against a manufactured solution.
pub fn forced_dirichlet_error(p: &MaterialParams) -> Result<f64> {
    let lat = lattice();
    let grid = YGrid::new(256, 10.0)?;
    let exact = |k: usize, y: f64| -> Manufactured {
        let xi = lat.wavevector(k);
        let s = 1.0 + 0.2 * k as f64;
        let mut u = [even(c(0.5, 0.1 * s), y), even(c(-0.2, 0.3), y), odd(c(0.3 * s, -0.4), y)];
        let q = gauss(y);
        let mut pi = [c(0.2, 0.7) * q[0], c(0.2, 0.7) * q[1]];
        if k == 0 {
            pi = [c(0.0, 0.0); 2];
            u[2] = [c(0.0, 0.0); 3];
        } else {
            let (hu, hp) = homogeneous_mode(xi, [c(0.1, -0.2), c(0.3, 0.1 * s)], c(-0.2, 0.4), y, p);
            for a in 0..3 {
                for d in 0..3 {
                    u[a][d] += hu[a][d];
                }
            }
            pi = [pi[0] + hp[0], pi[1] + hp[1]];
        }
        manufacture(xi, u, pi, p)
    };
    let half = YAxis::Samples(grid.half_points());
    let f = Bulk::from_fn(lat, half.clone(), |k, y| exact(k, y).f);
    let g = Bulk::from_fn(lat, half, |k, y| exact(k, y).g);
    let tau: Vec<[Complex64; 2]> = (0..lat.len())
        .map(|k| {
            let u = exact(k, 0.0).u;
            [u[0], u[1]]
        })
        .collect();
    let nu: Vec<Complex64> = (0..lat.len()).map(|k| exact(k, 0.0).u[2]).collect();
    let sol = halfspace_dirichlet_forced_solve(&f, &g, &tau, &nu, &grid, p)?;
    Ok(max_err(&sol, |k, y| {
        let m = exact(k, y);
        (m.u, m.pi)
    }))
}
