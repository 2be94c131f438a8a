//! Finite-difference two-point boundary value solvers for single Fourier modes of
//! the layered Stokes problem. These discretize the ODEs in `y` directly and share
//! no formulas with the closed-form symbols.

use num_complex::Complex64;

use super::banded::BandMatrix;
use crate::error::{Error, Result};
use crate::params::MaterialParams;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Truncated half-line `[0, Y]` with `M` uniform intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BvpConfig {
    pub extent: f64,
    pub intervals: usize,
}

impl BvpConfig {
    /// Extent chosen so that the slower decaying profile has fallen below `1e-12`.
    pub fn for_mode(xi: [f64; 2], params: &MaterialParams, intervals: usize) -> Result<Self> {
        let k = xi[0].hypot(xi[1]);
        if k == 0.0 {
            return Err(Error::ZeroMode);
        }
        let viscous = ((params.eta() + params.mu_b() * k * k) / params.mu_b()).sqrt();
        Ok(Self {
            extent: 28.0 / k.min(viscous),
            intervals,
        })
    }

    pub fn step(&self) -> f64 {
        self.extent / self.intervals as f64
    }

    /// Same extent, `factor` times as many intervals.
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            extent: self.extent,
            intervals: self.intervals * factor,
        }
    }
}

/// Interface quantities recovered from a discrete transmission solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleTransmission {
    pub trace_v: [Complex64; 2],
    pub trace_w: Complex64,
    pub trace_pi_plus: Complex64,
    pub trace_pi_minus: Complex64,
    /// `i zeta q` with `zeta = sqrt(mu_b) xi`.
    pub surface_pressure_gradient: [Complex64; 2],
    pub z_v_plus: [Complex64; 2],
    pub z_v_minus: [Complex64; 2],
    pub z_w_plus: Complex64,
    pub z_w_minus: Complex64,
}

impl OracleTransmission {
    /// Componentwise `(4 fine - coarse) / 3`.
    pub fn richardson(coarse: &Self, fine: &Self) -> Self {
        let r = |c: Complex64, f: Complex64| (4.0 * f - c) / 3.0;
        let r2 = |c: [Complex64; 2], f: [Complex64; 2]| [r(c[0], f[0]), r(c[1], f[1])];
        Self {
            trace_v: r2(coarse.trace_v, fine.trace_v),
            trace_w: r(coarse.trace_w, fine.trace_w),
            trace_pi_plus: r(coarse.trace_pi_plus, fine.trace_pi_plus),
            trace_pi_minus: r(coarse.trace_pi_minus, fine.trace_pi_minus),
            surface_pressure_gradient: r2(
                coarse.surface_pressure_gradient,
                fine.surface_pressure_gradient,
            ),
            z_v_plus: r2(coarse.z_v_plus, fine.z_v_plus),
            z_v_minus: r2(coarse.z_v_minus, fine.z_v_minus),
            z_w_plus: r(coarse.z_w_plus, fine.z_w_plus),
            z_w_minus: r(coarse.z_w_minus, fine.z_w_minus),
        }
    }
}

struct System {
    entries: Vec<(usize, usize, Complex64)>,
    rhs: Vec<Complex64>,
}

impl System {
    fn new(n: usize) -> Self {
        Self {
            entries: Vec::with_capacity(16 * n),
            rhs: vec![ZERO; n],
        }
    }

    fn put(&mut self, row: usize, col: usize, v: Complex64) {
        if v != ZERO {
            self.entries.push((row, col, v));
        }
    }

    fn solve(self) -> Result<Vec<Complex64>> {
        let n = self.rhs.len();
        BandMatrix::from_entries(n, &self.entries).solve(self.rhs)
    }
}

/// Unknowns of one half-line: `(v1, v2, w)` at node `n >= 1` (height `sign * n * h`)
/// together with the pressure at the half node `n - 1/2`. Node 0 belongs to the
/// caller and is addressed through `origin`.
struct HalfLine {
    sign: f64,
    origin: usize,
    base: Box<dyn Fn(usize) -> usize>,
}

impl HalfLine {
    fn v(&self, n: usize, a: usize) -> usize {
        if n == 0 {
            self.origin + a
        } else {
            (self.base)(n) + a
        }
    }
    fn w(&self, n: usize) -> usize {
        self.v(n, 2)
    }
    /// Pressure at the half node `n - 1/2`, `n >= 1`.
    fn p(&self, n: usize) -> usize {
        (self.base)(n) + 3
    }

    /// Continuity at the half node `n - 1/2`, momentum at node `n` (or the far-field
    /// condition at `n = M`), written into the four rows of node `n`.
    fn assemble(&self, sys: &mut System, m: usize, xi: [f64; 2], params: &MaterialParams, h: f64) {
        let (mb, eta) = (params.mu_b(), params.eta());
        let k2 = xi[0] * xi[0] + xi[1] * xi[1];
        let diag = Complex64::new(eta + mb * k2 + 2.0 * mb / (h * h), 0.0);
        let off = Complex64::new(-mb / (h * h), 0.0);
        let half = Complex64::new(0.5, 0.0);
        let dy = Complex64::new(self.sign / h, 0.0);
        for n in 1..=m {
            let row = (self.base)(n);
            for (a, &x) in xi.iter().enumerate() {
                sys.put(row, self.v(n - 1, a), I * x * half);
                sys.put(row, self.v(n, a), I * x * half);
            }
            sys.put(row, self.w(n), dy);
            sys.put(row, self.w(n - 1), -dy);
            if n == m {
                for r in 0..3 {
                    sys.put(row + 1 + r, self.v(n, r), ONE);
                }
                continue;
            }
            for (a, &x) in xi.iter().enumerate() {
                let r = row + 1 + a;
                sys.put(r, self.v(n, a), diag);
                sys.put(r, self.v(n - 1, a), off);
                sys.put(r, self.v(n + 1, a), off);
                sys.put(r, self.p(n), I * x * half);
                sys.put(r, self.p(n + 1), I * x * half);
            }
            let r = row + 3;
            sys.put(r, self.w(n), diag);
            sys.put(r, self.w(n - 1), off);
            sys.put(r, self.w(n + 1), off);
            sys.put(r, self.p(n + 1), dy);
            sys.put(r, self.p(n), -dy);
        }
    }

    /// Second-order interpolation or extrapolation of the pressure to node `n`.
    fn pressure_at(&self, x: &[Complex64], n: usize, m: usize) -> Complex64 {
        if n == 0 {
            (3.0 * x[self.p(1)] - x[self.p(2)]) / 2.0
        } else if n == m {
            (3.0 * x[self.p(m)] - x[self.p(m - 1)]) / 2.0
        } else {
            (x[self.p(n)] + x[self.p(n + 1)]) / 2.0
        }
    }

    /// Coefficients of `d_y f(0)` in the one-sided stencil over nodes 0, 1, 2.
    fn one_sided(&self, h: f64) -> [f64; 3] {
        let s = self.sign / (2.0 * h);
        [-3.0 * s, 4.0 * s, -s]
    }
}

/// Discrete solution of the transmission problem for one mode.
///
/// Velocities live on the nodes `y_j = j h`, pressures on the half nodes, so that
/// continuity and the normal momentum balance use compact centred differences.
/// The interface node carries the tangential stress balance (one-sided
/// second-order normal derivatives), the pressure jump (pressures extrapolated
/// to `y = 0+-`) and membrane incompressibility. All fields vanish at `y = +-Y`.
pub fn ode_transmission_oracle(
    xi: [f64; 2],
    g_tau: [Complex64; 2],
    g_nu: Complex64,
    cfg: &BvpConfig,
    params: &MaterialParams,
) -> Result<OracleTransmission> {
    if params.eta() <= 0.0 {
        return Err(Error::Shift { eta: params.eta() });
    }
    if xi == [0.0, 0.0] {
        return Err(Error::ZeroMode);
    }
    let m = cfg.intervals;
    let h = cfg.step();
    let origin = 4 * m;
    let lower = HalfLine {
        sign: -1.0,
        origin,
        base: Box::new(move |n| 4 * (m - n)),
    };
    let upper = HalfLine {
        sign: 1.0,
        origin,
        base: Box::new(move |n| 4 * m + 4 + 4 * (n - 1)),
    };
    let mut sys = System::new(8 * m + 4);
    lower.assemble(&mut sys, m, xi, params, h);
    upper.assemble(&mut sys, m, xi, params, h);

    let (mb, mu) = (params.mu_b(), params.mu());
    let k2 = xi[0] * xi[0] + xi[1] * xi[1];
    let q = origin + 3;
    // mu |xi|^2 v + i xi q - mu_b (d_y v(0+) - d_y v(0-)) = g_tau
    for a in 0..2 {
        let r = origin + a;
        sys.put(r, origin + a, Complex64::new(mu * k2, 0.0));
        sys.put(r, q, I * xi[a]);
        for (side, sgn) in [(&upper, -mb), (&lower, mb)] {
            for (n, c) in side.one_sided(h).into_iter().enumerate() {
                sys.put(r, side.v(n, a), Complex64::new(sgn * c, 0.0));
            }
        }
        sys.rhs[r] = g_tau[a];
    }
    // [[pi]] = g_nu with extrapolated traces
    let r = origin + 2;
    sys.put(r, upper.p(1), Complex64::new(1.5, 0.0));
    sys.put(r, upper.p(2), Complex64::new(-0.5, 0.0));
    sys.put(r, lower.p(1), Complex64::new(-1.5, 0.0));
    sys.put(r, lower.p(2), Complex64::new(0.5, 0.0));
    sys.rhs[r] = g_nu;
    sys.put(origin + 3, origin, I * xi[0]);
    sys.put(origin + 3, origin + 1, I * xi[1]);

    let x = sys.solve()?;
    let trace_v = [x[origin], x[origin + 1]];
    let trace_w = x[origin + 2];
    let trace_pi_plus = upper.pressure_at(&x, 0, m);
    let trace_pi_minus = lower.pressure_at(&x, 0, m);
    let qv = x[q];
    let sm = mb.sqrt();
    let zeta = [sm * xi[0], sm * xi[1]];
    let varpi = (params.eta() + mb * k2).sqrt();
    let z_w_plus = trace_pi_plus / (params.eta() * sm);
    let z_w_minus = trace_pi_minus / (params.eta() * sm);
    let z_v = |zw: Complex64| {
        [
            (trace_v[0] + I * zeta[0] * zw) / varpi,
            (trace_v[1] + I * zeta[1] * zw) / varpi,
        ]
    };
    Ok(OracleTransmission {
        trace_v,
        trace_w,
        trace_pi_plus,
        trace_pi_minus,
        surface_pressure_gradient: [I * zeta[0] * qv, I * zeta[1] * qv],
        z_v_plus: z_v(z_w_plus),
        z_v_minus: z_v(z_w_minus),
        z_w_plus,
        z_w_minus,
    })
}

/// Discrete upper half-line profiles sampled at the grid nodes `y_j = j h`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleProfile {
    pub y: Vec<f64>,
    pub v: Vec<[Complex64; 2]>,
    pub w: Vec<Complex64>,
    pub pi: Vec<Complex64>,
}

impl OracleProfile {
    /// Componentwise `(4 fine - coarse) / 3` on the coarse nodes.
    pub fn richardson(coarse: &Self, fine: &Self) -> Self {
        let stride = (fine.y.len() - 1) / (coarse.y.len() - 1);
        let r = |c: Complex64, f: Complex64| (4.0 * f - c) / 3.0;
        let n = coarse.y.len();
        Self {
            y: coarse.y.clone(),
            v: (0..n)
                .map(|j| {
                    let f = fine.v[j * stride];
                    [r(coarse.v[j][0], f[0]), r(coarse.v[j][1], f[1])]
                })
                .collect(),
            w: (0..n).map(|j| r(coarse.w[j], fine.w[j * stride])).collect(),
            pi: (0..n).map(|j| r(coarse.pi[j], fine.pi[j * stride])).collect(),
        }
    }
}

/// Discrete Stokes solve on the upper half-line with prescribed velocity trace,
/// on the same staggered layout as [`ode_transmission_oracle`].
pub fn dirichlet_halfline_oracle(
    xi: [f64; 2],
    g_tau: [Complex64; 2],
    g_nu: Complex64,
    cfg: &BvpConfig,
    params: &MaterialParams,
) -> Result<OracleProfile> {
    if params.eta() <= 0.0 {
        return Err(Error::Shift { eta: params.eta() });
    }
    if xi == [0.0, 0.0] {
        return Err(Error::ZeroMode);
    }
    let m = cfg.intervals;
    let h = cfg.step();
    let line = HalfLine {
        sign: 1.0,
        origin: 0,
        base: Box::new(|n| 3 + 4 * (n - 1)),
    };
    let mut sys = System::new(4 * m + 3);
    line.assemble(&mut sys, m, xi, params, h);
    for (a, g) in [g_tau[0], g_tau[1], g_nu].into_iter().enumerate() {
        sys.put(a, a, ONE);
        sys.rhs[a] = g;
    }
    let x = sys.solve()?;
    Ok(OracleProfile {
        y: (0..=m).map(|n| n as f64 * h).collect(),
        v: (0..=m).map(|n| [x[line.v(n, 0)], x[line.v(n, 1)]]).collect(),
        w: (0..=m).map(|n| x[line.w(n)]).collect(),
        pi: (0..=m).map(|n| line.pressure_at(&x, n, m)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn zero_data_gives_zero_solution() {
        let p = MaterialParams::default().with_eta(1.0).unwrap();
        let cfg = BvpConfig::for_mode([1.0, 0.0], &p, 200).unwrap();
        let o = ode_transmission_oracle([1.0, 0.0], [c(0.0); 2], c(0.0), &cfg, &p).unwrap();
        assert_eq!(o.trace_w, c(0.0));
        assert_eq!(o.trace_v, [c(0.0); 2]);
    }

    #[test]
    fn normal_trace_converges_at_second_order() {
        let p = MaterialParams::default().with_eta(1.0).unwrap();
        let target = 1.0 / (2.0 * 2f64.sqrt() * (2f64.sqrt() + 1.0));
        let cfg = BvpConfig::for_mode([1.0, 0.0], &p, 2000).unwrap();
        let coarse = ode_transmission_oracle([1.0, 0.0], [c(0.0); 2], c(1.0), &cfg, &p).unwrap();
        let fine =
            ode_transmission_oracle([1.0, 0.0], [c(0.0); 2], c(1.0), &cfg.refined(2), &p).unwrap();
        let e1 = (coarse.trace_w - target).norm() / target;
        let e2 = (fine.trace_w - target).norm() / target;
        assert!(e1 < 1e-4, "coarse error {e1}");
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "refinement ratio {ratio}");
        let extrapolated = OracleTransmission::richardson(&coarse, &fine);
        let e3 = (extrapolated.trace_w - target).norm() / target;
        assert!(e3 < 1e-6, "extrapolated error {e3}");
    }
}
