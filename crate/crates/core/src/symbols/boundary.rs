use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::MaterialParams;

/// Smallest admissible `|s|` before a sample is treated as a zero of the symbol.
pub const SYMBOL_ZERO_TOL: f64 = 1e-14;

/// One evaluation of `s(lambda, z) = (lambda + eta) + m(z) n(z)` with
/// `m = alpha varpi / (varpi + z)`, `n = z^5 / varpi^2`, `varpi = sqrt(eta + z^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySymbolEval {
    pub lambda: Complex64,
    pub z: Complex64,
    pub s: Complex64,
    pub m: Complex64,
    pub n: Complex64,
    /// `(lambda + eta) / s`
    pub phi: Complex64,
    /// `n / s`
    pub psi: Complex64,
}

impl BoundarySymbolEval {
    pub fn lambda_eta(&self, params: &MaterialParams) -> Complex64 {
        self.lambda + params.eta()
    }
}

fn m_and_n(z: Complex64, params: &MaterialParams) -> (Complex64, Complex64) {
    let alpha = params.alpha();
    let eta = params.eta();
    if eta == 0.0 {
        // varpi = z on the right half-plane
        return (Complex64::new(0.5 * alpha, 0.0), z * z * z);
    }
    let w = (z * z + eta).sqrt();
    (alpha * w / (w + z), z.powu(5) / (w * w))
}

/// Boundary symbol at complex `z` (the scaled wavenumber `sqrt(mu_b) |xi|`).
pub fn boundary_symbol_complex(
    lambda: Complex64,
    z: Complex64,
    params: &MaterialParams,
) -> Result<BoundarySymbolEval> {
    let (m, n) = m_and_n(z, params);
    let lambda_eta = lambda + params.eta();
    let s = lambda_eta + m * n;
    if s.norm() < SYMBOL_ZERO_TOL {
        return Err(Error::SymbolZero {
            modulus: s.norm(),
            lambda,
            z,
        });
    }
    Ok(BoundarySymbolEval {
        lambda,
        z,
        s,
        m,
        n,
        phi: lambda_eta / s,
        psi: n / s,
    })
}

/// Boundary symbol at a physical wavenumber `|xi|`.
pub fn boundary_symbol(
    lambda: Complex64,
    xi_norm: f64,
    params: &MaterialParams,
) -> Result<BoundarySymbolEval> {
    let z = Complex64::new(params.mu_b().sqrt() * xi_norm, 0.0);
    boundary_symbol_complex(lambda, z, params)
}

/// Decay rate `eta + m n(|xi|)` of a free height mode.
pub fn relaxation_rate(xi_norm: f64, params: &MaterialParams) -> f64 {
    let z = Complex64::new(params.mu_b().sqrt() * xi_norm, 0.0);
    let (m, n) = m_and_n(z, params);
    params.eta() + (m * n).re
}

/// Sample layout for [`sector_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSampling {
    pub moduli: usize,
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub arguments: usize,
}

impl Default for SectorSampling {
    fn default() -> Self {
        Self {
            moduli: 40,
            min_modulus: 1e-6,
            max_modulus: 1e6,
            arguments: 9,
        }
    }
}

impl SectorSampling {
    /// Log-spaced moduli times evenly spaced arguments in `[-angle, angle]`.
    fn points(&self, angle: f64) -> Vec<Complex64> {
        let (lo, hi) = (self.min_modulus.ln(), self.max_modulus.ln());
        let mut out = Vec::with_capacity(self.moduli * self.arguments);
        for i in 0..self.moduli {
            let t = if self.moduli == 1 {
                0.0
            } else {
                i as f64 / (self.moduli - 1) as f64
            };
            let r = (lo + t * (hi - lo)).exp();
            for j in 0..self.arguments {
                let u = if self.arguments == 1 {
                    0.5
                } else {
                    j as f64 / (self.arguments - 1) as f64
                };
                out.push(Complex64::from_polar(r, -angle + 2.0 * angle * u));
            }
        }
        out
    }
}

/// Empirical sector bound of the boundary symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorReport {
    pub theta: f64,
    pub vartheta: f64,
    pub samples: usize,
    pub min_abs_s: f64,
    /// `min |s| / (|lambda + eta| + |m n|)` over the samples.
    pub ratio_constant: f64,
    pub worst_lambda: Complex64,
    pub worst_z: Complex64,
    /// `min |m|` over the sampled `z`.
    pub min_abs_m: f64,
    pub max_abs_phi: f64,
    pub max_abs_psi: f64,
}

#[derive(Clone, Copy)]
struct Acc {
    min_s: f64,
    ratio: f64,
    worst: (Complex64, Complex64),
    min_m: f64,
    max_phi: f64,
    max_psi: f64,
}

impl Acc {
    fn identity() -> Self {
        Self {
            min_s: f64::INFINITY,
            ratio: f64::INFINITY,
            worst: (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
            min_m: f64::INFINITY,
            max_phi: 0.0,
            max_psi: 0.0,
        }
    }

    fn merge(self, other: Self) -> Self {
        let (ratio, worst) = if other.ratio < self.ratio {
            (other.ratio, other.worst)
        } else {
            (self.ratio, self.worst)
        };
        Self {
            min_s: self.min_s.min(other.min_s),
            ratio,
            worst,
            min_m: self.min_m.min(other.min_m),
            max_phi: self.max_phi.max(other.max_phi),
            max_psi: self.max_psi.max(other.max_psi),
        }
    }
}

/// Samples `lambda` in the sector of half-angle `theta` and `z` in the sector of
/// half-angle `vartheta`, and reports how far `s` stays from zero.
pub fn sector_check(
    theta: f64,
    vartheta: f64,
    sampling: &SectorSampling,
    params: &MaterialParams,
) -> Result<SectorReport> {
    let admissible = theta > PI / 2.0
        && theta < PI
        && vartheta > 0.0
        && 9.0 * vartheta < (PI - theta) - 1e-12;
    if !admissible {
        return Err(Error::Angle { theta, vartheta });
    }
    let lambdas = sampling.points(theta);
    let zs = sampling.points(vartheta);
    let acc = zs
        .par_iter()
        .map(|&z| -> Result<Acc> {
            let mut acc = Acc::identity();
            for &lambda in &lambdas {
                let e = boundary_symbol_complex(lambda, z, params)?;
                let s = e.s.norm();
                let ratio = s / ((lambda + params.eta()).norm() + (e.m * e.n).norm());
                acc = acc.merge(Acc {
                    min_s: s,
                    ratio,
                    worst: (lambda, z),
                    min_m: e.m.norm(),
                    max_phi: e.phi.norm(),
                    max_psi: e.psi.norm(),
                });
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(Acc::identity(), Acc::merge);
    Ok(SectorReport {
        theta,
        vartheta,
        samples: lambdas.len() * zs.len(),
        min_abs_s: acc.min_s,
        ratio_constant: acc.ratio,
        worst_lambda: acc.worst.0,
        worst_z: acc.worst.1,
        min_abs_m: acc.min_m,
        max_abs_phi: acc.max_phi,
        max_abs_psi: acc.max_psi,
    })
}
