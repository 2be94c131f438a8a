use super::{dot, scale, sub, CVec2};
use crate::error::{Error, Result};
use crate::params::MaterialParams;

/// One tangential wavevector together with its scaled quantities
/// `zeta = sqrt(mu_b) xi` and `varpi = sqrt(eta + |zeta|^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData {
    pub xi: [f64; 2],
    pub zeta: [f64; 2],
    pub zeta_norm: f64,
    pub varpi: f64,
    pub eta: f64,
    pub sqrt_mu_b: f64,
}

impl ModeData {
    pub fn new(xi: [f64; 2], mu_b: f64, eta: f64) -> Self {
        let sqrt_mu_b = mu_b.sqrt();
        let zeta = [sqrt_mu_b * xi[0], sqrt_mu_b * xi[1]];
        let zeta_norm = zeta[0].hypot(zeta[1]);
        Self {
            xi,
            zeta,
            zeta_norm,
            varpi: (eta + zeta_norm * zeta_norm).sqrt(),
            eta,
            sqrt_mu_b,
        }
    }

    pub fn from_params(xi: [f64; 2], params: &MaterialParams) -> Self {
        Self::new(xi, params.mu_b(), params.eta())
    }

    pub fn xi_norm(&self) -> f64 {
        self.xi[0].hypot(self.xi[1])
    }

    pub fn is_zero(&self) -> bool {
        self.xi == [0.0, 0.0]
    }

    /// Decay rate `varpi / sqrt(mu_b)` of the vortical profile.
    pub fn viscous_rate(&self) -> f64 {
        self.varpi / self.sqrt_mu_b
    }

    /// Decay rate `|xi|` of the potential profile.
    pub fn potential_rate(&self) -> f64 {
        self.xi_norm()
    }
}

/// Projection onto fields orthogonal to `xi`: `(I - xi xi^T / |xi|^2) a`.
pub fn helmholtz_project(xi: [f64; 2], a: CVec2) -> Result<CVec2> {
    let q = xi[0] * xi[0] + xi[1] * xi[1];
    if q == 0.0 {
        return Err(Error::ZeroMode);
    }
    Ok(sub(a, scale(dot(xi, a) / q, xi)))
}

/// Normal interface velocity per unit normal force,
/// `|zeta| / (2 sqrt(mu_b) varpi (varpi + |zeta|))`.
pub fn ntd_multiplier(mode: &ModeData) -> Result<f64> {
    if mode.is_zero() {
        return Err(Error::ZeroMode);
    }
    Ok(0.5 * mode.zeta_norm / (mode.sqrt_mu_b * mode.varpi * (mode.varpi + mode.zeta_norm)))
}

/// The multiplier at zero shift, `1 / (4 mu_b |xi|)`, as used by the time steppers.
pub fn ntd_symbol(xi_norm: f64, params: &MaterialParams) -> Result<f64> {
    ntd_multiplier(&ModeData::new([xi_norm, 0.0], params.mu_b(), 0.0))
}
