use crate::error::{Error, Result};

/// Material constants of the bulk fluid, the surface fluid and the bending energy.
///
/// `alpha = kappa / (2 mu_b^{5/2})` scales the boundary symbol and is computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    mu_b: f64,
    mu: f64,
    kappa: f64,
    c0: f64,
    eta: f64,
    gamma: f64,
    alpha: f64,
}

impl MaterialParams {
    pub fn new(mu_b: f64, mu: f64, kappa: f64, c0: f64, eta: f64, gamma: f64) -> Result<Self> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter(what.to_string()))
            }
        };
        check(mu_b.is_finite() && mu_b > 0.0, "mu_b must be > 0")?;
        check(mu.is_finite() && mu >= 0.0, "mu must be >= 0")?;
        check(kappa.is_finite() && kappa > 0.0, "kappa must be > 0")?;
        check(c0.is_finite(), "c0 must be finite")?;
        check(eta.is_finite() && eta >= 0.0, "eta must be >= 0")?;
        check(gamma.is_finite() && gamma > 0.0, "gamma must be > 0")?;
        Ok(Self {
            mu_b,
            mu,
            kappa,
            c0,
            eta,
            gamma,
            alpha: kappa / (2.0 * mu_b.powf(2.5)),
        })
    }

    pub fn mu_b(&self) -> f64 {
        self.mu_b
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn c0(&self) -> f64 {
        self.c0
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn with_eta(self, eta: f64) -> Result<Self> {
        Self::new(self.mu_b, self.mu, self.kappa, self.c0, eta, self.gamma)
    }
    pub fn with_mu(self, mu: f64) -> Result<Self> {
        Self::new(self.mu_b, mu, self.kappa, self.c0, self.eta, self.gamma)
    }
    pub fn with_c0(self, c0: f64) -> Result<Self> {
        Self::new(self.mu_b, self.mu, self.kappa, c0, self.eta, self.gamma)
    }

    /// Mutation hook for verification tooling: rescales the cached `alpha` only,
    /// leaving `kappa` and `mu_b` untouched.
    #[doc(hidden)]
    pub fn with_alpha_scaled(mut self, factor: f64) -> Self {
        self.alpha *= factor;
        self
    }
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self::new(1.0, 1.0, 1.0, 0.0, 0.0, 0.5).expect("default parameters are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_is_cached_from_kappa_and_bulk_viscosity() {
        let p = MaterialParams::new(4.0, 0.0, 2.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(p.alpha(), 2.0 / (2.0 * 32.0));
    }

    #[test]
    fn rejects_nonpositive_constants() {
        assert!(MaterialParams::new(0.0, 1.0, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(MaterialParams::new(1.0, -1.0, 1.0, 0.0, 0.0, 1.0).is_err());
        assert!(MaterialParams::new(1.0, 1.0, 0.0, 0.0, 0.0, 1.0).is_err());
        assert!(MaterialParams::new(1.0, 1.0, 1.0, 0.0, -1e-3, 1.0).is_err());
        assert!(MaterialParams::new(1.0, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(MaterialParams::new(1.0, 0.0, 1.0, -3.0, 0.0, 1.0).is_ok());
    }
}
