use crate::error::{Error, Result};
use crate::geometry::{graph_geometry, helfrich_energy, helfrich_gradient, HeightField};
use crate::params::MaterialParams;

/// Central-difference check of the energy gradient along one direction.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientCheck {
    pub eps: Vec<f64>,
    /// `|(F(h + e dh) - F(h - e dh)) / 2e - <grad F(h), dh>|`.
    pub residuals: Vec<f64>,
    /// Whether each residual sits above the round-off floor and enters the fit.
    pub used: Vec<bool>,
    /// Least-squares slope of `log residual` against `log eps` over the used points.
    pub slope: Option<f64>,
    /// `<grad F(h), dh>`.
    pub directional: f64,
}

/// Compares finite differences of the energy with the analytic gradient.
///
/// Residuals within a factor 100 of the round-off level `eps_mach F / e` are
/// treated as a plateau and excluded from the slope.
pub fn fd_energy_gradient(
    h: &HeightField,
    dh: &HeightField,
    eps: &[f64],
    params: &MaterialParams,
) -> Result<GradientCheck> {
    let reach = h.max_abs() + eps.iter().fold(0.0f64, |m, e| m.max(e.abs())) * dh.max_abs();
    if reach >= params.gamma() {
        return Err(Error::TubularViolation {
            max_abs: reach,
            gamma: params.gamma(),
        });
    }
    let energy = |f: &HeightField| helfrich_energy(&graph_geometry(f), params);
    let directional = helfrich_gradient(&graph_geometry(h), params).dot(dh);
    let base = energy(h).abs().max(directional.abs());
    let mut residuals = Vec::with_capacity(eps.len());
    let mut used = Vec::with_capacity(eps.len());
    for &e in eps {
        let fd = (energy(&h.axpy(e, dh)) - energy(&h.axpy(-e, dh))) / (2.0 * e);
        let r = (fd - directional).abs();
        let floor = 100.0 * f64::EPSILON * base / e;
        residuals.push(r);
        used.push(r > floor);
    }
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(&residuals)
        .zip(&used)
        .filter(|(_, &u)| u)
        .map(|((e, r), _)| (e.ln(), r.ln()))
        .collect();
    Ok(GradientCheck {
        eps: eps.to_vec(),
        residuals,
        used,
        slope: fit_slope(&pts),
        directional,
    })
}

fn fit_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
