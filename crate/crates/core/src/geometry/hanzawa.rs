//! The flat-reference Hanzawa map `(x, y) -> (x, y + h(x) beta(y / gamma))`.

use super::height::HeightField;
use crate::error::{Error, Result};
use crate::params::MaterialParams;

/// Supremum of `|beta'|`, attained at `|s| = 1/2`.
pub const BUMP_MAX_SLOPE: f64 = 4.0;

fn f(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

fn df(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        f(t) / (t * t)
    }
}

/// Smooth step from 0 (t <= 0) to 1 (t >= 1).
fn step(t: f64) -> f64 {
    let (a, b) = (f(t), f(1.0 - t));
    a / (a + b)
}

fn step_derivative(t: f64) -> f64 {
    let (a, b) = (f(t), f(1.0 - t));
    let (da, db) = (df(t), df(1.0 - t));
    (da * b + a * db) / ((a + b) * (a + b))
}

/// Smooth bump: 1 on `|s| <= 1/4`, 0 on `|s| >= 3/4`.
pub fn bump(s: f64) -> f64 {
    step((0.75 - s.abs()) * 2.0)
}

pub fn bump_derivative(s: f64) -> f64 {
    -s.signum() * 2.0 * step_derivative((0.75 - s.abs()) * 2.0)
}

fn admissible(h: &HeightField, params: &MaterialParams) -> Result<f64> {
    let gamma = params.gamma();
    h.ensure_tubular(gamma)?;
    let max_abs = h.max_abs();
    if BUMP_MAX_SLOPE * max_abs >= gamma {
        return Err(Error::BumpSlopeViolation {
            slope: BUMP_MAX_SLOPE,
            limit: gamma / max_abs,
        });
    }
    Ok(gamma)
}

/// Image of the reference point `(x, y)`.
pub fn hanzawa_map(h: &HeightField, x: [f64; 2], y: f64, params: &MaterialParams) -> Result<[f64; 3]> {
    let gamma = admissible(h, params)?;
    Ok([x[0], x[1], y + h.eval_at(x) * bump(y / gamma)])
}

/// Jacobian determinant `1 + h(x) beta'(y/gamma) / gamma` of the map.
pub fn hanzawa_jacobian(h: &HeightField, x: [f64; 2], y: f64, params: &MaterialParams) -> Result<f64> {
    let gamma = admissible(h, params)?;
    Ok(1.0 + h.eval_at(x) * bump_derivative(y / gamma) / gamma)
}
