use num_complex::Complex64;
use rayon::prelude::*;

use super::state::SimState;
use crate::error::{Error, Result};
use crate::geometry::{linearized_symbol, nonlinear_remainder_q, HeightField, ScalarField};
use crate::params::MaterialParams;
use crate::spectral::Grid;
use crate::symbols::{ntd_symbol, relaxation_rate};

/// Maximum number of step halvings after a tubular violation.
pub const MAX_HALVINGS: u32 = 8;

fn check_dt(dt: f64) -> Result<()> {
    if dt.is_finite() && dt > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("time step must be positive, got {dt}")))
    }
}

/// Exact step of `d/dt h + s(xi) h = f` per mode with `s = eta + m n(|xi|)`.
///
/// `forcing` holds spectral coefficients of `f` on the grid of `state.h`.
pub fn linear_step(
    state: &SimState,
    dt: f64,
    forcing: Option<&[Complex64]>,
    params: &MaterialParams,
) -> Result<SimState> {
    check_dt(dt)?;
    let grid = *state.h.grid();
    if let Some(f) = forcing {
        if f.len() != grid.len() {
            return Err(Error::Shape("forcing must have one coefficient per mode".into()));
        }
    }
    let coeffs: Vec<Complex64> = state
        .h
        .coeffs()
        .par_iter()
        .enumerate()
        .map(|(i, &c)| {
            let s = if i == 0 {
                params.eta()
            } else {
                relaxation_rate(grid.xi_norm(i), params)
            };
            let decay = (-s * dt).exp();
            let gain = if s == 0.0 { dt } else { -(-s * dt).exp_m1() / s };
            let f = forcing.map_or(Complex64::new(0.0, 0.0), |f| f[i]);
            c * decay + f * gain
        })
        .collect();
    Ok(state.advanced(HeightField::from_coeffs(grid, coeffs)?, dt))
}

/// Frozen-coefficient multipliers `(M, A)` per mode; the zero mode is unused.
fn multipliers(grid: &Grid, params: &MaterialParams) -> Result<Vec<(f64, f64)>> {
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            if i == 0 {
                return Ok((0.0, 0.0));
            }
            let k = grid.xi_norm(i);
            Ok((ntd_symbol(k, params)?, linearized_symbol(k, params)))
        })
        .collect()
}

/// `(h^n - dt M q) / (1 + dt M A)` with the zero mode copied.
fn implicit_solve(
    h: &HeightField,
    q: &ScalarField,
    dt: f64,
    mult: &[(f64, f64)],
    params: &MaterialParams,
) -> Result<HeightField> {
    let coeffs: Vec<Complex64> = h
        .coeffs()
        .iter()
        .zip(q.coeffs())
        .zip(mult)
        .enumerate()
        .map(|(i, ((&c, &qc), &(m, a)))| {
            if i == 0 {
                c
            } else {
                (c - qc * (dt * m)) / (1.0 + dt * m * a)
            }
        })
        .collect();
    let next = HeightField::from_coeffs(*h.grid(), coeffs)?;
    next.ensure_tubular(params.gamma())?;
    Ok(next)
}

fn imex_substeps(
    h: &HeightField,
    dt: f64,
    count: usize,
    mult: &[(f64, f64)],
    params: &MaterialParams,
) -> Result<HeightField> {
    let mut cur = h.clone();
    for _ in 0..count {
        let q = nonlinear_remainder_q(&cur, params)?;
        cur = implicit_solve(&cur, &q, dt, mult, params)?;
    }
    Ok(cur)
}

/// One IMEX step: the bending operator linearized at the flat state is implicit,
/// the remainder `Q(h)` explicit, and the hydrodynamic multiplier is frozen at the
/// zero-shift flat value.
///
/// If the update leaves the tubular neighbourhood the interval is covered by
/// `2, 4, ..., 2^8` equal substeps before giving up.
pub fn relaxational_step_imex(state: &SimState, dt: f64, params: &MaterialParams) -> Result<SimState> {
    check_dt(dt)?;
    state.h.ensure_tubular(params.gamma())?;
    let mult = multipliers(state.h.grid(), params)?;
    let mut last = None;
    for level in 0..=MAX_HALVINGS {
        let count = 1usize << level;
        match imex_substeps(&state.h, dt / count as f64, count, &mult, params) {
            Ok(h) => return Ok(state.advanced(h, dt)),
            Err(e @ Error::TubularViolation { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Outcome of one Picard step.
#[derive(Debug, Clone, PartialEq)]
pub struct PicardReport {
    /// Correction sweeps after the IMEX predictor.
    pub iterations: usize,
    /// `|d_{k+1}| / |d_k|` for successive updates above the round-off floor.
    pub ratios: Vec<f64>,
}

impl PicardReport {
    /// Largest measured ratio, if any update was resolvable.
    pub fn contraction(&self) -> Option<f64> {
        self.ratios.iter().copied().reduce(f64::max)
    }
}

fn sup_diff(a: &HeightField, b: &HeightField) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Fixed-point iteration `h <- (h^n - dt M Q(h)) / (1 + dt M A)` started from `h^n`.
///
/// The first application is the IMEX predictor; iteration stops when the sup-norm
/// update falls below `tol` or the round-off floor. Three consecutive ratios above
/// one, or exhausting `max_iter` sweeps, raise [`Error::NoContraction`].
pub fn picard_step(
    state: &SimState,
    dt: f64,
    tol: f64,
    max_iter: usize,
    params: &MaterialParams,
) -> Result<(SimState, PicardReport)> {
    picard_step_with_remainder(state, dt, tol, max_iter, params, |h| {
        nonlinear_remainder_q(h, params)
    })
}

/// [`picard_step`] with a caller-supplied remainder.
pub fn picard_step_with_remainder(
    state: &SimState,
    dt: f64,
    tol: f64,
    max_iter: usize,
    params: &MaterialParams,
    remainder: impl Fn(&HeightField) -> Result<ScalarField>,
) -> Result<(SimState, PicardReport)> {
    check_dt(dt)?;
    state.h.ensure_tubular(params.gamma())?;
    let mult = multipliers(state.h.grid(), params)?;
    let step = |z: &HeightField| -> Result<HeightField> {
        implicit_solve(&state.h, &remainder(z)?, dt, &mult, params)
    };
    let floor = 64.0 * f64::EPSILON * state.h.max_abs().max(f64::MIN_POSITIVE);
    let threshold = tol.max(floor);

    let mut cur = step(&state.h)?;
    let mut last_delta = sup_diff(&cur, &state.h);
    let mut ratios = Vec::new();
    let mut rising = 0;
    for k in 1..=max_iter {
        let next = step(&cur)?;
        let delta = sup_diff(&next, &cur);
        if last_delta > floor {
            let r = delta / last_delta;
            ratios.push(r);
            rising = if r > 1.0 { rising + 1 } else { 0 };
            if rising >= 3 {
                return Err(Error::NoContraction { ratios });
            }
        }
        cur = next;
        if delta <= threshold {
            let report = PicardReport { iterations: k, ratios };
            let mut out = state.advanced(cur, dt);
            out.picard_iterations = report.iterations;
            out.last_contraction = report.contraction();
            return Ok((out, report));
        }
        last_delta = delta;
    }
    Err(Error::NoContraction { ratios })
}
