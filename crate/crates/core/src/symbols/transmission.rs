use num_complex::Complex64;

use super::mode::{helmholtz_project, ModeData};
use super::{add, dot, mul, scale, CVec2};
use crate::error::{Error, Result};
use crate::params::MaterialParams;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Per-mode solution of the transmission problem with tangential force `g_tau`
/// and normal force `g_nu` on the membrane.
///
/// Fields are `v = varpi z_v e^{-a|y|} - i zeta z_w e^{-k|y|}` on either side,
/// with `a = varpi / sqrt(mu_b)` and `k = |xi|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionSolution {
    pub z_v_plus: CVec2,
    pub z_v_minus: CVec2,
    pub z_w_plus: Complex64,
    pub z_w_minus: Complex64,
    /// Surface pressure gradient `i zeta q`.
    pub surface_pressure_gradient: CVec2,
    pub trace_v: CVec2,
    pub trace_w: Complex64,
    pub trace_pi_plus: Complex64,
    pub trace_pi_minus: Complex64,
}

/// Value, first and second `y`-derivatives of the bulk fields at one height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    pub v: [CVec2; 3],
    pub w: [Complex64; 3],
    pub pi: [Complex64; 2],
}

fn tangential_gain(mode: &ModeData, params: &MaterialParams) -> f64 {
    mode.sqrt_mu_b * mode.varpi + 0.5 * params.mu() / params.mu_b() * mode.zeta_norm * mode.zeta_norm
}

/// Solves the transmission conditions for one mode; requires `eta > 0` and `xi != 0`.
pub fn solve_transmission(
    mode: &ModeData,
    g_tau: CVec2,
    g_nu: Complex64,
    params: &MaterialParams,
) -> Result<TransmissionSolution> {
    if mode.is_zero() {
        return Err(Error::ZeroMode);
    }
    if mode.eta <= 0.0 {
        return Err(Error::Shift { eta: mode.eta });
    }
    let (eta, sm, w, zn) = (mode.eta, mode.sqrt_mu_b, mode.varpi, mode.zeta_norm);
    let z_w = g_nu / (2.0 * eta * sm);
    let p_g = helmholtz_project(mode.xi, g_tau)?;
    let trace_v = mul(Complex64::new(0.5 / tangential_gain(mode, params), 0.0), p_g);
    // varpi z_v^{+-} = trace_v +- i zeta g_nu / (2 eta sqrt(mu_b))
    let odd = scale(I * z_w, mode.zeta);
    let z_v_plus = mul(Complex64::new(1.0 / w, 0.0), add(trace_v, odd));
    let z_v_minus = mul(Complex64::new(1.0 / w, 0.0), add(trace_v, mul(-Complex64::new(1.0, 0.0), odd)));
    let grad_part = scale(dot(mode.zeta, g_tau) / (zn * zn), mode.zeta);
    Ok(TransmissionSolution {
        z_v_plus,
        z_v_minus,
        z_w_plus: z_w,
        z_w_minus: -z_w,
        surface_pressure_gradient: mul(Complex64::new(sm, 0.0), grad_part),
        trace_v,
        trace_w: g_nu * (0.5 * zn / (sm * w * (w + zn))),
        trace_pi_plus: 0.5 * g_nu,
        trace_pi_minus: -0.5 * g_nu,
    })
}

/// Bulk fields and their `y`-derivatives; `y.is_sign_negative()` selects the lower phase,
/// so `-0.0` gives the lower trace.
pub fn reconstruct_jet(sol: &TransmissionSolution, mode: &ModeData, y: f64) -> FieldJet {
    let lower = y.is_sign_negative();
    let sign = if lower { -1.0 } else { 1.0 };
    let (z_v, z_w) = if lower {
        (sol.z_v_minus, sol.z_w_minus)
    } else {
        (sol.z_v_plus, sol.z_w_plus)
    };
    // Profiles e^{-sign r y}; d/dy multiplies by -sign r.
    let a = mode.viscous_rate();
    let k = mode.potential_rate();
    let (ea, ek) = ((-sign * a * y).exp(), (-sign * k * y).exp());
    let (da, dk) = (-sign * a, -sign * k);
    let vort_v = mul(Complex64::new(mode.varpi, 0.0), z_v);
    let pot_v = scale(-I * z_w, mode.zeta);
    let vort_w = sign * I * dot(mode.zeta, z_v);
    let pot_w = sign * mode.zeta_norm * z_w;
    let pot_pi = mode.eta * mode.sqrt_mu_b * z_w;
    let v_at = |p: i32| {
        add(
            mul(Complex64::new(ea * da.powi(p), 0.0), vort_v),
            mul(Complex64::new(ek * dk.powi(p), 0.0), pot_v),
        )
    };
    let w_at = |p: i32| vort_w * (ea * da.powi(p)) + pot_w * (ek * dk.powi(p));
    FieldJet {
        v: [v_at(0), v_at(1), v_at(2)],
        w: [w_at(0), w_at(1), w_at(2)],
        pi: [pot_pi * ek, pot_pi * ek * dk],
    }
}

/// `(v, w, pi)` at height `y`.
pub fn reconstruct_fields(
    sol: &TransmissionSolution,
    mode: &ModeData,
    y: f64,
) -> (CVec2, Complex64, Complex64) {
    let jet = reconstruct_jet(sol, mode, y);
    (jet.v[0], jet.w[0], jet.pi[0])
}

/// Bulk fields generated by membrane forces, in a form that stays finite as `eta -> 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceFields {
    pub v: CVec2,
    pub w: Complex64,
    pub pi: Complex64,
}

/// Evaluates the transmission response at height `y` for any `eta >= 0`.
///
/// The difference of the two exponential profiles is rewritten with `expm1`, so the
/// `1/eta` factors of the raw coefficients cancel analytically. The zero mode
/// carries only the pressure jump `+-g_nu/2`.
pub fn interface_fields(
    mode: &ModeData,
    g_tau: CVec2,
    g_nu: Complex64,
    y: f64,
    params: &MaterialParams,
) -> Result<InterfaceFields> {
    let lower = y.is_sign_negative();
    let sign = if lower { -1.0 } else { 1.0 };
    let s = y.abs();
    if mode.is_zero() {
        return Ok(InterfaceFields {
            v: [ZERO, ZERO],
            w: ZERO,
            pi: sign * 0.5 * g_nu,
        });
    }
    let (sm, w, zn, eta) = (mode.sqrt_mu_b, mode.varpi, mode.zeta_norm, mode.eta);
    let a = mode.viscous_rate();
    let k = mode.potential_rate();
    let gap = sm * (w + zn);
    // E(s) = (e^{-a s} - e^{-k s}) / eta
    let e = if eta == 0.0 {
        -(-k * s).exp() * s / gap
    } else {
        (-k * s).exp() * (-eta * s / gap).exp_m1() / eta
    };
    let p_g = helmholtz_project(mode.xi, g_tau)?;
    let vort = mul(Complex64::new(0.5 * (-a * s).exp() / tangential_gain(mode, params), 0.0), p_g);
    let pot = scale(sign * I * g_nu * (e / (2.0 * sm)), mode.zeta);
    let w_val = g_nu * (zn / (2.0 * sm)) * ((-a * s).exp() / (w * (w + zn)) - e);
    Ok(InterfaceFields {
        v: add(vort, pot),
        w: w_val,
        pi: sign * 0.5 * g_nu * (-k * s).exp(),
    })
}
