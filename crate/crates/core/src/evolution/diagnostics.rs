use super::state::SimState;
use crate::error::{Error, Result};
use crate::geometry::{
    graph_geometry, helfrich_energy, helfrich_gradient, linearized_symbol, surface_area,
    HeightField,
};
use crate::params::MaterialParams;
use crate::symbols::ntd_symbol;

/// One diagnostics row. `dissipation` is the linearized modal surrogate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub energy: f64,
    pub dissipation: f64,
    pub mean_h: f64,
    pub area: f64,
    pub max_h: f64,
    pub tail_fraction: f64,
    pub picard_iters: usize,
    pub contraction: Option<f64>,
}

/// Time series of [`DiagnosticsRow`]s with nondecreasing `t`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimDiagnostics {
    rows: Vec<DiagnosticsRow>,
}

impl SimDiagnostics {
    /// Tail fractions at or above this value flag an under-resolved field.
    pub const TAIL_WARNING: f64 = 0.1;

    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, row: DiagnosticsRow) -> Result<()> {
        if let Some(last) = self.rows.last() {
            if row.t < last.t {
                return Err(Error::InvalidParameter(format!(
                    "diagnostics time went backwards: {} after {}",
                    row.t, last.t
                )));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn rows(&self) -> &[DiagnosticsRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// True if any row exceeds [`Self::TAIL_WARNING`].
    pub fn resolution_warning(&self) -> bool {
        self.rows.iter().any(|r| r.tail_fraction >= Self::TAIL_WARNING)
    }
}

/// Linearized dissipation `L^2 sum M(xi) A(xi)^2 |h(xi)|^2` over nonzero modes.
pub fn dissipation_estimate(h: &HeightField, params: &MaterialParams) -> Result<f64> {
    let grid = h.grid();
    let mut sum = 0.0;
    for (i, c) in h.coeffs().iter().enumerate().skip(1) {
        let k = grid.xi_norm(i);
        let a = linearized_symbol(k, params);
        sum += ntd_symbol(k, params)? * a * a * c.norm_sqr();
    }
    Ok(sum * grid.period() * grid.period())
}

/// Energy, dissipation surrogate and geometric monitors of one state.
pub fn diagnostics_record(state: &SimState, params: &MaterialParams) -> Result<DiagnosticsRow> {
    let geom = graph_geometry(&state.h);
    Ok(DiagnosticsRow {
        t: state.t,
        energy: helfrich_energy(&geom, params),
        dissipation: dissipation_estimate(&state.h, params)?,
        mean_h: state.h.mean(),
        area: surface_area(&geom),
        max_h: state.h.max_abs(),
        tail_fraction: state.h.tail_fraction(),
        picard_iters: state.picard_iterations,
        contraction: state.last_contraction,
    })
}

/// Result of [`equilibrium_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    pub at_rest: bool,
    pub residual: f64,
}

/// Sup-norm deviation of the energy gradient from its mean; at rest iff `<= tol`.
pub fn equilibrium_check(state: &SimState, params: &MaterialParams, tol: f64) -> Equilibrium {
    let grad = helfrich_gradient(&graph_geometry(&state.h), params);
    let mean = grad.mean();
    let residual = grad
        .values()
        .iter()
        .fold(0.0f64, |m, v| m.max((v - mean).abs()));
    Equilibrium {
        at_rest: residual <= tol,
        residual,
    }
}
