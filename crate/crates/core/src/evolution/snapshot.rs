use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{graph_geometry, helfrich_gradient, HeightField};
use crate::params::MaterialParams;
use crate::spectral::{self, Grid};
use crate::symbols::{interface_fields, ModeData};

/// Bulk velocity and pressure on one plane `y = const`, sampled on the lattice grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotFields {
    pub y: f64,
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    pub w: Vec<f64>,
    pub pi: Vec<f64>,
}

/// Flow driven by the bending force of `h` at height `y`.
///
/// The interface carries the normal force density `-grad F(h)` and no tangential
/// force. A negative `y`, including `-0.0`, selects the lower phase.
pub fn snapshot_fields(h: &HeightField, y: f64, params: &MaterialParams) -> Result<SnapshotFields> {
    let grid = *h.grid();
    let force = helfrich_gradient(&graph_geometry(h), params).scaled(-1.0);
    let zero = Complex64::new(0.0, 0.0);
    let modes: Vec<[Complex64; 4]> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let g = force.coeffs()[i];
            if g == zero && i != 0 {
                return Ok([zero; 4]);
            }
            let mode = ModeData::from_params(grid.wavevector(i), params);
            let f = interface_fields(&mode, [zero; 2], g, y, params)?;
            Ok([f.v[0], f.v[1], f.w, f.pi])
        })
        .collect::<Result<_>>()?;
    let plane = |c: usize| real_plane(&grid, modes.iter().map(|m| m[c]).collect());
    Ok(SnapshotFields {
        y,
        v1: plane(0),
        v2: plane(1),
        w: plane(2),
        pi: plane(3),
    })
}

fn real_plane(grid: &Grid, mut coeffs: Vec<Complex64>) -> Vec<f64> {
    spectral::inverse_complex(grid, &mut coeffs);
    coeffs.into_iter().map(|c| c.re).collect()
}

/// Sup-norm mismatch of the interface conditions between the planes `y = 0+` and
/// `y = 0-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionResidual {
    /// `max |[[pi]] - g_nu|`.
    pub pressure_jump: f64,
    /// `max |[[v]]|` over both tangential components.
    pub tangential_jump: f64,
    /// `max |[[w]]|`.
    pub normal_jump: f64,
}

pub fn transmission_residual(
    h: &HeightField,
    params: &MaterialParams,
) -> Result<TransmissionResidual> {
    let up = snapshot_fields(h, 0.0, params)?;
    let down = snapshot_fields(h, -0.0, params)?;
    let force = helfrich_gradient(&graph_geometry(h), params).scaled(-1.0);
    let sup = |a: &[f64], b: &[f64], c: Option<&[f64]>| {
        (0..a.len()).fold(0.0f64, |m, i| {
            m.max((a[i] - b[i] - c.map_or(0.0, |c| c[i])).abs())
        })
    };
    Ok(TransmissionResidual {
        pressure_jump: sup(&up.pi, &down.pi, Some(force.values())),
        tangential_jump: sup(&up.v1, &down.v1, None).max(sup(&up.v2, &down.v2, None)),
        normal_jump: sup(&up.w, &down.w, None),
    })
}
