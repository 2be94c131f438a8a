//! Fourier symbols of the two-phase Stokes transmission problem across a flat
//! membrane, and the scalar boundary symbol of the height evolution.

mod boundary;
mod mode;
mod transmission;

pub use boundary::{
    boundary_symbol, boundary_symbol_complex, relaxation_rate, sector_check, BoundarySymbolEval,
    SectorReport, SectorSampling,
};
pub use mode::{helmholtz_project, ntd_multiplier, ntd_symbol, ModeData};
pub use transmission::{
    interface_fields, reconstruct_fields, reconstruct_jet, solve_transmission, FieldJet,
    InterfaceFields, TransmissionSolution,
};

use num_complex::Complex64;

/// Complex 2-vector of tangential components.
pub type CVec2 = [Complex64; 2];

pub(crate) fn dot(a: [f64; 2], b: CVec2) -> Complex64 {
    b[0] * a[0] + b[1] * a[1]
}

pub(crate) fn scale(s: Complex64, a: [f64; 2]) -> CVec2 {
    [s * a[0], s * a[1]]
}

pub(crate) fn add(a: CVec2, b: CVec2) -> CVec2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub(crate) fn sub(a: CVec2, b: CVec2) -> CVec2 {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn mul(s: Complex64, a: CVec2) -> CVec2 {
    [s * a[0], s * a[1]]
}
