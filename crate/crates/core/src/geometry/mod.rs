//! Graph geometry over the flat periodic reference plane and the bending energy.

mod energy;
mod hanzawa;
mod height;
mod surface;

pub use energy::{
    grad_f_pointwise, helfrich_energy, helfrich_gradient, linearized_a_apply, linearized_symbol,
    nonlinear_remainder_q, surface_area,
};
pub use hanzawa::{bump, bump_derivative, hanzawa_jacobian, hanzawa_map, BUMP_MAX_SLOPE};
pub use height::{HeightField, ScalarField, TangentField};
pub use surface::{graph_geometry, laplace_beltrami, surface_divergence, SurfaceGeometry};
