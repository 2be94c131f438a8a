//! Resolvent Stokes problems in the whole space and in a half-space, per lattice
//! mode, with explicit exponential profiles in the normal direction.

mod bulk;
mod solvers;

pub use bulk::{reflect_extend, Bulk, BulkField, BulkScalar, BulkVector, Parity, YAxis, YGrid};
pub use solvers::{
    halfspace_dirichlet_forced_solve, halfspace_dirichlet_solve, halfspace_pressure_trace_solve,
    wholespace_solve,
};
