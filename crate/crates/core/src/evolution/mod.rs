//! Time integration of the height field: exact exponential stepping of the linear
//! boundary evolution, IMEX stepping with the nonlinear bending remainder, a
//! per-step Picard iteration, and run diagnostics.

mod diagnostics;
mod snapshot;
mod state;
mod step;

pub use diagnostics::{
    diagnostics_record, dissipation_estimate, equilibrium_check, DiagnosticsRow, Equilibrium,
    SimDiagnostics,
};
pub use snapshot::{snapshot_fields, transmission_residual, SnapshotFields, TransmissionResidual};
pub use state::SimState;
pub use step::{
    linear_step, picard_step, picard_step_with_remainder, relaxational_step_imex, PicardReport,
    MAX_HALVINGS,
};
