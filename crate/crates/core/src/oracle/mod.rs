//! Independent reference computations used to check the spectral and closed-form paths.

mod banded;
mod bvp;
mod dense;
mod gradient;
pub mod manufactured;

pub use banded::BandMatrix;
pub use bvp::{
    dirichlet_halfline_oracle, ode_transmission_oracle, BvpConfig, OracleProfile,
    OracleTransmission,
};
pub use dense::dense_evolution_oracle;
pub use gradient::{fd_energy_gradient, GradientCheck};
