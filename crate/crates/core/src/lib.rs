//! Relaxational dynamics of a nearly flat fluid membrane between two Stokes fluids.
//!
//! The membrane is the graph of a periodic height field over a flat torus. Bending
//! forces come from the Canham-Helfrich energy evaluated on the exact graph
//! geometry; the hydrodynamic response uses the explicit Fourier transmission
//! symbols of the two-phase Stokes problem.

pub mod error;
pub mod evolution;
pub mod geometry;
pub mod oracle;
pub mod params;
pub mod spectral;
pub mod stokes;
pub mod symbols;

pub use error::{Error, Result};
pub use geometry::{HeightField, ScalarField, SurfaceGeometry, TangentField};
pub use params::MaterialParams;
pub use spectral::Grid;
