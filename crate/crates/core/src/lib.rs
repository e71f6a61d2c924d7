//! Compact Hermite difference schemes (CHD4, CHD6) for convection-diffusion problems
//! and the double-diffusive convection cavity.

pub mod analysis;
pub mod compact;
pub mod ddc;
pub mod error;
pub mod grid;
pub mod hermite;
pub mod io;
pub mod poisson;
pub mod timestep;
pub mod verification;

pub use compact::{Axis, BoundaryTreatment, SchemeOrder};
pub use error::{Error, Result};
pub use grid::{ConservedState, ErrorNorms, Grid, PhysicalParams, ScalarField};
