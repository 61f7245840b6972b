//! 1D Yee-FDTD laboratory.
//!
//! The crate answers one question from two independent directions: what do
//! the reflection and transmission coefficients of the staggered-grid Yee
//! scheme actually converge to at a planar material interface, and how far
//! are they from the continuum values at finite resolution?
//!
//! * [`dispersion`] solves the grid dispersion relation.
//! * [`fresnel`] evaluates the exact and the discrete interface
//!   coefficients in closed form, plus all derived error metrics.
//! * [`yee`] is a time-domain simulator whose steady-state measurements
//!   must reproduce those closed forms to probe precision.
//! * [`sweep`] regenerates coefficient and error curves as CSV datasets.
//! * [`verify`] bundles the cross-checks between all of the above into a
//!   runnable suite.

pub mod dispersion;
mod error;
pub mod fresnel;
pub mod medium;
pub mod sweep;
pub mod verify;
pub mod yee;

pub use error::{Error, Result};
pub use fresnel::{ErrorReport, FresnelPair, ModeComparison, PowerPair};
pub use medium::{InterfaceCase, InterfaceKind, Medium, WaveDiscretization};
pub use sweep::{CourantMode, RowStatus, SweepAxis, SweepRow, SweepSpec};
pub use yee::{FieldState, MeasuredFresnel, SimConfig};
