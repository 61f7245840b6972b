//! Time-domain 1D Yee simulator with total-field/scattered-field plane-wave
//! injection and steady-state phasor probes.
//!
//! The closed forms in [`crate::fresnel`] are exact identities of this very
//! scheme, so a converged run must reproduce them far more tightly than
//! either agrees with continuum theory. The simulator is therefore the
//! empirical oracle for the algebra (and vice versa).
//!
//! Layout and conventions:
//!
//! * `e[m]` holds `E_z` at integer node `m`; `h[m]` holds `H_y` half a cell
//!   to the right of node `m` (between `e[m]` and `e[m+1]`).
//! * Material maps follow the staggering: `eps_of_m[m]` pairs with `e[m]`,
//!   while `mu_of_m[p]` belongs to the H sample *between* `e[p-1]` and
//!   `e[p]` (i.e. to `h[p-1]`), matching the usual way the magnetic nodes
//!   are indexed in interface diagrams.
//! * The grid is terminated by time gating instead of absorbing boundaries:
//!   the outer ends are perfect reflectors, but the grid is sized so no
//!   echo can reach a probe within the simulated time.

mod config;
mod engine;
mod measure;

pub use config::{SimConfig, FIELD_AMPLITUDE, MAX_SETTLE_ATTEMPTS};
pub use engine::{build, step, FieldState};
pub use measure::{
    measure_wavelength, run_and_measure, run_and_measure_observed, MeasuredFresnel, PhasorProbe,
};
