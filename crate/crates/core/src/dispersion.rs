//! Numerical dispersion of the 1D Yee grid.
//!
//! The staggered leapfrog scheme propagates a discrete harmonic wave with a
//! wavenumber `k~` that satisfies
//!
//! ```text
//!     sin(k~ dx / 2) = (n_r / S_c) sin(omega dt / 2)
//! ```
//!
//! instead of the continuum relation `k = omega n_r / c`. The two agree at
//! the "magic" Courant number `S_c = n_r` and in the limit of vanishing
//! steps; everywhere else the mismatch is what drives the interface errors
//! quantified in [`crate::fresnel`].

use crate::error::{Error, Result};
use crate::medium::{Medium, WaveDiscretization};

/// Solves the Yee dispersion relation for the half phase advance per cell,
/// `k~ dx / 2`, in `[0, pi/2]`.
///
/// Fails with [`Error::EvanescentRegime`] when `(n_r/S_c) sin(omega dt/2)`
/// exceeds one: no real propagating wavenumber exists for that
/// discretization, and time stepping there is useless anyway. The caller
/// must lower `S_c` or raise `N_lambda`.
pub fn solve_k_tilde(medium: &Medium, wd: &WaveDiscretization) -> Result<f64> {
    let n_r = medium.refractive_index();
    let arg = n_r / wd.courant() * wd.half_omega_dt().sin();
    if arg > 1.0 {
        return Err(Error::EvanescentRegime {
            sine_arg: arg,
            n_r,
            courant: wd.courant(),
            n_lambda: wd.n_lambda(),
        });
    }
    Ok(arg.asin())
}

/// Effective angular frequency of the centered time difference,
/// `Omega = (2/dt) sin(omega dt / 2)`. Tends to `omega` as `dt -> 0`.
pub fn big_omega(wd: &WaveDiscretization, dt: f64) -> f64 {
    debug_assert!(dt > 0.0);
    2.0 / dt * wd.half_omega_dt().sin()
}

/// Continuum wavenumber `k = omega n_r` (with `c = 1`).
pub fn continuum_k(medium: &Medium, omega: f64) -> f64 {
    debug_assert!(omega > 0.0);
    omega * medium.refractive_index()
}
