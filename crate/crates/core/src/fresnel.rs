//! Exact and discrete Fresnel coefficients for a planar interface at normal
//! incidence, plus the derived reflection/transmission coefficients and the
//! error metrics built on them.
//!
//! The continuum coefficients depend only on the impedances,
//!
//! ```text
//!     t = 2 eta2 / (eta2 + eta1),    r = (eta2 - eta1) / (eta2 + eta1),
//!     R = r^2,                       T = (eta1 / eta2) t^2,
//! ```
//!
//! while their Yee-grid analogs pick up cosine factors of the discrete half
//! wavenumbers. For the dielectric model (shared `mu`, permittivity jump):
//!
//! ```text
//!     t~ = 2 eta2 cos(k1~ dx/2) / (eta2 cos(k2~ dx/2) + eta1 cos(k1~ dx/2))
//!     r~ = (eta2 cos(k2~ dx/2) - eta1 cos(k1~ dx/2)) / (same denominator)
//! ```
//!
//! and for the magnetic model (shared `eps`, permeability jump) the two
//! cosines swap roles. Both reduce to the exact forms as `N_lambda -> inf`.

use crate::dispersion::{big_omega, solve_k_tilde};
use crate::error::{Error, Result};
use crate::medium::{InterfaceCase, InterfaceKind, WaveDiscretization};
use num_complex::Complex64;

/// Amplitude reflection/transmission pair (`r`, `t`), exact or discrete.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelPair {
    pub r: f64,
    pub t: f64,
}

/// Energy-flux reflection/transmission pair (`R`, `T`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerPair {
    pub reflection: f64,
    pub transmission: f64,
}

/// Relative errors of the discrete power coefficients, in percent
/// (`50.0` means 50 %).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub delta_r: f64,
    pub delta_t: f64,
}

/// Error reduction bought by the optimal Courant number, in percentage
/// points: `delta(S_c = 1) - delta(S_c = min(n_r))` for R and T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeComparison {
    pub delta_r_gain: f64,
    pub delta_t_gain: f64,
}

/// Continuum Fresnel coefficients of the interface.
pub fn exact_fresnel(ic: &InterfaceCase) -> FresnelPair {
    let eta1 = ic.medium1().impedance();
    let eta2 = ic.medium2().impedance();
    FresnelPair {
        r: (eta2 - eta1) / (eta2 + eta1),
        t: 2.0 * eta2 / (eta2 + eta1),
    }
}

/// Continuum reflection/transmission coefficients; these satisfy
/// `R + T = 1` (energy conservation at a lossless interface).
pub fn exact_power(ic: &InterfaceCase) -> PowerPair {
    power_from(ic, &exact_fresnel(ic))
}

fn power_from(ic: &InterfaceCase, pair: &FresnelPair) -> PowerPair {
    PowerPair {
        reflection: pair.r * pair.r,
        transmission: ic.eta_ratio() * pair.t * pair.t,
    }
}

/// Half wavenumbers `k~ dx / 2` of both media.
fn half_wavenumbers(ic: &InterfaceCase, wd: &WaveDiscretization) -> Result<(f64, f64)> {
    Ok((
        solve_k_tilde(&ic.medium1(), wd)?,
        solve_k_tilde(&ic.medium2(), wd)?,
    ))
}

/// Discrete Fresnel coefficients of the Yee scheme for either interface
/// model. Exact closed forms, not approximations: a converged time-domain
/// run reproduces them to measurement precision.
pub fn fdtd_fresnel(ic: &InterfaceCase, wd: &WaveDiscretization) -> Result<FresnelPair> {
    let (k1, k2) = half_wavenumbers(ic, wd)?;
    let eta1 = ic.medium1().impedance();
    let eta2 = ic.medium2().impedance();
    let (c1, c2) = (k1.cos(), k2.cos());
    // The permittivity jump is smeared across an E-node pair, the
    // permeability jump across an H-node pair; the two placements weight the
    // cosines oppositely.
    let pair = match ic.kind() {
        InterfaceKind::Dielectric => FresnelPair {
            r: (eta2 * c2 - eta1 * c1) / (eta2 * c2 + eta1 * c1),
            t: 2.0 * eta2 * c1 / (eta2 * c2 + eta1 * c1),
        },
        InterfaceKind::Magnetic => FresnelPair {
            r: (eta2 * c1 - eta1 * c2) / (eta2 * c1 + eta1 * c2),
            t: 2.0 * eta2 * c1 / (eta2 * c1 + eta1 * c2),
        },
    };
    Ok(pair)
}

/// [`fdtd_fresnel`] restricted to the dielectric model.
pub fn fdtd_fresnel_dielectric(ic: &InterfaceCase, wd: &WaveDiscretization) -> Result<FresnelPair> {
    require_kind(ic, InterfaceKind::Dielectric)?;
    fdtd_fresnel(ic, wd)
}

/// [`fdtd_fresnel`] restricted to the magnetic model.
pub fn fdtd_fresnel_magnetic(ic: &InterfaceCase, wd: &WaveDiscretization) -> Result<FresnelPair> {
    require_kind(ic, InterfaceKind::Magnetic)?;
    fdtd_fresnel(ic, wd)
}

fn require_kind(ic: &InterfaceCase, expected: InterfaceKind) -> Result<()> {
    if ic.kind() != expected {
        return Err(Error::KindMismatch {
            expected: expected.as_str(),
            found: ic.kind().as_str(),
        });
    }
    Ok(())
}

/// Discrete reflection/transmission coefficients `R~ = r~^2`,
/// `T~ = (eta1/eta2) t~^2`.
///
/// Unlike the continuum pair these do *not* sum to one at finite
/// `N_lambda`; the deficit is exactly what the error metrics measure.
pub fn fdtd_power(ic: &InterfaceCase, wd: &WaveDiscretization) -> Result<PowerPair> {
    Ok(power_from(ic, &fdtd_fresnel(ic, wd)?))
}

/// Relative errors `delta_R = |R~ - R|/R * 100 %` and likewise for T.
///
/// Fails with [`Error::DegenerateInterface`] when `R = 0` (identical
/// impedances): the reflection error is undefined there.
pub fn error_report(ic: &InterfaceCase, wd: &WaveDiscretization) -> Result<ErrorReport> {
    let exact = exact_power(ic);
    if exact.reflection == 0.0 {
        return Err(Error::DegenerateInterface);
    }
    let discrete = fdtd_power(ic, wd)?;
    Ok(ErrorReport {
        delta_r: (discrete.reflection - exact.reflection).abs() / exact.reflection * 100.0,
        delta_t: (discrete.transmission - exact.transmission).abs() / exact.transmission * 100.0,
    })
}

/// Courant number of the standard simulation mode.
pub const STANDARD_COURANT: f64 = 1.0;

/// Courant number of the optimal simulation mode, `S_c = min(n_r1, n_r2)`.
/// The minimum keeps time stepping stable in both media.
pub fn optimal_courant(ic: &InterfaceCase) -> f64 {
    ic.min_refractive_index()
}

/// How much accuracy the optimal mode buys over the standard one at a given
/// resolution: `delta(S_c = 1) - delta(S_c = min(n_r))`, per coefficient, in
/// percentage points. Zero when `min(n_r) = 1` (the modes coincide).
pub fn compare_courant_modes(ic: &InterfaceCase, n_lambda: f64) -> Result<ModeComparison> {
    let standard = error_report(ic, &WaveDiscretization::new(n_lambda, STANDARD_COURANT)?)?;
    let optimal = error_report(ic, &WaveDiscretization::new(n_lambda, optimal_courant(ic))?)?;
    Ok(ModeComparison {
        delta_r_gain: standard.delta_r - optimal.delta_r,
        delta_t_gain: standard.delta_t - optimal.delta_t,
    })
}

/// Residuals of the two discrete continuity conditions with a candidate
/// `(r, t)` pair substituted in. For the closed-form coefficients both
/// vanish to rounding error; the imaginary parts cancel through the
/// dispersion relation, which is why the check is done in complex
/// arithmetic even though `r` and `t` are real.
///
/// Dielectric model (`Omega = (2/dt) sin(omega dt/2)`, `eta_0 = 1`,
/// `dx = 1`):
///
/// ```text
///     -1/eta1 + r/eta1 + t/eta2                                   = 0
///     e^{i k1~/2} + r e^{-i k1~/2} - (e^{-i k2~/2} + i Omega mu / eta2) t = 0
/// ```
///
/// Magnetic model:
///
/// ```text
///     1 + r - t                                                       = 0
///     e^{i k1~/2} - r e^{-i k1~/2} - eta1 (e^{-i k2~/2}/eta2 + i Omega eps) t = 0
/// ```
pub fn continuity_residuals(
    ic: &InterfaceCase,
    wd: &WaveDiscretization,
    pair: &FresnelPair,
) -> Result<(Complex64, Complex64)> {
    let (k1, k2) = half_wavenumbers(ic, wd)?;
    let eta1 = ic.medium1().impedance();
    let eta2 = ic.medium2().impedance();
    let omega = big_omega(wd, wd.time_step());
    let (r, t) = (pair.r, pair.t);

    let e_plus_1 = Complex64::from_polar(1.0, k1);
    let e_minus_1 = Complex64::from_polar(1.0, -k1);
    let e_minus_2 = Complex64::from_polar(1.0, -k2);

    let residuals = match ic.kind() {
        InterfaceKind::Dielectric => {
            let first = Complex64::new(-1.0 / eta1 + r / eta1 + t / eta2, 0.0);
            let mu = ic.medium1().mu_r();
            let second =
                e_plus_1 + e_minus_1 * r - (e_minus_2 + Complex64::new(0.0, omega * mu / eta2)) * t;
            (first, second)
        }
        InterfaceKind::Magnetic => {
            let first = Complex64::new(1.0 + r - t, 0.0);
            let eps = ic.medium1().epsilon_r();
            let second = e_plus_1
                - e_minus_1 * r
                - (e_minus_2 / eta2 + Complex64::new(0.0, omega * eps)) * eta1 * t;
            (first, second)
        }
    };
    Ok(residuals)
}
