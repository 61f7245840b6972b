//! Material and discretization parameters.
//!
//! Everything downstream works in grid-natural units: the speed of light
//! `c = 1`, the free-space impedance `eta_0 = 1`, the spatial step
//! `dx = 1`, and hence the time step `dt = S_c`. Every quantity of interest
//! depends only on the dimensionless groups `k dx`, `omega dt`, `S_c`,
//! `n_r` and `eta_r`, so nothing is lost by fixing the units.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// A lossless, linear, isotropic medium described by its relative
/// permittivity and permeability. Both must be strictly positive
/// (right-handed media only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    epsilon_r: f64,
    mu_r: f64,
}

impl Medium {
    pub fn new(epsilon_r: f64, mu_r: f64) -> Result<Self> {
        if !(epsilon_r.is_finite() && mu_r.is_finite() && epsilon_r > 0.0 && mu_r > 0.0) {
            return Err(Error::InvalidMedium { epsilon_r, mu_r });
        }
        Ok(Self { epsilon_r, mu_r })
    }

    pub fn vacuum() -> Self {
        Self {
            epsilon_r: 1.0,
            mu_r: 1.0,
        }
    }

    pub fn epsilon_r(&self) -> f64 {
        self.epsilon_r
    }

    pub fn mu_r(&self) -> f64 {
        self.mu_r
    }

    /// Relative refractive index `n_r = sqrt(eps_r * mu_r)`.
    pub fn refractive_index(&self) -> f64 {
        (self.epsilon_r * self.mu_r).sqrt()
    }

    /// Relative wave impedance `eta_r = sqrt(mu_r / eps_r)`.
    pub fn impedance(&self) -> f64 {
        (self.mu_r / self.epsilon_r).sqrt()
    }
}

/// How finely the incident wave is resolved on the grid.
///
/// `n_lambda` counts grid nodes per *vacuum* wavelength (not necessarily an
/// integer) and `courant` is the Courant number `S_c = c dt / dx`. The drive
/// frequency follows from `omega dt / 2 = pi S_c / N_lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveDiscretization {
    n_lambda: f64,
    courant: f64,
}

impl WaveDiscretization {
    /// Requires `n_lambda > 2` (at two points per wavelength and below, a
    /// discrete wave carries no meaning) and `courant > 0`.
    pub fn new(n_lambda: f64, courant: f64) -> Result<Self> {
        if !(n_lambda.is_finite() && n_lambda > 2.0) {
            return Err(Error::InvalidDiscretization {
                reason: format!("n_lambda = {n_lambda} must be finite and > 2"),
            });
        }
        if !(courant.is_finite() && courant > 0.0) {
            return Err(Error::InvalidDiscretization {
                reason: format!("courant = {courant} must be finite and > 0"),
            });
        }
        Ok(Self { n_lambda, courant })
    }

    pub fn n_lambda(&self) -> f64 {
        self.n_lambda
    }

    pub fn courant(&self) -> f64 {
        self.courant
    }

    /// Half phase advance per time step, `omega dt / 2 = pi S_c / N_lambda`.
    pub fn half_omega_dt(&self) -> f64 {
        PI * self.courant / self.n_lambda
    }

    /// Time step in natural units (`dx = 1`, `c = 1`), i.e. `dt = S_c`.
    pub fn time_step(&self) -> f64 {
        self.courant
    }

    /// Drive angular frequency, `omega = 2 pi / N_lambda` in natural units.
    pub fn omega(&self) -> f64 {
        2.0 * self.half_omega_dt() / self.time_step()
    }
}

/// Which of the two staggered-grid interface models is meant.
///
/// * `Dielectric`: permittivity jumps at the grid interface, permeability is
///   shared by both media.
/// * `Magnetic`: permeability jumps, permittivity is shared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterfaceKind {
    Dielectric,
    Magnetic,
}

impl InterfaceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InterfaceKind::Dielectric => "dielectric",
            InterfaceKind::Magnetic => "magnetic",
        }
    }
}

/// A planar interface between two media, tagged with the staggered-grid
/// model it is realized by.
///
/// The constructors enforce the model constraint: a dielectric pair shares
/// `mu_r`, a magnetic pair shares `eps_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceCase {
    kind: InterfaceKind,
    medium1: Medium,
    medium2: Medium,
}

impl InterfaceCase {
    /// Two dielectrics with permittivities `eps1`, `eps2` and a common
    /// permeability `mu`.
    pub fn dielectric(eps1: f64, eps2: f64, mu: f64) -> Result<Self> {
        Ok(Self {
            kind: InterfaceKind::Dielectric,
            medium1: Medium::new(eps1, mu)?,
            medium2: Medium::new(eps2, mu)?,
        })
    }

    /// Two magnetics with permeabilities `mu1`, `mu2` and a common
    /// permittivity `eps`.
    pub fn magnetic(mu1: f64, mu2: f64, eps: f64) -> Result<Self> {
        Ok(Self {
            kind: InterfaceKind::Magnetic,
            medium1: Medium::new(eps, mu1)?,
            medium2: Medium::new(eps, mu2)?,
        })
    }

    /// Builds from explicit media, validating the shared-parameter constraint
    /// of the chosen model.
    pub fn from_media(kind: InterfaceKind, medium1: Medium, medium2: Medium) -> Result<Self> {
        let ok = match kind {
            InterfaceKind::Dielectric => medium1.mu_r() == medium2.mu_r(),
            InterfaceKind::Magnetic => medium1.epsilon_r() == medium2.epsilon_r(),
        };
        if !ok {
            return Err(Error::Config(format!(
                "{} interface requires a shared {} parameter",
                kind.as_str(),
                match kind {
                    InterfaceKind::Dielectric => "mu_r",
                    InterfaceKind::Magnetic => "eps_r",
                }
            )));
        }
        Ok(Self {
            kind,
            medium1,
            medium2,
        })
    }

    pub fn kind(&self) -> InterfaceKind {
        self.kind
    }

    pub fn medium1(&self) -> Medium {
        self.medium1
    }

    pub fn medium2(&self) -> Medium {
        self.medium2
    }

    /// Impedance ratio `eta_1 / eta_2`, the sole parameter of the exact
    /// normal-incidence coefficients.
    pub fn eta_ratio(&self) -> f64 {
        self.medium1.impedance() / self.medium2.impedance()
    }

    /// Smaller of the two refractive indices; the largest Courant number
    /// for which time stepping stays stable.
    pub fn min_refractive_index(&self) -> f64 {
        self.medium1
            .refractive_index()
            .min(self.medium2.refractive_index())
    }

    /// Same media in the opposite order.
    pub fn swapped(&self) -> Self {
        Self {
            kind: self.kind,
            medium1: self.medium2,
            medium2: self.medium1,
        }
    }

    /// True when both media are identical (no interface at all).
    pub fn is_degenerate(&self) -> bool {
        self.medium1 == self.medium2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn medium_rejects_nonpositive_parameters() {
        assert!(Medium::new(0.0, 1.0).is_err());
        assert!(Medium::new(1.0, -2.0).is_err());
        assert!(Medium::new(f64::NAN, 1.0).is_err());
        assert!(Medium::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn derived_quantities() {
        let m = Medium::new(4.0, 1.0).unwrap();
        assert_eq!(m.refractive_index(), 2.0);
        assert_eq!(m.impedance(), 0.5);
        let v = Medium::vacuum();
        assert_eq!(v.refractive_index(), 1.0);
        assert_eq!(v.impedance(), 1.0);
    }

    #[test]
    fn discretization_bounds() {
        assert!(WaveDiscretization::new(2.0, 1.0).is_err());
        assert!(WaveDiscretization::new(20.0, 0.0).is_err());
        let wd = WaveDiscretization::new(20.0, 1.0).unwrap();
        assert!((wd.half_omega_dt() - PI / 20.0).abs() < 1e-16);
        assert_eq!(wd.time_step(), 1.0);
    }

    #[test]
    fn interface_constructors_enforce_shared_parameter() {
        let ic = InterfaceCase::dielectric(3.0, 4.0, 2.0).unwrap();
        assert_eq!(ic.medium1().mu_r(), ic.medium2().mu_r());
        let ic = InterfaceCase::magnetic(4.0, 3.0, 2.0).unwrap();
        assert_eq!(ic.medium1().epsilon_r(), ic.medium2().epsilon_r());

        let m1 = Medium::new(3.0, 2.0).unwrap();
        let m2 = Medium::new(4.0, 5.0).unwrap();
        assert!(InterfaceCase::from_media(InterfaceKind::Dielectric, m1, m2).is_err());
    }

    #[test]
    fn eta_ratio_and_swap() {
        let ic = InterfaceCase::dielectric(3.0, 4.0, 2.0).unwrap();
        assert!((ic.eta_ratio() - (4.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let swapped = ic.swapped();
        assert!((swapped.eta_ratio() - (3.0f64 / 4.0).sqrt()).abs() < 1e-15);
        assert!(!ic.is_degenerate());
        assert!(InterfaceCase::dielectric(2.0, 2.0, 1.0)
            .unwrap()
            .is_degenerate());
    }
}
