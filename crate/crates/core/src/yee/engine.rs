//! Field storage, material maps, the leapfrog update and the TFSF source.

use super::config::{SimConfig, FIELD_AMPLITUDE};
use crate::dispersion::solve_k_tilde;
use crate::error::{Error, Result};
use crate::medium::InterfaceKind;

const DIVERGENCE_LIMIT: f64 = 1e6 * FIELD_AMPLITUDE;

/// Physical position of the material interface in E-node coordinates: the
/// permittivity jump sits halfway between E nodes `b-1` and `b`, the
/// permeability jump at E node `b` itself. Coefficients referenced to this
/// point are real, matching the closed forms.
pub(crate) fn interface_position(kind: InterfaceKind, b: usize) -> f64 {
    match kind {
        InterfaceKind::Dielectric => b as f64 - 0.5,
        InterfaceKind::Magnetic => b as f64,
    }
}

/// Discrete electromagnetic state of one run.
///
/// `e[m]` is `E_z` at node `m` and time index `q`; `h[m]` is `H_y` half a
/// cell right of node `m`, half a step behind in time. `mu_of_m[p]` applies
/// to the H sample between `e[p-1]` and `e[p]`, i.e. to `h[p-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub e: Vec<f64>,
    pub h: Vec<f64>,
    pub q: u64,
    pub eps_of_m: Vec<f64>,
    pub mu_of_m: Vec<f64>,
    pub(crate) drive: Option<Drive>,
}

/// Tabulated incident wave for the two TFSF correction points.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Drive {
    source_index: usize,
    omega_dt: f64,
    /// Discrete wavenumber of medium 1 (full angle per cell), so the
    /// injected wave is dispersion-consistent and cancels exactly at steady
    /// state.
    k1_dx: f64,
    ramp_steps: f64,
    /// Envelope speed in cells per step: the group velocity of medium 1,
    /// which is what a modulated discrete wave packet actually travels at.
    envelope_speed: f64,
    /// Carrier phase reference: the physical interface position.
    phase_ref: f64,
    /// `S_c / mu` at the corrected H node.
    coeff_h: f64,
    /// `S_c / n_1` at the corrected E node.
    coeff_e: f64,
}

impl Drive {
    /// Incident `E_z` at fractional node `m_hat` and fractional time step
    /// `q_hat`: a taper-ramped sinusoid travelling towards +x.
    pub(crate) fn incident_e(&self, q_hat: f64, m_hat: f64) -> f64 {
        let delay = (m_hat - self.source_index as f64) / self.envelope_speed;
        let env = self.envelope(q_hat - delay);
        if env == 0.0 {
            return 0.0;
        }
        env * FIELD_AMPLITUDE
            * (self.omega_dt * q_hat - self.k1_dx * (m_hat - self.phase_ref)).cos()
    }

    /// Planck-taper turn-on: smooth to all orders at both ends, so the
    /// spectral content near a medium's band edge is vanishing. A plain
    /// raised cosine leaves slow near-cutoff residue that violates the
    /// scattered-field cleanliness bound; on strongly dispersive grids
    /// (drive close to the cutoff) only an exponentially clean taper lets
    /// the phasors settle.
    fn envelope(&self, u: f64) -> f64 {
        if u <= 0.0 {
            0.0
        } else if u >= self.ramp_steps {
            1.0
        } else {
            let x = u / self.ramp_steps;
            let z = 1.0 / x - 1.0 / (1.0 - x);
            1.0 / (1.0 + z.exp())
        }
    }
}

/// Builds the zero-initialized state for a config, laying out the material
/// maps of the selected interface model.
///
/// Dielectric model: `eps` jumps between E nodes `b-1` and `b`, `mu` is
/// uniform. Magnetic model: `mu` jumps between the H samples indexed `b`
/// and `b+1` (those flanking E node `b`), `eps` is uniform.
pub fn build(config: &SimConfig) -> Result<FieldState> {
    config.validate()?;

    let m = config.m_total;
    let b = config.interface_index;
    let ic = &config.interface;
    let (eps_of_m, mu_of_m): (Vec<f64>, Vec<f64>) = match ic.kind() {
        InterfaceKind::Dielectric => (
            (0..m)
                .map(|i| {
                    if i < b {
                        ic.medium1().epsilon_r()
                    } else {
                        ic.medium2().epsilon_r()
                    }
                })
                .collect(),
            vec![ic.medium1().mu_r(); m],
        ),
        InterfaceKind::Magnetic => (
            vec![ic.medium1().epsilon_r(); m],
            (0..m)
                .map(|i| {
                    if i <= b {
                        ic.medium1().mu_r()
                    } else {
                        ic.medium2().mu_r()
                    }
                })
                .collect(),
        ),
    };

    let drive = if config.drive_enabled {
        let s = config.source_index;
        let sc = config.wd.courant();
        let n1 = ic.medium1().refractive_index();
        let timing = config.timing();
        let half_k1 = solve_k_tilde(&ic.medium1(), &config.wd)?;
        let group_speed = sc / n1 * half_k1.cos() / config.wd.half_omega_dt().cos();
        Some(Drive {
            source_index: s,
            omega_dt: 2.0 * config.wd.half_omega_dt(),
            k1_dx: 2.0 * half_k1,
            ramp_steps: config.ramp_periods * timing.steps_per_period,
            envelope_speed: group_speed,
            phase_ref: interface_position(ic.kind(), b),
            coeff_h: sc / mu_of_m[s],
            coeff_e: sc / n1,
        })
    } else {
        None
    };

    Ok(FieldState {
        e: vec![0.0; m],
        h: vec![0.0; m],
        q: 0,
        eps_of_m,
        mu_of_m,
        drive,
    })
}

/// Advances the state by one full time step: H from E (Faraday), then E
/// from H (Ampere), with the TFSF corrections at the source boundary.
///
/// The outermost E nodes are never updated; they act as perfect reflectors,
/// which time gating renders invisible to the probes.
pub fn step(state: &mut FieldState, config: &SimConfig) -> Result<()> {
    let m = config.m_total;
    let sc = config.wd.courant();
    let s = config.source_index;
    let q = state.q as f64;

    // h[s-1] is scattered-field but its update reads the total-field e[s]:
    // remove the incident part. e[s] is total-field but its update reads the
    // scattered-field h[s-1]: add the incident magnetic contribution.
    let h_corr = state
        .drive
        .as_ref()
        .map(|d| d.coeff_h * d.incident_e(q, s as f64));
    let e_corr = state
        .drive
        .as_ref()
        .map(|d| d.coeff_e * d.incident_e(q + 0.5, s as f64 - 0.5));

    for j in 0..m - 1 {
        state.h[j] += sc / state.mu_of_m[j + 1] * (state.e[j + 1] - state.e[j]);
    }
    if let Some(corr) = h_corr {
        state.h[s - 1] -= corr;
    }

    for j in 1..m - 1 {
        state.e[j] += sc / state.eps_of_m[j] * (state.h[j] - state.h[j - 1]);
    }
    if let Some(corr) = e_corr {
        state.e[s] += corr;
    }

    state.q += 1;

    if state
        .e
        .iter()
        .any(|v| v.is_nan() || v.abs() > DIVERGENCE_LIMIT)
    {
        let max_abs = state.e.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        return Err(Error::DivergenceDetected {
            step: state.q,
            max_abs,
        });
    }
    Ok(())
}
