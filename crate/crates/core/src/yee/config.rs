//! Simulation geometry, timing and validation.

use crate::dispersion::solve_k_tilde;
use crate::error::{Error, Result};
use crate::medium::{InterfaceCase, WaveDiscretization};

/// Incident wave amplitude. Fields scale linearly, so it stays fixed.
pub const FIELD_AMPLITUDE: f64 = 1.0;

/// Automatic warm-up doublings before a measurement is abandoned.
pub const MAX_SETTLE_ATTEMPTS: u32 = 3;

const DEFAULT_WARMUP_PERIODS: f64 = 8.0;
const DEFAULT_MEASURE_PERIODS: u32 = 10;
const DEFAULT_RAMP_PERIODS: f64 = 16.0;
const MAX_NODES: usize = 50_000_000;

/// Full description of one time-domain run.
///
/// Node indices must satisfy
/// `0 < probe_reflect < source_index < interface_index < probe_transmit < m_total - 1`.
/// [`SimConfig::auto`] picks geometry that additionally guarantees time
/// gating: with outer-end echoes bounded by one cell per step, no echo can
/// reach either probe before the run ends.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub interface: InterfaceCase,
    pub wd: WaveDiscretization,
    /// Number of E nodes, `M`.
    pub m_total: usize,
    /// Interface node `b`.
    pub interface_index: usize,
    /// Source node `s` (first total-field node).
    pub source_index: usize,
    /// Probe in the scattered-field region (reads the reflected wave).
    pub probe_reflect: usize,
    /// Probe in medium 2 (reads the transmitted wave).
    pub probe_transmit: usize,
    /// Settling time after the ramp has completed and the wavefront has
    /// reached the farthest probe, in drive periods.
    pub warmup_periods: f64,
    /// Length of each of the two measurement windows, in drive periods.
    pub measure_periods: u32,
    /// Turn-on taper length of the source, in drive periods.
    pub ramp_periods: f64,
    /// Disable the TFSF source (for externally initialized fields).
    pub drive_enabled: bool,
    /// Skip the Courant stability precondition; lets tests and sweeps watch
    /// the divergence watchdog fire.
    pub allow_unstable: bool,
    /// Whether `run_and_measure` may rebuild the grid with doubled warm-up
    /// when the measurement has not settled. Set by [`SimConfig::auto`];
    /// hand-built geometry is never silently replaced.
    pub replan_on_retry: bool,
}

/// Step counts derived from a config.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Timing {
    pub steps_per_period: f64,
    /// First sampled step; everything before is warm-up.
    pub warmup_end: u64,
    /// Length of one measurement window in steps.
    pub window_len: u64,
    /// Total steps: warm-up plus two successive windows.
    pub total_steps: u64,
}

impl SimConfig {
    /// Auto-sized configuration with default warm-up, measurement and ramp
    /// lengths. Fails if either medium is in the evanescent regime.
    pub fn auto(interface: InterfaceCase, wd: WaveDiscretization) -> Result<Self> {
        Self::auto_sized(
            interface,
            wd,
            DEFAULT_WARMUP_PERIODS,
            DEFAULT_MEASURE_PERIODS,
            DEFAULT_RAMP_PERIODS,
            0,
        )
    }

    /// [`SimConfig::auto`] with explicit period budgets (None keeps the
    /// default).
    pub fn auto_with(
        interface: InterfaceCase,
        wd: WaveDiscretization,
        warmup_periods: Option<f64>,
        measure_periods: Option<u32>,
        ramp_periods: Option<f64>,
    ) -> Result<Self> {
        Self::auto_sized(
            interface,
            wd,
            warmup_periods.unwrap_or(DEFAULT_WARMUP_PERIODS),
            measure_periods.unwrap_or(DEFAULT_MEASURE_PERIODS),
            ramp_periods.unwrap_or(DEFAULT_RAMP_PERIODS),
            0,
        )
    }

    /// Auto-sizing with explicit period budgets. `span_extra` widens the
    /// transmitted-side gap by that many nodes (used by the wavelength
    /// measurement, which probes a whole span instead of a single node).
    pub(crate) fn auto_sized(
        interface: InterfaceCase,
        wd: WaveDiscretization,
        warmup_periods: f64,
        measure_periods: u32,
        ramp_periods: f64,
        span_extra: usize,
    ) -> Result<Self> {
        // Planning needs real wavenumbers in both media.
        solve_k_tilde(&interface.medium1(), &wd)?;
        solve_k_tilde(&interface.medium2(), &wd)?;

        let n1 = interface.medium1().refractive_index();
        let n2 = interface.medium2().refractive_index();
        let sc = wd.courant();
        let steps_per_period = wd.n_lambda() / sc;

        // Medium wavelengths in cells set the probe distances: far enough
        // from the TFSF boundary and the interface that near-field residue
        // of the turn-on cannot contaminate the readings.
        let lambda1_cells = wd.n_lambda() / n1;
        let lambda2_cells = wd.n_lambda() / n2;
        let gap_probe_src = (lambda1_cells / 4.0).ceil().max(6.0) as usize;
        let gap_src_iface = (lambda1_cells / 2.0).ceil().max(8.0) as usize;
        let gap_iface_probe = (lambda2_cells / 2.0).ceil().max(6.0) as usize + span_extra;

        // Ballistic arrival of the wavefront at the farthest probe, in steps.
        let arrive_transmit = (gap_src_iface as f64 * n1 + gap_iface_probe as f64 * n2) / sc;
        let arrive_reflect = (2 * gap_src_iface + gap_probe_src) as f64 * n1 / sc;
        // warm-up is counted after the source has finished ramping
        let warmup_end = (arrive_transmit.max(arrive_reflect)
            + (ramp_periods + warmup_periods) * steps_per_period)
            .ceil() as u64
            + steps_per_period.ceil() as u64;

        let window_len = window_len(measure_periods, steps_per_period);
        let total_steps = warmup_end + 2 * window_len;

        // Gating buffers against the worst-case echo speed of one cell per
        // step. Left echo reaches node m no earlier than step s + m; right
        // echo reaches a probe no earlier than 2 (M-1) - s - probe.
        let guard = steps_per_period.ceil() as usize + 8;
        let horizon = total_steps as usize + guard;
        let source_index = (horizon + gap_probe_src).div_ceil(2) + 1;
        let probe_reflect = source_index - gap_probe_src;
        let interface_index = source_index + gap_src_iface;
        let probe_transmit = interface_index + gap_iface_probe;
        let m_total = (horizon + source_index + probe_transmit).div_ceil(2) + 2;

        let cfg = Self {
            interface,
            wd,
            m_total,
            interface_index,
            source_index,
            probe_reflect,
            probe_transmit,
            warmup_periods,
            measure_periods,
            ramp_periods,
            drive_enabled: true,
            allow_unstable: false,
            replan_on_retry: true,
        };
        cfg.validate_geometry()?;
        Ok(cfg)
    }

    pub(crate) fn timing(&self) -> Timing {
        let n1 = self.interface.medium1().refractive_index();
        let n2 = self.interface.medium2().refractive_index();
        let sc = self.wd.courant();
        let steps_per_period = self.wd.n_lambda() / sc;

        let b = self.interface_index;
        let s = self.source_index;
        let arrive_transmit = ((b - s) as f64 * n1 + (self.probe_transmit - b) as f64 * n2) / sc;
        let arrive_reflect = ((b - s) + (b - self.probe_reflect)) as f64 * n1 / sc;
        let warmup_end = (arrive_transmit.max(arrive_reflect)
            + (self.ramp_periods + self.warmup_periods) * steps_per_period)
            .ceil() as u64
            + steps_per_period.ceil() as u64;
        let window_len = window_len(self.measure_periods, steps_per_period);
        Timing {
            steps_per_period,
            warmup_end,
            window_len,
            total_steps: warmup_end + 2 * window_len,
        }
    }

    /// Checks every config invariant: node ordering, temporal resolution,
    /// stability bound and time gating.
    pub fn validate(&self) -> Result<()> {
        self.validate_geometry()?;

        if !self.allow_unstable {
            let min_n = self.interface.min_refractive_index();
            if self.wd.courant() > min_n {
                return Err(Error::Config(format!(
                    "courant {} exceeds min refractive index {min_n}: unstable time stepping",
                    self.wd.courant()
                )));
            }
        }

        if self.drive_enabled {
            let t = self.timing();
            let left_echo = (self.source_index + self.probe_reflect) as u64;
            let right_echo =
                (2 * (self.m_total - 1) - self.source_index - self.probe_transmit) as u64;
            if left_echo < t.total_steps || right_echo < t.total_steps {
                return Err(Error::Config(format!(
                    "time gating violated: {} total steps, but outer-end echoes return after \
                     {left_echo} (left) / {right_echo} (right) steps",
                    t.total_steps
                )));
            }
        }
        Ok(())
    }

    fn validate_geometry(&self) -> Result<()> {
        // below two time samples per drive period the sampled carrier
        // aliases and the whole measurement is meaningless
        let steps_per_period = self.wd.n_lambda() / self.wd.courant();
        if steps_per_period <= 2.0 {
            return Err(Error::Config(format!(
                "only {steps_per_period:.3} time samples per drive period; need more than 2 \
                 (n_lambda / courant)"
            )));
        }

        let ordered = 0 < self.probe_reflect
            && self.probe_reflect < self.source_index
            && self.source_index < self.interface_index
            && self.interface_index < self.probe_transmit
            && self.probe_transmit < self.m_total - 1;
        if !ordered {
            return Err(Error::Config(format!(
                "node ordering violated: need 0 < probe_reflect ({}) < source ({}) < interface \
                 ({}) < probe_transmit ({}) < m_total - 1 ({})",
                self.probe_reflect,
                self.source_index,
                self.interface_index,
                self.probe_transmit,
                self.m_total - 1
            )));
        }
        if self.m_total > MAX_NODES {
            return Err(Error::Config(format!(
                "grid of {} nodes exceeds the {MAX_NODES}-node cap",
                self.m_total
            )));
        }
        if !(self.warmup_periods >= 0.0 && self.ramp_periods >= 0.0 && self.measure_periods > 0) {
            return Err(Error::Config(
                "warmup/ramp periods must be nonnegative and measure_periods positive".into(),
            ));
        }
        Ok(())
    }
}

/// Window length in steps for a given period budget. Snaps to whole steps
/// exactly when the drive period is a whole number of steps; otherwise the
/// quadrature fit absorbs the fractional remainder.
fn window_len(periods: u32, steps_per_period: f64) -> u64 {
    let nominal = periods as f64 * steps_per_period;
    if (steps_per_period - steps_per_period.round()).abs() < 1e-9 {
        (periods as f64 * steps_per_period.round()) as u64
    } else {
        nominal.ceil() as u64
    }
}
