//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building or evaluating a model.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Material parameters must be finite and strictly positive.
    #[error("invalid medium: eps_r = {epsilon_r}, mu_r = {mu_r} (both must be finite and > 0)")]
    InvalidMedium { epsilon_r: f64, mu_r: f64 },

    /// Discretization parameters outside their meaningful range.
    #[error("invalid discretization: {reason}")]
    InvalidDiscretization { reason: String },

    /// The dispersion relation has no real propagating solution: the sine
    /// argument (n_r/S_c)·sin(ωΔt/2) exceeds one. Reduce the Courant number
    /// or increase the points-per-wavelength.
    #[error(
        "evanescent regime: dispersion sine argument {sine_arg:.6} > 1 \
         (n_r = {n_r}, S_c = {courant}, N_lambda = {n_lambda})"
    )]
    EvanescentRegime {
        sine_arg: f64,
        n_r: f64,
        courant: f64,
        n_lambda: f64,
    },

    /// An interface-kind-specific operation received the other kind.
    #[error("interface kind mismatch: expected {expected}, got {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    /// Identical impedances give R = 0, so the relative reflection error
    /// delta_R is undefined.
    #[error("degenerate interface: R = 0 (identical impedances), delta_R is undefined")]
    DegenerateInterface,

    /// A simulation configuration violates one of its invariants.
    #[error("invalid simulation config: {0}")]
    Config(String),

    /// The stability watchdog tripped: some field value left the trusted range.
    #[error("fields diverged at step {step} (max |E| = {max_abs:.3e})")]
    DivergenceDetected { step: u64, max_abs: f64 },

    /// Successive measurement windows kept disagreeing after all retries.
    #[error(
        "phasor measurement did not settle after {attempts} attempt(s) \
         (last window-to-window drift {drift:.3e})"
    )]
    NotSettled { attempts: u32, drift: f64 },
}
