//! Parameter sweeps over resolution and material parameters, producing the
//! coefficient/error curves as tabular data.
//!
//! Points are evaluated independently (in parallel) and assembled in axis
//! order, so parallel and sequential runs emit identical output. A point
//! that cannot be evaluated (evanescent regime, diverged or unsettled
//! simulation) is recorded in its `status` column instead of aborting the
//! sweep; the exact continuum columns are always present.

use crate::error::{Error, Result};
use crate::fresnel::{
    compare_courant_modes, error_report, exact_fresnel, exact_power, fdtd_fresnel, fdtd_power,
    optimal_courant, ErrorReport, FresnelPair, ModeComparison, PowerPair, STANDARD_COURANT,
};
use crate::medium::{InterfaceCase, InterfaceKind, WaveDiscretization};
use crate::yee::{run_and_measure, MeasuredFresnel, SimConfig};
use rayon::prelude::*;
use std::io::{self, Write};

/// Which quantity the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Points per vacuum wavelength.
    NLambda,
    /// Shared permeability of a dielectric pair.
    SharedMu,
    /// Shared permittivity of a magnetic pair.
    SharedEps,
}

/// Courant-number policy for the discrete columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CourantMode {
    /// `S_c = 1`.
    Standard,
    /// `S_c = min(n_r1, n_r2)`.
    Optimal,
    /// Standard columns plus the standard-minus-optimal error gains.
    Both,
}

/// Per-point evaluation outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Evanescent,
    Diverged,
    NotSettled,
}

impl RowStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Evanescent => "evanescent",
            RowStatus::Diverged => "diverged",
            RowStatus::NotSettled => "not_settled",
        }
    }
}

/// A sweep definition: interface template, axis, values and evaluation
/// options.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub interface: InterfaceCase,
    pub axis: SweepAxis,
    /// Strictly increasing axis values.
    pub axis_values: Vec<f64>,
    pub courant_mode: CourantMode,
    /// Also run the time-domain simulator per point and record its
    /// measurement next to the closed form.
    pub with_simulation: bool,
    /// Resolution used when the axis varies a material parameter. Ignored
    /// for [`SweepAxis::NLambda`].
    pub base_n_lambda: Option<f64>,
}

/// Simulations are skipped beyond this resolution; grid length and step
/// count both grow with `N_lambda` and the closed-form columns carry the
/// same information.
pub const SIMULATION_N_LAMBDA_CAP: f64 = 200.0;

/// Agreement required between a simulated point and its closed form.
pub const SIMULATION_MATCH_TOL: f64 = 1e-5;

/// One evaluated sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub status: RowStatus,
    pub exact: FresnelPair,
    pub exact_power: PowerPair,
    pub discrete: Option<FresnelPair>,
    pub discrete_power: Option<PowerPair>,
    /// Relative errors in percent; absent for degenerate interfaces.
    pub errors: Option<ErrorReport>,
    /// Standard-minus-optimal error gains; populated for
    /// [`CourantMode::Both`].
    pub mode_gains: Option<ModeComparison>,
    pub measured: Option<MeasuredFresnel>,
    pub note: String,
}

/// Evaluates every axis point. Fails upfront on an invalid spec; per-point
/// physics failures land in the rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    validate_spec(spec)?;
    let rows: Vec<SweepRow> = spec
        .axis_values
        .par_iter()
        .map(|&value| eval_point(spec, value))
        .collect::<Result<Vec<_>>>()?;
    Ok(rows)
}

fn validate_spec(spec: &SweepSpec) -> Result<()> {
    if spec.axis_values.is_empty() {
        return Err(Error::Config("sweep has no axis values".into()));
    }
    if !spec.axis_values.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Config(
            "axis values must be strictly increasing".into(),
        ));
    }
    match spec.axis {
        SweepAxis::NLambda => {
            if spec.axis_values[0] <= 2.0 {
                return Err(Error::Config("N_lambda values must exceed 2".into()));
            }
        }
        SweepAxis::SharedMu => {
            if spec.interface.kind() != InterfaceKind::Dielectric {
                return Err(Error::Config(
                    "SharedMu axis requires a dielectric interface".into(),
                ));
            }
            material_axis_checks(spec)?;
        }
        SweepAxis::SharedEps => {
            if spec.interface.kind() != InterfaceKind::Magnetic {
                return Err(Error::Config(
                    "SharedEps axis requires a magnetic interface".into(),
                ));
            }
            material_axis_checks(spec)?;
        }
    }
    Ok(())
}

fn material_axis_checks(spec: &SweepSpec) -> Result<()> {
    if spec.axis_values[0] <= 0.0 {
        return Err(Error::Config("material values must be positive".into()));
    }
    match spec.base_n_lambda {
        Some(n) if n > 2.0 => Ok(()),
        _ => Err(Error::Config(
            "material-axis sweeps need base_n_lambda > 2".into(),
        )),
    }
}

fn point_interface(spec: &SweepSpec, value: f64) -> Result<(InterfaceCase, f64)> {
    let ic = &spec.interface;
    Ok(match spec.axis {
        SweepAxis::NLambda => (*ic, value),
        SweepAxis::SharedMu => (
            InterfaceCase::dielectric(ic.medium1().epsilon_r(), ic.medium2().epsilon_r(), value)?,
            spec.base_n_lambda.unwrap(),
        ),
        SweepAxis::SharedEps => (
            InterfaceCase::magnetic(ic.medium1().mu_r(), ic.medium2().mu_r(), value)?,
            spec.base_n_lambda.unwrap(),
        ),
    })
}

fn eval_point(spec: &SweepSpec, value: f64) -> Result<SweepRow> {
    let (ic, n_lambda) = point_interface(spec, value)?;
    let courant = match spec.courant_mode {
        CourantMode::Standard | CourantMode::Both => STANDARD_COURANT,
        CourantMode::Optimal => optimal_courant(&ic),
    };
    let wd = WaveDiscretization::new(n_lambda, courant)?;

    let mut row = SweepRow {
        axis_value: value,
        status: RowStatus::Ok,
        exact: exact_fresnel(&ic),
        exact_power: exact_power(&ic),
        discrete: None,
        discrete_power: None,
        errors: None,
        mode_gains: None,
        measured: None,
        note: String::new(),
    };

    let discrete = match fdtd_fresnel(&ic, &wd) {
        Ok(pair) => pair,
        Err(Error::EvanescentRegime { .. }) => {
            row.status = RowStatus::Evanescent;
            return Ok(row);
        }
        Err(e) => return Err(e),
    };
    row.discrete = Some(discrete);
    row.discrete_power = Some(fdtd_power(&ic, &wd)?);
    row.errors = match error_report(&ic, &wd) {
        Ok(rep) => Some(rep),
        Err(Error::DegenerateInterface) => None,
        Err(e) => return Err(e),
    };

    if spec.courant_mode == CourantMode::Both && !ic.is_degenerate() {
        match compare_courant_modes(&ic, n_lambda) {
            Ok(gains) => {
                if ic.min_refractive_index() > 1.0
                    && (gains.delta_r_gain < 0.0 || gains.delta_t_gain < 0.0)
                {
                    row.note = "mode_dominance_violated".into();
                }
                row.mode_gains = Some(gains);
            }
            Err(Error::EvanescentRegime { .. }) => {
                row.note = "optimal_mode_evanescent".into();
            }
            Err(e) => return Err(e),
        }
    }

    if spec.with_simulation && n_lambda <= SIMULATION_N_LAMBDA_CAP {
        row = simulate_point(row, &ic, &wd, &discrete)?;
    }
    Ok(row)
}

fn simulate_point(
    mut row: SweepRow,
    ic: &InterfaceCase,
    wd: &WaveDiscretization,
    discrete: &FresnelPair,
) -> Result<SweepRow> {
    let mut cfg = SimConfig::auto(*ic, *wd)?;
    // An over-limit Courant number is a legitimate sweep point whose result
    // IS the divergence. Let the watchdog report it.
    cfg.allow_unstable = true;
    match run_and_measure(&cfg) {
        Ok(measured) => {
            assert!(
                (measured.r - discrete.r).abs() <= SIMULATION_MATCH_TOL
                    && (measured.t - discrete.t).abs() <= SIMULATION_MATCH_TOL,
                "simulation disagrees with the closed form: ({}, {}) vs ({}, {})",
                measured.r,
                measured.t,
                discrete.r,
                discrete.t
            );
            row.measured = Some(measured);
        }
        Err(Error::DivergenceDetected { .. }) => row.status = RowStatus::Diverged,
        Err(Error::NotSettled { .. }) => row.status = RowStatus::NotSettled,
        Err(e) => return Err(e),
    }
    Ok(row)
}

/// In the weak-contrast regime the reflection error always dominates.
/// Returns true when `delta_R > delta_T` on every row that carries error
/// data; rows without (degenerate or failed) are skipped.
pub fn weak_contrast_ordering_check(rows: &[SweepRow]) -> bool {
    rows.iter()
        .filter_map(|row| row.errors.as_ref())
        .all(|e| e.delta_r > e.delta_t)
}

/// CSV column order. Every [`SweepRow`] field appears; optional cells are
/// left empty when unpopulated.
pub const CSV_HEADER: &str = "axis_value,status,r,t,R,T,r_fdtd,t_fdtd,R_fdtd,T_fdtd,\
delta_R,delta_T,Delta_R,Delta_T,r_meas,t_meas,r_residual,t_residual,note";

/// Writes rows as CSV (UTF-8, `.` decimal separator, 17 significant digits
/// so every value round-trips exactly).
pub fn write_csv<W: Write>(rows: &[SweepRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", csv_line(row))?;
    }
    Ok(())
}

fn csv_line(row: &SweepRow) -> String {
    let cell = |v: Option<f64>| v.map(fmt_g17).unwrap_or_default();
    let fields = [
        fmt_g17(row.axis_value),
        row.status.as_str().to_string(),
        fmt_g17(row.exact.r),
        fmt_g17(row.exact.t),
        fmt_g17(row.exact_power.reflection),
        fmt_g17(row.exact_power.transmission),
        cell(row.discrete.map(|p| p.r)),
        cell(row.discrete.map(|p| p.t)),
        cell(row.discrete_power.map(|p| p.reflection)),
        cell(row.discrete_power.map(|p| p.transmission)),
        cell(row.errors.map(|e| e.delta_r)),
        cell(row.errors.map(|e| e.delta_t)),
        cell(row.mode_gains.map(|g| g.delta_r_gain)),
        cell(row.mode_gains.map(|g| g.delta_t_gain)),
        cell(row.measured.map(|m| m.r)),
        cell(row.measured.map(|m| m.t)),
        cell(row.measured.map(|m| m.r_residual)),
        cell(row.measured.map(|m| m.t_residual)),
        row.note.clone(),
    ];
    fields.join(",")
}

/// 17 significant digits: enough to reconstruct the exact f64.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n_lambda_values(lo: f64, hi: f64, step: f64) -> Vec<f64> {
        let mut v = Vec::new();
        let mut x = lo;
        while x <= hi + 1e-9 {
            v.push(x);
            x += step;
        }
        v
    }

    fn weak_sweep(courant_mode: CourantMode) -> SweepSpec {
        SweepSpec {
            interface: InterfaceCase::dielectric(3.0, 4.0, 2.0).unwrap(),
            axis: SweepAxis::NLambda,
            axis_values: n_lambda_values(10.0, 40.0, 1.0),
            courant_mode,
            with_simulation: false,
            base_n_lambda: None,
        }
    }

    #[test]
    fn spec_validation() {
        let mut spec = weak_sweep(CourantMode::Standard);
        spec.axis_values = vec![20.0, 20.0];
        assert!(run_sweep(&spec).is_err());

        let mut spec = weak_sweep(CourantMode::Standard);
        spec.axis = SweepAxis::SharedEps; // wrong kind
        spec.base_n_lambda = Some(20.0);
        assert!(run_sweep(&spec).is_err());

        let mut spec = weak_sweep(CourantMode::Standard);
        spec.axis = SweepAxis::SharedMu; // missing base resolution
        assert!(run_sweep(&spec).is_err());
    }

    #[test]
    fn reflection_curve_approaches_exact_from_below() {
        // eta1 > eta2: discrete r sits below the exact value and rises
        // towards it with resolution
        let rows = run_sweep(&weak_sweep(CourantMode::Standard)).unwrap();
        let exact_r = rows[0].exact.r;
        assert!((exact_r - -0.0718).abs() < 1e-3);
        let mut prev = f64::NEG_INFINITY;
        for row in &rows {
            let r = row.discrete.unwrap().r;
            assert!(r < exact_r);
            assert!(r > prev, "r~ must increase with N_lambda");
            prev = r;
        }
        let last = rows.last().unwrap().discrete.unwrap().r;
        assert!((last - exact_r).abs() < 4e-3);
    }

    #[test]
    fn errors_decrease_monotonically_and_order_correctly() {
        for courant_mode in [CourantMode::Standard, CourantMode::Optimal] {
            let rows = run_sweep(&weak_sweep(courant_mode)).unwrap();
            let mut prev_r = f64::INFINITY;
            let mut prev_t = f64::INFINITY;
            for row in &rows {
                let e = row.errors.as_ref().unwrap();
                assert!(e.delta_r < prev_r && e.delta_t < prev_t);
                prev_r = e.delta_r;
                prev_t = e.delta_t;
            }
            assert!(weak_contrast_ordering_check(&rows));
        }
    }

    #[test]
    fn row_level_power_consistency() {
        let rows = run_sweep(&weak_sweep(CourantMode::Standard)).unwrap();
        for row in &rows {
            let pair = row.discrete.unwrap();
            let power = row.discrete_power.unwrap();
            assert!((power.reflection - pair.r * pair.r).abs() < 1e-14);
            let eta_ratio = (2.0 - row.exact.t) / row.exact.t; // eta1/eta2 from t
            assert!((power.transmission - eta_ratio * pair.t * pair.t).abs() < 1e-13);
        }
    }

    #[test]
    fn mu_axis_raises_errors() {
        // fixed eps = (1,4): larger shared mu means larger errors at fixed
        // resolution
        let spec = SweepSpec {
            interface: InterfaceCase::dielectric(1.0, 4.0, 1.0).unwrap(),
            axis: SweepAxis::SharedMu,
            axis_values: vec![1.0, 2.0, 4.0, 16.0],
            courant_mode: CourantMode::Standard,
            with_simulation: false,
            base_n_lambda: Some(40.0),
        };
        let rows = run_sweep(&spec).unwrap();
        let mut prev_r = 0.0;
        let mut prev_t = 0.0;
        for row in &rows {
            let e = row.errors.as_ref().unwrap();
            assert!(e.delta_r > prev_r && e.delta_t > prev_t);
            prev_r = e.delta_r;
            prev_t = e.delta_t;
        }
    }

    #[test]
    fn evanescent_points_are_recorded_not_fatal() {
        let spec = SweepSpec {
            interface: InterfaceCase::dielectric(1.0, 100.0, 2.0).unwrap(),
            axis: SweepAxis::NLambda,
            axis_values: vec![20.0, 30.0, 60.0, 100.0],
            courant_mode: CourantMode::Standard,
            with_simulation: false,
            base_n_lambda: None,
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows[0].status, RowStatus::Evanescent);
        assert_eq!(rows[1].status, RowStatus::Evanescent);
        assert!(rows[0].discrete.is_none());
        assert_eq!(rows[2].status, RowStatus::Ok);
        assert_eq!(rows[3].status, RowStatus::Ok);
    }

    #[test]
    fn both_mode_populates_nonnegative_gains() {
        let spec = SweepSpec {
            interface: InterfaceCase::dielectric(1.0, 4.0, 16.0).unwrap(),
            axis: SweepAxis::NLambda,
            axis_values: n_lambda_values(30.0, 70.0, 5.0),
            courant_mode: CourantMode::Both,
            with_simulation: false,
            base_n_lambda: None,
        };
        let rows = run_sweep(&spec).unwrap();
        for row in &rows {
            let g = row.mode_gains.expect("gains populated in Both mode");
            assert!(g.delta_r_gain >= 0.0 && g.delta_t_gain >= 0.0);
            assert!(row.note.is_empty());
        }
    }

    #[test]
    fn simulation_columns_populate_and_match() {
        let spec = SweepSpec {
            interface: InterfaceCase::dielectric(3.0, 4.0, 2.0).unwrap(),
            axis: SweepAxis::NLambda,
            axis_values: vec![15.0, 20.0],
            courant_mode: CourantMode::Standard,
            with_simulation: true,
            base_n_lambda: None,
        };
        let rows = run_sweep(&spec).unwrap();
        for row in &rows {
            let m = row.measured.expect("simulated");
            let d = row.discrete.unwrap();
            assert!((m.r - d.r).abs() <= SIMULATION_MATCH_TOL);
            assert!(m.r_residual < 1e-6);
        }
    }

    #[test]
    fn unstable_simulation_point_is_marked_diverged() {
        // standard mode with min(n_r) < 1 cannot run; the row records it
        let spec = SweepSpec {
            interface: InterfaceCase::dielectric(0.25, 4.0, 1.0).unwrap(),
            axis: SweepAxis::NLambda,
            axis_values: vec![40.0],
            courant_mode: CourantMode::Standard,
            with_simulation: true,
            base_n_lambda: None,
        };
        let rows = run_sweep(&spec).unwrap();
        assert_eq!(rows[0].status, RowStatus::Diverged);
        assert!(rows[0].discrete.is_some());
        assert!(rows[0].measured.is_none());
    }

    #[test]
    fn weak_contrast_ordering_has_a_high_contrast_exception() {
        // with the dense medium first, the transmission error overtakes the
        // reflection error
        let spec = SweepSpec {
            interface: InterfaceCase::dielectric(100.0, 1.0, 2.0).unwrap(),
            axis: SweepAxis::NLambda,
            axis_values: vec![60.0, 100.0, 150.0],
            courant_mode: CourantMode::Standard,
            with_simulation: false,
            base_n_lambda: None,
        };
        let rows = run_sweep(&spec).unwrap();
        assert!(!weak_contrast_ordering_check(&rows));

        // degenerate rows carry no error data and are skipped vacuously
        let spec = SweepSpec {
            interface: InterfaceCase::dielectric(2.0, 2.0, 1.0).unwrap(),
            axis: SweepAxis::NLambda,
            axis_values: vec![20.0, 40.0],
            courant_mode: CourantMode::Standard,
            with_simulation: false,
            base_n_lambda: None,
        };
        let rows = run_sweep(&spec).unwrap();
        assert!(rows.iter().all(|r| r.errors.is_none()));
        assert!(weak_contrast_ordering_check(&rows));
    }

    #[test]
    fn parallel_output_is_deterministic() {
        let spec = weak_sweep(CourantMode::Both);
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_layout_roundtrips() {
        let rows = run_sweep(&weak_sweep(CourantMode::Standard)).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), CSV_HEADER.split(',').count());
        assert_eq!(first[1], "ok");
        // 17-digit cells parse back to the exact value
        let r_fdtd: f64 = first[6].parse().unwrap();
        assert_eq!(r_fdtd, rows[0].discrete.unwrap().r);
        // unpopulated optionals are empty cells
        assert_eq!(first[12], "");
        assert_eq!(first[14], "");
    }
}
