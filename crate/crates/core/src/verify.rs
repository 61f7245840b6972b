//! The cross-validation suite: every closed form checked against an
//! independent route, every simulator measurement checked against a closed
//! form. The `acceptance` integration test and the CLI `verify` subcommand
//! both run exactly these checks.

use crate::dispersion::solve_k_tilde;
use crate::error::Error;
use crate::fresnel::{
    compare_courant_modes, error_report, exact_fresnel, exact_power, fdtd_fresnel, fdtd_power,
    optimal_courant, STANDARD_COURANT,
};
use crate::medium::{InterfaceCase, InterfaceKind, Medium, WaveDiscretization};
use crate::sweep::{run_sweep, CourantMode, SweepAxis, SweepSpec};
use crate::yee::{
    build, measure_wavelength, run_and_measure, run_and_measure_observed, step, SimConfig,
    FIELD_AMPLITUDE,
};
use rayon::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

/// Result of one named check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type CheckFn = fn() -> Result<String, String>;

/// All checks in execution order: `(name, what it validates, runner)`.
pub fn checks() -> Vec<(&'static str, &'static str, CheckFn)> {
    vec![
        (
            "exact-theory",
            "continuum Fresnel values and R + T = 1 over random interfaces",
            check_exact_theory,
        ),
        (
            "convergence",
            "discrete coefficients converge to the exact ones at second order",
            check_convergence,
        ),
        (
            "simulation-crosscheck",
            "time-domain measurements reproduce the closed forms on the full grid",
            check_simulation_crosscheck,
        ),
        (
            "sign-laws",
            "systematic deviation directions of r~, R~, T~",
            check_sign_laws,
        ),
        (
            "figure-spot-values",
            "published error magnitudes and symmetries at spot parameters",
            check_figure_spot_values,
        ),
        (
            "dispersion",
            "measured wavelengths match the dispersion relation; magic Courant advection",
            check_dispersion,
        ),
        (
            "tfsf-cleanliness",
            "scattered-region leakage bound and the divergence watchdog",
            check_tfsf_cleanliness,
        ),
        (
            "high-contrast",
            "R~ > T~ and the error-ordering exception at a 10x impedance step",
            check_high_contrast,
        ),
    ]
}

/// Runs every check whose name passes the filter, timing each one.
pub fn run_all(filter: Option<&str>) -> Vec<CheckOutcome> {
    checks()
        .into_iter()
        .filter(|(name, _, _)| filter.is_none_or(|f| *name == f))
        .map(|(name, _, run)| {
            let start = Instant::now();
            let result = run();
            let seconds = start.elapsed().as_secs_f64();
            match result {
                Ok(detail) => CheckOutcome {
                    name,
                    passed: true,
                    detail,
                    seconds,
                },
                Err(detail) => CheckOutcome {
                    name,
                    passed: false,
                    detail,
                    seconds,
                },
            }
        })
        .collect()
}

/// xorshift64*: deterministic, dependency-free uniform sampler for the
/// randomized conservation checks.
struct Rng(u64);

impl Rng {
    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in [0, 1).
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Log-uniform in [lo, hi].
    fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (lo.ln() + self.next_f64() * (hi.ln() - lo.ln())).exp()
    }
}

fn check_exact_theory() -> Result<String, String> {
    let strong = InterfaceCase::dielectric(3.0, 4.0, 2.0).map_err(|e| e.to_string())?;
    let f = exact_fresnel(&strong);
    if (f.r - -0.07).abs() > 0.005 || (f.t - 0.93).abs() > 0.005 {
        return Err(format!("eta ratio sqrt(4/3): got r = {}, t = {}", f.r, f.t));
    }
    let f = exact_fresnel(&strong.swapped());
    if (f.r - 0.07).abs() > 0.005 || (f.t - 1.07).abs() > 0.005 {
        return Err(format!("eta ratio sqrt(3/4): got r = {}, t = {}", f.r, f.t));
    }

    let mut rng = Rng(0x5EED_1234_ABCD_0001);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let a = rng.log_uniform(1e-2, 1e2);
        let b = rng.log_uniform(1e-2, 1e2);
        let shared = rng.log_uniform(1e-1, 1e1);
        let ic = if i % 2 == 0 {
            InterfaceCase::dielectric(a, b, shared)
        } else {
            InterfaceCase::magnetic(a, b, shared)
        }
        .map_err(|e| e.to_string())?;
        let p = exact_power(&ic);
        worst = worst.max((p.reflection + p.transmission - 1.0).abs());
    }
    if worst > 1e-12 {
        return Err(format!("R + T deviates from 1 by {worst:.3e}"));
    }
    Ok(format!(
        "quoted coefficients reproduced; max |R+T-1| = {worst:.2e} over 1000 interfaces"
    ))
}

fn check_convergence() -> Result<String, String> {
    let mut rng = Rng(0xC0FF_EE00_0000_0001);
    let mut worst_limit = 0.0f64;
    let mut ratios: Vec<f64> = Vec::new();
    for i in 0..20 {
        // moderate indices keep every sample propagating at N = 40
        let base = rng.log_uniform(0.5, 2.0);
        let factor = 1.3 + 1.7 * rng.next_f64();
        let shared = rng.log_uniform(0.5, 2.0);
        let ic = if i % 2 == 0 {
            InterfaceCase::dielectric(base, base * factor, shared)
        } else {
            InterfaceCase::magnetic(base, base * factor, shared)
        }
        .map_err(|e| e.to_string())?;

        let exact = exact_fresnel(&ic);
        let fine = WaveDiscretization::new(1e6, 1.0).map_err(|e| e.to_string())?;
        let pair = fdtd_fresnel(&ic, &fine).map_err(|e| e.to_string())?;
        worst_limit = worst_limit
            .max((pair.r - exact.r).abs())
            .max((pair.t - exact.t).abs());

        let mut errs = [0.0f64; 2];
        for (slot, n_lambda) in [(0usize, 40.0), (1usize, 80.0)] {
            let wd = WaveDiscretization::new(n_lambda, 1.0).map_err(|e| e.to_string())?;
            let p = fdtd_fresnel(&ic, &wd).map_err(|e| e.to_string())?;
            errs[slot] = (p.r - exact.r).abs();
        }
        ratios.push(errs[0] / errs[1]);
    }
    if worst_limit > 1e-9 {
        return Err(format!(
            "residual {worst_limit:.3e} at N = 1e6 exceeds 1e-9"
        ));
    }
    if let Some(bad) = ratios.iter().find(|r| !(3.5..=4.5).contains(*r)) {
        return Err(format!(
            "decay ratio {bad} between N = 40 and 80 outside [3.5, 4.5]"
        ));
    }
    Ok(format!(
        "max |coeff - exact| = {worst_limit:.2e} at N = 1e6; decay ratios within [3.5, 4.5]"
    ))
}

/// The simulation grid: both interface kinds at four impedance ratios,
/// three resolutions, standard and optimal Courant numbers. The ratio-10
/// realizations keep min(n_r) = 1 so the standard mode stays stable; their
/// N = 20 points have under two nodes per medium-2 wavelength and are
/// necessarily evanescent — the check verifies they are *detected*, not
/// silently run.
fn crosscheck_grid() -> Vec<(InterfaceCase, f64, f64)> {
    let interfaces = [
        InterfaceCase::dielectric(3.0, 4.0, 2.0).unwrap(), // eta ratio 1.16
        InterfaceCase::dielectric(4.0, 3.0, 2.0).unwrap(), // eta ratio 0.87
        InterfaceCase::dielectric(1.0, 4.0, 2.0).unwrap(), // eta ratio 2
        InterfaceCase::dielectric(1.0, 100.0, 1.0).unwrap(), // eta ratio 10
        InterfaceCase::magnetic(4.0, 3.0, 2.0).unwrap(),
        InterfaceCase::magnetic(3.0, 4.0, 2.0).unwrap(),
        InterfaceCase::magnetic(4.0, 1.0, 2.0).unwrap(),
        InterfaceCase::magnetic(100.0, 1.0, 1.0).unwrap(),
    ];
    let mut grid = Vec::new();
    for ic in interfaces {
        for n_lambda in [20.0, 40.0, 80.0] {
            for courant in [STANDARD_COURANT, optimal_courant(&ic)] {
                grid.push((ic, n_lambda, courant));
            }
        }
    }
    grid
}

fn check_simulation_crosscheck() -> Result<String, String> {
    let grid = crosscheck_grid();
    let results: Vec<Result<bool, String>> = grid
        .par_iter()
        .map(|&(ic, n_lambda, courant)| {
            let wd = WaveDiscretization::new(n_lambda, courant).map_err(|e| e.to_string())?;
            match fdtd_fresnel(&ic, &wd) {
                Ok(closed) => {
                    let cfg = SimConfig::auto(ic, wd).map_err(|e| {
                        format!("{ic:?} N={n_lambda} Sc={courant}: config failed: {e}")
                    })?;
                    let m = run_and_measure(&cfg).map_err(|e| {
                        format!("{ic:?} N={n_lambda} Sc={courant}: run failed: {e}")
                    })?;
                    let (dr, dt) = ((m.r - closed.r).abs(), (m.t - closed.t).abs());
                    if dr > 1e-5 || dt > 1e-5 {
                        return Err(format!(
                            "{ic:?} N={n_lambda} Sc={courant}: |dr| = {dr:.2e}, |dt| = {dt:.2e}"
                        ));
                    }
                    Ok(true)
                }
                Err(Error::EvanescentRegime { .. }) => {
                    // the simulator must refuse the same points the algebra does
                    match SimConfig::auto(ic, wd) {
                        Err(Error::EvanescentRegime { .. }) => Ok(false),
                        other => Err(format!(
                            "{ic:?} N={n_lambda} Sc={courant}: expected evanescent rejection, \
                             got {other:?}"
                        )),
                    }
                }
                Err(e) => Err(e.to_string()),
            }
        })
        .collect();

    let mut ran = 0;
    let mut skipped = 0;
    for r in results {
        match r? {
            true => ran += 1,
            false => skipped += 1,
        }
    }
    if ran != 44 || skipped != 4 {
        return Err(format!(
            "expected 44 runnable + 4 evanescent points, got {ran} + {skipped}"
        ));
    }
    Ok(format!(
        "{ran} runs matched closed forms to 1e-5; {skipped} evanescent points correctly rejected"
    ))
}

fn check_sign_laws() -> Result<String, String> {
    let mut checked = 0;
    for (ic, n_lambda, courant) in crosscheck_grid() {
        let wd = WaveDiscretization::new(n_lambda, courant).map_err(|e| e.to_string())?;
        let discrete = match fdtd_fresnel(&ic, &wd) {
            Ok(p) => p,
            Err(Error::EvanescentRegime { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let exact = exact_fresnel(&ic);
        let tag = format!(
            "{} eta-ratio {:.3} N={n_lambda} Sc={courant:.3}",
            ic.kind().as_str(),
            ic.eta_ratio()
        );

        // reflection amplitude: under- or overestimated by the eta ordering
        let r_ok = if ic.eta_ratio() > 1.0 {
            discrete.r < exact.r
        } else {
            discrete.r > exact.r
        };
        if !r_ok {
            return Err(format!("{tag}: r~ on the wrong side of r"));
        }

        // reflected power: always overestimated
        let dp = fdtd_power(&ic, &wd).map_err(|e| e.to_string())?;
        let ep = exact_power(&ic);
        if dp.reflection <= ep.reflection {
            return Err(format!("{tag}: R~ not above R"));
        }

        // transmitted power: overestimated exactly for (dielectric, eta1 > eta2)
        // and (magnetic, eta1 < eta2)
        let expect_over = match ic.kind() {
            InterfaceKind::Dielectric => ic.eta_ratio() > 1.0,
            InterfaceKind::Magnetic => ic.eta_ratio() < 1.0,
        };
        let over = dp.transmission > ep.transmission;
        if over != expect_over {
            return Err(format!(
                "{tag}: T~ {} T but the pattern requires the opposite",
                if over { ">" } else { "<" }
            ));
        }
        checked += 1;
    }
    Ok(format!(
        "deviation directions correct on {checked} grid points"
    ))
}

fn check_figure_spot_values() -> Result<String, String> {
    let ic = InterfaceCase::dielectric(1.0, 4.0, 16.0).map_err(|e| e.to_string())?;

    let gain40 = compare_courant_modes(&ic, 40.0).map_err(|e| e.to_string())?;
    if !(2.0..=4.0).contains(&gain40.delta_r_gain) {
        return Err(format!(
            "Delta_R at N = 40 is {:.3} pp, outside 3 +/- 1",
            gain40.delta_r_gain
        ));
    }
    let gain70 = compare_courant_modes(&ic, 70.0).map_err(|e| e.to_string())?;
    if gain70.delta_r_gain >= 0.2 {
        return Err(format!(
            "Delta_R at N = 70 is {:.3} pp, expected under 0.2",
            gain70.delta_r_gain
        ));
    }

    let wd40 = WaveDiscretization::new(40.0, 1.0).map_err(|e| e.to_string())?;
    let rep = error_report(&ic, &wd40).map_err(|e| e.to_string())?;
    if rep.delta_r <= 50.0 {
        return Err(format!(
            "delta_R at N = 40, Sc = 1 is {:.2} %, expected above 50 %",
            rep.delta_r
        ));
    }

    // delta_R must not care about the medium order; delta_T must
    for (case, wd) in [
        (ic, wd40),
        (
            InterfaceCase::dielectric(1.0, 4.0, 2.0).map_err(|e| e.to_string())?,
            WaveDiscretization::new(20.0, 1.0).map_err(|e| e.to_string())?,
        ),
    ] {
        let fwd = error_report(&case, &wd).map_err(|e| e.to_string())?;
        let rev = error_report(&case.swapped(), &wd).map_err(|e| e.to_string())?;
        if (fwd.delta_r - rev.delta_r).abs() > 1e-12 {
            return Err(format!(
                "delta_R changed under medium swap: {} vs {}",
                fwd.delta_r, rev.delta_r
            ));
        }
        if (fwd.delta_t - rev.delta_t).abs() < 1e-3 {
            return Err("delta_T unexpectedly symmetric under medium swap".into());
        }
    }

    Ok(format!(
        "Delta_R = {:.2} pp at N = 40 and {:.3} pp at N = 70; delta_R = {:.1} % at Sc = 1; \
         swap symmetry holds",
        gain40.delta_r_gain, gain70.delta_r_gain, rep.delta_r
    ))
}

fn check_dispersion() -> Result<String, String> {
    let media = [
        Medium::new(1.0, 1.0).unwrap(),
        Medium::new(2.0, 2.0).unwrap(),
        Medium::new(2.0, 4.0).unwrap(), // n_r = sqrt(8)
    ];
    let mut worst = 0.0f64;
    for medium in &media {
        for n_lambda in [20.0, 40.0] {
            let wd = WaveDiscretization::new(n_lambda, 1.0).map_err(|e| e.to_string())?;
            let lambda = measure_wavelength(medium, &wd).map_err(|e| e.to_string())?;
            let expected = PI / solve_k_tilde(medium, &wd).map_err(|e| e.to_string())?;
            let rel = (lambda - expected).abs() / expected;
            worst = worst.max(rel);
            if rel > 1e-3 {
                return Err(format!(
                    "n_r = {}, N = {n_lambda}: wavelength off by {:.4} %",
                    medium.refractive_index(),
                    rel * 100.0
                ));
            }
        }
    }

    // magic Courant mode: a pulse must advect without any shape change
    let ic = InterfaceCase::dielectric(2.0, 2.0, 2.0).map_err(|e| e.to_string())?;
    let wd = WaveDiscretization::new(20.0, 2.0).map_err(|e| e.to_string())?;
    let mut cfg = SimConfig::auto(ic, wd).map_err(|e| e.to_string())?;
    cfg.drive_enabled = false;
    cfg.m_total = 1200;
    cfg.probe_transmit = cfg.m_total - 2;
    let mut state = build(&cfg).map_err(|e| e.to_string())?;
    let eta = ic.medium1().impedance();
    let pulse = |x: f64| (-x * x / 72.0).exp();
    for j in 0..cfg.m_total {
        let x = j as f64 - 100.0;
        state.e[j] = pulse(x);
        state.h[j] = -pulse(x + 1.0) / eta;
    }
    let reference = state.e.clone();
    let steps = 1000usize;
    for _ in 0..steps {
        step(&mut state, &cfg).map_err(|e| e.to_string())?;
    }
    let kept = cfg.m_total - steps;
    let mut pulse_err = 0.0f64;
    for (have, want) in state.e[steps..].iter().zip(&reference[..kept]) {
        pulse_err = pulse_err.max((have - want).abs());
    }
    if pulse_err > 1e-10 {
        return Err(format!(
            "magic-Courant pulse deformed by {pulse_err:.3e} over {steps} steps"
        ));
    }

    Ok(format!(
        "wavelengths within {:.4} % of the dispersion relation; pulse deformation {pulse_err:.1e}",
        worst * 100.0
    ))
}

fn check_tfsf_cleanliness() -> Result<String, String> {
    let mut worst = 0.0f64;
    for (eps, mu, courant) in [(1.0, 1.0, 1.0), (2.0, 2.0, 1.0), (2.0, 2.0, 2.0)] {
        let ic = InterfaceCase::dielectric(eps, eps, mu).map_err(|e| e.to_string())?;
        let wd = WaveDiscretization::new(20.0, courant).map_err(|e| e.to_string())?;
        let mut cfg = SimConfig::auto(ic, wd).map_err(|e| e.to_string())?;
        // the observer indices assume fixed geometry, so fail loudly instead
        // of replanning if the run were ever to miss the settle gate
        cfg.replan_on_retry = false;
        // leakage is judged after warm-up, over the gated part of the
        // scattered region
        let warmup_end = cfg.timing().warmup_end;
        let (lo, hi) = (cfg.probe_reflect, cfg.source_index - 1);
        let mut leak = 0.0f64;
        let mut q = 0u64;
        run_and_measure_observed(&cfg, |state| {
            q += 1;
            if q >= warmup_end {
                for m in lo..=hi {
                    leak = leak.max(state.e[m].abs());
                }
            }
        })
        .map_err(|e| e.to_string())?;
        if leak > 1e-6 * FIELD_AMPLITUDE {
            return Err(format!(
                "scattered-region leakage {leak:.3e} at eps = {eps}, mu = {mu}, Sc = {courant}"
            ));
        }
        worst = worst.max(leak);
    }

    // the watchdog must fire within 2000 steps at 5 % over the bound
    for (eps, mu) in [(1.0, 1.0), (2.0, 2.0)] {
        let ic = InterfaceCase::dielectric(eps, eps, mu).map_err(|e| e.to_string())?;
        let n_r = ic.min_refractive_index();
        let wd = WaveDiscretization::new(20.0, 1.05 * n_r).map_err(|e| e.to_string())?;
        let mut cfg = SimConfig::auto(ic, wd).map_err(|e| e.to_string())?;
        cfg.allow_unstable = true;
        let mut state = build(&cfg).map_err(|e| e.to_string())?;
        let mut fired = false;
        for _ in 0..2000 {
            match step(&mut state, &cfg) {
                Err(Error::DivergenceDetected { .. }) => {
                    fired = true;
                    break;
                }
                Err(e) => return Err(e.to_string()),
                Ok(()) => {}
            }
        }
        if !fired {
            return Err(format!(
                "watchdog silent for 2000 steps at Sc = 1.05 n_r (n_r = {n_r})"
            ));
        }
    }

    Ok(format!(
        "worst scattered-region leakage {worst:.2e}; watchdog fires above the stability bound"
    ))
}

fn check_high_contrast() -> Result<String, String> {
    let values: Vec<f64> = (0..=50).map(|i| 50.0 + 2.0 * i as f64).collect();
    let mut summaries = Vec::new();
    for (ic, expect_dt_smaller) in [
        (
            InterfaceCase::dielectric(1.0, 100.0, 2.0).map_err(|e| e.to_string())?,
            true,
        ),
        (
            InterfaceCase::dielectric(100.0, 1.0, 2.0).map_err(|e| e.to_string())?,
            false,
        ),
    ] {
        let spec = SweepSpec {
            interface: ic,
            axis: SweepAxis::NLambda,
            axis_values: values.clone(),
            courant_mode: CourantMode::Standard,
            with_simulation: false,
            base_n_lambda: None,
        };
        let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
        for row in &rows {
            let p = row
                .discrete_power
                .ok_or_else(|| format!("N = {} unexpectedly evanescent", row.axis_value))?;
            if p.reflection <= p.transmission {
                return Err(format!(
                    "R~ <= T~ at N = {} for eta ratio {:.2}",
                    row.axis_value,
                    ic.eta_ratio()
                ));
            }
            let e = row.errors.as_ref().unwrap();
            let dt_smaller = e.delta_t < e.delta_r;
            if dt_smaller != expect_dt_smaller {
                return Err(format!(
                    "delta ordering at N = {}: delta_T {} delta_R, expected the opposite \
                     (n1 {} n2)",
                    row.axis_value,
                    if dt_smaller { "<" } else { ">" },
                    if expect_dt_smaller { "<" } else { ">" },
                ));
            }
        }
        summaries.push(format!(
            "eta ratio {:.1}: R~ > T~ on all {} points, delta_T {} delta_R",
            ic.eta_ratio(),
            rows.len(),
            if expect_dt_smaller { "<" } else { ">" }
        ));
    }
    Ok(summaries.join("; "))
}
