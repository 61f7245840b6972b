//! Subcommand implementations.

use crate::config::{EffectiveConfig, FileConfig};
use crate::fmt::{sig17, sig6};
use crate::{
    AxisArg, CliError, CoeffArgs, FiguresArgs, KindArg, MaterialArgs, SimulateArgs, SweepArgs,
    VerifyArgs,
};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;
use yeelab_core::fresnel::{
    error_report, exact_fresnel, exact_power, fdtd_fresnel, fdtd_power, optimal_courant,
};
use yeelab_core::sweep::{run_sweep, write_csv, CourantMode, SweepAxis, SweepSpec};
use yeelab_core::yee::{run_and_measure, run_and_measure_observed, SimConfig};
use yeelab_core::{verify, Error, InterfaceCase, InterfaceKind, WaveDiscretization};

type Result<T> = std::result::Result<T, CliError>;

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

#[derive(Clone, Copy)]
enum CourantSpec {
    Standard,
    Optimal,
    Value(f64),
}

impl CourantSpec {
    fn parse(text: &str) -> Result<Self> {
        match text {
            "standard" => Ok(Self::Standard),
            "optimal" => Ok(Self::Optimal),
            other => other.parse::<f64>().map(Self::Value).map_err(|_| {
                validation(format!(
                    "courant must be standard, optimal or a number, got '{other}'"
                ))
            }),
        }
    }

    fn value(&self, ic: &InterfaceCase) -> f64 {
        match self {
            Self::Standard => 1.0,
            Self::Optimal => optimal_courant(ic),
            Self::Value(v) => *v,
        }
    }

    fn label(&self) -> String {
        match self {
            Self::Standard => "standard".into(),
            Self::Optimal => "optimal".into(),
            Self::Value(v) => sig17(*v),
        }
    }
}

struct Resolved {
    interface: InterfaceCase,
    n_lambda: f64,
    courant: CourantSpec,
    effective: EffectiveConfig,
    file: FileConfig,
}

/// Merges command-line flags with an optional config file (flags win) and
/// validates the material description.
fn resolve_material(args: &MaterialArgs) -> Result<Resolved> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path).map_err(validation_msg)?,
        None => FileConfig::default(),
    };

    let kind = match (args.kind, file.get("kind")) {
        (Some(KindArg::Dielectric), _) => InterfaceKind::Dielectric,
        (Some(KindArg::Magnetic), _) => InterfaceKind::Magnetic,
        (None, Some("dielectric")) => InterfaceKind::Dielectric,
        (None, Some("magnetic")) => InterfaceKind::Magnetic,
        (None, Some(other)) => return Err(validation(format!("unknown interface kind '{other}'"))),
        (None, None) => return Err(validation("missing --kind (dielectric|magnetic)")),
    };

    let eps = resolve_list(args.eps.as_deref(), file.get("eps"), "eps")?;
    let mu = resolve_list(args.mu.as_deref(), file.get("mu"), "mu")?;

    let interface = match kind {
        InterfaceKind::Dielectric => {
            let eps = expect_len(eps, 2, "dielectric interfaces need --eps eps1,eps2")?;
            let mu = expect_len(mu, 1, "dielectric interfaces need one shared --mu")?;
            InterfaceCase::dielectric(eps[0], eps[1], mu[0]).map_err(CliError::from)?
        }
        InterfaceKind::Magnetic => {
            let mu = expect_len(mu, 2, "magnetic interfaces need --mu mu1,mu2")?;
            let eps = expect_len(eps, 1, "magnetic interfaces need one shared --eps")?;
            InterfaceCase::magnetic(mu[0], mu[1], eps[0]).map_err(CliError::from)?
        }
    };

    let n_lambda = match (args.nlambda, file.get("nlambda")) {
        (Some(v), _) => Some(v),
        (None, Some(text)) => Some(
            text.parse::<f64>()
                .map_err(|_| validation(format!("nlambda: cannot parse '{text}'")))?,
        ),
        (None, None) => None,
    };
    let n_lambda = n_lambda.ok_or_else(|| validation("missing --nlambda"))?;

    let courant = match (&args.courant, file.get("courant")) {
        (Some(text), _) => CourantSpec::parse(text)?,
        (None, Some(text)) => CourantSpec::parse(text)?,
        (None, None) => CourantSpec::Standard,
    };

    let mut effective = EffectiveConfig::default();
    effective.set(
        "kind",
        match kind {
            InterfaceKind::Dielectric => "dielectric",
            InterfaceKind::Magnetic => "magnetic",
        },
    );
    match kind {
        InterfaceKind::Dielectric => {
            effective.set(
                "eps",
                format!(
                    "{},{}",
                    sig17(interface.medium1().epsilon_r()),
                    sig17(interface.medium2().epsilon_r())
                ),
            );
            effective.set("mu", sig17(interface.medium1().mu_r()));
        }
        InterfaceKind::Magnetic => {
            effective.set(
                "mu",
                format!(
                    "{},{}",
                    sig17(interface.medium1().mu_r()),
                    sig17(interface.medium2().mu_r())
                ),
            );
            effective.set("eps", sig17(interface.medium1().epsilon_r()));
        }
    }
    effective.set("nlambda", sig17(n_lambda));
    effective.set("courant", courant.label());

    Ok(Resolved {
        interface,
        n_lambda,
        courant,
        effective,
        file,
    })
}

fn validation_msg(msg: String) -> CliError {
    CliError::Validation(msg)
}

fn resolve_list(flag: Option<&[f64]>, file: Option<&str>, name: &str) -> Result<Option<Vec<f64>>> {
    if let Some(values) = flag {
        return Ok(Some(values.to_vec()));
    }
    match file {
        None => Ok(None),
        Some(text) => {
            let mut values = Vec::new();
            for part in text.split(',') {
                values.push(
                    part.trim()
                        .parse::<f64>()
                        .map_err(|_| validation(format!("{name}: cannot parse '{part}'")))?,
                );
            }
            Ok(Some(values))
        }
    }
}

fn expect_len(values: Option<Vec<f64>>, len: usize, msg: &str) -> Result<Vec<f64>> {
    match values {
        Some(v) if v.len() == len => Ok(v),
        _ => Err(validation(msg)),
    }
}

fn out_dir() -> Result<PathBuf> {
    let dir = std::env::var_os("YEELAB_OUT")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("out"));
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn dump_config_if_asked(path: &Option<PathBuf>, effective: &EffectiveConfig) -> Result<()> {
    if let Some(path) = path {
        effective.write(path)?;
        eprintln!("wrote config to {}", path.display());
    }
    Ok(())
}

fn describe_interface(ic: &InterfaceCase) -> String {
    match ic.kind() {
        InterfaceKind::Dielectric => format!(
            "dielectric interface: eps = ({}, {}), shared mu = {}",
            sig6(ic.medium1().epsilon_r()),
            sig6(ic.medium2().epsilon_r()),
            sig6(ic.medium1().mu_r())
        ),
        InterfaceKind::Magnetic => format!(
            "magnetic interface: mu = ({}, {}), shared eps = {}",
            sig6(ic.medium1().mu_r()),
            sig6(ic.medium2().mu_r()),
            sig6(ic.medium1().epsilon_r())
        ),
    }
}

pub fn coeff(args: CoeffArgs) -> Result<()> {
    let resolved = resolve_material(&args.material)?;
    dump_config_if_asked(&args.material.dump_config, &resolved.effective)?;

    let ic = resolved.interface;
    let courant = resolved.courant.value(&ic);
    let wd = WaveDiscretization::new(resolved.n_lambda, courant)?;
    let exact = exact_fresnel(&ic);
    let exact_p = exact_power(&ic);
    let discrete = fdtd_fresnel(&ic, &wd)?;
    let discrete_p = fdtd_power(&ic, &wd)?;
    let errors = match error_report(&ic, &wd) {
        Ok(rep) => Some(rep),
        Err(Error::DegenerateInterface) => None,
        Err(e) => return Err(e.into()),
    };

    println!("{}", describe_interface(&ic));
    println!(
        "n_lambda = {}, courant = {} ({})",
        sig6(resolved.n_lambda),
        sig6(courant),
        resolved.courant.label()
    );
    println!();
    println!("{:<10}{:>14}{:>14}", "quantity", "exact", "fdtd");
    for (name, a, b) in [
        ("r", exact.r, discrete.r),
        ("t", exact.t, discrete.t),
        ("R", exact_p.reflection, discrete_p.reflection),
        ("T", exact_p.transmission, discrete_p.transmission),
    ] {
        println!("{name:<10}{:>14}{:>14}", sig6(a), sig6(b));
    }
    println!();
    match &errors {
        Some(rep) => {
            println!("delta_R = {} %", sig6(rep.delta_r));
            println!("delta_T = {} %", sig6(rep.delta_t));
        }
        None => {
            println!("delta_R = undefined (identical impedances, R = 0)");
            println!("delta_T = {} %", {
                let dt = (discrete_p.transmission - exact_p.transmission).abs()
                    / exact_p.transmission
                    * 100.0;
                sig6(dt)
            });
        }
    }

    if args.json {
        let opt = |v: Option<f64>| v.map(sig17).unwrap_or_else(|| "null".into());
        println!();
        println!(
            "{{\"kind\":\"{}\",\"eps1\":{},\"eps2\":{},\"mu1\":{},\"mu2\":{},\
             \"n_lambda\":{},\"courant\":{},\
             \"r_exact\":{},\"t_exact\":{},\"R_exact\":{},\"T_exact\":{},\
             \"r_fdtd\":{},\"t_fdtd\":{},\"R_fdtd\":{},\"T_fdtd\":{},\
             \"delta_R_pct\":{},\"delta_T_pct\":{}}}",
            ic.kind().as_str(),
            sig17(ic.medium1().epsilon_r()),
            sig17(ic.medium2().epsilon_r()),
            sig17(ic.medium1().mu_r()),
            sig17(ic.medium2().mu_r()),
            sig17(resolved.n_lambda),
            sig17(courant),
            sig17(exact.r),
            sig17(exact.t),
            sig17(exact_p.reflection),
            sig17(exact_p.transmission),
            sig17(discrete.r),
            sig17(discrete.t),
            sig17(discrete_p.reflection),
            sig17(discrete_p.transmission),
            opt(errors.as_ref().map(|e| e.delta_r)),
            opt(errors.as_ref().map(|e| e.delta_t)),
        );
    }
    Ok(())
}

pub fn simulate(args: SimulateArgs) -> Result<()> {
    let resolved = resolve_material(&args.material)?;
    let file = &resolved.file;

    let warmup = merge_num(
        args.warmup_periods,
        file.get("warmup_periods"),
        "warmup_periods",
    )?;
    let measure = merge_num(
        args.measure_periods,
        file.get("measure_periods"),
        "measure_periods",
    )?;
    let ramp = merge_num(args.ramp_periods, file.get("ramp_periods"), "ramp_periods")?;
    let snapshot_every = merge_num(
        args.snapshot_every,
        file.get("snapshot_every"),
        "snapshot_every",
    )?;

    let mut effective = resolved.effective;
    if let Some(v) = warmup {
        effective.set("warmup_periods", sig17(v));
    }
    if let Some(v) = measure {
        effective.set("measure_periods", v.to_string());
    }
    if let Some(v) = ramp {
        effective.set("ramp_periods", sig17(v));
    }
    if let Some(v) = snapshot_every {
        effective.set("snapshot_every", v.to_string());
    }
    dump_config_if_asked(&args.material.dump_config, &effective)?;

    let ic = resolved.interface;
    let courant = resolved.courant.value(&ic);
    let wd = WaveDiscretization::new(resolved.n_lambda, courant)?;
    let cfg = SimConfig::auto_with(ic, wd, warmup, measure, ramp)?;
    let closed = fdtd_fresnel(&ic, &wd)?;

    println!("{}", describe_interface(&ic));
    println!(
        "n_lambda = {}, courant = {} ({})",
        sig6(resolved.n_lambda),
        sig6(courant),
        resolved.courant.label()
    );
    println!(
        "grid: {} nodes, interface at {}, source at {}, probes at {} / {}",
        cfg.m_total, cfg.interface_index, cfg.source_index, cfg.probe_reflect, cfg.probe_transmit
    );

    let started = Instant::now();
    let measured = match snapshot_every {
        None => run_and_measure(&cfg)?,
        Some(every) => {
            let dir = out_dir()?;
            let path = dir.join("snapshot.csv");
            let file = File::create(&path)?;
            let mut out = BufWriter::new(file);
            let mut io_error: Option<std::io::Error> = None;
            writeln!(out, "q,m,E,H")?;
            let result = run_and_measure_observed(&cfg, |state| {
                if io_error.is_some() || state.q % every != 0 {
                    return;
                }
                for m in 0..state.e.len() {
                    if let Err(e) = writeln!(
                        out,
                        "{},{m},{},{}",
                        state.q,
                        sig17(state.e[m]),
                        sig17(state.h[m])
                    ) {
                        io_error = Some(e);
                        return;
                    }
                }
            });
            if let Some(e) = io_error {
                return Err(e.into());
            }
            let measured = result?;
            out.flush()?;
            println!("snapshots: {}", path.display());
            measured
        }
    };
    let elapsed = started.elapsed().as_secs_f64();

    println!();
    println!(
        "{:<14}{:>16}{:>16}{:>12}",
        "quantity", "closed form", "measured", "|diff|"
    );
    println!(
        "{:<14}{:>16}{:>16}{:>12}",
        "r",
        sig6(closed.r),
        sig6(measured.r),
        sig6((closed.r - measured.r).abs())
    );
    println!(
        "{:<14}{:>16}{:>16}{:>12}",
        "t",
        sig6(closed.t),
        sig6(measured.t),
        sig6((closed.t - measured.t).abs())
    );
    println!();
    println!(
        "phase residuals: r {} / t {} (imaginary remainder per unit drive)",
        sig6(measured.r_residual),
        sig6(measured.t_residual)
    );
    println!("run time: {elapsed:.3} s");
    Ok(())
}

fn merge_num<T: std::str::FromStr>(
    flag: Option<T>,
    file: Option<&str>,
    name: &str,
) -> Result<Option<T>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file {
        None => Ok(None),
        Some(text) => text
            .parse::<T>()
            .map(Some)
            .map_err(|_| validation(format!("{name}: cannot parse '{text}'"))),
    }
}

fn parse_axis_values(text: &str) -> Result<Vec<f64>> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| validation(format!("values: cannot parse '{s}'")))
    };
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(validation("range values must be start:stop:step"));
        }
        let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        if step <= 0.0 || stop < start {
            return Err(validation(
                "range must have positive step and stop >= start",
            ));
        }
        let mut values = Vec::new();
        let mut k = 0u64;
        loop {
            let v = start + step * k as f64;
            if v > stop + 1e-9 * step {
                break;
            }
            values.push(v);
            k += 1;
        }
        Ok(values)
    } else {
        text.split(',').map(parse).collect()
    }
}

pub fn sweep(args: SweepArgs) -> Result<()> {
    // the axis decides which material parameters are required up front
    let file = match &args.material.config {
        Some(path) => FileConfig::load(path).map_err(validation_msg)?,
        None => FileConfig::default(),
    };
    let axis = match (args.axis, file.get("axis")) {
        (Some(AxisArg::Nlambda), _) => SweepAxis::NLambda,
        (Some(AxisArg::Mu), _) => SweepAxis::SharedMu,
        (Some(AxisArg::Eps), _) => SweepAxis::SharedEps,
        (None, Some("nlambda")) => SweepAxis::NLambda,
        (None, Some("mu")) => SweepAxis::SharedMu,
        (None, Some("eps")) => SweepAxis::SharedEps,
        (None, Some(other)) => return Err(validation(format!("unknown axis '{other}'"))),
        (None, None) => return Err(validation("missing --axis (nlambda|mu|eps)")),
    };
    let values_text = args
        .values
        .as_deref()
        .or_else(|| file.get("values"))
        .ok_or_else(|| validation("missing --values"))?;
    let axis_values = parse_axis_values(values_text)?;
    if axis_values.is_empty() {
        return Err(validation("no axis values"));
    }

    // sweeps accept --courant both, which the scalar parser must not see
    let mut material = args.material;
    let courant_text = material
        .courant
        .clone()
        .or_else(|| file.get("courant").map(String::from));
    let both = courant_text.as_deref() == Some("both");
    if both {
        // flag beats file, so this also masks a `courant = both` file entry
        material.courant = Some("standard".into());
    }

    // material axes take their swept parameter from the axis itself
    match axis {
        SweepAxis::SharedMu => {
            if material.mu.is_none() && file.get("mu").is_none() {
                material.mu = Some(vec![axis_values[0]]);
            }
        }
        SweepAxis::SharedEps => {
            if material.eps.is_none() && file.get("eps").is_none() {
                material.eps = Some(vec![axis_values[0]]);
            }
        }
        SweepAxis::NLambda => {
            if material.nlambda.is_none() && file.get("nlambda").is_none() {
                material.nlambda = Some(axis_values[0]);
            }
        }
    }
    let resolved = resolve_material(&material)?;

    let courant_mode = if both {
        CourantMode::Both
    } else {
        match resolved.courant {
            CourantSpec::Standard => CourantMode::Standard,
            CourantSpec::Optimal => CourantMode::Optimal,
            CourantSpec::Value(_) => {
                return Err(validation(
                    "sweeps take --courant standard|optimal|both, not a number",
                ))
            }
        }
    };

    let with_sim = args.with_sim
        || matches!(
            resolved.file.get("with_sim"),
            Some("true") | Some("1") | Some("yes")
        );

    let spec = SweepSpec {
        interface: resolved.interface,
        axis,
        axis_values,
        courant_mode,
        with_simulation: with_sim,
        base_n_lambda: Some(resolved.n_lambda),
    };

    let mut effective = resolved.effective;
    if both {
        effective.set("courant", "both");
    }
    effective.set(
        "axis",
        match axis {
            SweepAxis::NLambda => "nlambda",
            SweepAxis::SharedMu => "mu",
            SweepAxis::SharedEps => "eps",
        },
    );
    effective.set("values", values_text);
    effective.set("with_sim", if with_sim { "true" } else { "false" });

    let name = args
        .out
        .clone()
        .or_else(|| resolved.file.get("out").map(String::from))
        .unwrap_or_else(|| "sweep.csv".to_string());
    effective.set("out", name.clone());
    dump_config_if_asked(&material.dump_config, &effective)?;

    let rows = run_sweep(&spec)?;
    let path = if PathBuf::from(&name).is_absolute() {
        PathBuf::from(&name)
    } else {
        out_dir()?.join(&name)
    };
    let file = File::create(&path)?;
    let mut out = BufWriter::new(file);
    write_csv(&rows, &mut out)?;
    out.flush()?;
    println!("{}", path.display());
    Ok(())
}

pub fn figures(args: FiguresArgs) -> Result<()> {
    let id = args.id.to_lowercase();
    let presets = figure_presets(&id)?;
    let dir = out_dir()?;
    for (name, spec) in presets {
        let rows = run_sweep(&spec)?;
        let path = dir.join(name);
        let file = File::create(&path)?;
        let mut out = BufWriter::new(file);
        write_csv(&rows, &mut out)?;
        out.flush()?;
        println!("{}", path.display());
    }
    Ok(())
}

fn range(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let mut values = Vec::new();
    let mut k = 0u64;
    loop {
        let v = start + step * k as f64;
        if v > stop + 1e-9 {
            break;
        }
        values.push(v);
        k += 1;
    }
    values
}

/// The baked parameter sets behind each figure id. Names encode the
/// interface and Courant mode so a whole family lands side by side.
fn figure_presets(id: &str) -> Result<Vec<(String, SweepSpec)>> {
    let diel = |a: f64, b: f64, mu: f64| InterfaceCase::dielectric(a, b, mu).unwrap();
    let mag = |a: f64, b: f64, eps: f64| InterfaceCase::magnetic(a, b, eps).unwrap();
    let spec = |ic: InterfaceCase, values: Vec<f64>, mode: CourantMode| SweepSpec {
        interface: ic,
        axis: SweepAxis::NLambda,
        axis_values: values,
        courant_mode: mode,
        with_simulation: false,
        base_n_lambda: None,
    };

    let coarse = || range(10.0, 40.0, 0.5);
    let med = || range(40.0, 70.0, 0.5);
    let wide = || range(10.0, 70.0, 0.5);
    let high = || range(50.0, 150.0, 1.0);

    let weak_family = |prefix: &str| -> Vec<(String, SweepSpec)> {
        let mut out = Vec::new();
        for (tag, ic) in [
            ("dielectric_eps3-4_mu2", diel(3.0, 4.0, 2.0)),
            ("dielectric_eps4-3_mu2", diel(4.0, 3.0, 2.0)),
            ("magnetic_mu4-3_eps2", mag(4.0, 3.0, 2.0)),
            ("magnetic_mu3-4_eps2", mag(3.0, 4.0, 2.0)),
        ] {
            for (mode_tag, mode) in [
                ("standard", CourantMode::Standard),
                ("optimal", CourantMode::Optimal),
            ] {
                out.push((
                    format!("{prefix}_{tag}_{mode_tag}.csv"),
                    spec(ic, coarse(), mode),
                ));
            }
        }
        out
    };

    let presets = match id {
        // discrete Fresnel coefficient curves, reflection and transmission
        "fig5" => weak_family("fig5"),
        "fig6" => weak_family("fig6"),
        // power coefficient curves over the same families
        "fig8" => weak_family("fig8"),
        // error curves: permittivity contrast (a, c) and shared-mu
        // influence (b, d)
        "fig9" => {
            let mut out = vec![
                (
                    "fig9a_eps1-4_mu1.csv".to_string(),
                    spec(diel(1.0, 4.0, 1.0), coarse(), CourantMode::Standard),
                ),
                (
                    "fig9a_eps3-4_mu1.csv".to_string(),
                    spec(diel(3.0, 4.0, 1.0), coarse(), CourantMode::Standard),
                ),
                (
                    "fig9c_eps4-1_mu1.csv".to_string(),
                    spec(diel(4.0, 1.0, 1.0), coarse(), CourantMode::Standard),
                ),
                (
                    "fig9c_eps4-3_mu1.csv".to_string(),
                    spec(diel(4.0, 3.0, 1.0), coarse(), CourantMode::Standard),
                ),
            ];
            for mu in [1.0, 2.0, 4.0, 16.0] {
                out.push((
                    format!("fig9b_eps1-4_mu{mu}.csv"),
                    spec(diel(1.0, 4.0, mu), med(), CourantMode::Standard),
                ));
                out.push((
                    format!("fig9d_eps4-1_mu{mu}.csv"),
                    spec(diel(4.0, 1.0, mu), med(), CourantMode::Standard),
                ));
            }
            out
        }
        // standard-minus-optimal error gains; mu = 1 is excluded because the
        // modes coincide there
        "figa" => {
            let mut out = Vec::new();
            for mu in [2.0, 4.0, 16.0] {
                out.push((
                    format!("figA_eps1-4_mu{mu}.csv"),
                    spec(diel(1.0, 4.0, mu), wide(), CourantMode::Both),
                ));
                out.push((
                    format!("figA_eps4-1_mu{mu}.csv"),
                    spec(diel(4.0, 1.0, mu), wide(), CourantMode::Both),
                ));
            }
            out
        }
        // high-impedance-contrast pairs and their magnetic equivalents; the
        // resolution range sits higher because coarser grids are evanescent
        // in the dense medium
        "figb" => vec![
            (
                "figB_dielectric_eps1-100_mu2.csv".to_string(),
                spec(diel(1.0, 100.0, 2.0), high(), CourantMode::Standard),
            ),
            (
                "figB_dielectric_eps100-1_mu2.csv".to_string(),
                spec(diel(100.0, 1.0, 2.0), high(), CourantMode::Standard),
            ),
            (
                "figB_magnetic_mu100-1_eps2.csv".to_string(),
                spec(mag(100.0, 1.0, 2.0), high(), CourantMode::Standard),
            ),
            (
                "figB_magnetic_mu1-100_eps2.csv".to_string(),
                spec(mag(1.0, 100.0, 2.0), high(), CourantMode::Standard),
            ),
        ],
        other => {
            return Err(validation(format!(
                "unknown figure id '{other}' (expected fig5, fig6, fig8, fig9, figA or figB)"
            )))
        }
    };
    Ok(presets)
}

pub fn verify(args: VerifyArgs) -> Result<()> {
    let outcomes = verify::run_all(args.only.as_deref());
    if outcomes.is_empty() {
        let names: Vec<&str> = verify::checks().into_iter().map(|(n, _, _)| n).collect();
        return Err(validation(format!(
            "unknown check '{}'; available: {}",
            args.only.unwrap_or_default(),
            names.join(", ")
        )));
    }
    let mut failed = 0;
    for o in &outcomes {
        println!(
            "{} {} ({:.2} s): {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.seconds,
            o.detail
        );
        if !o.passed {
            failed += 1;
        }
    }
    println!();
    if failed > 0 {
        Err(CliError::Check(format!(
            "{failed} of {} checks failed",
            outcomes.len()
        )))
    } else {
        println!("all {} checks passed", outcomes.len());
        Ok(())
    }
}
