//! End-to-end tests against the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn yeelab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yeelab"))
        .args(args)
        .env("YEELAB_OUT", dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn coeff_prints_exact_and_discrete_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(
        dir.path(),
        &[
            "coeff",
            "--kind",
            "dielectric",
            "--eps",
            "3,4",
            "--mu",
            "2",
            "--nlambda",
            "20",
        ],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("-0.0717968"), "{text}");
    assert!(text.contains("-0.0864735"), "{text}");
    assert!(text.contains("delta_R"), "{text}");
}

#[test]
fn coeff_json_is_bit_identical_to_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(
        dir.path(),
        &[
            "coeff",
            "--kind",
            "dielectric",
            "--eps",
            "3,4",
            "--mu",
            "2",
            "--nlambda",
            "20",
            "--json",
        ],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let json_line = text
        .lines()
        .find(|l| l.starts_with('{'))
        .expect("json line");
    let field = |name: &str| -> f64 {
        let needle = format!("\"{name}\":");
        let at = json_line.find(&needle).unwrap() + needle.len();
        json_line[at..]
            .split([',', '}'])
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };

    let ic = yeelab_core::InterfaceCase::dielectric(3.0, 4.0, 2.0).unwrap();
    let wd = yeelab_core::WaveDiscretization::new(20.0, 1.0).unwrap();
    let exact = yeelab_core::fresnel::exact_fresnel(&ic);
    let discrete = yeelab_core::fresnel::fdtd_fresnel(&ic, &wd).unwrap();
    assert_eq!(field("r_exact"), exact.r);
    assert_eq!(field("t_exact"), exact.t);
    assert_eq!(field("r_fdtd"), discrete.r);
    assert_eq!(field("t_fdtd"), discrete.t);
}

#[test]
fn degenerate_interface_is_marked() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(
        dir.path(),
        &[
            "coeff",
            "--kind",
            "dielectric",
            "--eps",
            "2,2",
            "--mu",
            "1",
            "--nlambda",
            "20",
        ],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("delta_R = undefined"));
}

#[test]
fn magnetic_fine_limit_matches_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(
        dir.path(),
        &[
            "coeff",
            "--kind",
            "magnetic",
            "--mu",
            "4,3",
            "--eps",
            "2",
            "--nlambda",
            "1e6",
            "--json",
        ],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let json_line = text.lines().find(|l| l.starts_with('{')).unwrap();
    let field = |name: &str| -> f64 {
        let needle = format!("\"{name}\":");
        let at = json_line.find(&needle).unwrap() + needle.len();
        json_line[at..]
            .split([',', '}'])
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((field("r_fdtd") - field("r_exact")).abs() < 1e-9);
    assert!((field("t_fdtd") - field("t_exact")).abs() < 1e-9);
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // eps needs two values for a dielectric pair
    let out = yeelab(
        dir.path(),
        &[
            "coeff",
            "--kind",
            "dielectric",
            "--eps",
            "3",
            "--mu",
            "2",
            "--nlambda",
            "20",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    // unknown figure id
    let out = yeelab(dir.path(), &["figures", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn evanescent_regime_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(
        dir.path(),
        &[
            "coeff",
            "--kind",
            "dielectric",
            "--eps",
            "1,100",
            "--mu",
            "2",
            "--nlambda",
            "20",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn figures_fig5_writes_the_curve_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(dir.path(), &["figures", "fig5"]);
    assert!(out.status.success());
    let paths: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(paths.len(), 8);
    for path in &paths {
        let text = std::fs::read_to_string(path).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("axis_value,status,"));
        assert!(lines.count() >= 60);
    }
}

#[test]
fn figures_figb_covers_the_high_contrast_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(dir.path(), &["figures", "figB"]);
    assert!(out.status.success());
    let paths: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(paths.len(), 4);
    let text = std::fs::read_to_string(&paths[0]).unwrap();
    let first_axis: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    let last_axis: f64 = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(first_axis, 50.0);
    assert_eq!(last_axis, 150.0);
}

#[test]
fn sweep_writes_csv_with_mode_gains() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(
        dir.path(),
        &[
            "sweep",
            "--kind",
            "dielectric",
            "--eps",
            "1,4",
            "--mu",
            "16",
            "--axis",
            "nlambda",
            "--values",
            "40:70:15",
            "--courant",
            "both",
            "--out",
            "gains.csv",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = dir.path().join("gains.csv");
    let text = std::fs::read_to_string(path).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let delta_r_col = header.iter().position(|c| *c == "Delta_R").unwrap();
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let gain: f64 = first[delta_r_col].parse().unwrap();
    assert!((2.0..4.0).contains(&gain), "Delta_R at N = 40 was {gain}");
}

#[test]
fn config_round_trip_reproduces_output() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("case.conf");
    let direct = yeelab(
        dir.path(),
        &[
            "coeff",
            "--kind",
            "magnetic",
            "--mu",
            "4,3",
            "--eps",
            "2",
            "--nlambda",
            "25",
            "--courant",
            "optimal",
            "--dump-config",
            config_path.to_str().unwrap(),
        ],
    );
    assert!(direct.status.success());
    let replayed = yeelab(
        dir.path(),
        &["coeff", "--config", config_path.to_str().unwrap()],
    );
    assert!(replayed.status.success());
    assert_eq!(stdout(&direct), stdout(&replayed));
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("bad.conf");
    std::fs::write(&config_path, "kind = dielectric\nwavelength = 20\n").unwrap();
    let out = yeelab(
        dir.path(),
        &["coeff", "--config", config_path.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown config key"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("base.conf");
    std::fs::write(
        &config_path,
        "kind = dielectric\neps = 3,4\nmu = 2\nnlambda = 20\n",
    )
    .unwrap();
    let base = yeelab(
        dir.path(),
        &["coeff", "--config", config_path.to_str().unwrap()],
    );
    let overridden = yeelab(
        dir.path(),
        &[
            "coeff",
            "--config",
            config_path.to_str().unwrap(),
            "--nlambda",
            "40",
        ],
    );
    assert!(base.status.success() && overridden.status.success());
    assert_ne!(stdout(&base), stdout(&overridden));
    assert!(stdout(&overridden).contains("40.0000"));
}

#[test]
fn simulate_reports_agreement_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(
        dir.path(),
        &[
            "simulate",
            "--kind",
            "dielectric",
            "--eps",
            "3,4",
            "--mu",
            "2",
            "--nlambda",
            "15",
            "--snapshot-every",
            "200",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("closed form"));
    let snapshot = dir.path().join("snapshot.csv");
    let content = std::fs::read_to_string(snapshot).unwrap();
    assert!(content.starts_with("q,m,E,H"));
    assert!(content.lines().count() > 100);
}

#[test]
fn verify_single_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = yeelab(dir.path(), &["verify", "--only", "exact-theory"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS exact-theory"));
    let out = yeelab(dir.path(), &["verify", "--only", "definitely-not-a-check"]);
    assert_eq!(out.status.code(), Some(2));
}
