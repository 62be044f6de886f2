use std::fs;
use std::path::Path;
use std::process::Command;

use lambda_fluor::cli::{self, parse_config, presets, Mode, RunConfig};

const BIN: &str = env!("CARGO_BIN_EXE_lambda-fluor");

const FIG2A: &str = "gamma1=0.1\ndelta1=15\ndelta2=-15\nomega1=30\nomega2=30\nomega3=10\nphi=0\n";

fn config(dir: &Path, mode: &str, extra: &str) -> RunConfig {
    let out = dir.join(format!("{mode}.csv"));
    parse_config(&format!(
        "mode={mode}\n{FIG2A}{extra}output={}\n",
        out.display()
    ))
    .unwrap()
}

fn header(path: &Path) -> String {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string()
}

#[test]
fn every_mode_writes_its_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("spectrum", "grid=-100,100,101\n", "omega,S"),
        (
            "spectrum-oracle",
            "grid=-100,100,41\n",
            "omega,S_resolvent,S_oracle",
        ),
        (
            "dressed",
            "grid=-100,100,101\n",
            "state,lambda,re_a1,im_a1,re_a2,im_a2,re_a3,im_a3,population",
        ),
        (
            "variance",
            "",
            "F,F_analytic,theta_opt,rho11,abs_rho13,phi31",
        ),
        (
            "omega3-sweep",
            "grid=0,10,11\n",
            "omega3,F,rho11,rho22,abs_rho12,abs_rho13",
        ),
        ("phi-sweep", "grid=-pi,pi,13\n", "phi,F"),
    ];
    for (mode, extra, columns) in cases {
        let cfg = config(dir.path(), mode, extra);
        let outcome = cli::run(&cfg).unwrap();
        assert!(outcome.checks_passed);
        assert_eq!(header(&outcome.files[0]), columns, "{mode}");
    }
    let pairs = dir.path().join("dressed_pairs.csv");
    assert_eq!(header(&pairs), "i,j,omega_ij,gamma_ij,weight");
    assert_eq!(fs::read_to_string(pairs).unwrap().lines().count(), 4);
    assert_eq!(
        header(&dir.path().join("dressed_lorentzian.csv")),
        "omega,S_exact,S_lorentzian"
    );

    // off resonance there is no closed form, so the cell stays empty
    let variance = fs::read_to_string(dir.path().join("variance.csv")).unwrap();
    let row: Vec<&str> = variance.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[1], "");
}

#[test]
fn presets_reproduce_figure_tables() {
    let dir = tempfile::tempdir().unwrap();
    let expected = [
        ("fig2a", "omega,S,S_omega3_0", 2001),
        ("fig2b", "omega,S,S_omega3_0", 2001),
        ("fig3", "phi,omega3,F", 2 * presets::OMEGA3_AXIS.2),
        (
            "fig4",
            "omega3,rho11,rho22,abs_rho12,abs_rho13",
            presets::OMEGA3_AXIS.2,
        ),
        ("fig5", "phi,F", presets::PHI_AXIS.2),
    ];
    for (preset, (name, columns, rows)) in presets::ALL.into_iter().zip(expected) {
        assert_eq!(preset.name(), name);
        let out = dir.path().join(format!("{name}.csv"));
        let outcome = cli::run(&RunConfig::for_preset(preset, out.clone())).unwrap();
        assert_eq!(outcome.files, vec![out.clone()]);
        let text = fs::read_to_string(&out).unwrap();
        assert_eq!(text.lines().next().unwrap(), columns);
        assert_eq!(text.lines().count(), rows + 1, "{name}");
    }
}

#[test]
fn fig5_table_has_its_minimum_at_minus_half_pi() {
    let cfg = RunConfig::for_preset(presets::Preset::Fig5, "unused.csv".into());
    let table = &cli::compute(&cfg).unwrap()[0].table;
    let phi = table.column("phi").unwrap();
    let f = table.column("F").unwrap();
    let k = (0..f.len()).min_by(|&a, &b| f[a].total_cmp(&f[b])).unwrap();
    assert!((phi[k] + std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    assert!(f[k] < 0.0);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "spectrum", "grid=-100,100,501\n");
    cli::run(&cfg).unwrap();
    let first = fs::read(&cfg.output).unwrap();
    cli::run(&cfg).unwrap();
    assert_eq!(first, fs::read(&cfg.output).unwrap());
    assert!(!first.contains(&b'\r'));
}

#[test]
fn log_records_one_json_line_per_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "variance", "");
    cli::run(&cfg).unwrap();
    cli::run(&cfg).unwrap();
    let log = fs::read_to_string(cfg.log_path()).unwrap();
    let lines: Vec<serde_json::Value> = log
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let keys: Vec<&str> = line
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            ["checks_passed", "duration_s", "mode", "params", "run_id"]
        );
        assert_eq!(line["mode"], "variance");
        assert_eq!(line["params"]["omega3"], 10.0);
    }
    assert_ne!(lines[0]["run_id"], lines[1]["run_id"]);
}

#[test]
fn config_errors_are_reported_with_context() {
    let err = parse_config("mode=spectrum\ngamma1=-1\noutput=x.csv").unwrap_err();
    assert!(matches!(err, lambda_fluor::Error::Validation { ref key, .. } if key == "gamma1"));
    assert_eq!(err.exit_code(), 2);
    let err = parse_config("mode=spectrum\ngrid=1,0,10\noutput=x.csv").unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert_eq!(
        parse_config("mode=phi-sweep\noutput=x").unwrap().mode,
        Mode::PhiSweep
    );
}

#[test]
fn binary_runs_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let path = dir.path().join("run.cfg");
    fs::write(
        &path,
        format!(
            "mode=spectrum\n{FIG2A}grid=-50,50,21\noutput={}\n",
            out.display()
        ),
    )
    .unwrap();
    let status = Command::new(BIN)
        .arg("--config")
        .arg(&path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(fs::read_to_string(out).unwrap().lines().count(), 22);
}

#[test]
fn binary_runs_a_preset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig5.csv");
    let status = Command::new(BIN)
        .args(["--preset", "fig5", "--output"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(out.exists());
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| Command::new(BIN).args(args).output().unwrap().status.code();

    assert_eq!(run(&["--check"]), Some(0));
    assert_eq!(
        run(&["--preset", "fig2a", "--output", "/nonexistent/dir/out.csv"]),
        Some(2)
    );
    assert_eq!(run(&["--config", "/nonexistent/run.cfg"]), Some(2));
    assert_eq!(run(&[]), Some(2));

    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "mode=spectrum\nomega1=thirty\noutput=x.csv\n").unwrap();
    let out = Command::new(BIN)
        .arg("--config")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
