use std::collections::hash_map::DefaultHasher;
use std::fs::{self, OpenOptions};
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde_json::json;

use super::config::{Mode, RunConfig};
use super::presets::{self, Preset};
use crate::checks;
use crate::dressed;
use crate::error::{Error, Result};
use crate::liouville::{build_liouvillian, steady_state, to_density_matrix};
use crate::model::{QuadraturePhase, SystemParams};
use crate::spectrum::{self, OracleSettings};
use crate::variance;

/// 17 significant digits, round-trip exact.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// A CSV table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, values: &[f64]) {
        self.rows
            .push(values.iter().map(|v| format_value(*v)).collect());
    }

    /// Comma-separated, LF line endings, trailing newline.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses a numeric column back; non-numeric cells become NaN.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| *h == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| r[k].parse().unwrap_or(f64::NAN))
                .collect(),
        )
    }
}

/// A table plus the file-name suffix it is written under (`None` = main file).
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub suffix: Option<&'static str>,
    pub table: Table,
}

fn main(table: Table) -> Artifact {
    Artifact {
        suffix: None,
        table,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub checks_passed: bool,
    pub duration_s: f64,
    pub run_id: String,
}

fn spectrum_grid(params: &SystemParams, config: &RunConfig) -> Vec<f64> {
    match config.grid {
        Some(g) => g.values(),
        None => {
            let l = dressed::eigenvalues(params);
            spectrum::default_omega_grid(l[0] - l[2])
        }
    }
}

fn axis(config: &RunConfig, default: (f64, f64, usize)) -> Vec<f64> {
    match config.grid {
        Some(g) => g.values(),
        None => spectrum::uniform_grid(default.0, default.1, default.2),
    }
}

fn spectrum_values(
    params: &SystemParams,
    theta: QuadraturePhase,
    grid: &[f64],
) -> Result<Vec<f64>> {
    let sys = build_liouvillian(params);
    let psi = steady_state(&sys)?;
    Ok(spectrum::squeezing_spectrum(&sys, &psi, theta, grid)?.values)
}

fn omega3_table(params: &SystemParams, grid: &[f64]) -> Result<Table> {
    let mut t = Table::new(vec![
        "omega3",
        "F",
        "rho11",
        "rho22",
        "abs_rho12",
        "abs_rho13",
    ]);
    for p in variance::sweep_omega3(params, grid)? {
        t.push(&[p.omega3, p.f, p.rho11, p.rho22, p.rho12_abs, p.rho13_abs]);
    }
    Ok(t)
}

fn phi_table(params: &SystemParams, grid: &[f64]) -> Result<Table> {
    let mut t = Table::new(vec!["phi", "F"]);
    for (phi, f) in variance::sweep_phase(params, grid)? {
        t.push(&[phi, f]);
    }
    Ok(t)
}

fn dressed_artifacts(
    params: &SystemParams,
    theta: QuadraturePhase,
    grid: &[f64],
) -> Result<Vec<Artifact>> {
    let basis = dressed::diagonalize(params)?;
    let sys = build_liouvillian(params);
    let psi = steady_state(&sys)?;
    let pops = dressed::dressed_populations(&basis, &to_density_matrix(&psi)?);

    let mut states = Table::new(vec![
        "state",
        "lambda",
        "re_a1",
        "im_a1",
        "re_a2",
        "im_a2",
        "re_a3",
        "im_a3",
        "population",
    ]);
    for (i, (label, pop)) in dressed::LABELS.iter().zip(pops).enumerate() {
        let a = basis.column(i);
        let mut row = vec![label.to_string()];
        row.extend(
            [
                basis.lambdas[i],
                a[0].re,
                a[0].im,
                a[1].re,
                a[1].im,
                a[2].re,
                a[2].im,
                pop,
            ]
            .iter()
            .map(|v| format_value(*v)),
        );
        states.rows.push(row);
    }

    let mut pairs = Table::new(vec!["i", "j", "omega_ij", "gamma_ij", "weight"]);
    for i in 0..3 {
        for j in (i + 1)..3 {
            pairs.rows.push(vec![
                dressed::LABELS[i].to_string(),
                dressed::LABELS[j].to_string(),
                format_value(basis.splitting(i, j)),
                format_value(basis.gammas[(i, j)]),
                format_value(dressed::pair_weight(&basis, &pops, i, j, theta)),
            ]);
        }
    }

    let exact = spectrum::squeezing_spectrum(&sys, &psi, theta, grid)?;
    let approx = dressed::lorentzian_spectrum(&basis, params, &pops, theta, grid)?;
    let mut lor = Table::new(vec!["omega", "S_exact", "S_lorentzian"]);
    for ((w, e), m) in grid.iter().zip(&exact.values).zip(&approx.values) {
        lor.push(&[*w, *e, *m]);
    }
    Ok(vec![
        main(states),
        Artifact {
            suffix: Some("pairs"),
            table: pairs,
        },
        Artifact {
            suffix: Some("lorentzian"),
            table: lor,
        },
    ])
}

fn preset_artifacts(preset: Preset, config: &RunConfig) -> Result<Vec<Artifact>> {
    let params = preset.params();
    let theta = QuadraturePhase::default();
    match preset {
        Preset::Fig2a | Preset::Fig2b => {
            let grid = spectrum_grid(&params, config);
            let with = spectrum_values(&params, theta, &grid)?;
            let without = spectrum_values(&params.with_omega3(0.0)?, theta, &grid)?;
            let mut t = Table::new(vec!["omega", "S", "S_omega3_0"]);
            for ((w, a), b) in grid.iter().zip(with).zip(without) {
                t.push(&[*w, a, b]);
            }
            Ok(vec![main(t)])
        }
        Preset::Fig3 => {
            let grid = axis(config, presets::OMEGA3_AXIS);
            let mut t = Table::new(vec!["phi", "omega3", "F"]);
            for phi in [-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2] {
                for p in variance::sweep_omega3(&params.with_phi(phi)?, &grid)? {
                    t.push(&[phi, p.omega3, p.f]);
                }
            }
            Ok(vec![main(t)])
        }
        Preset::Fig4 => {
            let grid = axis(config, presets::OMEGA3_AXIS);
            let mut t = Table::new(vec!["omega3", "rho11", "rho22", "abs_rho12", "abs_rho13"]);
            for p in variance::sweep_omega3(&params, &grid)? {
                t.push(&[p.omega3, p.rho11, p.rho22, p.rho12_abs, p.rho13_abs]);
            }
            Ok(vec![main(t)])
        }
        Preset::Fig5 => Ok(vec![main(phi_table(
            &params,
            &axis(config, presets::PHI_AXIS),
        )?)]),
    }
}

/// Runs the numerics for a configuration without touching the filesystem.
pub fn compute(config: &RunConfig) -> Result<Vec<Artifact>> {
    let params = &config.params;
    let theta = config.theta;
    if matches!(
        config.mode,
        Mode::Variance | Mode::Omega3Sweep | Mode::PhiSweep
    ) && !variance::variance_squeezing_possible(params)
    {
        log::warn!(
            "gamma1 <= gamma2: total-variance squeezing is not expected on the detected transition"
        );
    }
    match config.mode {
        Mode::Spectrum => {
            let grid = spectrum_grid(params, config);
            let values = spectrum_values(params, theta, &grid)?;
            let mut t = Table::new(vec!["omega", "S"]);
            for (w, s) in grid.iter().zip(values) {
                t.push(&[*w, s]);
            }
            Ok(vec![main(t)])
        }
        Mode::SpectrumOracle => {
            let grid = spectrum_grid(params, config);
            let sys = build_liouvillian(params);
            let psi = steady_state(&sys)?;
            let exact = spectrum::squeezing_spectrum(&sys, &psi, theta, &grid)?;
            let oracle = spectrum::time_domain_spectrum_oracle(
                &sys,
                &psi,
                theta,
                &grid,
                OracleSettings::default(),
            )?;
            let mut t = Table::new(vec!["omega", "S_resolvent", "S_oracle"]);
            for ((w, e), o) in grid.iter().zip(&exact.values).zip(&oracle.values) {
                t.push(&[*w, *e, *o]);
            }
            Ok(vec![main(t)])
        }
        Mode::Dressed => dressed_artifacts(params, theta, &spectrum_grid(params, config)),
        Mode::Variance => {
            let r = variance::squeezing_report(params)?;
            let mut t = Table::new(vec![
                "F",
                "F_analytic",
                "theta_opt",
                "rho11",
                "abs_rho13",
                "phi31",
            ]);
            t.rows.push(vec![
                format_value(r.f_numeric),
                r.f_analytic.map(format_value).unwrap_or_default(),
                format_value(r.theta_opt),
                format_value(r.rho11),
                format_value(r.rho13_abs),
                format_value(r.phi31),
            ]);
            Ok(vec![main(t)])
        }
        Mode::Omega3Sweep => Ok(vec![main(omega3_table(
            params,
            &axis(config, presets::OMEGA3_AXIS),
        )?)]),
        Mode::PhiSweep => Ok(vec![main(phi_table(
            params,
            &axis(config, presets::PHI_AXIS),
        )?)]),
        Mode::Preset => {
            let preset = config.preset.ok_or_else(|| Error::Validation {
                key: "preset".into(),
                message: "mode=preset needs a preset name".into(),
            })?;
            preset_artifacts(preset, config)
        }
    }
}

/// `out.csv` + `pairs` → `out_pairs.csv`.
pub fn artifact_path(output: &Path, suffix: Option<&str>) -> PathBuf {
    let Some(suffix) = suffix else {
        return output.to_path_buf();
    };
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match output.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    output.with_file_name(name)
}

fn io_error(context: String) -> impl FnOnce(std::io::Error) -> Error {
    move |source| Error::Io { context, source }
}

fn run_id(config: &RunConfig) -> String {
    let mut h = DefaultHasher::new();
    format!("{config:?}").hash(&mut h);
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0)
        .hash(&mut h);
    std::process::id().hash(&mut h);
    format!("{:016x}", h.finish())
}

fn params_json(config: &RunConfig) -> serde_json::Value {
    let p = &config.params;
    json!({
        "gamma1": p.gamma1(),
        "gamma2": p.gamma2(),
        "delta1": p.delta1(),
        "delta2": p.delta2(),
        "delta3": p.delta3(),
        "omega1": p.omega1(),
        "omega2": p.omega2(),
        "omega3": p.omega3(),
        "phi": p.phi(),
        "theta": config.theta.radians(),
        "preset": config.preset.map(|p| p.name()),
    })
}

/// Computes, writes the CSV file(s) and appends one line to the run log.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let start = Instant::now();
    let artifacts = compute(config)?;
    let checks_passed = checks::steady_state_checks(&config.params)
        .iter()
        .all(|c| c.passed);

    let mut files = Vec::with_capacity(artifacts.len());
    for a in &artifacts {
        let path = artifact_path(&config.output, a.suffix);
        fs::write(&path, a.table.to_csv())
            .map_err(io_error(format!("writing {}", path.display())))?;
        files.push(path);
    }

    let duration_s = start.elapsed().as_secs_f64();
    let run_id = run_id(config);
    let line = json!({
        "run_id": run_id,
        "mode": config.mode.name(),
        "params": params_json(config),
        "duration_s": duration_s,
        "checks_passed": checks_passed,
    });
    let log_path = config.log_path();
    let mut log = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&log_path)
        .map_err(io_error(format!("opening log {}", log_path.display())))?;
    writeln!(log, "{line}").map_err(io_error(format!("writing log {}", log_path.display())))?;

    Ok(RunOutcome {
        files,
        checks_passed,
        duration_s,
        run_id,
    })
}
