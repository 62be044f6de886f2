//! Flat `key=value` run configuration.
//!
//! ```text
//! # sideband spectrum with all three fields on
//! mode=spectrum
//! gamma1=0.1
//! delta1=15
//! delta2=-15
//! omega1=30
//! omega2=30
//! omega3=10
//! phi=0
//! theta=0
//! grid=-120,120,2001
//! output=out.csv
//! ```
//!
//! `#` starts a comment. Angles accept multiples of `pi` (`-pi/2`, `3pi/4`).
//! Unknown and repeated keys are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::presets::Preset;
use crate::error::{Error, Result};
use crate::model::{make_params, QuadraturePhase, RawParams, SystemParams};

const KEYS: &[&str] = &[
    "mode", "preset", "gamma1", "gamma2", "delta1", "delta2", "delta3", "omega1", "omega2",
    "omega3", "phi", "theta", "grid", "output", "log",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Spectrum,
    SpectrumOracle,
    Dressed,
    Variance,
    Omega3Sweep,
    PhiSweep,
    Preset,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Spectrum => "spectrum",
            Mode::SpectrumOracle => "spectrum-oracle",
            Mode::Dressed => "dressed",
            Mode::Variance => "variance",
            Mode::Omega3Sweep => "omega3-sweep",
            Mode::PhiSweep => "phi-sweep",
            Mode::Preset => "preset",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "spectrum" => Mode::Spectrum,
            "spectrum-oracle" => Mode::SpectrumOracle,
            "dressed" => Mode::Dressed,
            "variance" => Mode::Variance,
            "omega3-sweep" => Mode::Omega3Sweep,
            "phi-sweep" => Mode::PhiSweep,
            "preset" => Mode::Preset,
            other => return Err(format!("unknown mode `{other}`")),
        })
    }
}

/// `min,max,points` with at least two points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        crate::spectrum::uniform_grid(self.min, self.max, self.points)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: SystemParams,
    pub grid: Option<GridSpec>,
    pub theta: QuadraturePhase,
    pub output: PathBuf,
    pub preset: Option<Preset>,
    /// JSON-lines log; defaults to `<output>.log.jsonl`.
    pub log: Option<PathBuf>,
}

impl RunConfig {
    /// Configuration equivalent to `mode=preset`, `preset=<name>`.
    pub fn for_preset(preset: Preset, output: PathBuf) -> Self {
        Self {
            mode: Mode::Preset,
            params: preset.params(),
            grid: None,
            theta: QuadraturePhase::default(),
            output,
            preset: Some(preset),
            log: None,
        }
    }

    pub fn log_path(&self) -> PathBuf {
        self.log.clone().unwrap_or_else(|| {
            let mut name = self.output.clone().into_os_string();
            name.push(".log.jsonl");
            PathBuf::from(name)
        })
    }
}

/// Parses a number, allowing `pi` multiples such as `-pi/2` or `0.25*pi`.
pub fn parse_number(text: &str) -> Option<f64> {
    let s = text.trim();
    let Some(pos) = s.find("pi") else {
        return s.parse::<f64>().ok().filter(|v| v.is_finite());
    };
    let coeff = s[..pos].trim().trim_end_matches('*').trim();
    let coeff = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().ok()?,
    };
    let rest = s[pos + 2..].trim();
    let den = if rest.is_empty() {
        1.0
    } else {
        rest.strip_prefix('/')?.trim().parse::<f64>().ok()?
    };
    let v = coeff * std::f64::consts::PI / den;
    v.is_finite().then_some(v)
}

fn validation(key: &str, message: impl Into<String>) -> Error {
    Error::Validation {
        key: key.to_string(),
        message: message.into(),
    }
}

/// Parses and validates a configuration text.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (k, raw_line) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected key=value, got `{line}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unknown key `{key}`"),
            });
        }
        if entries.insert(key, (line_no, value)).is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
    }

    let number = |key: &str| -> Result<Option<f64>> {
        match entries.get(key) {
            None => Ok(None),
            Some(&(line, v)) => parse_number(v).map(Some).ok_or_else(|| Error::Parse {
                line,
                message: format!("`{key}`: cannot parse `{v}` as a number"),
            }),
        }
    };

    let mut raw = RawParams::default();
    for (key, slot) in [
        ("gamma1", &mut raw.gamma1),
        ("gamma2", &mut raw.gamma2),
        ("delta1", &mut raw.delta1),
        ("delta2", &mut raw.delta2),
        ("omega1", &mut raw.omega1),
        ("omega2", &mut raw.omega2),
        ("omega3", &mut raw.omega3),
        ("phi", &mut raw.phi),
    ] {
        if let Some(v) = number(key)? {
            *slot = v;
        }
    }
    raw.delta3 = number("delta3")?;
    let theta = number("theta")?.unwrap_or(0.0);

    let grid = match entries.get("grid") {
        None => None,
        Some(&(line, v)) => {
            let parts: Vec<&str> = v.split(',').map(str::trim).collect();
            let bad = || Error::Parse {
                line,
                message: format!("`grid` must be min,max,points, got `{v}`"),
            };
            if parts.len() != 3 {
                return Err(bad());
            }
            let min = parse_number(parts[0]).ok_or_else(bad)?;
            let max = parse_number(parts[1]).ok_or_else(bad)?;
            let points: usize = parts[2].parse().map_err(|_| bad())?;
            if points < 2 {
                return Err(validation("grid", "at least two points are required"));
            }
            if max <= min {
                return Err(validation("grid", "max must exceed min"));
            }
            Some(GridSpec { min, max, points })
        }
    };

    let mode: Mode = match entries.get("mode") {
        None => return Err(validation("mode", "missing")),
        Some(&(line, v)) => v
            .parse()
            .map_err(|message| Error::Parse { line, message })?,
    };
    let preset = match entries.get("preset") {
        None => None,
        Some(&(_, v)) => Some(v.parse::<Preset>().map_err(|m| validation("preset", m))?),
    };
    if mode == Mode::Preset && preset.is_none() {
        return Err(validation("preset", "mode=preset needs a preset name"));
    }
    if mode != Mode::Preset && preset.is_some() {
        return Err(validation("preset", "only valid with mode=preset"));
    }
    let output = match entries.get("output") {
        Some(&(_, v)) if !v.is_empty() => PathBuf::from(v),
        _ => return Err(validation("output", "missing")),
    };
    let log = entries.get("log").map(|&(_, v)| PathBuf::from(v));

    let params = match preset {
        Some(p) => p.params(),
        None => make_params(raw).map_err(|e| match e {
            Error::InvalidParams { name, reason } => validation(name, reason),
            other => other,
        })?,
    };
    Ok(RunConfig {
        mode,
        params,
        grid,
        theta: QuadraturePhase::new(theta).map_err(|e| validation("theta", e.to_string()))?,
        output,
        preset,
        log,
    })
}
