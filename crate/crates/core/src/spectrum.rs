//! Squeezing spectrum of the light scattered on |1⟩↔|3⟩.
//!
//! Two-time correlations ⟨ΔA_k(t+τ) ΔA₃₁(t)⟩ obey dU/dτ = L U by the quantum
//! regression theorem, where the operators A_k run through
//!
//! ```text
//! (A11, A22, A21, A12, A31, A13, A32, A23)
//! ```
//!
//! so that ⟨A_k⟩ is exactly the k-th component of the state vector. Laplace
//! transforming both time orderings gives the resolvent sum
//! M(ω) = (iω − L)⁻¹ + (−iω − L)⁻¹ and
//!
//! ```text
//! S(ω, θ) = Re Σ_k [ M_{A31,k} U_k e^{2iθ} + M_{A13,k} U_k ]
//! ```
//!
//! in units of |μ₁₃|²f(r)²/(πγ₂). Negative values mark spectral squeezing.

use std::f64::consts::PI;

use nalgebra::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::liouville::{idx, Generator, LiouvilleSystem, StateVector, Vector8, C64, CONDITION_CAP};
use crate::model::QuadraturePhase;

/// ∫ S(ω, θ) dω = SUM_RULE_FACTOR · ⟨:[ΔE(θ)]²:⟩ in scaled units.
///
/// The time-domain form is S(ω) = 2∫₀^∞ cos(ωτ) g(τ) dτ with
/// g(τ) = Re[U_{A31}(τ) e^{2iθ} + U_{A13}(τ)], so the ω-integral is 2π g(0),
/// and g(0) is half the normally ordered variance.
pub const SUM_RULE_FACTOR: f64 = PI;

/// Default oracle step in τ (units of 1/γ₂).
pub const DEFAULT_DTAU: f64 = 0.005;

/// Default oracle horizon, in units of the inverse spectral gap of L.
pub const DEFAULT_HORIZON_GAPS: f64 = 40.0;

/// Correlation must have decayed below this fraction of its initial size.
pub const HORIZON_RESIDUAL: f64 = 1e-8;

// Operator positions: ⟨A_mn⟩ = ρ_nm, so A31 sits where ρ13 does.
const A31: usize = idx::RHO13;
const A13: usize = idx::RHO31;
const A23: usize = idx::RHO32;

/// Equal-time covariances ⟨ΔA_k ΔA₃₁⟩ in the steady state, operator order
/// (A11, A22, A21, A12, A31, A13, A32, A23).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceVector(pub Vector8);

/// Sampled squeezing spectrum for one quadrature angle.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub theta: QuadraturePhase,
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
    /// Largest |Im| of the complex assembly before the real part was taken.
    pub max_imag_residue: f64,
}

impl SpectrumResult {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn peak_abs(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Minimum over the samples with ω in [lo, hi].
    pub fn min_in(&self, lo: f64, hi: f64) -> Option<f64> {
        self.omegas
            .iter()
            .zip(&self.values)
            .filter(|(w, _)| **w >= lo && **w <= hi)
            .map(|(_, v)| *v)
            .reduce(f64::min)
    }

    /// Interior local extrema as (ω, S, is_maximum).
    pub fn local_extrema(&self) -> Vec<(f64, f64, bool)> {
        let v = &self.values;
        (1..v.len().saturating_sub(1))
            .filter_map(|k| {
                if v[k] > v[k - 1] && v[k] > v[k + 1] {
                    Some((self.omegas[k], v[k], true))
                } else if v[k] < v[k - 1] && v[k] < v[k + 1] {
                    Some((self.omegas[k], v[k], false))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Trapezoidal ω-integral over the sampled grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.omegas, &self.values)
    }
}

/// ⟨A_ij A₃₁⟩ = δ_{j3}⟨A_i1⟩, minus the product of the means.
pub fn equal_time_covariances(psi_ss: &StateVector) -> CovarianceVector {
    let v = psi_ss.as_vector();
    let mean_a31 = v[idx::RHO13];
    let mut u = -v * mean_a31;
    // A13·A31 = A11 and A23·A31 = A21
    u[A13] += v[idx::RHO11];
    u[A23] += v[idx::RHO12];
    CovarianceVector(u)
}

fn shifted_inverse(sys: &LiouvilleSystem, s: C64, omega: f64) -> Result<Generator> {
    let m = Generator::identity() * s - sys.generator();
    let (inv, condition) = linalg::inverse_with_condition(&m).ok_or(Error::ResolventSingular {
        omega,
        condition: f64::INFINITY,
    })?;
    if condition > CONDITION_CAP {
        return Err(Error::ResolventSingular { omega, condition });
    }
    Ok(inv)
}

/// M(ω) = (iω − L)⁻¹ + (−iω − L)⁻¹.
pub fn resolvent(sys: &LiouvilleSystem, omega: f64) -> Result<Generator> {
    let plus = shifted_inverse(sys, Complex::new(0.0, omega), omega)?;
    let minus = shifted_inverse(sys, Complex::new(0.0, -omega), omega)?;
    Ok(plus + minus)
}

fn check_grid(omegas: &[f64]) -> Result<()> {
    if omegas.iter().any(|w| !w.is_finite()) {
        return Err(Error::InvalidParams {
            name: "omega_grid",
            reason: "frequencies must be finite".into(),
        });
    }
    if omegas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams {
            name: "omega_grid",
            reason: "grid must be strictly increasing".into(),
        });
    }
    Ok(())
}

fn assemble(row_a31: C64, row_a13: C64, theta: QuadraturePhase) -> C64 {
    row_a31 * Complex::from_polar(1.0, 2.0 * theta.radians()) + row_a13
}

/// Squeezing spectrum from the resolvent, one 8×8 solve pair per ω.
pub fn squeezing_spectrum(
    sys: &LiouvilleSystem,
    psi_ss: &StateVector,
    theta: QuadraturePhase,
    omegas: &[f64],
) -> Result<SpectrumResult> {
    check_grid(omegas)?;
    let u = equal_time_covariances(psi_ss).0;
    let samples: Vec<C64> = omegas
        .par_iter()
        .map(|&w| {
            let m = resolvent(sys, w)?;
            let mu = m * u;
            Ok(assemble(mu[A31], mu[A13], theta))
        })
        .collect::<Result<_>>()?;
    Ok(SpectrumResult {
        theta,
        omegas: omegas.to_vec(),
        values: samples.iter().map(|z| z.re).collect(),
        max_imag_residue: samples.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
    })
}

/// Settings of the time-domain cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    pub dtau: f64,
    /// τ-integration horizon; `None` picks [`DEFAULT_HORIZON_GAPS`] over the gap.
    pub horizon: Option<f64>,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self {
            dtau: DEFAULT_DTAU,
            horizon: None,
        }
    }
}

/// Samples g(τ) = Re[U_{A31}(τ)e^{2iθ} + U_{A13}(τ)] on a uniform τ grid.
///
/// U is propagated with the exact one-step map e^{L·dτ}.
pub fn regression_correlation(
    sys: &LiouvilleSystem,
    psi_ss: &StateVector,
    theta: QuadraturePhase,
    settings: OracleSettings,
) -> Result<Vec<f64>> {
    if !(settings.dtau > 0.0 && settings.dtau.is_finite()) {
        return Err(Error::InvalidParams {
            name: "dtau",
            reason: format!("must be positive, got {}", settings.dtau),
        });
    }
    let u0 = equal_time_covariances(psi_ss).0;
    let size0 = u0.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if size0 == 0.0 {
        return Ok(vec![0.0]);
    }
    let gap = sys.spectral_gap();
    let min_horizon = 10.0 / gap;
    let horizon = settings.horizon.unwrap_or(DEFAULT_HORIZON_GAPS / gap);
    if horizon.is_nan() || horizon < min_horizon {
        return Err(Error::HorizonTooShort {
            horizon,
            residual: (-gap * horizon).exp(),
        });
    }
    let steps = (horizon / settings.dtau).ceil() as usize;
    let step = (sys.generator() * Complex::new(settings.dtau, 0.0)).exp();
    let phase = Complex::from_polar(1.0, 2.0 * theta.radians());

    let mut u = u0;
    let mut g = Vec::with_capacity(steps + 1);
    for _ in 0..=steps {
        g.push((u[A31] * phase + u[A13]).re);
        u = step * u;
    }
    let residual = u.iter().map(|z| z.norm()).fold(0.0, f64::max) / size0;
    if residual > HORIZON_RESIDUAL {
        return Err(Error::HorizonTooShort {
            horizon: steps as f64 * settings.dtau,
            residual,
        });
    }
    Ok(g)
}

/// Time-domain cross-check of [`squeezing_spectrum`]: regression in τ, then a
/// trapezoidal cosine transform S(ω) = 2∫₀^T cos(ωτ) g(τ) dτ.
pub fn time_domain_spectrum_oracle(
    sys: &LiouvilleSystem,
    psi_ss: &StateVector,
    theta: QuadraturePhase,
    omegas: &[f64],
    settings: OracleSettings,
) -> Result<SpectrumResult> {
    check_grid(omegas)?;
    let g = regression_correlation(sys, psi_ss, theta, settings)?;
    let dtau = settings.dtau;
    let last = g.len() - 1;
    let values = omegas
        .par_iter()
        .map(|&w| {
            let sum: f64 = g
                .iter()
                .enumerate()
                .map(|(n, gn)| {
                    let weight = if n == 0 || n == last { 0.5 } else { 1.0 };
                    weight * gn * (w * n as f64 * dtau).cos()
                })
                .sum();
            2.0 * sum * dtau
        })
        .collect();
    Ok(SpectrumResult {
        theta,
        omegas: omegas.to_vec(),
        values,
        max_imag_residue: 0.0,
    })
}

/// `points` evenly spaced values on [min, max].
pub fn uniform_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![min],
        n => {
            let step = (max - min) / (n - 1) as f64;
            (0..n)
                .map(|k| {
                    if k == n - 1 {
                        max
                    } else {
                        min + step * k as f64
                    }
                })
                .collect()
        }
    }
}

/// Default grid: 2001 points over ±1.5 times the widest dressed splitting.
pub fn default_omega_grid(max_splitting: f64) -> Vec<f64> {
    let half = 1.5 * max_splitting.max(1.0);
    uniform_grid(-half, half, 2001)
}

/// Symmetric grid with a uniform core on [−core, core] and geometric tails
/// out to ±tail; used for ω-integrals whose integrand falls off as 1/ω².
pub fn wide_grid(core: f64, core_points: usize, tail: f64, tail_points: usize) -> Vec<f64> {
    let mut right: Vec<f64> = uniform_grid(0.0, core, core_points.div_ceil(2).max(2));
    let ratio = (tail / core).powf(1.0 / tail_points as f64);
    let mut w = core;
    for _ in 0..tail_points {
        w *= ratio;
        right.push(w);
    }
    let mut grid: Vec<f64> = right.iter().skip(1).rev().map(|w| -w).collect();
    grid.extend(right);
    grid
}

pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}
