//! Total-variance squeezing of the |1⟩↔|3⟩ fluorescence.
//!
//! The normally ordered quadrature variance of the source field is
//! 2ρ11 − 4|ρ13|² cos²(θ − φ31), with φ31 the phase of ρ31. Minimizing over θ
//! gives the squeezing parameter F = 2ρ11 − 4|ρ13|²; F < 0 is squeezing.
//! Values are in units of |μ₁₃|²f(r)².

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::liouville::{build_liouvillian, steady_state, StateVector};
use crate::model::SystemParams;

/// Grid step of the Ω₃ scan that seeds the golden-section search.
pub const OMEGA3_SCAN_STEP: f64 = 0.05;

/// Bracket width at which the golden-section search stops.
pub const OMEGA3_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingReport {
    pub f_numeric: f64,
    /// Closed form, present only for Δ₁ = Δ₂ = 0 and Ω₁ = Ω₂.
    pub f_analytic: Option<f64>,
    /// Optimal quadrature angle in [0, π).
    pub theta_opt: f64,
    pub rho11: f64,
    pub rho13_abs: f64,
    /// Phase of ρ31.
    pub phi31: f64,
}

/// Normally ordered variance of the θ quadrature in the steady state.
pub fn quadrature_variance(psi: &StateVector, theta: f64) -> f64 {
    let r13 = psi.rho13().norm();
    let phi31 = psi.rho31().arg();
    2.0 * psi.rho11() - 4.0 * r13 * r13 * (theta - phi31).cos().powi(2)
}

/// F = 2ρ11 − 4|ρ13|² from a steady state.
pub fn squeezing_parameter(psi: &StateVector) -> SqueezingReport {
    let rho13_abs = psi.rho13().norm();
    let phi31 = psi.rho31().arg();
    let mut theta_opt = phi31.rem_euclid(PI);
    if theta_opt >= PI {
        theta_opt -= PI;
    }
    SqueezingReport {
        f_numeric: 2.0 * psi.rho11() - 4.0 * rho13_abs * rho13_abs,
        f_analytic: None,
        theta_opt,
        rho11: psi.rho11(),
        rho13_abs,
        phi31,
    }
}

/// Steady state plus the numeric and, where defined, analytic F.
pub fn squeezing_report(params: &SystemParams) -> Result<SqueezingReport> {
    let psi = steady_state(&build_liouvillian(params))?;
    let mut report = squeezing_parameter(&psi);
    if params.is_resonant_equal_rabi() {
        report.f_analytic = Some(squeezing_parameter_analytic(params)?);
    }
    Ok(report)
}

/// Variance squeezing needs the detected transition to decay faster than
/// the other one.
pub fn variance_squeezing_possible(params: &SystemParams) -> bool {
    params.gamma1() > params.gamma2()
}

/// Auxiliary polynomials of the resonant equal-Rabi closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticTerms {
    pub g: f64,
    pub h: f64,
    /// Scalar denominator (unrelated to the resolvent matrix).
    pub m: f64,
}

pub fn analytic_terms(params: &SystemParams) -> Result<AnalyticTerms> {
    if !params.is_resonant_equal_rabi() {
        return Err(Error::OutsideAnalyticRegime(
            "delta1 = delta2 = 0 and omega1 = omega2",
        ));
    }
    let w = params.omega1();
    let w2 = w * w;
    let w3 = params.omega3();
    let w3_2 = w3 * w3;
    let (g1, g2) = (params.gamma1(), params.gamma2());
    let gs2 = (g1 + g2).powi(2);
    let (s, c2) = (params.phi().sin(), (2.0 * params.phi()).cos());

    let g = w2 * w2 + w3_2 * w3_2 + w3_2 * (gs2 + w2);
    let h = 2.0 * w3 * s * ((g1 + g2) * w3_2 - 2.0 * g1 * w2) + 3.0 * w2 * w3_2 * c2;
    let m = 2.0 * w2 * w2 - w2 * w3_2
        + 2.0 * w3_2 * (gs2 + w3_2)
        + w2 * w3 * (2.0 * (g1 - g2) * s - 3.0 * w3 * c2);
    Ok(AnalyticTerms { g, h, m })
}

/// F = 4Ω²Ω₃² sin²Φ (G − H) / M² for Δ₁ = Δ₂ = 0, Ω₁ = Ω₂ = Ω.
pub fn squeezing_parameter_analytic(params: &SystemParams) -> Result<f64> {
    let t = analytic_terms(params)?;
    let prefactor =
        4.0 * params.omega1().powi(2) * params.omega3().powi(2) * params.phi().sin().powi(2);
    if prefactor == 0.0 {
        return Ok(0.0);
    }
    Ok(prefactor * (t.g - t.h) / (t.m * t.m))
}

/// Steady-state quantities at one Ω₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Omega3Point {
    pub omega3: f64,
    pub f: f64,
    pub rho11: f64,
    pub rho22: f64,
    pub rho12_abs: f64,
    pub rho13_abs: f64,
}

pub fn omega3_point(params: &SystemParams, omega3: f64) -> Result<Omega3Point> {
    let p = params.with_omega3(omega3)?;
    let psi = steady_state(&build_liouvillian(&p))?;
    Ok(Omega3Point {
        omega3,
        f: squeezing_parameter(&psi).f_numeric,
        rho11: psi.rho11(),
        rho22: psi.rho22(),
        rho12_abs: psi.rho12().norm(),
        rho13_abs: psi.rho13().norm(),
    })
}

/// Evaluates [`omega3_point`] over a grid, preserving grid order.
pub fn sweep_omega3(params: &SystemParams, grid: &[f64]) -> Result<Vec<Omega3Point>> {
    grid.par_iter().map(|&w| omega3_point(params, w)).collect()
}

/// Result of [`minimize_over_omega3`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Omega3Minimum {
    pub omega3: f64,
    pub f_min: f64,
    /// Steady-state ρ22 and |ρ12| at the minimizer.
    pub rho22: f64,
    pub rho12_abs: f64,
    /// True when the minimum sits on an end of the search range.
    pub at_boundary: bool,
}

/// Grid scan followed by golden-section refinement around the best point.
pub fn minimize_over_omega3(params: &SystemParams, range: (f64, f64)) -> Result<Omega3Minimum> {
    let (lo, hi) = range;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParams {
            name: "omega3_range",
            reason: format!("need 0 < min < max, got ({lo}, {hi})"),
        });
    }
    let n = ((hi - lo) / OMEGA3_SCAN_STEP).ceil().max(2.0) as usize + 1;
    let grid = crate::spectrum::uniform_grid(lo, hi, n);
    let scan = sweep_omega3(params, &grid)?;
    let best = (0..scan.len())
        .min_by(|&a, &b| scan[a].f.total_cmp(&scan[b].f))
        .unwrap_or(0);

    let f = |w: f64| omega3_point(params, w).map(|p| p.f);
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(n - 1)];
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > OMEGA3_TOLERANCE {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        }
    }
    let refined = omega3_point(params, 0.5 * (a + b))?;
    let point = if refined.f <= scan[best].f {
        refined
    } else {
        scan[best]
    };
    let span = hi - lo;
    Ok(Omega3Minimum {
        omega3: point.omega3,
        f_min: point.f,
        rho22: point.rho22,
        rho12_abs: point.rho12_abs,
        at_boundary: (point.omega3 - lo) < 1e-3 * span || (hi - point.omega3) < 1e-3 * span,
    })
}

/// Numeric F at each relative phase, in grid order.
pub fn sweep_phase(params: &SystemParams, phis: &[f64]) -> Result<Vec<(f64, f64)>> {
    phis.par_iter()
        .map(|&phi| {
            let p = params.with_phi(phi)?;
            let psi = steady_state(&build_liouvillian(&p))?;
            Ok((phi, squeezing_parameter(&psi).f_numeric))
        })
        .collect()
}
