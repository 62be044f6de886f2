//! Built-in invariant suite behind `--check`.
//!
//! The generator is compared against the Lindblad form
//! ρ̇ = −i[H, ρ] + Σₖ (CₖρCₖ† − ½{Cₖ†Cₖ, ρ}) with jump operators
//! C₁ = √(2γ₁)|3⟩⟨1| and C₂ = √(2γ₂)|2⟩⟨1|, built from the 3×3 Hamiltonian
//! rather than from the vectorized equations.

use std::f64::consts::PI;

use nalgebra::{Complex, Matrix3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cli::Preset;
use crate::dressed;
use crate::liouville::{build_liouvillian, steady_state, to_density_matrix, StateVector, C64};
use crate::model::{make_params, QuadraturePhase, RawParams, SystemParams};
use crate::spectrum::{self, OracleSettings};
use crate::variance;

/// Tolerance of the generator-vs-Lindblad comparison, relative to the scale
/// of the rates involved.
pub const GENERATOR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

/// Right-hand side of the master equation for a full 3×3 ρ.
pub fn lindblad_rhs(params: &SystemParams, rho: &Matrix3<C64>) -> Matrix3<C64> {
    let h = dressed::hamiltonian(params);
    let i = Complex::new(0.0, 1.0);
    let mut out = -(h * rho - rho * h) * i;
    for (rate, target) in [(params.gamma1(), 2), (params.gamma2(), 1)] {
        let mut jump = Matrix3::<C64>::zeros();
        jump[(target, 0)] = Complex::new((2.0 * rate).sqrt(), 0.0);
        let jj = jump.adjoint() * jump;
        out += jump * rho * jump.adjoint() - (jj * rho + rho * jj) * Complex::new(0.5, 0.0);
    }
    out
}

/// Random parameters over the ranges the crate is used in.
pub fn random_params<R: Rng>(rng: &mut R) -> SystemParams {
    make_params(RawParams {
        gamma1: rng.gen_range(0.05..20.0),
        gamma2: 1.0,
        delta1: rng.gen_range(-20.0..20.0),
        delta2: rng.gen_range(-20.0..20.0),
        delta3: None,
        omega1: rng.gen_range(0.5..30.0),
        omega2: rng.gen_range(0.5..30.0),
        omega3: rng.gen_range(0.0..10.0),
        phi: rng.gen_range(-PI..PI),
    })
    .expect("sampled ranges are valid")
}

/// Random density matrix AA†/tr(AA†).
pub fn random_density_matrix<R: Rng>(rng: &mut R) -> Matrix3<C64> {
    let a =
        Matrix3::from_fn(|_, _| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let rho = a * a.adjoint();
    let tr = rho.trace();
    rho / tr
}

fn rate_scale(params: &SystemParams) -> f64 {
    [
        params.gamma1() + params.gamma2(),
        params.delta1().abs(),
        params.delta2().abs(),
        params.omega1(),
        params.omega2(),
        params.omega3(),
    ]
    .into_iter()
    .fold(1.0, f64::max)
}

/// Largest relative mismatch between LΨ + I and the Lindblad right-hand side.
pub fn generator_mismatch(params: &SystemParams, rho: &Matrix3<C64>) -> f64 {
    let sys = build_liouvillian(params);
    let vectorized = sys.rhs(&StateVector::from_matrix(rho));
    let direct = StateVector::from_matrix(&lindblad_rhs(params, rho));
    vectorized.max_deviation(&direct) / rate_scale(params)
}

/// Physicality of the steady state at one parameter set.
pub fn steady_state_checks(params: &SystemParams) -> Vec<CheckResult> {
    let sys = build_liouvillian(params);
    let psi = match steady_state(&sys) {
        Ok(psi) => psi,
        Err(e) => {
            return vec![CheckResult::new(
                "steady state solvable",
                false,
                e.to_string(),
            )]
        }
    };
    let residual = sys.rhs(&psi).max_deviation(&StateVector::zeros());
    let mut out = vec![
        CheckResult::new("steady state solvable", true, String::new()),
        CheckResult::new(
            "steady-state residual",
            residual < 1e-10,
            format!("|LΨ + I| = {residual:.3e}"),
        ),
    ];
    match to_density_matrix(&psi) {
        Ok(rho) => {
            let trace = (rho.trace() - Complex::new(1.0, 0.0)).norm();
            let herm = rho.hermiticity_deviation();
            let min_eig = rho.eigenvalues()[0];
            let lind = StateVector::from_matrix(&lindblad_rhs(params, rho.matrix()))
                .max_deviation(&StateVector::zeros());
            out.push(CheckResult::new(
                "unit trace and Hermitian",
                trace < 1e-12 && herm < 1e-10,
                format!("trace error {trace:.3e}, hermiticity {herm:.3e}"),
            ));
            out.push(CheckResult::new(
                "positive semidefinite",
                min_eig > -1e-10,
                format!("smallest eigenvalue {min_eig:.3e}"),
            ));
            out.push(CheckResult::new(
                "stationary under Lindblad form",
                lind < 1e-9 * rate_scale(params),
                format!("|ρ̇| = {lind:.3e}"),
            ));
        }
        Err(e) => out.push(CheckResult::new(
            "unit trace and Hermitian",
            false,
            e.to_string(),
        )),
    }
    out
}

fn generator_fidelity(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let worst = (0..samples)
        .map(|_| {
            let params = random_params(rng);
            let rho = random_density_matrix(rng);
            generator_mismatch(&params, &rho)
        })
        .fold(0.0, f64::max);
    CheckResult::new(
        "generator matches Lindblad form",
        worst < GENERATOR_TOLERANCE,
        format!("worst relative mismatch {worst:.3e} over {samples} samples"),
    )
}

fn random_steady_states(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let failures: Vec<String> = (0..samples)
        .flat_map(|_| steady_state_checks(&random_params(rng)))
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    CheckResult::new(
        "random steady states physical",
        failures.is_empty(),
        failures
            .first()
            .cloned()
            .unwrap_or_else(|| format!("{samples} samples")),
    )
}

fn phase_decoupling() -> CheckResult {
    let base = Preset::Fig2a.params().with_omega3(0.0).expect("valid");
    let states: Vec<StateVector> = [-2.0, 0.0, 1.0, PI]
        .iter()
        .map(|&phi| {
            steady_state(&build_liouvillian(&base.with_phi(phi).expect("valid"))).expect("solvable")
        })
        .collect();
    let worst = states
        .iter()
        .map(|s| s.max_deviation(&states[0]))
        .fold(0.0, f64::max);
    CheckResult::new(
        "Φ has no effect at Ω₃ = 0",
        worst < 1e-12,
        format!("largest steady-state spread {worst:.3e}"),
    )
}

fn dressed_closed_form() -> CheckResult {
    let mut worst: f64 = 0.0;
    for preset in [Preset::Fig2a, Preset::Fig2b] {
        let params = preset.params();
        let Ok(basis) = dressed::diagonalize(&params) else {
            return CheckResult::new("closed-form dressed states", false, "degenerate".into());
        };
        for k in 0..3 {
            let Some(a) = dressed::closed_form_coefficients(&params, basis.lambdas[k]) else {
                return CheckResult::new("closed-form dressed states", false, "undefined".into());
            };
            // compare up to a global phase
            let overlap = basis.column(k).dotc(&a).norm();
            worst = worst.max((1.0 - overlap).abs());
        }
    }
    CheckResult::new(
        "closed-form dressed states",
        worst < 1e-9,
        format!("largest overlap defect {worst:.3e}"),
    )
}

fn spectrum_cross_check() -> CheckResult {
    let params = Preset::Fig2a.params();
    let sys = build_liouvillian(&params);
    let psi = steady_state(&sys).expect("solvable");
    let theta = QuadraturePhase::default();
    let grid = spectrum::uniform_grid(-100.0, 100.0, 81);
    let exact = spectrum::squeezing_spectrum(&sys, &psi, theta, &grid);
    let oracle =
        spectrum::time_domain_spectrum_oracle(&sys, &psi, theta, &grid, OracleSettings::default());
    match (exact, oracle) {
        (Ok(e), Ok(o)) => {
            let worst = e
                .values
                .iter()
                .zip(&o.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                / e.peak_abs();
            CheckResult::new(
                "resolvent spectrum matches time-domain regression",
                worst < 1e-3,
                format!("largest deviation {worst:.3e} of the peak"),
            )
        }
        (Err(e), _) | (_, Err(e)) => CheckResult::new(
            "resolvent spectrum matches time-domain regression",
            false,
            e.to_string(),
        ),
    }
}

fn analytic_variance() -> CheckResult {
    let params = Preset::Fig5.params();
    match variance::squeezing_report(&params) {
        Ok(r) => {
            let diff = r
                .f_analytic
                .map(|a| (a - r.f_numeric).abs())
                .unwrap_or(f64::INFINITY);
            CheckResult::new(
                "closed-form F matches steady state",
                diff < 1e-10,
                format!("difference {diff:.3e}"),
            )
        }
        Err(e) => CheckResult::new("closed-form F matches steady state", false, e.to_string()),
    }
}

/// The full suite, seeded for reproducibility.
pub fn run_checks(seed: u64, samples: usize) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        generator_fidelity(&mut rng, samples),
        random_steady_states(&mut rng, samples),
        phase_decoupling(),
        dressed_closed_form(),
        spectrum_cross_check(),
        analytic_variance(),
    ];
    for preset in crate::cli::presets::ALL {
        if let Some(bad) = steady_state_checks(&preset.params())
            .into_iter()
            .find(|c| !c.passed)
        {
            out.push(CheckResult::new(
                "preset steady states physical",
                false,
                format!("{preset}: {}", bad.detail),
            ));
            return out;
        }
    }
    out.push(CheckResult::new(
        "preset steady states physical",
        true,
        String::new(),
    ));
    out
}
