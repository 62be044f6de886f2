//! The vectorized generator against two independent forms of the master
//! equation: the nine Bloch equations written out by hand, and the Lindblad
//! commutator form built from the 3×3 Hamiltonian.

use lambda_fluor::checks::{
    lindblad_rhs, random_density_matrix, random_params, GENERATOR_TOLERANCE,
};
use lambda_fluor::liouville::{evolve, evolve_exact, idx::*, DEFAULT_DT};
use lambda_fluor::{
    build_liouvillian, steady_state, to_density_matrix, StateVector, SystemParams, C64,
};
use nalgebra::{Complex, Matrix3, SVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ci(x: f64) -> C64 {
    Complex::new(0.0, x)
}

/// dΨ/dt written element by element, ρ33 = 1 − ρ11 − ρ22.
fn bloch_rhs(p: &SystemParams, v: &[C64; 8]) -> [C64; 8] {
    let g = p.gamma1() + p.gamma2();
    let (d1, d2) = (p.delta1(), p.delta2());
    let d12 = d1 - d2;
    let (o1, o2, o3) = (p.omega1(), p.omega2(), p.omega3());
    let e = Complex::from_polar(1.0, p.phi());
    let (r11, r22, r12, r21, r13, r31, r23, r32) = (
        v[RHO11], v[RHO22], v[RHO12], v[RHO21], v[RHO13], v[RHO31], v[RHO23], v[RHO32],
    );
    let r33 = Complex::new(1.0, 0.0) - r11 - r22;

    let mut out = [Complex::new(0.0, 0.0); 8];
    out[RHO11] = -2.0 * g * r11 + ci(o2) * (r21 - r12) + ci(o1) * (r31 - r13);
    out[RHO22] =
        2.0 * p.gamma2() * r11 + ci(o2) * (r12 - r21) + ci(o3) * (e * r32 - e.conj() * r23);
    out[RHO12] =
        Complex::new(-g, d2) * r12 + ci(o2) * (r22 - r11) + ci(o1) * r32 - ci(o3) * e.conj() * r13;
    out[RHO21] =
        Complex::new(-g, -d2) * r21 - ci(o2) * (r22 - r11) - ci(o1) * r23 + ci(o3) * e * r31;
    out[RHO13] =
        Complex::new(-g, d1) * r13 + ci(o2) * r23 + ci(o1) * (r33 - r11) - ci(o3) * e * r12;
    out[RHO31] =
        Complex::new(-g, -d1) * r31 - ci(o2) * r32 - ci(o1) * (r33 - r11) + ci(o3) * e.conj() * r21;
    out[RHO23] = ci(d12) * r23 + ci(o2) * r13 + ci(o3) * e * (r33 - r22) - ci(o1) * r21;
    out[RHO32] = -ci(d12) * r32 - ci(o2) * r31 - ci(o3) * e.conj() * (r33 - r22) + ci(o1) * r12;
    out
}

fn scale(p: &SystemParams) -> f64 {
    [
        p.gamma1() + 1.0,
        p.delta1().abs(),
        p.delta2().abs(),
        p.omega1(),
        p.omega2(),
        p.omega3(),
    ]
    .into_iter()
    .fold(1.0, f64::max)
}

#[test]
fn generator_matches_hand_written_equations() {
    // arbitrary complex vectors, not only physical states: the map is affine
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let v: [C64; 8] = std::array::from_fn(|_| {
            Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let got = build_liouvillian(&p).rhs(&StateVector(SVector::from(v)));
        let want = StateVector(SVector::from(bloch_rhs(&p, &v)));
        let err = got.max_deviation(&want) / scale(&p);
        assert!(
            err < GENERATOR_TOLERANCE,
            "relative mismatch {err:e} at {p:?}"
        );
    }
}

#[test]
fn generator_matches_lindblad_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let rho = random_density_matrix(&mut rng);
        let got = build_liouvillian(&p).rhs(&StateVector::from_matrix(&rho));
        let full = lindblad_rhs(&p, &rho);
        let err = got.max_deviation(&StateVector::from_matrix(&full)) / scale(&p);
        assert!(err < GENERATOR_TOLERANCE, "relative mismatch {err:e}");
        // the eliminated population obeys ρ̇33 = −ρ̇11 − ρ̇22
        let r33 = -(got.0[RHO11] + got.0[RHO22]);
        assert!((r33 - full[(2, 2)]).norm() / scale(&p) < GENERATOR_TOLERANCE);
    }
}

#[test]
fn evolution_keeps_a_physical_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let p = random_params(&mut rng);
        let sys = build_liouvillian(&p);
        let mut psi = StateVector::from_matrix(&random_density_matrix(&mut rng));
        for _ in 0..20 {
            psi = evolve(&sys, &psi, 0.05, DEFAULT_DT).unwrap();
            let rho = to_density_matrix(&psi).unwrap();
            assert!((rho.trace() - Complex::new(1.0, 0.0)).norm() < 1e-12);
            assert!(rho.eigenvalues()[0] > -1e-9, "{:?}", rho.eigenvalues());
        }
    }
}

#[test]
fn phase_drops_out_without_the_third_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let p = random_params(&mut rng).with_omega3(0.0).unwrap();
        let a = build_liouvillian(&p.with_phi(0.0).unwrap());
        let b = build_liouvillian(&p.with_phi(rng.gen_range(-3.0..3.0)).unwrap());
        assert_eq!(a.generator(), b.generator());
        assert_eq!(a.drive(), b.drive());
    }
}

#[test]
fn steady_state_is_lindblad_stationary() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let p = random_params(&mut rng);
        let psi = steady_state(&build_liouvillian(&p)).unwrap();
        let rho = to_density_matrix(&psi).unwrap();
        let d: Matrix3<C64> = lindblad_rhs(&p, rho.matrix());
        assert!(d.norm() < 1e-10 * scale(&p), "|ρ̇| = {:e}", d.norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn relaxation_forgets_the_initial_state(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_params(&mut rng);
        let sys = build_liouvillian(&p);
        let t = 60.0 / sys.spectral_gap();
        let a = evolve_exact(&sys, &StateVector::from_matrix(&random_density_matrix(&mut rng)), t).unwrap();
        let b = evolve_exact(&sys, &StateVector::from_matrix(&random_density_matrix(&mut rng)), t).unwrap();
        prop_assert!(a.max_deviation(&b) < 1e-9);
    }
}
