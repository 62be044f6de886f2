// Steady state of the driven Λ atom and its approach from the ground state.
//
//     cargo run --example steady_state

use lambda_fluor::liouville::{evolve, DEFAULT_DT};
use lambda_fluor::{
    build_liouvillian, make_params, steady_state, to_density_matrix, RawParams, StateVector,
};

fn main() {
    let params = make_params(RawParams {
        gamma1: 20.0,
        omega1: 8.0,
        omega2: 8.0,
        omega3: 3.0,
        phi: -std::f64::consts::FRAC_PI_2,
        ..RawParams::default()
    })
    .expect("valid parameters");
    let sys = build_liouvillian(&params);
    let psi = steady_state(&sys).expect("unique steady state");
    let rho = to_density_matrix(&psi).expect("Hermitian");

    println!(
        "populations: {:.6} {:.6} {:.6}",
        psi.rho11(),
        psi.rho22(),
        psi.rho33()
    );
    println!(
        "|rho12| = {:.6}, rho13 = {:.6}",
        psi.rho12().norm(),
        psi.rho13()
    );
    println!(
        "eigenvalues of rho: {:?}",
        rho.eigenvalues().map(|e| (e * 1e6).round() / 1e6)
    );
    println!("spectral gap of L: {:.4}", sys.spectral_gap());

    let start = StateVector::zeros();
    for t in [0.5, 2.0, 10.0, 50.0] {
        let psi_t = evolve(&sys, &start, t, DEFAULT_DT).expect("stable step");
        println!(
            "t = {t:>4}: distance to steady state {:.3e}",
            psi_t.max_deviation(&psi)
        );
    }
}
