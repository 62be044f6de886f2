// Squeezing spectrum S(ω) at θ = 0 with and without the microwave coupling.
//
//     cargo run --example squeezing_spectrum

use lambda_fluor::cli::Preset;
use lambda_fluor::spectrum;
use lambda_fluor::{build_liouvillian, steady_state, QuadraturePhase};

fn main() {
    for (label, params) in [
        ("phi = 0", Preset::Fig2a.params()),
        ("phi = pi", Preset::Fig2b.params()),
        (
            "omega3 = 0",
            Preset::Fig2a.params().with_omega3(0.0).unwrap(),
        ),
    ] {
        let sys = build_liouvillian(&params);
        let psi = steady_state(&sys).unwrap();
        let grid = spectrum::uniform_grid(0.0, 120.0, 6001);
        let s =
            spectrum::squeezing_spectrum(&sys, &psi, QuadraturePhase::default(), &grid).unwrap();
        println!("{label}: min S = {:.4}", s.min());
        for (w, v, _) in s.local_extrema() {
            if v.abs() > 0.02 * s.peak_abs() {
                println!("  extremum at omega = {w:>6.2}: S = {v:+.4}");
            }
        }
    }
}
