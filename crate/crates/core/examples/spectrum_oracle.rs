// Cross-check of the resolvent spectrum against regression in τ followed by
// a cosine transform.
//
//     cargo run --example spectrum_oracle

use lambda_fluor::cli::Preset;
use lambda_fluor::spectrum::{self, OracleSettings};
use lambda_fluor::{build_liouvillian, steady_state, QuadraturePhase};

fn main() {
    let sys = build_liouvillian(&Preset::Fig2a.params());
    let psi = steady_state(&sys).unwrap();
    let theta = QuadraturePhase::default();
    let grid = spectrum::uniform_grid(-120.0, 120.0, 200);

    let exact = spectrum::squeezing_spectrum(&sys, &psi, theta, &grid).unwrap();
    let oracle =
        spectrum::time_domain_spectrum_oracle(&sys, &psi, theta, &grid, OracleSettings::default())
            .unwrap();
    let worst = exact
        .values
        .iter()
        .zip(&oracle.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!(
        "horizon: {:.1} (gap {:.4})",
        spectrum::DEFAULT_HORIZON_GAPS / sys.spectral_gap(),
        sys.spectral_gap()
    );
    println!(
        "max |S_resolvent - S_oracle| / max |S| = {:.3e}",
        worst / exact.peak_abs()
    );
}
