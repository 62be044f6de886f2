// Total-variance squeezing F = 2ρ11 − 4|ρ13|² and the Ω₃ that minimizes it.
//
//     cargo run --example total_variance

use std::f64::consts::FRAC_PI_2;

use lambda_fluor::cli::Preset;
use lambda_fluor::variance;

fn main() {
    let base = Preset::Fig3.params();
    for phi in [-FRAC_PI_2, FRAC_PI_2] {
        let params = base.with_phi(phi).unwrap();
        let m = variance::minimize_over_omega3(&params, (1e-3, 10.0)).unwrap();
        println!(
            "phi = {phi:+.4}: min F = {:+.5} at omega3 = {:.4}{} (rho22 = {:.4}, |rho12| = {:.4})",
            m.f_min,
            m.omega3,
            if m.at_boundary { " (range edge)" } else { "" },
            m.rho22,
            m.rho12_abs
        );
    }

    let r = variance::squeezing_report(&base.with_omega3(3.0).unwrap()).unwrap();
    println!(
        "omega3 = 3, phi = -pi/2: F = {:+.6} (closed form {:+.6}), optimal theta = {:.4}",
        r.f_numeric,
        r.f_analytic.unwrap(),
        r.theta_opt
    );
}
