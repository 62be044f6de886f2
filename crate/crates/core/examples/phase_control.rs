// F as a function of the relative phase Φ of the three fields.
//
//     cargo run --example phase_control

use lambda_fluor::cli::Preset;
use lambda_fluor::spectrum::uniform_grid;
use lambda_fluor::variance;

fn main() {
    let params = Preset::Fig5.params();
    let phis = uniform_grid(-std::f64::consts::PI, std::f64::consts::PI, 25);
    for (phi, f) in variance::sweep_phase(&params, &phis).unwrap() {
        let bar = "#".repeat((f.abs() * 400.0).round() as usize);
        println!(
            "{:>7.1} deg  {f:+.5}  {}{bar}",
            phi.to_degrees(),
            if f < 0.0 { "-" } else { "+" }
        );
    }
}
