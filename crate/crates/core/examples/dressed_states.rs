// Dressed states, their coherence decay rates, and the Lorentzian sideband
// model next to the exact spectrum.
//
//     cargo run --example dressed_states

use lambda_fluor::cli::Preset;
use lambda_fluor::{
    build_liouvillian, dressed, spectrum, steady_state, to_density_matrix, QuadraturePhase,
};

fn main() {
    let params = Preset::Fig2a.params();
    let basis = dressed::diagonalize(&params).unwrap();
    let sys = build_liouvillian(&params);
    let psi = steady_state(&sys).unwrap();
    let pops = dressed::dressed_populations(&basis, &to_density_matrix(&psi).unwrap());
    let theta = QuadraturePhase::default();

    for (i, pop) in pops.iter().enumerate() {
        let a = basis.column(i);
        println!(
            "{:>5}: lambda = {:>9.4}, |a1|^2 = {:.4}, |a2|^2 = {:.4}, |a3|^2 = {:.4}, population {:.4}",
            dressed::LABELS[i],
            basis.lambdas[i],
            a[0].norm_sqr(),
            a[1].norm_sqr(),
            a[2].norm_sqr(),
            pop
        );
    }
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        println!(
            "{}-{}: omega = {:.3}, Gamma = {:.4}, weight = {:+.5}",
            dressed::LABELS[i],
            dressed::LABELS[j],
            basis.splitting(i, j),
            basis.gammas[(i, j)],
            dressed::pair_weight(&basis, &pops, i, j, theta)
        );
    }

    let mut grid: Vec<f64> = basis
        .sideband_positions()
        .into_iter()
        .filter(|w| *w > 0.0)
        .collect();
    grid.sort_by(f64::total_cmp);
    let exact = spectrum::squeezing_spectrum(&sys, &psi, theta, &grid).unwrap();
    let model = dressed::lorentzian_spectrum(&basis, &params, &pops, theta, &grid).unwrap();
    for ((w, e), m) in grid.iter().zip(&exact.values).zip(&model.values) {
        println!("omega = {w:>7.3}: exact {e:+.5}, Lorentzian {m:+.5}");
    }
}
