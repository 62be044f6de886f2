//! Dressed states of the rotating-frame Hamiltonian.
//!
//! In the bare basis (|1⟩, |2⟩, |3⟩) and with ħ = 1,
//!
//! ```text
//!     ⎡ −Δ₁      −Ω₂          −Ω₁        ⎤
//! H = ⎢ −Ω₂   −(Δ₁ − Δ₂)   −Ω₃ e^{iΦ}    ⎥
//!     ⎣ −Ω₁   −Ω₃ e^{−iΦ}      0         ⎦
//! ```
//!
//! Sidebands of the fluorescence spectrum sit at the dressed splittings
//! ω_ij = λ_i − λ_j. Eigenvalues are sorted in descending order and labelled
//! α, β, κ in that order.

use nalgebra::{Complex, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::liouville::{DensityMatrix, C64};
use crate::model::{QuadraturePhase, SystemParams};
use crate::spectrum::SpectrumResult;

pub const LABELS: [&str; 3] = ["alpha", "beta", "kappa"];

/// Eigenvalues closer than this are reported as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-9;

/// Minimum Rabi-to-decay ratio for the Lorentzian sideband model.
pub const HIGH_FIELD_RATIO: f64 = 5.0;

/// Eigen-decomposition of H plus the secular coherence decay rates.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedBasis {
    /// λ_α ≥ λ_β ≥ λ_κ.
    pub lambdas: [f64; 3],
    /// Column i holds (a₁ᵢ, a₂ᵢ, a₃ᵢ); each column has unit norm and its
    /// largest component is real and positive.
    pub coeffs: Matrix3<C64>,
    /// Γ_ij for i ≠ j; the diagonal is zero.
    pub gammas: Matrix3<f64>,
}

impl DressedBasis {
    pub fn column(&self, i: usize) -> Vector3<C64> {
        self.coeffs.column(i).into_owned()
    }

    /// ω_ij = λ_i − λ_j.
    pub fn splitting(&self, i: usize, j: usize) -> f64 {
        self.lambdas[i] - self.lambdas[j]
    }

    pub fn max_splitting(&self) -> f64 {
        self.lambdas[0] - self.lambdas[2]
    }

    /// All splittings ω_ij for i ≠ j together with 0.
    pub fn sideband_positions(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    out.push(self.splitting(i, j));
                }
            }
        }
        out
    }
}

pub fn hamiltonian(params: &SystemParams) -> Matrix3<C64> {
    let re = |x: f64| Complex::new(x, 0.0);
    let coupling = Complex::from_polar(params.omega3(), params.phi());
    Matrix3::new(
        re(-params.delta1()),
        re(-params.omega2()),
        re(-params.omega1()),
        re(-params.omega2()),
        re(-(params.delta1() - params.delta2())),
        -coupling,
        re(-params.omega1()),
        -coupling.conj(),
        re(0.0),
    )
}

fn sorted_eigen(params: &SystemParams) -> ([f64; 3], Matrix3<C64>) {
    let eig = hamiltonian(params).symmetric_eigen();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let lambdas = order.map(|k| eig.eigenvalues[k]);
    let mut coeffs = Matrix3::zeros();
    for (col, &k) in order.iter().enumerate() {
        coeffs.set_column(col, &fix_gauge(eig.eigenvectors.column(k).into_owned()));
    }
    (lambdas, coeffs)
}

/// Dressed eigenvalues, descending, without any degeneracy check.
pub fn eigenvalues(params: &SystemParams) -> [f64; 3] {
    sorted_eigen(params).0
}

/// Rotates a vector so that its largest component is real and positive.
fn fix_gauge(v: Vector3<C64>) -> Vector3<C64> {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or_default();
    if pivot.norm() == 0.0 {
        return v;
    }
    let phase = pivot.conj() / pivot.norm();
    let n = v.norm();
    v.map(|z| z * phase / n)
}

/// Diagonalizes H with a Hermitian eigensolver.
pub fn diagonalize(params: &SystemParams) -> Result<DressedBasis> {
    let (lambdas, coeffs) = sorted_eigen(params);
    for k in 0..2 {
        if lambdas[k] - lambdas[k + 1] < DEGENERACY_TOLERANCE {
            return Err(Error::DegenerateSpectrum {
                a: lambdas[k],
                b: lambdas[k + 1],
            });
        }
    }
    let mut basis = DressedBasis {
        lambdas,
        coeffs,
        gammas: Matrix3::zeros(),
    };
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                basis.gammas[(i, j)] = coherence_decay(&basis, i, j, params);
            }
        }
    }
    Ok(basis)
}

/// Closed-form eigenvector for eigenvalue λ, normalized and gauge-fixed:
///
/// ```text
/// a₁ ∝ λΩ₂ − Ω₁Ω₃e^{−iΦ}
/// a₂ ∝ Ω₁² − λ(Δ₁ + λ)
/// a₃ ∝ (Δ₁ + λ)Ω₃e^{−iΦ} − Ω₁Ω₂
/// ```
///
/// Returns `None` when all three expressions vanish, which happens for
/// special parameter combinations (for instance Ω₁Ω₂ = 0 with λ = 0).
pub fn closed_form_coefficients(params: &SystemParams, lambda: f64) -> Option<Vector3<C64>> {
    let (o1, o2) = (params.omega1(), params.omega2());
    let e = Complex::from_polar(params.omega3(), -params.phi());
    let d = params.delta1() + lambda;
    let v = Vector3::new(
        Complex::new(lambda * o2, 0.0) - e * o1,
        Complex::new(o1 * o1 - lambda * d, 0.0),
        e * d - Complex::new(o1 * o2, 0.0),
    );
    let scale = 1.0 + o1 * o1 + o2 * o2 + params.omega3().powi(2) + d * d + lambda * lambda;
    if v.norm() < 1e-10 * scale {
        return None;
    }
    Some(fix_gauge(v))
}

/// Secular decay rate of the dressed coherence ρ_ij:
///
/// ```text
/// Γ_ij = γ₁ [|a₁ᵢ|² + |a₁ⱼ|² − 2 Re(a₁ᵢ* a₁ⱼ a₃ᵢ a₃ⱼ*)]
///      + γ₂ [|a₁ᵢ|² + |a₁ⱼ|² − 2 Re(a₁ᵢ* a₁ⱼ a₂ᵢ a₂ⱼ*)]
/// ```
///
/// Each cross term is invariant under a phase change of either dressed state
/// and reduces to the real-coefficient form when all a are real.
pub fn coherence_decay(basis: &DressedBasis, i: usize, j: usize, params: &SystemParams) -> f64 {
    let a = &basis.coeffs;
    let diag = a[(0, i)].norm_sqr() + a[(0, j)].norm_sqr();
    let cross =
        |ground: usize| (a[(0, i)].conj() * a[(0, j)] * a[(ground, i)] * a[(ground, j)].conj()).re;
    let g1 = diag - 2.0 * cross(2);
    let g2 = diag - 2.0 * cross(1);
    (params.gamma1() * g1 + params.gamma2() * g2).max(0.0)
}

/// Diagonal of the density matrix in the dressed basis, ρ_ii = a_i† ρ a_i.
pub fn dressed_populations(basis: &DressedBasis, rho: &DensityMatrix) -> [f64; 3] {
    let m = rho.matrix();
    [0, 1, 2].map(|i| {
        let a = basis.column(i);
        (a.adjoint() * m * a)[(0, 0)].re
    })
}

/// Whether every non-zero Rabi frequency exceeds the larger decay rate by
/// [`HIGH_FIELD_RATIO`].
pub fn is_high_field(params: &SystemParams) -> bool {
    let gamma = params.gamma1().max(params.gamma2());
    let min_rabi = [params.omega1(), params.omega2(), params.omega3()]
        .into_iter()
        .filter(|o| *o > 0.0)
        .fold(f64::INFINITY, f64::min);
    min_rabi.is_finite() && min_rabi / gamma > HIGH_FIELD_RATIO
}

/// Weight of the Lorentzian pair of the i↔j transition:
/// ρ_ii(|a₁ᵢ|²|a₃ⱼ|² + X) + ρ_jj(|a₃ᵢ|²|a₁ⱼ|² + X) with
/// X = Re(e^{2iθ} a₁ᵢ a₃ᵢ* a₁ⱼ a₃ⱼ*).
pub fn pair_weight(
    basis: &DressedBasis,
    populations: &[f64; 3],
    i: usize,
    j: usize,
    theta: QuadraturePhase,
) -> f64 {
    let a = &basis.coeffs;
    let x = (Complex::from_polar(1.0, 2.0 * theta.radians())
        * a[(0, i)]
        * a[(2, i)].conj()
        * a[(0, j)]
        * a[(2, j)].conj())
    .re;
    populations[i] * (a[(0, i)].norm_sqr() * a[(2, j)].norm_sqr() + x)
        + populations[j] * (a[(2, i)].norm_sqr() * a[(0, j)].norm_sqr() + x)
}

/// Sideband model: a Lorentzian pair at ±ω_ij of half-width Γ_ij for every
/// dressed pair, in the same units as the exact spectrum.
pub fn lorentzian_spectrum(
    basis: &DressedBasis,
    params: &SystemParams,
    populations: &[f64; 3],
    theta: QuadraturePhase,
    omegas: &[f64],
) -> Result<SpectrumResult> {
    if !is_high_field(params) {
        log::warn!(
            "Lorentzian sideband model used outside the high-field regime (Rabi/decay <= {HIGH_FIELD_RATIO})"
        );
    }
    for k in 0..2 {
        if basis.lambdas[k] - basis.lambdas[k + 1] < DEGENERACY_TOLERANCE {
            return Err(Error::DegenerateSpectrum {
                a: basis.lambdas[k],
                b: basis.lambdas[k + 1],
            });
        }
    }
    let mut terms = Vec::with_capacity(3);
    for i in 0..3 {
        for j in (i + 1)..3 {
            terms.push((
                basis.splitting(i, j),
                basis.gammas[(i, j)],
                pair_weight(basis, populations, i, j, theta),
            ));
        }
    }
    let values = omegas
        .iter()
        .map(|&w| {
            terms
                .iter()
                .map(|&(center, width, weight)| {
                    if weight == 0.0 {
                        return 0.0;
                    }
                    let lor = |x: f64| width / (width * width + x * x);
                    weight * (lor(w - center) + lor(w + center))
                })
                .sum()
        })
        .collect();
    Ok(SpectrumResult {
        theta,
        omegas: omegas.to_vec(),
        values,
        max_imag_residue: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_params, RawParams};
    use std::f64::consts::PI;

    fn fig2(omega3: f64, phi: f64) -> SystemParams {
        make_params(RawParams {
            gamma1: 0.1,
            delta1: 15.0,
            delta2: -15.0,
            omega1: 30.0,
            omega2: 30.0,
            omega3,
            phi,
            ..Default::default()
        })
        .unwrap()
    }

    fn assert_close(got: [f64; 3], want: [f64; 3], tol: f64) {
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= tol, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn quoted_eigenvalues() {
        assert_close(
            diagonalize(&fig2(10.0, 0.0)).unwrap().lambdas,
            [26.07, -6.21, -64.86],
            0.01,
        );
        assert_close(
            diagonalize(&fig2(10.0, PI)).unwrap().lambdas,
            [34.86, -23.79, -56.07],
            0.01,
        );
        assert_close(
            diagonalize(&fig2(0.0, 0.0)).unwrap().lambdas,
            [30.0, -15.0, -60.0],
            1e-9,
        );
    }

    #[test]
    fn columns_orthonormal() {
        let b = diagonalize(&fig2(10.0, 0.7)).unwrap();
        let gram = b.coeffs.adjoint() * b.coeffs;
        assert!((gram - Matrix3::identity()).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_solver() {
        let p = fig2(10.0, 0.7);
        let b = diagonalize(&p).unwrap();
        for i in 0..3 {
            let cf = closed_form_coefficients(&p, b.lambdas[i]).unwrap();
            assert!((cf - b.column(i)).norm() < 1e-9, "column {i}");
        }
    }

    #[test]
    fn decoupled_states_have_no_coherence_decay() {
        let mut basis = DressedBasis {
            lambdas: [1.0, 0.0, -1.0],
            coeffs: Matrix3::identity(),
            gammas: Matrix3::zeros(),
        };
        basis.coeffs.swap_columns(0, 2);
        let p = fig2(10.0, 0.0);
        // columns are |3⟩, |2⟩, |1⟩
        assert_eq!(coherence_decay(&basis, 0, 1, &p), 0.0);
        assert!(coherence_decay(&basis, 1, 2, &p) > 0.0);
    }

    #[test]
    fn real_case_reduces_to_real_formula() {
        let p = fig2(10.0, 0.0);
        let b = diagonalize(&p).unwrap();
        assert!(b.coeffs.iter().all(|z| z.im.abs() < 1e-12));
        let a = b.coeffs.map(|z| z.re);
        let (i, j) = (0, 1);
        let g1 = a[(0, i)].powi(2) + a[(0, j)].powi(2)
            - 2.0 * a[(0, i)] * a[(0, j)] * a[(2, i)] * a[(2, j)];
        let g2 = a[(0, i)].powi(2) + a[(0, j)].powi(2)
            - 2.0 * a[(0, i)] * a[(0, j)] * a[(1, i)] * a[(1, j)];
        let want = g1 * p.gamma1() + g2 * p.gamma2();
        assert!((b.gammas[(i, j)] - want).abs() < 1e-14);
    }

    #[test]
    fn empty_pair_contributes_nothing() {
        let p = fig2(10.0, 0.0);
        let b = diagonalize(&p).unwrap();
        let pops = [0.0, 0.0, 1.0];
        assert_eq!(
            pair_weight(&b, &pops, 0, 1, QuadraturePhase::default()),
            0.0
        );
    }

    #[test]
    fn degenerate_spectrum_rejected() {
        let p = make_params(RawParams {
            gamma1: 1.0,
            ..Default::default()
        })
        .unwrap();
        assert!(matches!(
            diagonalize(&p),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }
}
