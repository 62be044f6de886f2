//! Optical Bloch equations in vectorized form.
//!
//! The density matrix is flattened into the eight-component vector
//!
//! ```text
//! Ψ = (ρ11, ρ22, ρ12, ρ21, ρ13, ρ31, ρ23, ρ32)
//! ```
//!
//! with ρ33 eliminated through the trace condition. The equations of motion
//! then read dΨ/dt = LΨ + I with a constant 8×8 generator L and a constant
//! inhomogeneous drive I; the latter collects the terms produced by
//! substituting ρ33 = 1 − ρ11 − ρ22.

use nalgebra::{Complex, Matrix3, SMatrix, SVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::SystemParams;

pub type C64 = Complex<f64>;
pub type Generator = SMatrix<C64, 8, 8>;
pub type Vector8 = SVector<C64, 8>;

/// Component positions inside [`StateVector`].
pub mod idx {
    pub const RHO11: usize = 0;
    pub const RHO22: usize = 1;
    pub const RHO12: usize = 2;
    pub const RHO21: usize = 3;
    pub const RHO13: usize = 4;
    pub const RHO31: usize = 5;
    pub const RHO23: usize = 6;
    pub const RHO32: usize = 7;
}

/// Condition-number cap above which a matrix is treated as singular.
pub const CONDITION_CAP: f64 = 1e12;

/// Pairing tolerance accepted by [`to_density_matrix`].
pub const PAIRING_TOLERANCE: f64 = 1e-8;

/// RK4 stability bound on |dt·λ| (real-axis limit of the stability region
/// is about 2.785, imaginary-axis limit 2√2).
pub const RK4_STABILITY_BOUND: f64 = 2.78;

/// Default RK4 step in units of 1/γ₂.
pub const DEFAULT_DT: f64 = 1e-3;

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// The vectorized density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector(pub Vector8);

impl StateVector {
    pub fn zeros() -> Self {
        Self(Vector8::zeros())
    }

    /// Vectorizes a 3×3 density matrix (ρ33 is dropped).
    pub fn from_matrix(rho: &Matrix3<C64>) -> Self {
        Self(Vector8::from([
            rho[(0, 0)],
            rho[(1, 1)],
            rho[(0, 1)],
            rho[(1, 0)],
            rho[(0, 2)],
            rho[(2, 0)],
            rho[(1, 2)],
            rho[(2, 1)],
        ]))
    }

    pub fn as_vector(&self) -> &Vector8 {
        &self.0
    }

    pub fn rho11(&self) -> f64 {
        self.0[idx::RHO11].re
    }
    pub fn rho22(&self) -> f64 {
        self.0[idx::RHO22].re
    }
    pub fn rho33(&self) -> f64 {
        1.0 - self.rho11() - self.rho22()
    }
    pub fn rho12(&self) -> C64 {
        self.0[idx::RHO12]
    }
    pub fn rho13(&self) -> C64 {
        self.0[idx::RHO13]
    }
    pub fn rho31(&self) -> C64 {
        self.0[idx::RHO31]
    }
    pub fn rho23(&self) -> C64 {
        self.0[idx::RHO23]
    }

    /// Largest componentwise modulus of the difference.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest violation of ρji = conj(ρij) and of real populations.
    pub fn pairing_deviation(&self) -> f64 {
        let v = &self.0;
        let pairs = [
            (idx::RHO12, idx::RHO21),
            (idx::RHO13, idx::RHO31),
            (idx::RHO23, idx::RHO32),
        ];
        let coh = pairs
            .iter()
            .map(|&(a, b)| (v[a] - v[b].conj()).norm())
            .fold(0.0, f64::max);
        coh.max(v[idx::RHO11].im.abs()).max(v[idx::RHO22].im.abs())
    }
}

/// A 3×3 density matrix in the bare basis (|1⟩, |2⟩, |3⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(pub Matrix3<C64>);

impl DensityMatrix {
    pub fn matrix(&self) -> &Matrix3<C64> {
        &self.0
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        (self.0 - self.0.adjoint()).norm()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let h = (self.0 + self.0.adjoint()) * c(0.5, 0.0);
        let eig = h.symmetric_eigenvalues();
        let mut out = [eig[0], eig[1], eig[2]];
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }
}

/// Generator and drive of dΨ/dt = LΨ + I for a fixed parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvilleSystem {
    generator: Generator,
    drive: Vector8,
    params: SystemParams,
}

impl LiouvilleSystem {
    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn drive(&self) -> &Vector8 {
        &self.drive
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// Evaluates LΨ + I.
    pub fn rhs(&self, psi: &StateVector) -> StateVector {
        StateVector(self.generator * psi.0 + self.drive)
    }

    /// Eigenvalues of L, from a complex Schur decomposition.
    pub fn eigenvalues(&self) -> Vec<C64> {
        linalg::eigenvalues(&self.generator)
    }

    /// Smallest decay rate min |Re λ| over the eigenvalues of L.
    pub fn spectral_gap(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .map(|l| l.re.abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .map(|l| l.norm())
            .fold(0.0, f64::max)
    }
}

/// Assembles L and I from the density-matrix equations at Δ₄ = 0.
pub fn build_liouvillian(params: &SystemParams) -> LiouvilleSystem {
    use idx::*;

    let g = params.gamma1() + params.gamma2();
    let (d1, d2) = (params.delta1(), params.delta2());
    let d12 = d1 - d2;
    let (o1, o2, o3) = (params.omega1(), params.omega2(), params.omega3());
    let i = c(0.0, 1.0);
    let e = Complex::from_polar(1.0, params.phi());
    let ec = e.conj();

    let mut l = Generator::zeros();
    let mut drive = Vector8::zeros();

    // ρ11
    l[(RHO11, RHO11)] = c(-2.0 * g, 0.0);
    l[(RHO11, RHO31)] = i * o1;
    l[(RHO11, RHO21)] = i * o2;
    l[(RHO11, RHO13)] = -i * o1;
    l[(RHO11, RHO12)] = -i * o2;

    // ρ22
    l[(RHO22, RHO11)] = c(2.0 * params.gamma2(), 0.0);
    l[(RHO22, RHO12)] = i * o2;
    l[(RHO22, RHO32)] = i * o3 * e;
    l[(RHO22, RHO21)] = -i * o2;
    l[(RHO22, RHO23)] = -i * o3 * ec;

    // ρ12 and its conjugate row
    l[(RHO12, RHO12)] = c(-g, d2);
    l[(RHO12, RHO22)] = i * o2;
    l[(RHO12, RHO11)] = -i * o2;
    l[(RHO12, RHO32)] = i * o1;
    l[(RHO12, RHO13)] = -i * o3 * ec;

    l[(RHO21, RHO21)] = c(-g, -d2);
    l[(RHO21, RHO22)] = -i * o2;
    l[(RHO21, RHO11)] = i * o2;
    l[(RHO21, RHO23)] = -i * o1;
    l[(RHO21, RHO31)] = i * o3 * e;

    // ρ13: iΩ1(ρ33 − ρ11) = iΩ1(1 − 2ρ11 − ρ22)
    l[(RHO13, RHO13)] = c(-g, d1);
    l[(RHO13, RHO11)] = -i * (2.0 * o1);
    l[(RHO13, RHO22)] = -i * o1;
    l[(RHO13, RHO23)] = i * o2;
    l[(RHO13, RHO12)] = -i * o3 * e;
    drive[RHO13] = i * o1;

    l[(RHO31, RHO31)] = c(-g, -d1);
    l[(RHO31, RHO11)] = i * (2.0 * o1);
    l[(RHO31, RHO22)] = i * o1;
    l[(RHO31, RHO32)] = -i * o2;
    l[(RHO31, RHO21)] = i * o3 * ec;
    drive[RHO31] = -i * o1;

    // ρ23: iΩ3e^{iΦ}(ρ33 − ρ22) = iΩ3e^{iΦ}(1 − ρ11 − 2ρ22)
    l[(RHO23, RHO23)] = c(0.0, d12);
    l[(RHO23, RHO11)] = -i * o3 * e;
    l[(RHO23, RHO22)] = -i * (2.0 * o3) * e;
    l[(RHO23, RHO21)] = -i * o1;
    l[(RHO23, RHO13)] = i * o2;
    drive[RHO23] = i * o3 * e;

    l[(RHO32, RHO32)] = c(0.0, -d12);
    l[(RHO32, RHO11)] = i * o3 * ec;
    l[(RHO32, RHO22)] = i * (2.0 * o3) * ec;
    l[(RHO32, RHO12)] = i * o1;
    l[(RHO32, RHO31)] = -i * o2;
    drive[RHO32] = -i * o3 * ec;

    LiouvilleSystem {
        generator: l,
        drive,
        params: *params,
    }
}

/// Solves LΨ + I = 0 by LU with partial pivoting.
pub fn steady_state(sys: &LiouvilleSystem) -> Result<StateVector> {
    let (inverse, condition) =
        linalg::inverse_with_condition(&sys.generator).ok_or(Error::SingularLiouvillian {
            condition: f64::INFINITY,
        })?;
    if condition > CONDITION_CAP {
        return Err(Error::SingularLiouvillian { condition });
    }
    let mut psi = -(inverse * sys.drive);
    // one step of iterative refinement against the original system
    let residual = sys.generator * psi + sys.drive;
    psi -= inverse * residual;
    Ok(StateVector(psi))
}

/// Integrates dΨ/dt = LΨ + I from `psi0` to `t_final` with classical RK4.
///
/// The step is shrunk so that an integer number of steps lands exactly on
/// `t_final`; it never exceeds `dt`.
pub fn evolve(
    sys: &LiouvilleSystem,
    psi0: &StateVector,
    t_final: f64,
    dt: f64,
) -> Result<StateVector> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParams {
            name: "dt",
            reason: format!("step must be positive and finite, got {dt}"),
        });
    }
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidParams {
            name: "t_final",
            reason: format!("must be non-negative and finite, got {t_final}"),
        });
    }
    if t_final == 0.0 {
        return Ok(*psi0);
    }
    let product = dt * sys.spectral_radius();
    if product > RK4_STABILITY_BOUND {
        return Err(Error::StepSizeTooLarge {
            dt,
            product,
            bound: RK4_STABILITY_BOUND,
        });
    }

    let steps = (t_final / dt).ceil().max(1.0) as u64;
    let h = t_final / steps as f64;
    let l = &sys.generator;
    let f = |y: &Vector8| l * y + sys.drive;
    let mut y = psi0.0;
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&(y + k1 * c(0.5 * h, 0.0)));
        let k3 = f(&(y + k2 * c(0.5 * h, 0.0)));
        let k4 = f(&(y + k3 * c(h, 0.0)));
        y += (k1 + k2 * c(2.0, 0.0) + k3 * c(2.0, 0.0) + k4) * c(h / 6.0, 0.0);
    }
    Ok(StateVector(y))
}

/// Propagates with the exact one-step map Ψ ↦ e^{Lt}(Ψ − Ψ∞) + Ψ∞.
pub fn evolve_exact(sys: &LiouvilleSystem, psi0: &StateVector, t: f64) -> Result<StateVector> {
    let psi_ss = steady_state(sys)?;
    let prop = (sys.generator * c(t, 0.0)).exp();
    Ok(StateVector(prop * (psi0.0 - psi_ss.0) + psi_ss.0))
}

/// Rebuilds the Hermitian 3×3 matrix; ρ33 = 1 − ρ11 − ρ22.
pub fn to_density_matrix(psi: &StateVector) -> Result<DensityMatrix> {
    use idx::*;
    let deviation = psi.pairing_deviation();
    if deviation.is_nan() || deviation > PAIRING_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let v = &psi.0;
    let r11 = v[RHO11].re;
    let r22 = v[RHO22].re;
    let avg = |a: usize, b: usize| (v[a] + v[b].conj()) * c(0.5, 0.0);
    let r12 = avg(RHO12, RHO21);
    let r13 = avg(RHO13, RHO31);
    let r23 = avg(RHO23, RHO32);
    let m = Matrix3::new(
        c(r11, 0.0),
        r12,
        r13,
        r12.conj(),
        c(r22, 0.0),
        r23,
        r13.conj(),
        r23.conj(),
        c(1.0 - r11 - r22, 0.0),
    );
    Ok(DensityMatrix(m))
}
