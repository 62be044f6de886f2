//! Small dense helpers shared by the solvers.

use nalgebra::{Complex, SMatrix};

type C64 = Complex<f64>;
type Matrix8 = SMatrix<C64, 8, 8>;

/// Induced 1-norm (maximum absolute column sum).
pub fn norm1(m: &Matrix8) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Inverse by LU with partial pivoting plus the 1-norm condition number.
/// Returns `None` when a pivot vanishes exactly.
pub fn inverse_with_condition(m: &Matrix8) -> Option<(Matrix8, f64)> {
    let inv = m.lu().try_inverse()?;
    let condition = norm1(m) * norm1(&inv);
    if !condition.is_finite() {
        return None;
    }
    Some((inv, condition))
}

/// Eigenvalues of a general complex matrix via Schur decomposition.
pub fn eigenvalues(m: &Matrix8) -> Vec<C64> {
    let (_, t) = m.schur().unpack();
    (0..8).map(|k| t[(k, k)]).collect()
}
