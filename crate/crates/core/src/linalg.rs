//! Thin wrappers over nalgebra's LU with the conditioning checks used
//! throughout the crate.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;

use crate::{Error, Result};

/// Largest acceptable 1-norm condition estimate for a linear solve.
pub(crate) const MAX_CONDITION: f64 = 1e14;

fn norm1_dyn(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn norm1_3(a: &Matrix3<Complex64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `a x = b` and rejects systems whose 1-norm condition number
/// exceeds [`MAX_CONDITION`]. Intended for small systems (explicit inverse).
pub(crate) fn solve_dense(a: DMatrix<Complex64>, b: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let norm = norm1_dyn(&a);
    let lu = a.lu();
    let inv = lu
        .try_inverse()
        .ok_or(Error::Singular { condition: f64::INFINITY })?;
    let condition = norm * norm1_dyn(&inv);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::Singular { condition });
    }
    lu.solve(b).ok_or(Error::Singular { condition })
}

pub(crate) fn solve3(a: Matrix3<Complex64>, b: &Vector3<Complex64>) -> Result<Vector3<Complex64>> {
    let norm = norm1_3(&a);
    let lu = a.lu();
    let inv = lu
        .try_inverse()
        .ok_or(Error::Singular { condition: f64::INFINITY })?;
    let condition = norm * norm1_3(&inv);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::Singular { condition });
    }
    lu.solve(b).ok_or(Error::Singular { condition })
}

/// Ratio of the smallest to the largest |U_ii| of an LU factorisation,
/// a cheap rank indicator for matrices too large to invert.
pub(crate) fn pivot_ratio(u_diag: impl Iterator<Item = Complex64>) -> f64 {
    let (lo, hi) = u_diag.fold((f64::INFINITY, 0.0f64), |(lo, hi), z| {
        let m = z.norm();
        (lo.min(m), hi.max(m))
    });
    if hi == 0.0 {
        0.0
    } else {
        lo / hi
    }
}
