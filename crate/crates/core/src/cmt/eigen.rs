//! Eigen-decomposition of 3×3 complex (generally non-Hermitian) matrices.
//!
//! Eigenvalues come from the closed-form roots of the characteristic cubic,
//! eigenvectors from the null vector of `H − λI` refined by inverse
//! iteration. Exactly degenerate, diagonalizable eigenvalues fall back to an
//! SVD null space.

use nalgebra::Vector3;
use num_complex::Complex64;

use super::ComplexMatrix3;
use crate::{Error, Result};

const RESIDUAL_TOL: f64 = 1e-9;
const NULL_SPACE_TOL: f64 = 1e-10;
const CLUSTER_TOL: f64 = 1e-4;
const MAX_REFINEMENTS: usize = 4;

/// Polariton branch, by ascending real part of the eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polariton {
    Lower,
    Middle,
    Upper,
}

impl Polariton {
    pub const ALL: [Polariton; 3] = [Polariton::Lower, Polariton::Middle, Polariton::Upper];

    pub fn index(self) -> usize {
        match self {
            Polariton::Lower => 0,
            Polariton::Middle => 1,
            Polariton::Upper => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Polariton::Lower => "LP",
            Polariton::Middle => "MP",
            Polariton::Upper => "UP",
        }
    }
}

/// Eigenvalues sorted by (Re, Im) with unit-norm right eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSet {
    pub values: [Complex64; 3],
    pub vectors: [Vector3<Complex64>; 3],
}

impl EigenSet {
    pub fn value(&self, branch: Polariton) -> Complex64 {
        self.values[branch.index()]
    }

    pub fn vector(&self, branch: Polariton) -> &Vector3<Complex64> {
        &self.vectors[branch.index()]
    }

    pub fn hopfield(&self, branch: Polariton) -> [f64; 3] {
        hopfield(self.vector(branch))
    }

    /// Largest ‖H v − λ v‖ over the three pairs.
    pub fn max_residual(&self, h: &ComplexMatrix3) -> f64 {
        self.values
            .iter()
            .zip(self.vectors.iter())
            .map(|(&l, v)| (h * v - v * l).norm())
            .fold(0.0, f64::max)
    }
}

/// Hopfield coefficients |c_B|², |c_D|², |c_E|² of an eigenvector.
///
/// The vector is normalised first, so the fractions always sum to one.
pub fn hopfield(v: &Vector3<Complex64>) -> [f64; 3] {
    let n = v.norm_squared();
    [v[0].norm_sqr() / n, v[1].norm_sqr() / n, v[2].norm_sqr() / n]
}

pub fn eigenmodes(h: &ComplexMatrix3) -> Result<EigenSet> {
    if h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("H", "matrix has non-finite entries"));
    }
    let scale = h.norm();
    if scale == 0.0 {
        return Ok(EigenSet {
            values: [Complex64::from(0.0); 3],
            vectors: [Vector3::<f64>::x(), Vector3::y(), Vector3::z()].map(|v| v.map(Complex64::from)),
        });
    }

    let roots = characteristic_roots(h);
    let mut pairs: Vec<(Complex64, Vector3<Complex64>)> = Vec::with_capacity(3);
    let mut used = [false; 3];
    for i in 0..3 {
        if used[i] {
            continue;
        }
        let cluster: Vec<usize> = (i..3)
            .filter(|&j| !used[j] && (roots[j] - roots[i]).norm() <= CLUSTER_TOL * scale)
            .collect();
        for &j in &cluster {
            used[j] = true;
        }
        if cluster.len() > 1 {
            let mean = cluster.iter().map(|&j| roots[j]).sum::<Complex64>() / cluster.len() as f64;
            // a multiple root is only known to about the cube root of the
            // rounding error, so the rank test must tolerate that spread
            let spread = cluster.iter().map(|&j| (roots[j] - mean).norm()).fold(0.0, f64::max);
            let basis = null_space(h, mean, (NULL_SPACE_TOL * scale).max(10.0 * spread));
            if basis.len() >= cluster.len() {
                for v in basis.into_iter().take(cluster.len()) {
                    let v = fix_phase(v);
                    pairs.push((rayleigh(h, &v), v));
                }
                continue;
            }
        }
        for &j in &cluster {
            pairs.push(refine_pair(h, roots[j], scale)?);
        }
    }

    pairs.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then_with(|| a.0.im.total_cmp(&b.0.im))
            .then_with(|| dominant(&a.1).cmp(&dominant(&b.1)))
    });
    let set = EigenSet {
        values: [pairs[0].0, pairs[1].0, pairs[2].0],
        vectors: [pairs[0].1, pairs[1].1, pairs[2].1],
    };
    let residual = set.max_residual(h);
    if residual > RESIDUAL_TOL * scale {
        return Err(Error::Convergence(format!(
            "residual {residual:.3e} exceeds {:.1e}·‖H‖ for H = {h:?}",
            RESIDUAL_TOL
        )));
    }
    Ok(set)
}

/// Roots of det(λI − H) = λ³ + a λ² + b λ + c.
fn characteristic_roots(h: &ComplexMatrix3) -> [Complex64; 3] {
    let m = |i: usize, j: usize| h[(i, j)];
    let trace = m(0, 0) + m(1, 1) + m(2, 2);
    let minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)
        + m(1, 1) * m(2, 2)
        - m(1, 2) * m(2, 1);
    let det = h.determinant();
    let (a, b, c) = (-trace, minors, -det);
    let mut roots = cubic_roots(a, b, c);
    for r in roots.iter_mut() {
        *r = polish_root(*r, a, b, c);
    }
    roots
}

/// Cardano roots of x³ + a x² + b x + c.
fn cubic_roots(a: Complex64, b: Complex64, c: Complex64) -> [Complex64; 3] {
    let shift = -a / 3.0;
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let w_plus = -q / 2.0 + disc;
    let w_minus = -q / 2.0 - disc;
    let w = if w_plus.norm() >= w_minus.norm() { w_plus } else { w_minus };
    if w.norm() == 0.0 {
        // p = q = 0: triple root
        return [shift; 3];
    }
    let u = w.powf(1.0 / 3.0);
    let rot = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut out = [Complex64::from(0.0); 3];
    let mut uk = u;
    for slot in out.iter_mut() {
        *slot = uk - p / (uk * 3.0) + shift;
        uk *= rot;
    }
    out
}

fn polish_root(mut x: Complex64, a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let f = |x: Complex64| ((x + a) * x + b) * x + c;
    let df = |x: Complex64| (x * 3.0 + a * 2.0) * x + b;
    let mut fx = f(x);
    for _ in 0..4 {
        let d = df(x);
        if d.norm() == 0.0 {
            break;
        }
        let next = x - fx / d;
        let f_next = f(next);
        if f_next.norm() >= fx.norm() {
            break;
        }
        x = next;
        fx = f_next;
    }
    x
}

fn dominant(v: &Vector3<Complex64>) -> usize {
    v.icamax()
}

fn rayleigh(h: &ComplexMatrix3, v: &Vector3<Complex64>) -> Complex64 {
    v.dotc(&(h * v)) / v.norm_squared()
}

/// Largest component made real and positive, unit norm.
fn fix_phase(v: Vector3<Complex64>) -> Vector3<Complex64> {
    let pivot = v
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(Complex64::from(1.0));
    let phase = if pivot.norm() > 0.0 { pivot.conj() / pivot.norm() } else { Complex64::from(1.0) };
    let v = v * phase;
    v / Complex64::from(v.norm())
}

fn cross(a: &Vector3<Complex64>, b: &Vector3<Complex64>) -> Vector3<Complex64> {
    Vector3::new(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
}

fn refine_pair(h: &ComplexMatrix3, lambda: Complex64, scale: f64) -> Result<(Complex64, Vector3<Complex64>)> {
    let mut v = null_vector(h, lambda, scale);
    let mut value = rayleigh(h, &v);
    for _ in 0..MAX_REFINEMENTS {
        if (h * v - v * value).norm() <= 1e-3 * RESIDUAL_TOL * scale {
            break;
        }
        // inverse iteration; the tiny shift keeps an exact eigenvalue from
        // producing a zero pivot
        let shift = value + Complex64::new(1e-14 * scale, 1e-14 * scale);
        let m = h - ComplexMatrix3::identity() * shift;
        match m.lu().solve(&v) {
            Some(w) if w.iter().all(|z| z.re.is_finite() && z.im.is_finite()) && w.norm() > 0.0 => {
                let w = fix_phase(w);
                let next = rayleigh(h, &w);
                if (h * w - w * next).norm() < (h * v - v * value).norm() {
                    v = w;
                    value = next;
                } else {
                    break;
                }
            }
            _ => break,
        }
    }
    Ok((value, v))
}

/// Null vector of `H − λI` from the best-conditioned cross product of two
/// of its rows.
fn null_vector(h: &ComplexMatrix3, lambda: Complex64, scale: f64) -> Vector3<Complex64> {
    let m = h - ComplexMatrix3::identity() * lambda;
    let rows: [Vector3<Complex64>; 3] = std::array::from_fn(|i| m.row(i).transpose());
    let best = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| cross(&rows[i], &rows[j]))
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("three candidates");
    if best.norm() > 1e-14 * scale * scale {
        fix_phase(best)
    } else {
        // rank ≤ 1: any vector of the SVD null space will do
        null_space(h, lambda, f64::INFINITY)
            .into_iter()
            .next()
            .map(fix_phase)
            .unwrap_or_else(|| Vector3::<f64>::x().map(Complex64::from))
    }
}

/// Orthonormal basis of the numerical null space of `H − λI`, rotated to
/// align with the coordinate axes where possible.
fn null_space(h: &ComplexMatrix3, lambda: Complex64, tol: f64) -> Vec<Vector3<Complex64>> {
    let m = h - ComplexMatrix3::identity() * lambda;
    let svd = m.svd(false, true);
    let Some(v_t) = svd.v_t else {
        return Vec::new();
    };
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    // with an infinite tolerance the single smallest direction is returned
    let basis: Vec<Vector3<Complex64>> = if tol.is_infinite() {
        vec![v_t.row(order[0]).adjoint()]
    } else {
        order
            .iter()
            .filter(|&&k| svd.singular_values[k] <= tol)
            .map(|&k| v_t.row(k).adjoint())
            .collect()
    };
    align_with_axes(&basis)
}

fn align_with_axes(basis: &[Vector3<Complex64>]) -> Vec<Vector3<Complex64>> {
    let project = |e: &Vector3<Complex64>, onto: &[Vector3<Complex64>]| {
        onto.iter().fold(Vector3::zeros(), |acc, b| acc + b * b.dotc(e))
    };
    let axes: Vec<Vector3<Complex64>> = (0..3)
        .map(|k| Vector3::from_fn(|i, _| Complex64::from(if i == k { 1.0 } else { 0.0 })))
        .collect();
    let mut out: Vec<Vector3<Complex64>> = Vec::with_capacity(basis.len());
    for _ in 0..basis.len() {
        let candidate = axes
            .iter()
            .map(|e| {
                let p = project(e, basis);
                out.iter().fold(p, |acc, u| acc - u * u.dotc(&p))
            })
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .expect("three axes");
        if candidate.norm() < 1e-8 {
            break;
        }
        out.push(fix_phase(candidate));
    }
    out
}
