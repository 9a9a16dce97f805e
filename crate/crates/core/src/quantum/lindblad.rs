use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::hamiltonian::Operators;
use super::{hermitian_hamiltonian, HilbertSpace, QuantumParams, MIN_INTENSITY};
use crate::linalg::pivot_ratio;
use crate::{Error, Result};

/// Largest space the dense Liouvillian is built for.
pub const MAX_LINDBLAD_DIM: usize = 64;

/// Pivot ratio below which the steady state is considered non-unique.
pub const NULL_SPACE_GAP: f64 = 1e-10;

const STATE_TOL: f64 = 1e-10;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone)]
pub struct DensityMatrixState {
    rho: DMatrix<Complex64>,
}

impl DensityMatrixState {
    pub fn new(rho: DMatrix<Complex64>) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::InvalidState("matrix is not square".into()));
        }
        let asym = (&rho - rho.adjoint()).norm();
        if asym > STATE_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (‖ρ − ρ†‖ = {asym:.3e})")));
        }
        let trace = rho.trace();
        if (trace - Complex64::from(1.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {trace}")));
        }
        let hermitian = (&rho + rho.adjoint()) * Complex64::from(0.5);
        let min_eig = hermitian.symmetric_eigenvalues().min();
        if min_eig < -STATE_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(Self { rho: hermitian })
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalised) vector.
    pub fn pure(psi: &DVector<Complex64>) -> Result<Self> {
        let n = psi.norm_squared();
        Self::new(psi * psi.adjoint() / Complex64::from(n))
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.rho
    }

    pub fn expectation(&self, op: &DMatrix<Complex64>) -> Complex64 {
        (&self.rho * op).trace()
    }
}

/// Row-major vectorisation: vec(A X B) = (A ⊗ Bᵀ) vec(X).
fn liouvillian(h: &DMatrix<Complex64>, jumps: &[(f64, &DMatrix<Complex64>)]) -> DMatrix<Complex64> {
    let n = h.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut l = (h.kronecker(&id) - id.kronecker(&h.transpose())) * Complex64::new(0.0, -1.0);
    for &(rate, c) in jumps {
        if rate == 0.0 {
            continue;
        }
        let cdc = c.adjoint() * c;
        let term = c.kronecker(&c.conjugate())
            - cdc.kronecker(&id) * Complex64::from(0.5)
            - id.kronecker(&cdc.transpose()) * Complex64::from(0.5);
        l += term * Complex64::from(rate);
    }
    l
}

/// Unique steady state of the master equation with emitter, bright and dark
/// decay, solved densely with the trace condition replacing one equation.
pub fn lindblad_steady_state(qp: &QuantumParams, space: &HilbertSpace) -> Result<DensityMatrixState> {
    let n = space.dim();
    if n > MAX_LINDBLAD_DIM {
        return Err(Error::invalid(
            "truncation",
            format!("dense Lindblad solve limited to dimension {MAX_LINDBLAD_DIM} (got {n})"),
        ));
    }
    let h = hermitian_hamiltonian(qp, space)?;
    let ops = Operators::new(space);
    let mut m = liouvillian(
        &h,
        &[
            (qp.gamma_e, &ops.sigma_minus),
            (qp.gamma_b, &ops.a_b),
            (qp.gamma_d, &ops.a_d),
        ],
    );
    for j in 0..n * n {
        m[(0, j)] = Complex64::from(0.0);
    }
    for i in 0..n {
        m[(0, i * n + i)] = Complex64::from(1.0);
    }
    let mut rhs = DVector::zeros(n * n);
    rhs[0] = Complex64::from(1.0);

    let lu = m.lu();
    let ratio = pivot_ratio(lu.u().diagonal().iter().copied());
    if !(ratio > NULL_SPACE_GAP) {
        return Err(Error::DegenerateNullSpace { pivot_ratio: ratio });
    }
    let x = lu.solve(&rhs).ok_or(Error::DegenerateNullSpace { pivot_ratio: ratio })?;
    let rho = DMatrix::from_row_slice(n, n, x.as_slice());
    DensityMatrixState::new(rho)
}

/// (S, g²) from a density matrix. g² is an error when S underflows.
pub fn observables_from_rho(rho: &DensityMatrixState, space: &HilbertSpace, mu_e: f64, mu_b: f64) -> Result<(f64, f64)> {
    if rho.matrix().nrows() != space.dim() {
        return Err(Error::invalid("rho", "dimension does not match the space"));
    }
    let a_s = Operators::new(space).scattering(mu_e, mu_b);
    let n1 = a_s.adjoint() * &a_s;
    let intensity = rho.expectation(&n1).re;
    if intensity <= MIN_INTENSITY {
        return Err(Error::UndefinedStatistics { intensity });
    }
    let a2 = &a_s * &a_s;
    let n2 = a2.adjoint() * a2;
    Ok((intensity, rho.expectation(&n2).re / (intensity * intensity)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{build_space, g2_zero, scattering_intensity, weak_pump_steady_state, BasisState, Level};
    use approx::assert_relative_eq;

    #[test]
    fn undriven_system_relaxes_to_vacuum() {
        let space = build_space(2, 2).unwrap();
        let qp = QuantumParams {
            e_l: 0.0,
            ..QuantumParams::default()
        };
        let rho = lindblad_steady_state(&qp, &space).unwrap();
        let mut expected = DMatrix::zeros(18, 18);
        expected[(0, 0)] = Complex64::from(1.0);
        assert!((rho.matrix() - expected).norm() < 1e-12);
    }

    #[test]
    fn lossless_system_has_no_unique_steady_state() {
        let space = build_space(1, 1).unwrap();
        let qp = QuantumParams {
            gamma_e: 0.0,
            gamma_b: 0.0,
            gamma_d: 0.0,
            e_l: 0.0,
            ..QuantumParams::default()
        };
        assert!(matches!(
            lindblad_steady_state(&qp, &space),
            Err(Error::DegenerateNullSpace { .. })
        ));
    }

    #[test]
    fn coherent_cavity() {
        let space = build_space(2, 2).unwrap();
        let qp = QuantumParams {
            g_b: 0.0,
            g_d: 0.0,
            mu_e: 0.0,
            omega_l: 3.02,
            ..QuantumParams::default()
        }
        .with_weak_drive(1e-4);
        let rho = lindblad_steady_state(&qp, &space).unwrap();
        let (_, g2) = observables_from_rho(&rho, &space, 0.0, qp.mu_b).unwrap();
        assert!((g2 - 1.0).abs() < 1e-6, "{g2}");
    }

    #[test]
    fn matches_weak_pump_solution() {
        let space = build_space(2, 2).unwrap();
        for omega_l in [2.6, 3.0, 3.4, 3.9] {
            let qp = QuantumParams {
                omega_l,
                ..QuantumParams::default()
            }
            .with_weak_drive(1e-4);
            let rho = lindblad_steady_state(&qp, &space).unwrap();
            let (s, g2) = observables_from_rho(&rho, &space, qp.mu_e, qp.mu_b).unwrap();
            let psi = weak_pump_steady_state(&qp, &space).unwrap();
            assert_relative_eq!(s, scattering_intensity(&psi, qp.mu_e, qp.mu_b), max_relative = 1e-3);
            assert_relative_eq!(g2, g2_zero(&psi, qp.mu_e, qp.mu_b).unwrap(), max_relative = 1e-3);
        }
    }

    #[test]
    fn pure_state_observables() {
        let space = build_space(2, 2).unwrap();
        let qp = QuantumParams::default();
        let psi = weak_pump_steady_state(&qp, &space).unwrap();
        let rho = DensityMatrixState::pure(&psi.coefficients).unwrap();
        let (s, g2) = observables_from_rho(&rho, &space, qp.mu_e, qp.mu_b).unwrap();
        let norm = psi.coefficients.norm_squared();
        assert_relative_eq!(s * norm, scattering_intensity(&psi, qp.mu_e, qp.mu_b), max_relative = 1e-12);
        assert_relative_eq!(g2 / norm, g2_zero(&psi, qp.mu_e, qp.mu_b).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn thermal_light_bunches() {
        let space = build_space(60, 2).unwrap();
        let x: f64 = 0.2;
        let z: f64 = (0..=60).map(|k| x.powi(k)).sum();
        let mut rho = DMatrix::zeros(space.dim(), space.dim());
        for b in 0..=60 {
            let k = space.index(BasisState {
                emitter: Level::Ground,
                bright: b,
                dark: 0,
            });
            rho[(k, k)] = Complex64::from(x.powi(b as i32) / z);
        }
        let rho = DensityMatrixState::new(rho).unwrap();
        let (_, g2) = observables_from_rho(&rho, &space, 0.0, 1.0).unwrap();
        assert!((g2 - 2.0).abs() < 1e-6, "{g2}");
    }

    #[test]
    fn invalid_states_are_rejected() {
        let mut m = DMatrix::<Complex64>::identity(2, 2) * Complex64::from(0.5);
        m[(0, 1)] = Complex64::from(0.1);
        assert!(DensityMatrixState::new(m).is_err());
        let neg = DMatrix::from_diagonal(&DVector::from_vec(vec![Complex64::from(1.5), Complex64::from(-0.5)]));
        assert!(DensityMatrixState::new(neg).is_err());
        let big = build_space(5, 5).unwrap();
        assert!(lindblad_steady_state(&QuantumParams::default(), &big).is_err());
    }
}
