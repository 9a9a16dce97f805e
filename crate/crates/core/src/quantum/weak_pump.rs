use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::hamiltonian::{effective_from_ops, Operators};
use super::{HilbertSpace, QuantumParams};
use crate::cmt::check_grid;
use crate::linalg::solve_dense;
use crate::{Error, Result};

/// Largest excited-state weight Σ_{k≠0}|c_k|² accepted as weak pumping.
pub const WEAK_PUMP_LIMIT: f64 = 1e-3;

/// Below this mean intensity g²(0) is reported as undefined.
pub const MIN_INTENSITY: f64 = 1e-30;

/// Steady state of H̃|ψ⟩ = 0 with c_{g,0,0} = 1.
#[derive(Debug, Clone)]
pub struct SteadyStateVector {
    pub space: HilbertSpace,
    pub coefficients: DVector<Complex64>,
    /// |(H̃ψ)_{g,0,0}|, the equation dropped from the solve.
    pub dropped_row_residual: f64,
}

impl SteadyStateVector {
    pub fn excited_population(&self) -> f64 {
        self.coefficients.iter().skip(1).map(|c| c.norm_sqr()).sum()
    }

    pub fn coefficient(&self, state: super::BasisState) -> Complex64 {
        self.coefficients[self.space.index(state)]
    }
}

fn solve_from_ops(qp: &QuantumParams, space: &HilbertSpace, ops: &Operators) -> Result<SteadyStateVector> {
    let h = effective_from_ops(qp, ops);
    let n = space.dim();
    let block = h.view((1, 1), (n - 1, n - 1)).into_owned();
    let rhs = -h.view((1, 0), (n - 1, 1)).column(0).into_owned();
    let tail = solve_dense(block, &rhs)?;
    let mut coefficients = DVector::zeros(n);
    coefficients[0] = Complex64::from(1.0);
    coefficients.rows_mut(1, n - 1).copy_from(&tail);
    let dropped_row_residual = (h.row(0) * &coefficients)[(0, 0)].norm();
    Ok(SteadyStateVector {
        space: *space,
        coefficients,
        dropped_row_residual,
    })
}

/// Like [`weak_pump_steady_state`] but returns the state even when the
/// drive is too strong for the weak-pump approximation.
pub fn weak_pump_unchecked(qp: &QuantumParams, space: &HilbertSpace) -> Result<SteadyStateVector> {
    qp.validate()?;
    solve_from_ops(qp, space, &Operators::new(space))
}

pub fn weak_pump_steady_state(qp: &QuantumParams, space: &HilbertSpace) -> Result<SteadyStateVector> {
    let psi = weak_pump_unchecked(qp, space)?;
    let population = psi.excited_population();
    if population > WEAK_PUMP_LIMIT {
        return Err(Error::WeakPumpViolation {
            population,
            limit: WEAK_PUMP_LIMIT,
        });
    }
    Ok(psi)
}

fn apply(op: &DMatrix<Complex64>, psi: &DVector<Complex64>) -> DVector<Complex64> {
    op * psi
}

/// S = ⟨ψ|â_s†â_s|ψ⟩ with â_s = μ_E σ₋ + μ_B â_B.
pub fn scattering_intensity(psi: &SteadyStateVector, mu_e: f64, mu_b: f64) -> f64 {
    let a_s = Operators::new(&psi.space).scattering(mu_e, mu_b);
    apply(&a_s, &psi.coefficients).norm_squared()
}

/// g²(0) = ⟨â_s†â_s†â_sâ_s⟩ / ⟨â_s†â_s⟩².
pub fn g2_zero(psi: &SteadyStateVector, mu_e: f64, mu_b: f64) -> Result<f64> {
    let a_s = Operators::new(&psi.space).scattering(mu_e, mu_b);
    g2_with(&a_s, psi)
}

fn g2_with(a_s: &DMatrix<Complex64>, psi: &SteadyStateVector) -> Result<f64> {
    if psi.space.n_b < 2 || psi.space.n_d < 2 {
        return Err(Error::invalid(
            "truncation",
            "g2(0) needs at least two quanta per mode (N_B, N_D >= 2)",
        ));
    }
    let once = apply(a_s, &psi.coefficients);
    let intensity = once.norm_squared();
    if intensity <= MIN_INTENSITY {
        return Err(Error::UndefinedStatistics { intensity });
    }
    Ok(apply(a_s, &once).norm_squared() / (intensity * intensity))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub omega_l: f64,
    pub intensity: f64,
    /// NaN when undefined.
    pub g2: f64,
    pub population: f64,
    pub weak_pump_ok: bool,
    pub error: Option<String>,
}

/// Scattering intensity and g²(0) versus drive frequency. Per-point failures
/// are recorded, not propagated.
pub fn spectrum_scan(qp: &QuantumParams, space: &HilbertSpace, grid: &[f64]) -> Result<Vec<ScanPoint>> {
    qp.validate()?;
    check_grid("omega_l grid", grid)?;
    let ops = Operators::new(space);
    let a_s = ops.scattering(qp.mu_e, qp.mu_b);
    Ok(grid
        .par_iter()
        .map(|&omega_l| {
            let point = QuantumParams { omega_l, ..*qp };
            match solve_from_ops(&point, space, &ops) {
                Ok(psi) => {
                    let population = psi.excited_population();
                    let intensity = apply(&a_s, &psi.coefficients).norm_squared();
                    let (g2, error) = match g2_with(&a_s, &psi) {
                        Ok(g) => (g, None),
                        Err(e) => (f64::NAN, Some(e.to_string())),
                    };
                    ScanPoint {
                        omega_l,
                        intensity,
                        g2,
                        population,
                        weak_pump_ok: population <= WEAK_PUMP_LIMIT,
                        error,
                    }
                }
                Err(e) => ScanPoint {
                    omega_l,
                    intensity: f64::NAN,
                    g2: f64::NAN,
                    population: f64::NAN,
                    weak_pump_ok: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{build_space, BasisState, Level};
    use approx::assert_relative_eq;

    fn bare_cavity(omega_l: f64) -> QuantumParams {
        QuantumParams {
            g_b: 0.0,
            g_d: 0.0,
            mu_e: 0.0,
            omega_l,
            ..QuantumParams::default()
        }
        .with_weak_drive(1e-4)
    }

    fn g_state(bright: usize) -> BasisState {
        BasisState {
            emitter: Level::Ground,
            bright,
            dark: 0,
        }
    }

    #[test]
    fn driven_cavity_amplitudes() {
        let space = build_space(2, 2).unwrap();
        for omega_l in [3.0, 3.07] {
            let qp = bare_cavity(omega_l);
            let psi = weak_pump_steady_state(&qp, &space).unwrap();
            let (_, drive, _) = qp.drives();
            let det = Complex64::new(qp.omega_b - omega_l, -0.5 * qp.gamma_b);
            let c1 = -(drive / 2.0) / det;
            let c2 = (drive / 2.0).powi(2) * 2f64.sqrt() / (det * (det * 2.0));
            assert!((psi.coefficient(g_state(1)) - c1).norm() < 1e-6 * c1.norm());
            assert!((psi.coefficient(g_state(2)) - c2).norm() < 1e-6 * c2.norm());
            // the dropped equation only fails at second order in the drive
            assert!(psi.dropped_row_residual <= drive.abs() * c1.norm());
        }
        let qp = bare_cavity(3.0);
        let psi = weak_pump_steady_state(&qp, &space).unwrap();
        assert_relative_eq!(psi.coefficient(g_state(1)).norm(), 1e-4 / 0.2, max_relative = 1e-6);
        let s = scattering_intensity(&psi, 0.0, qp.mu_b);
        assert_relative_eq!(s, (450.0f64 * 1e-4 / 0.2).powi(2), max_relative = 1e-5);
    }

    #[test]
    fn coherent_and_antibunched_limits() {
        let space = build_space(2, 2).unwrap();
        let qp = bare_cavity(3.05);
        let psi = weak_pump_steady_state(&qp, &space).unwrap();
        assert!((g2_zero(&psi, 0.0, qp.mu_b).unwrap() - 1.0).abs() < 1e-6);

        let emitter = QuantumParams {
            g_b: 0.0,
            g_d: 0.0,
            mu_b: 0.0,
            omega_l: 3.5,
            ..QuantumParams::default()
        }
        .with_weak_drive(1e-4);
        let psi = weak_pump_steady_state(&emitter, &space).unwrap();
        assert!(g2_zero(&psi, emitter.mu_e, 0.0).unwrap() < 1e-6);
    }

    #[test]
    fn vacuum_scatters_nothing() {
        let space = build_space(2, 2).unwrap();
        let qp = QuantumParams {
            e_l: 0.0,
            ..QuantumParams::default()
        };
        let psi = weak_pump_steady_state(&qp, &space).unwrap();
        assert_eq!(scattering_intensity(&psi, qp.mu_e, qp.mu_b), 0.0);
        assert!(matches!(
            g2_zero(&psi, qp.mu_e, qp.mu_b),
            Err(Error::UndefinedStatistics { .. })
        ));
    }

    #[test]
    fn strong_drive_is_flagged() {
        let space = build_space(2, 2).unwrap();
        let qp = QuantumParams::default().with_weak_drive(0.05);
        assert!(matches!(
            weak_pump_steady_state(&qp, &space),
            Err(Error::WeakPumpViolation { .. })
        ));
        let scan = spectrum_scan(&qp, &space, &[2.5, 3.0]).unwrap();
        assert!(scan.iter().any(|p| !p.weak_pump_ok));
        assert!(scan.iter().all(|p| p.intensity.is_finite()));
    }

    #[test]
    fn g2_needs_two_quanta() {
        let space = build_space(1, 2).unwrap();
        let qp = QuantumParams::default();
        let psi = weak_pump_steady_state(&qp, &space).unwrap();
        assert!(g2_zero(&psi, qp.mu_e, qp.mu_b).is_err());
    }

    #[test]
    fn frame_shift_invariance() {
        let space = build_space(2, 2).unwrap();
        let qp = QuantumParams {
            omega_l: 2.8,
            ..QuantumParams::default()
        };
        let a = weak_pump_steady_state(&qp, &space).unwrap();
        let b = weak_pump_steady_state(&qp.shifted(1.3), &space).unwrap();
        let (sa, sb) = (scattering_intensity(&a, qp.mu_e, qp.mu_b), scattering_intensity(&b, qp.mu_e, qp.mu_b));
        assert_relative_eq!(sa, sb, max_relative = 1e-10);
        assert_relative_eq!(
            g2_zero(&a, qp.mu_e, qp.mu_b).unwrap(),
            g2_zero(&b, qp.mu_e, qp.mu_b).unwrap(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn drive_scaling() {
        let space = build_space(2, 2).unwrap();
        let qp = QuantumParams {
            omega_l: 2.75,
            ..QuantumParams::default()
        }
        .with_weak_drive(1e-4);
        let half = QuantumParams {
            e_l: qp.e_l / 2.0,
            ..qp
        };
        let a = weak_pump_steady_state(&qp, &space).unwrap();
        let b = weak_pump_steady_state(&half, &space).unwrap();
        let ratio = scattering_intensity(&a, qp.mu_e, qp.mu_b) / scattering_intensity(&b, qp.mu_e, qp.mu_b);
        assert_relative_eq!(ratio, 4.0, max_relative = 0.01);
        assert_relative_eq!(
            g2_zero(&a, qp.mu_e, qp.mu_b).unwrap(),
            g2_zero(&b, qp.mu_e, qp.mu_b).unwrap(),
            max_relative = 0.01
        );
    }

    #[test]
    fn truncation_stability() {
        let qp = QuantumParams {
            omega_l: 2.8,
            ..QuantumParams::default()
        };
        let g = |n| {
            let space = build_space(n, n).unwrap();
            let psi = weak_pump_steady_state(&qp, &space).unwrap();
            g2_zero(&psi, qp.mu_e, qp.mu_b).unwrap()
        };
        assert_relative_eq!(g(2), g(3), max_relative = 0.01);
    }

    #[test]
    fn scan_preserves_grid_order() {
        let space = build_space(2, 2).unwrap();
        let grid = crate::peaks::linspace(2.0, 4.0, 41);
        let scan = spectrum_scan(&QuantumParams::default(), &space, &grid).unwrap();
        for (p, w) in scan.iter().zip(&grid) {
            assert_eq!(p.omega_l, *w);
            assert!(p.weak_pump_ok && p.error.is_none());
        }
        assert!(spectrum_scan(&QuantumParams::default(), &space, &[3.0, 2.0]).is_err());
    }
}
