use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Ground,
    Excited,
}

/// Basis ket |a, b, c⟩: emitter level, bright and dark occupations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub emitter: Level,
    pub bright: usize,
    pub dark: usize,
}

impl BasisState {
    pub fn excitations(&self) -> usize {
        usize::from(self.emitter == Level::Excited) + self.bright + self.dark
    }
}

/// Emitter ⊗ bright ⊗ dark space with Fock cutoffs `n_b`, `n_d`.
/// Flat index = a·(N_B+1)(N_D+1) + b·(N_D+1) + c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSpace {
    pub n_b: usize,
    pub n_d: usize,
}

pub fn build_space(n_b: usize, n_d: usize) -> Result<HilbertSpace> {
    if n_b < 1 || n_d < 1 {
        return Err(Error::invalid(
            "truncation",
            format!("Fock cutoffs must be >= 1 (got N_B = {n_b}, N_D = {n_d})"),
        ));
    }
    Ok(HilbertSpace { n_b, n_d })
}

impl HilbertSpace {
    pub fn dim(&self) -> usize {
        2 * (self.n_b + 1) * (self.n_d + 1)
    }

    pub fn index(&self, s: BasisState) -> usize {
        let a = usize::from(s.emitter == Level::Excited);
        (a * (self.n_b + 1) + s.bright) * (self.n_d + 1) + s.dark
    }

    pub fn state(&self, k: usize) -> BasisState {
        let c = k % (self.n_d + 1);
        let rest = k / (self.n_d + 1);
        let b = rest % (self.n_b + 1);
        let a = rest / (self.n_b + 1);
        BasisState {
            emitter: if a == 0 { Level::Ground } else { Level::Excited },
            bright: b,
            dark: c,
        }
    }

    pub fn ground(&self) -> usize {
        0
    }

    pub fn states(&self) -> impl Iterator<Item = BasisState> + '_ {
        (0..self.dim()).map(|k| self.state(k))
    }

    fn operator(&self, element: impl Fn(BasisState) -> Option<(BasisState, f64)>) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (k, s) in self.states().enumerate() {
            if let Some((t, amp)) = element(s) {
                m[(self.index(t), k)] = Complex64::from(amp);
            }
        }
        m
    }

    /// σ₋ = |g⟩⟨e| ⊗ 1 ⊗ 1.
    pub fn sigma_minus(&self) -> DMatrix<Complex64> {
        self.operator(|s| {
            (s.emitter == Level::Excited).then_some((
                BasisState {
                    emitter: Level::Ground,
                    ..s
                },
                1.0,
            ))
        })
    }

    pub fn bright_annihilation(&self) -> DMatrix<Complex64> {
        self.operator(|s| {
            (s.bright > 0).then(|| {
                (
                    BasisState {
                        bright: s.bright - 1,
                        ..s
                    },
                    (s.bright as f64).sqrt(),
                )
            })
        })
    }

    pub fn dark_annihilation(&self) -> DMatrix<Complex64> {
        self.operator(|s| {
            (s.dark > 0).then(|| {
                (
                    BasisState {
                        dark: s.dark - 1,
                        ..s
                    },
                    (s.dark as f64).sqrt(),
                )
            })
        })
    }
}
