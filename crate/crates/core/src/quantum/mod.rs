//! Weakly driven emitter coupled to a bright and a dark bosonic mode.
//!
//! The state lives in a truncated Fock space (see [`HilbertSpace`]). The
//! weak-pump solver works with the non-Hermitian Hamiltonian H̃ and a pure
//! steady state; the Lindblad solver is the dense reference.

mod hamiltonian;
mod lindblad;
mod space;
mod weak_pump;

pub use hamiltonian::{effective_hamiltonian, hermitian_hamiltonian, Operators, QuantumParams, WEAK_DRIVE};
pub use lindblad::{
    lindblad_steady_state, observables_from_rho, DensityMatrixState, MAX_LINDBLAD_DIM, NULL_SPACE_GAP,
};
pub use space::{build_space, BasisState, HilbertSpace, Level};
pub use weak_pump::{
    g2_zero, scattering_intensity, spectrum_scan, weak_pump_steady_state, weak_pump_unchecked, ScanPoint,
    SteadyStateVector, MIN_INTENSITY, WEAK_PUMP_LIMIT,
};
