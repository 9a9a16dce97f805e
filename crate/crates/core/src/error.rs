use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("linear system is singular or ill-conditioned (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("eigen-solver did not converge: {0}")]
    Convergence(String),

    #[error("undefined limit: {0}")]
    UndefinedLimit(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("polarizability pole hit at omega = {omega} eV (order n = {order}, lossless metal)")]
    Pole { order: u32, omega: f64 },

    #[error("anomalous dispersion: dRe(eps)/domega = {derivative} <= 0 at omega = {omega} eV")]
    Dispersion { omega: f64, derivative: f64 },

    #[error("pseudomode fit failed: {0}")]
    FitFailure(String),

    #[error("weak-pump condition violated: excited population {population:.3e} > {limit:.1e}")]
    WeakPumpViolation { population: f64, limit: f64 },

    #[error("photon statistics undefined: mean scattered intensity {intensity:.3e} underflows")]
    UndefinedStatistics { intensity: f64 },

    #[error("Liouvillian null space is degenerate (pivot ratio {pivot_ratio:.3e})")]
    DegenerateNullSpace { pivot_ratio: f64 },

    #[error("density matrix invariant violated: {0}")]
    InvalidState(String),

    #[error("at grid point {index} (omega = {omega} eV): {source}")]
    GridPoint {
        index: usize,
        omega: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }

    /// True for errors caused by the numerics rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::InvalidParameter { .. } => false,
            Error::GridPoint { source, .. } => source.is_numerical(),
            _ => true,
        }
    }
}

pub(crate) fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be finite (got {value})")))
    }
}

pub(crate) fn check_non_negative(name: &str, value: f64) -> Result<()> {
    check_finite(name, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("must be non-negative (got {value})"),
        ))
    }
}

pub(crate) fn check_positive(name: &str, value: f64) -> Result<()> {
    check_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be positive (got {value})")))
    }
}
