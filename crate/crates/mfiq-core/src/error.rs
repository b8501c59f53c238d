//! Error type shared by all modules.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// Each variant carries a stable snake_case code (see [`Error::code`]) that
/// front ends can match on without parsing the display text.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid has too few points for the requested stencil or constructor bound.
    GridTooSmall,
    /// A field contained NaN or infinity where a finite value is required.
    NonFiniteField,
    /// Normalisation was requested for an (almost) all-zero field.
    ZeroNorm,
    /// Two fields that must share a grid do not.
    GridMismatch,
    /// Fisher information evaluated to a non-finite value (density decays too
    /// slowly for the truncated domain).
    FisherOverflow,
    /// Quantum potential evaluated to a non-finite value.
    QOverflow,
    /// A real-valued wavefunction was required but the input has a nonzero
    /// imaginary part.
    ComplexInput,
    /// The minimum-Fisher-information iteration did not reach the residual
    /// tolerance within the iteration budget.
    MfiNoConvergence { last_residual: f64 },
    /// The potential keeps decreasing into a Dirichlet boundary, so the
    /// variational problem has no truncation-independent minimum.
    PotentialUnbounded,
    /// The eigensolver failed to converge.
    EigenFail,
    /// The trusted region of a wavefunction is split by nodes; the action is
    /// only defined per connected component.
    PhaseDisconnected { components: usize },
    /// Time interval with `t_b <= t_a`.
    BadInterval,
    /// Linear solve breakdown during propagation.
    PropagationFail,
    /// Klein-Gordon time step exceeds the CFL bound `dt <= h/c`.
    CflViolation { dt: f64, limit: f64 },
    /// Precondition violation not covered by a more specific variant.
    InvalidInput(&'static str),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::GridTooSmall => "grid_too_small",
            Error::NonFiniteField => "non_finite_field",
            Error::ZeroNorm => "zero_norm",
            Error::GridMismatch => "grid_mismatch",
            Error::FisherOverflow => "fisher_overflow",
            Error::QOverflow => "q_overflow",
            Error::ComplexInput => "complex_input",
            Error::MfiNoConvergence { .. } => "mfi_no_convergence",
            Error::PotentialUnbounded => "potential_unbounded",
            Error::EigenFail => "eigen_fail",
            Error::PhaseDisconnected { .. } => "phase_disconnected",
            Error::BadInterval => "bad_interval",
            Error::PropagationFail => "propagation_fail",
            Error::CflViolation { .. } => "cfl_violation",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MfiNoConvergence { last_residual } => {
                write!(f, "mfi_no_convergence: last residual {last_residual:e}")
            }
            Error::PhaseDisconnected { components } => {
                write!(f, "phase_disconnected: {components} trusted components")
            }
            Error::CflViolation { dt, limit } => {
                write!(f, "cfl_violation: dt {dt:e} exceeds h/c = {limit:e}")
            }
            Error::InvalidInput(what) => write!(f, "invalid_input: {what}"),
            other => f.write_str(other.code()),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
