//! Optimal channel identification model: density-operator algebra for
//! probe states, the symmetric logarithmic derivative, quantum Fisher
//! information for unentangled and entangled probing, and the
//! truncated-normal estimator that feeds the decoder a mismatched flip
//! probability.

mod density;
mod estimator;
mod fisher;

pub use density::{ComplexMatrix, DensityOperator};
pub use estimator::{improved_estimate, EstimatorModel, MismatchPolicy};
pub use fisher::{
    apply_depolarizing, bell_probe, cramer_rao_sd, channel_output, channel_derivative,
    qfi, qfi_closed_form, single_qubit_probe, sld, ProbeScheme,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EstimationError {
    #[error("matrix is not a valid density operator: {reason}")]
    InvalidDensity { reason: String },
    #[error("flip probability {value} outside [0, 3/4]")]
    FlipProbabilityOutOfRange { value: f64 },
    #[error("Fisher information diverges at f = {f}")]
    BoundaryDivergence { f: f64 },
    #[error("singular support at f = {f:?}: eigenvalue pair sums below 1e-12")]
    SingularSupport { f: Option<f64> },
    #[error("unsupported dimension {dim}: expected 2 or 4")]
    UnsupportedDimension { dim: usize },
    #[error("subsystem index {index} out of range for dimension {dim}")]
    BadSubsystem { index: usize, dim: usize },
    #[error("invalid policy: {reason}")]
    InvalidPolicy { reason: String },
}
