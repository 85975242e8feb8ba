//! Monte Carlo experiment orchestration with deterministic parallel
//! seeding, plus CSV/JSON/SVG result emission.

mod config;
mod emit;
mod engine;
mod fit;
mod runs;
mod seeding;
mod stats;

pub use config::{
    grid, ClassicalMismatchConfig, CodeSpec, ExperimentConfig, FitDeltaConfig, ImprovedConfig,
    NoiseMode, QuantumMismatchConfig, StopRule,
};
pub use emit::{emit_delta_cost, emit_results, write_csv, write_manifest, write_svg, CSV_HEADER};
pub use engine::{run_point, run_point_arms};
pub use fit::{fit_quadratic_vertex, FitOutcome, QuadraticFit};
pub use runs::{
    fit_delta_cost, run_classical_mismatch, run_improved_comparison, run_quantum_mismatch,
    DeltaCostResult, SweepResult, CURVE_BASELINE, CURVE_IMPROVED, CURVE_NAIVE,
};
pub use seeding::{derive_rng, domain};
pub use stats::{wilson_interval, CurveResult, PointAccumulator, PointSummary, TrialOutcome};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid configuration: {reason}")]
    Config { reason: String },
    #[error(transparent)]
    Code(#[from] crate::codes::CodeError),
    #[error(transparent)]
    Channel(#[from] crate::channels::ChannelError),
    #[error(transparent)]
    Decode(#[from] crate::decoders::DecodeError),
    #[error(transparent)]
    Estimation(#[from] crate::estimation::EstimationError),
    #[error(transparent)]
    Alist(#[from] crate::alist::AlistError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
