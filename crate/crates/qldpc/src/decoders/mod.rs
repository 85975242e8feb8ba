//! Belief-propagation decoders: a log-domain binary decoder for the BSC
//! and a probability-domain quaternary syndrome decoder for the
//! depolarizing channel, plus a brute-force maximum-likelihood oracle and
//! residual-error classification for small-instance validation.

mod bruteforce;
mod bsc;
mod depolarizing;
mod residual;

pub use bruteforce::decode_ml_bruteforce;
pub use bsc::{BinaryTanner, BscDecoder};
pub use depolarizing::{DepolarizingDecoder, PauliTanner, QubitBelief};
pub use residual::{classify_residual, classify_residual_with, ResidualClass};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DecodeError {
    #[error("assumed probability {value} outside the open interval ({lo}, {hi})")]
    AssumedProbabilityOutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("syndrome has length {got}, code has {expected} checks")]
    SyndromeLengthMismatch { expected: usize, got: usize },
    #[error("error pattern has length {got}, code has {expected} positions")]
    PatternLengthMismatch { expected: usize, got: usize },
    #[error("block length {n} exceeds the exhaustive-search guard of {max}")]
    BlockTooLarge { n: usize, max: usize },
    #[error("estimates disagree on the syndrome; residuals are only defined within a syndrome class")]
    SyndromeMismatch,
}

/// Outcome of one decoding attempt.
///
/// `converged` implies `syndrome_matched`: the decoder stops as soon as the
/// tentative estimate reproduces the observed syndrome. `logical_failure`
/// stays `None` until a caller with knowledge of the true error classifies
/// the residual.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecodeResult<E> {
    pub converged: bool,
    pub iterations_used: usize,
    pub error_estimate: E,
    pub syndrome_matched: bool,
    pub logical_failure: Option<bool>,
}
