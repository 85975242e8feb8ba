//! Sum-product decoding of classical and quantum LDPC codes under
//! misidentified channels.
//!
//! The crate covers the full pipeline of a mismatched-decoding study:
//!
//! - [`gf2`]: exact GF(2) linear algebra (bit-packed matrices, rank,
//!   row-space membership).
//! - [`pauli`]: Pauli patterns in binary symplectic form and the
//!   commutation product.
//! - [`codes`]: stabilizer/CSS code construction and validation, the
//!   dual-containing bicycle family, and girth-conscious regular LDPC
//!   codes by progressive edge growth.
//! - [`channels`]: BSC and depolarizing noise samplers (i.i.d. and
//!   fixed-weight) and the BSC capacity limit.
//! - [`estimation`]: quantum Fisher information of depolarizing-channel
//!   probing and the truncated-normal model of an optimal estimator.
//! - [`decoders`]: binary and quaternary syndrome sum-product decoders
//!   with a brute-force maximum-likelihood oracle.
//! - [`sim`]: deterministic Monte Carlo sweeps, the decoder-mismatch
//!   experiments, and CSV/JSON/SVG emission.

pub mod alist;
pub mod channels;
pub mod codes;
pub mod decoders;
pub mod estimation;
pub mod gf2;
pub mod pauli;
pub mod sim;

pub use channels::{BscChannel, DepolarizingChannel};
pub use codes::{build_bicycle_code, build_peg_regular, ClassicalCode, StabilizerCode};
pub use decoders::{BscDecoder, DepolarizingDecoder};
pub use gf2::{BinaryMatrix, BinaryVector};
pub use pauli::{Pauli, PauliVector};
