//! Optimal error probabilities and asymptotic error exponents for quantum
//! hypothesis testing.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense Hermitian linear algebra (eigendecomposition, trace
//!   norm, spectral functions, Kronecker powers, PSD order).
//! - [`discrimination`]: single-shot discrimination of generalized states
//!   (classical and binary optima, optimality certificates, Chernoff
//!   divergence, worst-case composite error).
//! - [`composite`]: the projection/projection/pure-state family, its
//!   reduced matrices, exact composite error for `n` copies and the
//!   exponent series.
//! - [`oracle`]: brute-force ground truth used to validate everything above.
//!
//! All functions are pure; values are `Send + Sync` and may be shared freely
//! across threads.

pub mod composite;
pub mod dd;
pub mod discrimination;
mod error;
pub mod linalg;
pub mod optimize;
pub mod oracle;
pub mod sampling;

pub use error::{Error, Result};
