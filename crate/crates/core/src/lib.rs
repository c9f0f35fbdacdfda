//! Closed-form Mellin transforms of products of four modified Bessel
//! functions (and of quartic Airy products), together with the special
//! function kernels they need and a double-exponential quadrature oracle
//! used to check every formula numerically.
//!
//! Layering, bottom up:
//! - [`special`]: gamma, digamma, Pochhammer, Li₂/Li₃
//! - [`bessel`]: I_ν, K_ν, Ai, Bi for real order and positive argument
//! - [`hypergeometric`]: pFq series and the 2F1 toolkit
//! - [`lauricella`]: F_C in up to three variables
//! - [`meijer`]: Meijer G via Slater's expansion and order reduction
//! - [`closed_form`]: the integral formula catalog
//! - [`quadrature`]: the numerical oracle

// `!(x > 0.0)` is kept on purpose: it also rejects NaN. Reference constants
// carry more digits than f64 holds.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bessel;
pub mod closed_form;
pub mod error;
pub mod hypergeometric;
pub mod lauricella;
pub mod meijer;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
