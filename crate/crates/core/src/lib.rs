//! Kobayashi geometry of the ball embedded in the bidisc.
//!
//! This crate holds the pure numerical core: closed-form Kobayashi and
//! Poincaré metrics on the planar model domains and on the ball, the
//! domain `Ω = φ(𝔹²) ⊂ 𝔻 × ℍ` and its sector-family generalisations, the
//! parabolic maps and semigroups of `𝔹²` with an elliptic model, and the
//! quasi-geodesic triangles that measure failure of Gromov hyperbolicity
//! in the bidisc.
//!
//! Everything here is `no_std` (with `alloc`) and free of IO. Sampling,
//! reporting and the command line live in the `hypstep` crate.
#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

extern crate alloc;

pub mod domains;
pub mod dynamics;
mod error;
pub mod geodesics;
pub mod metrics;
mod point;
pub mod quadrature;

pub use error::{Error, Result};
pub use point::{c64, Point2, C64};

/// Version of this crate, for report metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
