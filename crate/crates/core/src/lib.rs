//! Numerics for random `d`-dimensional projections of `n`-dimensional product
//! measures.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every algorithm of the
//! laboratory: seeded Gaussian sampling and small symmetric linear algebra,
//! uniform Stiefel frames built from Gaussian matrices, the projected cube as a
//! zonotope, one-dimensional laws with their log-moment generating functions,
//! the radial rate function and its Legendre–Fenchel conjugate, and Monte Carlo
//! and exact estimators of the projected measure.
//!
//! IO, configuration and thread pools live in the `randproj` companion crate.
//! Parallel loops are expressed through [`exec::Executor`] so a caller can
//! plug in a thread pool without changing any numerical result.

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod distributions;
pub mod error;
pub mod exec;
pub mod ldp;
pub mod numerics;
pub mod ratefn;
pub mod stats;
pub mod stiefel;
pub mod zonotope;

pub use distributions::{Atom, NuDistribution, NuKind};
pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use ldp::{EventRegion, LdpReport, LdpRow, ProjectionMode};
pub use numerics::{DenseMatrix, RngStream, SymmetricEigen};
pub use ratefn::{ExtendedReal, HermiteRule, RateEngine, RateProfile};
pub use stiefel::StiefelFrame;
pub use zonotope::{DirectionGrid, LimitBall, Zonotope};

/// `√(2/π)`, the mean of `|g|` for a standard Gaussian `g`.
pub const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
