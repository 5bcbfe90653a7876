//! The radial rate function of randomly projected product measures.
//!
//! For a law `ν` let `Ψ(s) = E[log M_ν(s g)]`, `s ≥ 0`, with `g ~ N(0,1)`.
//! The projected measures obey a large deviations principle with rate
//! `Λ*(t) = Ψ*(‖t‖₂)`, the Legendre–Fenchel conjugate of `Λ(t) = Ψ(‖t‖₂)`.
//! [`RateEngine`] evaluates `Ψ`, `Ψ′`, the recession slope `ρ = lim Ψ′` and
//! `Ψ*` (which is `+∞` beyond `ρ`); [`RateProfile`] tabulates them.

mod conjugate;
mod engine;
mod hermite;
mod kronrod;
mod profile;

use core::fmt;

pub use conjugate::{ConjugatePoint, BOUNDARY_CAP, BOUNDARY_EVAL_POINTS};
pub use engine::{AccuracyWarning, PsiValue, QuadratureMethod, RateEngine};
pub use hermite::{HermiteRule, LADDER, MAX_ORDER, MIN_ORDER};
pub use kronrod::{integrate, Integral};
pub use profile::RateProfile;

/// A value in `ℝ ∪ {+∞}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PosInfinity,
}

impl ExtendedReal {
    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// The value as an `f64`, with `+∞` mapped to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::PosInfinity => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            Self::PosInfinity => None,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{v}"),
            Self::PosInfinity => f.write_str("inf"),
        }
    }
}
