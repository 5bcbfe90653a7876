// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::vec::Vec;
use core::fmt;


use crate::numerics::dot;
use crate::ratefn::{ExtendedReal, RateEngine};
use crate::stiefel::StiefelFrame;
use crate::{Error, Result};

/// A Borel set in `ℝᵈ` whose projected measure is estimated.
#[derive(Clone, Debug, PartialEq)]
pub enum EventRegion {
    /// `{x : ⟨x, u⟩ ≥ a}` with `u` a unit vector.
    HalfSpace { direction: Vec<f64>, threshold: f64 },
    /// `{x : ‖x‖ ≥ r}`.
    BallComplement { dim: usize, radius: f64 },
}

impl EventRegion {
    /// Normalizes `direction`.
    pub fn half_space(direction: &[f64], threshold: f64) -> Result<Self> {
        if direction.is_empty() {
            return Err(Error::Dimension("direction must have at least one coordinate"));
        }
        if !threshold.is_finite() || direction.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("half-space parameters"));
        }
        let norm = dot(direction, direction).sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("half-space direction is zero"));
        }
        Ok(Self::HalfSpace {
            direction: direction.iter().map(|v| v / norm).collect(),
            threshold,
        })
    }

    pub fn ball_complement(dim: usize, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("region dimension must be at least 1"));
        }
        if !radius.is_finite() {
            return Err(Error::NonFinite("ball radius"));
        }
        Ok(Self::BallComplement { dim, radius })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::HalfSpace { direction, .. } => direction.len(),
            Self::BallComplement { dim, .. } => *dim,
        }
    }

    #[inline]
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Self::HalfSpace { direction, threshold } => dot(x, direction) >= *threshold,
            Self::BallComplement { radius, .. } => *radius <= 0.0 || dot(x, x).sqrt() >= *radius,
        }
    }

    /// The same half-space seen from the Gaussian projection of `frame`:
    /// a uniform-mode point `y` is inside exactly when `S y` is inside the
    /// returned region, where `S = n^{-1/2}(GGᵀ)^{1/2}`.
    pub fn to_gaussian_coordinates(&self, frame: &StiefelFrame) -> Result<Self> {
        match self {
            Self::HalfSpace { direction, threshold } => {
                if direction.len() != frame.dim() {
                    return Err(Error::DimensionMismatch { expected: frame.dim(), actual: direction.len() });
                }
                let w = frame.scale_inverse().mul_vec(direction)?;
                let norm = dot(&w, &w).sqrt();
                Ok(Self::HalfSpace {
                    direction: w.iter().map(|v| v / norm).collect(),
                    threshold: threshold / norm,
                })
            }
            Self::BallComplement { .. } => Err(Error::Unsupported("only half-spaces map to half-spaces")),
        }
    }

    /// `inf_A Λ*` for the radial rate `Λ*(t) = Ψ*(‖t‖)`.
    pub fn theoretical_rate(&self, engine: &RateEngine) -> ExtendedReal {
        let r = match self {
            Self::HalfSpace { threshold, .. } => *threshold,
            Self::BallComplement { radius, .. } => *radius,
        };
        if r <= 0.0 {
            ExtendedReal::Finite(0.0)
        } else {
            engine.conjugate(r)
        }
    }
}

impl fmt::Display for EventRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::HalfSpace { direction, threshold } => {
                f.write_str("half:")?;
                for (i, v) in direction.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ":{threshold}")
            }
            Self::BallComplement { radius, .. } => write!(f, "ballc:{radius}"),
        }
    }
}
