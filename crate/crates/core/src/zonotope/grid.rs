// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::numerics::RngStream;
use crate::{Error, Result};

pub const ANGULAR_DEFAULT: usize = 4096;
pub const FIBONACCI_DEFAULT: usize = 4096;
pub const RANDOM_DEFAULT: usize = 8192;

/// How a [`DirectionGrid`] was built; reported with Hausdorff estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    /// `{+1, −1}` in dimension one.
    Line,
    Angular { count: usize },
    Fibonacci { count: usize },
    Random { count: usize, master_seed: u64, stream_id: u64 },
    Explicit,
}

/// Unit directions on the sphere `S^{d−1}` that discretize a supremum over it.
/// Every grid except [`GridKind::Explicit`] contains `±e₁, …, ±e_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionGrid {
    dim: usize,
    directions: Vec<f64>,
    kind: GridKind,
}

impl DirectionGrid {
    /// The default grid for dimension `d`: 4096 angles, 4096 Fibonacci points
    /// or 8192 seeded random directions.
    pub fn standard(d: usize, stream: &mut RngStream) -> Result<Self> {
        match d {
            0 => Err(Error::Dimension("grid dimension must be at least 1")),
            1 => Ok(Self {
                dim: 1,
                directions: alloc::vec![1.0, -1.0],
                kind: GridKind::Line,
            }),
            2 => Ok(Self::angular(ANGULAR_DEFAULT)),
            3 => Ok(Self::fibonacci(FIBONACCI_DEFAULT)),
            _ => Ok(Self::random(d, RANDOM_DEFAULT, stream)),
        }
    }

    /// `count` equally spaced angles in the plane.
    pub fn angular(count: usize) -> Self {
        let mut directions = Vec::with_capacity(2 * count);
        for k in 0..count {
            let (s, c) = if (4 * k) % count == 0 {
                match 4 * k / count {
                    0 => (0.0, 1.0),
                    1 => (1.0, 0.0),
                    2 => (0.0, -1.0),
                    _ => (-1.0, 0.0),
                }
            } else {
                (2.0 * PI * k as f64 / count as f64).sin_cos()
            };
            directions.extend_from_slice(&[c, s]);
        }
        let mut grid = Self {
            dim: 2,
            directions,
            kind: GridKind::Angular { count },
        };
        grid.ensure_axes();
        grid
    }

    /// `count` points of the Fibonacci lattice on `S²`.
    pub fn fibonacci(count: usize) -> Self {
        let golden_angle = PI * (3.0 - 5f64.sqrt());
        let mut directions = Vec::with_capacity(3 * (count + 6));
        for i in 0..count {
            let z = 1.0 - (2 * i + 1) as f64 / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden_angle * i as f64).sin_cos();
            let norm = (r * r + z * z).sqrt();
            directions.extend_from_slice(&[r * c / norm, r * s / norm, z / norm]);
        }
        let mut grid = Self {
            dim: 3,
            directions,
            kind: GridKind::Fibonacci { count },
        };
        grid.ensure_axes();
        grid
    }

    /// `count` normalized Gaussian vectors drawn from `stream`.
    pub fn random(d: usize, count: usize, stream: &mut RngStream) -> Self {
        let kind = GridKind::Random {
            count,
            master_seed: stream.master_seed(),
            stream_id: stream.stream_id(),
        };
        let mut directions = Vec::with_capacity(d * (count + 2 * d));
        let mut v = alloc::vec![0.0; d];
        let mut produced = 0;
        while produced < count {
            v.iter_mut().for_each(|x| *x = stream.standard_normal());
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue;
            }
            directions.extend(v.iter().map(|x| x / norm));
            produced += 1;
        }
        let mut grid = Self { dim: d, directions, kind };
        grid.ensure_axes();
        grid
    }

    /// Wraps caller-supplied directions, which must be unit vectors.
    pub fn from_directions(dim: usize, directions: Vec<Vec<f64>>) -> Result<Self> {
        let mut flat = Vec::with_capacity(dim * directions.len());
        for u in &directions {
            if u.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: u.len(),
                });
            }
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidArgument("grid directions must be unit vectors"));
            }
            flat.extend_from_slice(u);
        }
        Ok(Self {
            dim,
            directions: flat,
            kind: GridKind::Explicit,
        })
    }

    fn ensure_axes(&mut self) {
        let d = self.dim;
        for axis in 0..d {
            for sign in [1.0, -1.0] {
                let present = self.directions.chunks_exact(d).any(|u| {
                    u.iter()
                        .enumerate()
                        .all(|(i, &x)| (x - if i == axis { sign } else { 0.0 }).abs() <= 1e-12)
                });
                if !present {
                    self.directions
                        .extend((0..d).map(|i| if i == axis { sign } else { 0.0 }));
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.directions.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn direction(&self, i: usize) -> &[f64] {
        &self.directions[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.directions.chunks_exact(self.dim)
    }
}
