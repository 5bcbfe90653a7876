//! The projected cube `I*([-1,1]ⁿ) = ⊕ᵢ [−vᵢ, vᵢ]` as a zonotope: support
//! function, Hausdorff distance to a centered ball and intrinsic volumes.

mod grid;
mod volume;

// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::vec::Vec;

pub use grid::{DirectionGrid, GridKind};
pub use volume::{limit_intrinsic_volume, McEstimate, EXACT_VOLUME_BUDGET};

use crate::exec::{Executor, Sequential};
use crate::stiefel::StiefelFrame;
use crate::{Error, Result, SQRT_2_OVER_PI};

/// Minkowski sum of the segments `[−vᵢ, vᵢ]`; generators are stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Zonotope {
    dim: usize,
    generators: Vec<f64>,
}

impl Zonotope {
    pub fn new(dim: usize, generators: &[&[f64]]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("zonotope dimension must be at least 1"));
        }
        let mut flat = Vec::with_capacity(dim * generators.len());
        for g in generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: g.len(),
                });
            }
            flat.extend_from_slice(g);
        }
        Ok(Self {
            dim,
            generators: flat,
        })
    }

    /// Generators are the columns `I* eᵢ` of the frame (unscaled).
    pub fn from_frame(frame: &StiefelFrame) -> Self {
        let m = frame.i_star();
        let (d, n) = (m.rows(), m.cols());
        let mut generators = Vec::with_capacity(d * n);
        for i in 0..n {
            for r in 0..d {
                generators.push(m[(r, i)]);
            }
        }
        Self { dim: d, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.generators.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, i: usize) -> &[f64] {
        &self.generators[i * self.dim..(i + 1) * self.dim]
    }

    pub fn generators(&self) -> impl Iterator<Item = &[f64]> {
        self.generators.chunks_exact(self.dim)
    }

    /// `h(u) = Σᵢ |⟨u, vᵢ⟩|`.
    pub fn support(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: u.len(),
            });
        }
        Ok(self.support_unchecked(u))
    }

    pub(crate) fn support_unchecked(&self, u: &[f64]) -> f64 {
        self.generators()
            .map(|v| v.iter().zip(u).map(|(a, b)| a * b).sum::<f64>().abs())
            .sum()
    }

    /// Applies a linear map `Q` (given as `d × d` rows) to every generator.
    pub fn transformed(&self, q: &crate::DenseMatrix) -> Result<Self> {
        if q.rows() != self.dim || q.cols() != self.dim {
            return Err(Error::Shape("transform must be d x d"));
        }
        let mut generators = Vec::with_capacity(self.generators.len());
        for v in self.generators() {
            generators.extend(q.mul_vec(v)?);
        }
        Ok(Self {
            dim: self.dim,
            generators,
        })
    }

    /// Hausdorff distance between `scale · Z` and `ball`, as the largest
    /// support-function gap over the grid directions. The grid maximum is a
    /// lower bound on the true distance.
    pub fn hausdorff_to_ball(&self, scale: f64, ball: &LimitBall, grid: &DirectionGrid) -> Result<f64> {
        self.hausdorff_to_ball_with(scale, ball, grid, &Sequential)
    }

    pub fn hausdorff_to_ball_with<E: Executor>(
        &self,
        scale: f64,
        ball: &LimitBall,
        grid: &DirectionGrid,
        exec: &E,
    ) -> Result<f64> {
        if grid.is_empty() {
            return Err(Error::InvalidArgument("empty direction grid"));
        }
        if scale.is_nan() || scale <= 0.0 {
            return Err(Error::InvalidArgument("scale must be positive"));
        }
        if grid.dim() != self.dim || ball.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: grid.dim(),
            });
        }
        const CHUNK: usize = 256;
        let chunks = grid.len().div_ceil(CHUNK);
        let partial = exec.map_indexed(chunks, |c| {
            let end = ((c + 1) * CHUNK).min(grid.len());
            (c * CHUNK..end)
                .map(|i| {
                    let u = grid.direction(i);
                    (scale * self.support_unchecked(u) - ball.support_unchecked(u)).abs()
                })
                .fold(0.0, f64::max)
        });
        Ok(partial.into_iter().fold(0.0, f64::max))
    }
}

/// Centered Euclidean ball; the default radius is `√(2/π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitBall {
    pub radius: f64,
    pub dim: usize,
}

impl LimitBall {
    pub fn new(dim: usize) -> Self {
        Self {
            radius: SQRT_2_OVER_PI,
            dim,
        }
    }

    pub fn with_radius(dim: usize, radius: f64) -> Self {
        Self { radius, dim }
    }

    pub fn support(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: u.len(),
            });
        }
        Ok(self.support_unchecked(u))
    }

    fn support_unchecked(&self, u: &[f64]) -> f64 {
        self.radius * u.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{sample_gaussian_matrix, RngStream};
    use crate::stats::median;
    use alloc::vec;
    use proptest::prelude::*;

    fn square() -> Zonotope {
        Zonotope::new(2, &[&[1.0, 0.0], &[0.0, 1.0]]).unwrap()
    }

    #[test]
    fn generators_from_orthonormal_double() {
        let mut g = crate::DenseMatrix::zeros(2, 4);
        g[(0, 0)] = 1.0;
        g[(1, 1)] = 1.0;
        let z = Zonotope::from_frame(&StiefelFrame::from_gaussian(g).unwrap());
        assert_eq!(z.len(), 4);
        assert_eq!(z.generator(0), &[1.0, 0.0]);
        assert_eq!(z.generator(1), &[0.0, 1.0]);
        assert_eq!(z.generator(3), &[0.0, 0.0]);
    }

    #[test]
    fn generators_are_columns() {
        let g = crate::DenseMatrix::from_rows(&[&[1.0, 2.0, 0.5], &[0.0, 1.0, -1.0]]).unwrap();
        let f = StiefelFrame::from_gaussian(g).unwrap();
        let z = Zonotope::from_frame(&f);
        for i in 0..3 {
            assert_eq!(z.generator(i), &f.i_star().column(i)[..]);
        }
    }

    #[test]
    fn squared_generator_norms_sum_to_d() {
        let f = StiefelFrame::sample(&mut RngStream::new(5, 0), 3, 200).unwrap();
        let z = Zonotope::from_frame(&f);
        let total: f64 = z.generators().map(|v| v.iter().map(|x| x * x).sum::<f64>()).sum();
        assert!((total - 3.0).abs() < 1e-8);
    }

    #[test]
    fn support_examples() {
        let s = 0.5f64.sqrt();
        assert!((square().support(&[s, s]).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(square().support(&[0.0, 0.0]).unwrap(), 0.0);
        let z = Zonotope::new(2, &[&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(z.support(&[1.0, 0.0]).unwrap(), 2.0);
        assert!(z.support(&[1.0]).is_err());
    }

    #[test]
    fn hausdorff_ball_to_itself() {
        // A zonotope of many tiny segments in uniform directions is close to a
        // ball; the ball compared with its own support is exactly zero.
        let ball = LimitBall::with_radius(2, 1.0);
        let grid = DirectionGrid::angular(64);
        let gap = (0..grid.len())
            .map(|i| (ball.support(grid.direction(i)).unwrap() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(gap < 1e-15);
    }

    #[test]
    fn square_against_unit_ball() {
        let ball = LimitBall::with_radius(2, 1.0);
        let d = square().hausdorff_to_ball(1.0, &ball, &DirectionGrid::angular(4096)).unwrap();
        assert!((d - (2f64.sqrt() - 1.0)).abs() < 1e-3, "{d}");
    }

    #[test]
    fn empty_grid_and_bad_scale() {
        let grid = DirectionGrid::from_directions(2, vec![]).unwrap();
        assert!(square().hausdorff_to_ball(1.0, &LimitBall::new(2), &grid).is_err());
        let grid = DirectionGrid::angular(8);
        assert!(square().hausdorff_to_ball(0.0, &LimitBall::new(2), &grid).is_err());
    }

    fn frame_distance(seed: u64, d: usize, n: usize, grid: &DirectionGrid) -> f64 {
        let f = StiefelFrame::sample(&mut RngStream::new(seed, n as u64), d, n).unwrap();
        Zonotope::from_frame(&f)
            .hausdorff_to_ball(1.0 / (n as f64).sqrt(), &LimitBall::new(d), grid)
            .unwrap()
    }

    #[test]
    fn projected_cube_is_close_to_the_ball() {
        let grid = DirectionGrid::angular(4096);
        let small = (0..20).filter(|&s| frame_distance(s, 2, 4000, &grid) < 0.1).count();
        assert!(small >= 18, "{small}");
        let at = |n| median(&(0..20).map(|s| frame_distance(s, 2, n, &grid)).collect::<Vec<_>>());
        assert!(at(4000) < at(250));
    }

    #[test]
    fn rotation_equivariance() {
        let mut s = RngStream::new(77, 0);
        let f = StiefelFrame::sample(&mut s, 3, 40).unwrap();
        let z = Zonotope::from_frame(&f);
        // a random orthogonal Q from the polar factor of a square Gaussian
        let q = StiefelFrame::from_gaussian(sample_gaussian_matrix(&mut s, 3, 3).unwrap())
            .unwrap()
            .i_star()
            .clone();
        let qz = z.transformed(&q).unwrap();
        for _ in 0..100 {
            let u: Vec<f64> = (0..3).map(|_| s.standard_normal()).collect();
            let qtu = q.transpose().mul_vec(&u).unwrap();
            assert!((qz.support(&u).unwrap() - z.support(&qtu).unwrap()).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn support_function_is_sublinear_and_even(
            seed in 0u64..1000,
            u in proptest::collection::vec(-10.0f64..10.0, 3),
            w in proptest::collection::vec(-10.0f64..10.0, 3),
            lambda in 0.0f64..100.0,
        ) {
            let f = StiefelFrame::sample(&mut RngStream::new(seed, 0), 3, 12).unwrap();
            let z = Zonotope::from_frame(&f);
            let hu = z.support(&u).unwrap();
            let scaled: Vec<f64> = u.iter().map(|x| lambda * x).collect();
            prop_assert!((z.support(&scaled).unwrap() - lambda * hu).abs() <= 1e-12 * (lambda * hu).max(1.0));
            let sum: Vec<f64> = u.iter().zip(&w).map(|(a, b)| a + b).collect();
            prop_assert!(z.support(&sum).unwrap() <= hu + z.support(&w).unwrap() + 1e-12);
            let neg: Vec<f64> = u.iter().map(|x| -x).collect();
            prop_assert_eq!(z.support(&neg).unwrap(), hu);
        }
    }
}
