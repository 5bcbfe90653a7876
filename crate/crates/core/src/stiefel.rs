//! Uniform orthonormal `d`-frames in `ℝⁿ` built as the polar factor of a
//! Gaussian matrix: `I* = (GGᵀ)^{-1/2} G`.
//!
//! Besides the frame itself the type keeps `G` and the `d × d` matrix
//! `S = n^{-1/2} (GGᵀ)^{1/2}` that links the two projections exposed here:
//! `S · (n^{-1/2} I* x) = n^{-1} G x` for every `x`.

// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::vec;
use alloc::vec::Vec;

use crate::numerics::{jacobi_eigen, sample_gaussian_matrix, DenseMatrix, RngStream};
use crate::{Error, Result};

/// An orthonormal frame, immutable after construction.
#[derive(Clone, Debug)]
pub struct StiefelFrame {
    g: DenseMatrix,
    i_star: DenseMatrix,
    scale_to_identity: DenseMatrix,
    scale_inverse: DenseMatrix,
    gram_eigenvalues: Vec<f64>,
    inv_sqrt_n: f64,
    inv_n: f64,
}

impl StiefelFrame {
    /// Samples a Gaussian `d × n` matrix from `stream` and takes its polar factor.
    pub fn sample(stream: &mut RngStream, d: usize, n: usize) -> Result<Self> {
        let g = sample_gaussian_matrix(stream, d, n)?;
        Self::from_gaussian(g)
    }

    /// Builds the frame from a given `d × n` matrix (any full-rank matrix is
    /// accepted, which lets tests inject a deterministic `G`).
    pub fn from_gaussian(g: DenseMatrix) -> Result<Self> {
        let (d, n) = (g.rows(), g.cols());
        if d > n {
            return Err(Error::Dimension("projection dimension d exceeds ambient dimension n"));
        }
        let eig = jacobi_eigen(&g.gram_rows())?;
        let inverse_sqrt = eig.inverse_sqrt()?;
        let i_star = inverse_sqrt.matmul(&g)?;
        let nf = n as f64;
        let scale_to_identity = eig.map_spectrum(|l| (l / nf).sqrt());
        let scale_inverse = eig.map_spectrum(|l| (nf / l).sqrt());
        Ok(Self {
            gram_eigenvalues: eig.eigenvalues,
            g,
            i_star,
            scale_to_identity,
            scale_inverse,
            inv_sqrt_n: 1.0 / nf.sqrt(),
            inv_n: 1.0 / nf,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.g.cols()
    }

    pub fn gaussian(&self) -> &DenseMatrix {
        &self.g
    }

    /// `I*`, a `d × n` matrix with orthonormal rows.
    pub fn i_star(&self) -> &DenseMatrix {
        &self.i_star
    }

    /// `n^{-1/2} (GGᵀ)^{1/2}`.
    pub fn scale_to_identity(&self) -> &DenseMatrix {
        &self.scale_to_identity
    }

    /// Inverse of [`Self::scale_to_identity`], from the same eigen-decomposition.
    pub fn scale_inverse(&self) -> &DenseMatrix {
        &self.scale_inverse
    }

    /// `n^{-1/2} I* x`.
    pub fn project_uniform(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.project_uniform_into(x, &mut out)?;
        Ok(out)
    }

    pub fn project_uniform_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.i_star.mul_vec_into(x, out)?;
        out.iter_mut().for_each(|y| *y *= self.inv_sqrt_n);
        Ok(())
    }

    /// `n^{-1} G x`.
    pub fn project_gaussian(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.project_gaussian_into(x, &mut out)?;
        Ok(out)
    }

    pub fn project_gaussian_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.g.mul_vec_into(x, out)?;
        out.iter_mut().for_each(|y| *y *= self.inv_n);
        Ok(())
    }

    /// `‖n^{-1/2} (GGᵀ)^{1/2} − Id‖_op = max_i |√(λ_i / n) − 1|`.
    pub fn scale_drift_norm(&self) -> f64 {
        let nf = self.ambient_dim() as f64;
        self.gram_eigenvalues
            .iter()
            .map(|&l| ((l / nf).sqrt() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}
