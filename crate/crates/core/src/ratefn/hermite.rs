// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use once_cell::race::OnceBox;

use crate::numerics::tridiagonal_eigen;
use crate::{Error, Result};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 512;

/// Orders tried, in turn, by the adaptive Gaussian expectation.
pub const LADDER: [usize; 4] = [64, 128, 256, 512];

static LADDER_CACHE: [OnceBox<HermiteRule>; 4] = [OnceBox::new(), OnceBox::new(), OnceBox::new(), OnceBox::new()];

/// Gauss–Hermite rule for the standard normal density: `E[f(g)] ≈ Σⱼ wⱼ f(xⱼ)`
/// with weights summing to one, exact for polynomials of degree `< 2m`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl HermiteRule {
    /// Golub–Welsch: the nodes are the eigenvalues of the symmetric tridiagonal
    /// Jacobi matrix of the monic Hermite recurrence `x Heₖ = Heₖ₊₁ + k Heₖ₋₁`
    /// and the weights are the squared first eigenvector components.
    pub fn new(order: usize) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidArgument("Hermite order must lie in 2..=512"));
        }
        let diag = vec![0.0; order];
        let off: Vec<f64> = (1..order).map(|k| (k as f64).sqrt()).collect();
        let (mut nodes, first) = tridiagonal_eigen(&diag, &off)?;
        let mut weights: Vec<f64> = first.iter().map(|v| v * v).collect();
        // enforce the exact symmetry of the rule
        for j in 0..order / 2 {
            let k = order - 1 - j;
            let x = 0.5 * (nodes[k] - nodes[j]);
            let w = 0.5 * (weights[j] + weights[k]);
            nodes[j] = -x;
            nodes[k] = x;
            weights[j] = w;
            weights[k] = w;
        }
        if order % 2 == 1 {
            nodes[order / 2] = 0.0;
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Self { order, nodes, weights })
    }

    /// Process-wide cached rule for one of the [`LADDER`] orders.
    pub fn cached(order: usize) -> Result<&'static Self> {
        let slot = LADDER
            .iter()
            .position(|&o| o == order)
            .ok_or(Error::InvalidArgument("only ladder orders are cached"))?;
        let rule = LADDER_CACHE[slot].get_or_init(|| Box::new(Self::new(order).expect("ladder orders are valid")));
        Ok(rule)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σⱼ wⱼ f(xⱼ)`.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}
