// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::vec::Vec;

use super::Zonotope;
use crate::exec::{Executor, Sequential};
use crate::numerics::special::{binomial, gamma};
use crate::numerics::{gram_determinant, RngStream};
use crate::{Error, Result};

/// Largest number of `k`-subsets enumerated by [`Zonotope::intrinsic_volume_exact`].
pub const EXACT_VOLUME_BUDGET: u128 = 10_000_000;

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub value: f64,
    pub std_err: f64,
    pub samples: u64,
}

fn binomial_exact(n: u128, k: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

impl Zonotope {
    fn check_order(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.dim {
            return Err(Error::InvalidArgument("intrinsic volume order must satisfy 1 <= k <= d"));
        }
        if k > self.len() {
            return Err(Error::InvalidArgument("need at least k generators"));
        }
        Ok(())
    }

    /// `V_k = 2ᵏ Σ_{|S|=k} √det Gram(v_S)` by enumerating every `k`-subset.
    pub fn intrinsic_volume_exact(&self, k: usize) -> Result<f64> {
        self.intrinsic_volume_exact_with(k, &Sequential)
    }

    pub fn intrinsic_volume_exact_with<E: Executor>(&self, k: usize, exec: &E) -> Result<f64> {
        self.check_order(k)?;
        let n = self.len();
        let required = binomial_exact(n as u128, k as u128).unwrap_or(u128::MAX);
        if required > EXACT_VOLUME_BUDGET {
            return Err(Error::Budget {
                required,
                budget: EXACT_VOLUME_BUDGET,
            });
        }
        // Subsets are grouped by their smallest index; groups are summed in order.
        let partial = exec.map_indexed(n, |first| {
            let mut idx: Vec<usize> = (first..first + k).collect();
            if idx[k - 1] >= n {
                return 0.0;
            }
            let mut sum = 0.0;
            let mut vectors: Vec<&[f64]> = Vec::with_capacity(k);
            loop {
                vectors.clear();
                vectors.extend(idx.iter().map(|&i| self.generator(i)));
                sum += gram_determinant(&vectors);
                // advance the tail (positions 1..k) lexicographically
                let mut pos = k;
                loop {
                    if pos == 1 {
                        return sum;
                    }
                    pos -= 1;
                    if idx[pos] < n - (k - pos) {
                        break;
                    }
                }
                idx[pos] += 1;
                for j in pos + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        });
        let total: f64 = partial.into_iter().sum();
        Ok(total * 2f64.powi(k as i32))
    }

    /// Unbiased estimate `2ᵏ C(n,k) · mean √det Gram(v_S)` over uniformly
    /// sampled `k`-subsets `S`, with its sample standard error.
    pub fn intrinsic_volume_mc(&self, k: usize, samples: u64, stream: &mut RngStream) -> Result<McEstimate> {
        self.check_order(k)?;
        if samples < 100 {
            return Err(Error::InvalidArgument("need at least 100 samples"));
        }
        let n = self.len();
        let factor = 2f64.powi(k as i32) * binomial(n as u64, k as u64);
        let mut subset: Vec<usize> = Vec::with_capacity(k);
        let mut vectors: Vec<&[f64]> = Vec::with_capacity(k);
        let (mut mean, mut m2) = (0.0f64, 0.0f64);
        for t in 0..samples {
            // Floyd's algorithm: a uniform k-subset of 0..n
            subset.clear();
            for j in n - k..n {
                let r = stream.below(j as u64 + 1) as usize;
                let pick = if subset.contains(&r) { j } else { r };
                subset.push(pick);
            }
            vectors.clear();
            vectors.extend(subset.iter().map(|&i| self.generator(i)));
            let x = factor * gram_determinant(&vectors);
            // Welford update
            let delta = x - mean;
            mean += delta / (t + 1) as f64;
            m2 += delta * (x - mean);
        }
        let variance = m2 / (samples - 1) as f64;
        Ok(McEstimate {
            value: mean,
            std_err: (variance / samples as f64).sqrt(),
            samples,
        })
    }
}

/// `lim V_k(I*([-1,1]ⁿ)) / n^{k/2} = 2^{k/2} C(d,k) Γ(1+(d−k)/2) / Γ(1+d/2)`.
pub fn limit_intrinsic_volume(d: usize, k: usize) -> Result<f64> {
    if k == 0 || k > d {
        return Err(Error::InvalidArgument("intrinsic volume order must satisfy 1 <= k <= d"));
    }
    let (df, kf) = (d as f64, k as f64);
    Ok(2f64.powf(kf / 2.0) * binomial(d as u64, k as u64) * gamma(1.0 + (df - kf) / 2.0)
        / gamma(1.0 + df / 2.0))
}
