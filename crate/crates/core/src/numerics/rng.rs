// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::DenseMatrix;
use crate::{Error, Result};

/// A reproducible random stream addressed by `(master_seed, stream_id)`.
///
/// Backed by ChaCha8, a counter-based generator: the master seed selects the
/// key and the stream id selects the nonce, so distinct ids give independent
/// streams and any stream can be recreated without replaying the others.
#[derive(Clone, Debug, PartialEq)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        Self {
            master_seed,
            stream_id,
            rng,
            spare_normal: None,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A fresh stream under the same master seed whose id is a hash of this
    /// stream's id and `child`. Used to hand one stream to each parallel chunk.
    pub fn derive(&self, child: u64) -> Self {
        let id = splitmix64(self.stream_id ^ splitmix64(child.wrapping_add(0x9E37_79B9_7F4A_7C15)));
        Self::new(self.master_seed, id)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_bool(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Uniform integer in `0..bound` without modulo bias.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // Lemire's widening multiply with rejection.
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = (self.next_u64() as u128) * (bound as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// One draw from `N(0, 1)` by the Marsaglia polar method. Each accepted
    /// pair yields two draws; the second is kept for the next call.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s >= 1.0 || s == 0.0 {
                continue;
            }
            let factor = (-2.0 * s.ln() / s).sqrt();
            self.spare_normal = Some(v * factor);
            return u * factor;
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A `d × n` matrix of i.i.d. standard normals filled in row-major order.
pub fn sample_gaussian_matrix(stream: &mut RngStream, d: usize, n: usize) -> Result<DenseMatrix> {
    if d == 0 || n == 0 {
        return Err(Error::Dimension("matrix dimensions must be at least 1"));
    }
    if d > n {
        return Err(Error::Dimension("projection dimension d exceeds ambient dimension n"));
    }
    let data = (0..d * n).map(|_| stream.standard_normal()).collect();
    DenseMatrix::from_vec(d, n, data)
}
