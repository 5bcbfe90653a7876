//! Monte Carlo and exact estimates of the projected measure on half-spaces and
//! ball complements, and scans of the empirical decay rate `−(1/n) log μ̂`.

mod region;

// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;


pub use region::EventRegion;

use crate::distributions::NuDistribution;
use crate::exec::Executor;
use crate::numerics::RngStream;
use crate::ratefn::{ExtendedReal, RateEngine};
use crate::stiefel::StiefelFrame;
use crate::{Error, Result};

/// Smallest Monte Carlo sample count accepted.
pub const MIN_SAMPLES: u64 = 1_000;
/// Samples drawn per chunk; each chunk gets its own derived stream.
pub const CHUNK_SAMPLES: u64 = 65_536;
/// Largest state space `kⁿ` the exact enumerator will visit.
pub const ENUMERATION_BUDGET: u128 = 1 << 24;
/// Monte Carlo rows with fewer hits are flagged unreliable.
pub const RELIABLE_HITS: u64 = 50;

const FRAME_STREAM: u64 = 0x4652_414d;
const SAMPLE_STREAM: u64 = 0x5341_4d50;

/// Which projection maps the sample `x ∈ ℝⁿ` into `ℝᵈ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionMode {
    /// `n^{-1/2} I* x`.
    Uniform,
    /// `n^{-1} G x`.
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Estimator {
    McUniform,
    McGaussian,
    ExactEnum,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [Estimator::McUniform, Estimator::McGaussian, Estimator::ExactEnum];

    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::McUniform => "mc_uniform",
            Estimator::McGaussian => "mc_gaussian",
            Estimator::ExactEnum => "exact_enum",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.as_str() == s)
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Hit fraction with its binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McMeasure {
    pub mu_hat: f64,
    pub std_err: f64,
    pub hits: u64,
    pub samples: u64,
}

impl McMeasure {
    fn from_hits(hits: u64, samples: u64) -> Self {
        let p = hits as f64 / samples as f64;
        Self {
            mu_hat: p,
            std_err: (p * (1.0 - p) / samples as f64).sqrt(),
            hits,
            samples,
        }
    }
}

/// Counts, with one shared set of draws, how many samples land in each region.
pub fn count_hits<E: Executor>(
    nu: &NuDistribution,
    frame: &StiefelFrame,
    regions: &[EventRegion],
    samples: u64,
    stream: &RngStream,
    mode: ProjectionMode,
    exec: &E,
) -> Result<Vec<u64>> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument("at least 1000 Monte Carlo samples are required"));
    }
    for r in regions {
        if r.dim() != frame.dim() {
            return Err(Error::DimensionMismatch { expected: frame.dim(), actual: r.dim() });
        }
    }
    let chunks = samples.div_ceil(CHUNK_SAMPLES);
    let (n, d) = (frame.ambient_dim(), frame.dim());
    let partial = exec.map_indexed(chunks as usize, |c| {
        let c = c as u64;
        let len = CHUNK_SAMPLES.min(samples - c * CHUNK_SAMPLES);
        let mut rng = stream.derive(c);
        let mut x = vec![0.0; n];
        let mut y = vec![0.0; d];
        let mut hits = vec![0u64; regions.len()];
        for _ in 0..len {
            x.iter_mut().for_each(|v| *v = nu.sample(&mut rng));
            // dimensions were checked above
            let _ = match mode {
                ProjectionMode::Uniform => frame.project_uniform_into(&x, &mut y),
                ProjectionMode::Gaussian => frame.project_gaussian_into(&x, &mut y),
            };
            for (h, r) in hits.iter_mut().zip(regions) {
                *h += r.contains(&y) as u64;
            }
        }
        hits
    });
    let mut total = vec![0u64; regions.len()];
    for hits in partial {
        total.iter_mut().zip(hits).for_each(|(t, h)| *t += h);
    }
    Ok(total)
}

/// Monte Carlo estimate of the projected measure of `region`.
pub fn estimate_measure_mc<E: Executor>(
    nu: &NuDistribution,
    frame: &StiefelFrame,
    region: &EventRegion,
    samples: u64,
    stream: &RngStream,
    mode: ProjectionMode,
    exec: &E,
) -> Result<McMeasure> {
    let hits = count_hits(nu, frame, core::slice::from_ref(region), samples, stream, mode, exec)?;
    Ok(McMeasure::from_hits(hits[0], samples))
}

/// Number of coordinate assignments `kⁿ` the enumerator would visit.
pub fn enumeration_size(atoms: usize, n: usize) -> u128 {
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(atoms as u128);
    }
    size
}

/// Exact projected measure of `region` for a finitely supported law, summing
/// `ν`-masses over every assignment in `supp(ν)ⁿ` (uniform projection).
pub fn enumerate_exact<E: Executor>(
    nu: &NuDistribution,
    frame: &StiefelFrame,
    region: &EventRegion,
    exec: &E,
) -> Result<f64> {
    let atoms = nu
        .atoms()
        .ok_or(Error::Unsupported("exact enumeration needs a finitely supported law"))?;
    if region.dim() != frame.dim() {
        return Err(Error::DimensionMismatch { expected: frame.dim(), actual: region.dim() });
    }
    let (n, d, k) = (frame.ambient_dim(), frame.dim(), atoms.len());
    let required = enumeration_size(k, n);
    if required > ENUMERATION_BUDGET {
        return Err(Error::Budget { required, budget: ENUMERATION_BUDGET });
    }

    // column j of n^{-1/2} I*, contiguous
    let scale = 1.0 / (n as f64).sqrt();
    let columns: Vec<f64> = (0..n)
        .flat_map(|j| frame.i_star().column(j).into_iter().map(move |v| v * scale))
        .collect();

    // split on the first `prefix` coordinates
    let mut prefix = 0;
    while prefix < n && enumeration_size(k, prefix + 1) <= 4096 {
        prefix += 1;
    }
    let jobs = enumeration_size(k, prefix) as usize;
    let partial = exec.map_indexed(jobs, |job| {
        let mut y = vec![0.0; d * (n + 1)];
        let mut mass = vec![1.0; n + 1];
        let mut code = job;
        for level in 0..prefix {
            let a = atoms[code % k];
            code /= k;
            push(&mut y, &mut mass, &columns, d, level, a.x, a.p);
        }
        let mut sum = 0.0;
        descend(&mut y, &mut mass, &columns, d, n, prefix, atoms, region, &mut sum);
        sum
    });
    let mu: f64 = partial.into_iter().sum();
    Ok(mu.clamp(0.0, 1.0))
}

#[inline]
fn push(y: &mut [f64], mass: &mut [f64], columns: &[f64], d: usize, level: usize, x: f64, p: f64) {
    let (head, tail) = y.split_at_mut((level + 1) * d);
    let prev = &head[level * d..];
    let col = &columns[level * d..(level + 1) * d];
    for i in 0..d {
        tail[i] = prev[i] + x * col[i];
    }
    mass[level + 1] = mass[level] * p;
}

#[allow(clippy::too_many_arguments)]
fn descend(
    y: &mut [f64],
    mass: &mut [f64],
    columns: &[f64],
    d: usize,
    n: usize,
    level: usize,
    atoms: &[crate::distributions::Atom],
    region: &EventRegion,
    sum: &mut f64,
) {
    if level == n {
        if region.contains(&y[n * d..]) {
            *sum += mass[n];
        }
        return;
    }
    for a in atoms {
        push(y, mass, columns, d, level, a.x, a.p);
        descend(y, mass, columns, d, n, level + 1, atoms, region, sum);
    }
}

/// One estimate in a rate scan.
#[derive(Clone, Debug, PartialEq)]
pub struct LdpRow {
    pub trial: u32,
    pub n: usize,
    pub estimator: Estimator,
    pub mu_hat: f64,
    pub empirical_rate: ExtendedReal,
    pub std_err: f64,
    /// Monte Carlo samples, or `kⁿ` for exact enumeration.
    pub samples_or_enum: u128,
    /// Stream id of the frame used for this `n`.
    pub frame_seed: u64,
    pub reliable: bool,
}

/// Empirical rates against the theoretical target `inf_A Λ*`.
#[derive(Clone, Debug, PartialEq)]
pub struct LdpReport {
    pub nu: String,
    pub d: usize,
    pub region: EventRegion,
    pub theoretical_rate: ExtendedReal,
    pub rows: Vec<LdpRow>,
}

/// Settings of [`rate_convergence_scan`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub region: EventRegion,
    pub n_values: Vec<usize>,
    pub samples: u64,
    pub master_seed: u64,
    pub estimators: Vec<Estimator>,
    pub trials: u32,
}

/// `−(1/n) log μ`, `+∞` at `μ = 0`.
pub fn empirical_rate(mu: f64, n: usize) -> ExtendedReal {
    if mu <= 0.0 {
        ExtendedReal::PosInfinity
    } else {
        ExtendedReal::Finite((-mu.min(1.0).ln() / n as f64).max(0.0))
    }
}

/// Frame used for `(trial, n)` in a scan seeded by `master_seed`.
pub fn scan_frame(master_seed: u64, trial: u32, d: usize, n: usize) -> Result<(StiefelFrame, u64)> {
    let mut stream = RngStream::new(master_seed, FRAME_STREAM).derive(trial as u64).derive(n as u64);
    let id = stream.stream_id();
    Ok((StiefelFrame::sample(&mut stream, d, n)?, id))
}

/// For every trial and `n`, samples a fresh frame and estimates the measure
/// of the region with each requested estimator.
pub fn rate_convergence_scan<E: Executor>(
    nu: &NuDistribution,
    config: &ScanConfig,
    exec: &E,
) -> Result<LdpReport> {
    let d = config.region.dim();
    if config.n_values.is_empty() || config.estimators.is_empty() || config.trials == 0 {
        return Err(Error::InvalidArgument("a scan needs n values, estimators and trials"));
    }
    let engine = RateEngine::new(nu.clone());
    let theoretical_rate = config.region.theoretical_rate(&engine);
    let mut rows = Vec::new();
    for trial in 0..config.trials {
        for &n in &config.n_values {
            let (frame, frame_seed) = scan_frame(config.master_seed, trial, d, n)?;
            let samples = RngStream::new(config.master_seed, SAMPLE_STREAM)
                .derive(trial as u64)
                .derive(n as u64);
            for &estimator in &config.estimators {
                let row = match estimator {
                    Estimator::McUniform | Estimator::McGaussian => {
                        let mode = if estimator == Estimator::McUniform {
                            ProjectionMode::Uniform
                        } else {
                            ProjectionMode::Gaussian
                        };
                        let m = estimate_measure_mc(nu, &frame, &config.region, config.samples, &samples, mode, exec)?;
                        LdpRow {
                            trial,
                            n,
                            estimator,
                            mu_hat: m.mu_hat,
                            empirical_rate: empirical_rate(m.mu_hat, n),
                            std_err: m.std_err,
                            samples_or_enum: m.samples as u128,
                            frame_seed,
                            reliable: m.hits >= RELIABLE_HITS,
                        }
                    }
                    Estimator::ExactEnum => {
                        let mu = enumerate_exact(nu, &frame, &config.region, exec)?;
                        let k = nu.atoms().map_or(0, <[_]>::len);
                        LdpRow {
                            trial,
                            n,
                            estimator,
                            mu_hat: mu,
                            empirical_rate: empirical_rate(mu, n),
                            std_err: 0.0,
                            samples_or_enum: enumeration_size(k, n),
                            frame_seed,
                            reliable: true,
                        }
                    }
                };
                rows.push(row);
            }
        }
    }
    Ok(LdpReport {
        nu: nu.label(),
        d,
        region: config.region.clone(),
        theoretical_rate,
        rows,
    })
}
