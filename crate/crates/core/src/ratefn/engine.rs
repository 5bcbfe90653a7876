// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::hermite::{HermiteRule, LADDER};
use super::kronrod::integrate;
use super::ExtendedReal;
use crate::distributions::{NuDistribution, NuKind};
use crate::{Error, Result, EULER_GAMMA, SQRT_2_OVER_PI};

/// Successive Hermite orders must agree to this (relative to `max(1, |Ψ|)`).
pub const HERMITE_TOLERANCE: f64 = 1e-10;

const KRONROD_ABS_TOL: f64 = 1e-14;
const KRONROD_REL_TOL: f64 = 1e-13;
/// Gaussian weights vanish in double precision beyond this.
const TAIL_CUTOFF: f64 = 40.0;

/// Probe point for classifying the growth of `Ψ` when no analytic slope exists.
const SLOPE_PROBE: f64 = 1e3;
const SUPERLINEAR_RATIO: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadratureMethod {
    /// Converged Gauss–Hermite rule of this order.
    Hermite(usize),
    /// Adaptive Gauss–Kronrod on the half line, used once the Hermite ladder
    /// stops improving (integrands with features much narrower than the node
    /// spacing, i.e. large `s`).
    Kronrod,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccuracyWarning {
    pub error_estimate: f64,
}

/// A quadrature result with the route that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiValue {
    pub value: f64,
    pub method: QuadratureMethod,
    pub warning: Option<AccuracyWarning>,
}

/// Evaluates `Ψ`, `Ψ′`, `ρ` and `Ψ*` for one law.
#[derive(Clone, Debug)]
pub struct RateEngine {
    nu: NuDistribution,
    slope: ExtendedReal,
}

impl RateEngine {
    pub fn new(nu: NuDistribution) -> Self {
        let mut engine = Self {
            nu,
            slope: ExtendedReal::PosInfinity,
        };
        engine.slope = engine.classify_slope();
        engine
    }

    pub fn nu(&self) -> &NuDistribution {
        &self.nu
    }

    /// `Ψ(s) = E[log M_ν(s g)]`.
    pub fn psi(&self, s: f64) -> Result<PsiValue> {
        check_argument(s)?;
        if s == 0.0 {
            return Ok(PsiValue {
                value: 0.0,
                method: QuadratureMethod::Hermite(LADDER[0]),
                warning: None,
            });
        }
        let nu = &self.nu;
        Ok(gaussian_expectation(
            |g| nu.log_mgf(s * g),
            |x| nu.log_mgf(s * x) + nu.log_mgf(-s * x),
            s,
        ))
    }

    /// `Ψ(s)` as a bare number.
    pub fn psi_value(&self, s: f64) -> f64 {
        self.psi(s).map(|p| p.value).unwrap_or(f64::NAN)
    }

    /// `Ψ′(s) = E[g · (log M_ν)′(s g)]` (right derivative at zero).
    pub fn psi_prime(&self, s: f64) -> Result<PsiValue> {
        check_argument(s)?;
        let nu = &self.nu;
        if s == 0.0 && nu.is_symmetric() {
            return Ok(PsiValue {
                value: 0.0,
                method: QuadratureMethod::Hermite(LADDER[0]),
                warning: None,
            });
        }
        Ok(gaussian_expectation(
            |g| g * nu.log_mgf_prime(s * g),
            |x| x * (nu.log_mgf_prime(s * x) - nu.log_mgf_prime(-s * x)),
            s,
        ))
    }

    pub fn psi_prime_value(&self, s: f64) -> f64 {
        self.psi_prime(s).map(|p| p.value).unwrap_or(f64::NAN)
    }

    /// `ρ = lim_{s→∞} Ψ′(s)`.
    pub fn recession_slope(&self) -> ExtendedReal {
        self.slope
    }

    fn classify_slope(&self) -> ExtendedReal {
        if let Some(slope) = self.nu.mean_abs_gaussian_slope() {
            return ExtendedReal::Finite(slope);
        }
        let near = self.psi_prime_value(SLOPE_PROBE);
        let far = self.psi_prime_value(2.0 * SLOPE_PROBE);
        if far / near > SUPERLINEAR_RATIO {
            ExtendedReal::PosInfinity
        } else {
            ExtendedReal::Finite(far)
        }
    }

    /// `Λ*(t) = Ψ*(‖t‖₂)`.
    pub fn lambda_star(&self, t: &[f64]) -> ExtendedReal {
        let norm = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        self.conjugate(norm)
    }

    /// Gap between `Ψ` and its closed-form large-`s` asymptote:
    /// Rademacher `Ψ(s) − (−log 2 + √(2/π) s)`;
    /// uniform `Ψ(s) + log s − √(2/π) s + ½(log 2 + γ)`.
    pub fn asymptote_residuals(&self, s_values: &[f64]) -> Result<Vec<f64>> {
        let asymptote: fn(f64) -> f64 = match self.nu.kind() {
            NuKind::Rademacher => |s| -(2f64.ln()) + SQRT_2_OVER_PI * s,
            NuKind::UniformSymmetric => |s| -s.ln() + SQRT_2_OVER_PI * s - 0.5 * (2f64.ln() + EULER_GAMMA),
            _ => return Err(Error::Unsupported("asymptotes are known for rademacher and uniform laws")),
        };
        s_values
            .iter()
            .map(|&s| {
                if s.is_nan() || s <= 0.0 {
                    return Err(Error::InvalidArgument("asymptote points must be positive"));
                }
                Ok(self.psi(s)?.value - asymptote(s))
            })
            .collect()
    }
}

fn check_argument(s: f64) -> Result<()> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::InvalidArgument("rate function argument must be finite and >= 0"));
    }
    Ok(())
}

/// `E[f(g)]`: the Hermite ladder until two orders agree, otherwise adaptive
/// Kronrod on `∫₀^∞ folded(x) φ(x) dx` where `folded(x) = f(x) + f(−x)`.
/// `scale` places the initial Kronrod breakpoints where `f` varies.
fn gaussian_expectation(f: impl Fn(f64) -> f64, folded: impl Fn(f64) -> f64, scale: f64) -> PsiValue {
    let mut previous: Option<f64> = None;
    for &order in &LADDER {
        let rule = HermiteRule::cached(order).expect("ladder orders are valid");
        let q = rule.expect(&f);
        if let Some(p) = previous {
            if (q - p).abs() < HERMITE_TOLERANCE * q.abs().max(1.0) {
                return PsiValue {
                    value: q,
                    method: QuadratureMethod::Hermite(order),
                    warning: None,
                };
            }
        }
        previous = Some(q);
    }

    let inv_root_two_pi = 1.0 / (2.0 * PI).sqrt();
    let integrand = |x: f64| {
        let w = (-0.5 * x * x).exp();
        if w == 0.0 {
            0.0
        } else {
            folded(x) * w * inv_root_two_pi
        }
    };
    let mut breaks: Vec<f64> = alloc::vec![0.0];
    let mut p = 0.25 / scale;
    while p < 8.0 {
        breaks.push(p);
        p *= 4.0;
    }
    for b in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, TAIL_CUTOFF] {
        breaks.push(b);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1e-300));
    let r = integrate(integrand, &breaks, KRONROD_ABS_TOL, KRONROD_REL_TOL);
    PsiValue {
        value: r.value,
        method: QuadratureMethod::Kronrod,
        warning: (!r.converged).then_some(AccuracyWarning { error_estimate: r.error }),
    }
}
