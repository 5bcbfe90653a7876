
use super::{ExtendedReal, RateEngine};

/// Boundary values above this are reported as `+∞`.
pub const BOUNDARY_CAP: f64 = 1e6;

/// Points at which `ρ s − Ψ(s)` is sampled to decide whether `Ψ*(ρ)` is finite.
pub const BOUNDARY_EVAL_POINTS: [f64; 3] = [1e2, 1e3, 1e4];

/// `|u − ρ|` below which `u` is treated as the boundary point.
const BOUNDARY_WIDTH: f64 = 1e-12;

/// A per-decade increment of the boundary objective that does not at least
/// halve, and exceeds this floor, signals divergence (e.g. logarithmic growth).
const GROWTH_FLOOR: f64 = 1e-6;

const GOLDEN_TOLERANCE: f64 = 1e-10;
const MAX_BRACKET: f64 = 1e15;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Where and how `Ψ*(u)` was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugatePoint {
    pub u: f64,
    pub value: ExtendedReal,
    /// Maximizing `s` for interior points.
    pub maximizer: Option<f64>,
    /// Whether `u` coincided with the recession slope.
    pub boundary: bool,
}

impl RateEngine {
    /// `Ψ*(u) = sup_{s ≥ 0} (u s − Ψ(s))`; `Ψ*` is even so `u` enters as `|u|`.
    pub fn conjugate(&self, u: f64) -> ExtendedReal {
        self.conjugate_point(u).value
    }

    pub fn conjugate_point(&self, u: f64) -> ConjugatePoint {
        let u = u.abs();
        if let ExtendedReal::Finite(rho) = self.recession_slope() {
            if u > rho + BOUNDARY_WIDTH {
                return ConjugatePoint {
                    u,
                    value: ExtendedReal::PosInfinity,
                    maximizer: None,
                    boundary: false,
                };
            }
            if (u - rho).abs() <= BOUNDARY_WIDTH {
                return ConjugatePoint {
                    u,
                    value: self.boundary_value(rho),
                    maximizer: None,
                    boundary: true,
                };
            }
        }
        if u == 0.0 {
            // Ψ ≥ 0 = Ψ(0) by Jensen
            return ConjugatePoint {
                u,
                value: ExtendedReal::Finite(0.0),
                maximizer: Some(0.0),
                boundary: false,
            };
        }
        let (s, value) = self.maximize(u);
        ConjugatePoint {
            u,
            value,
            maximizer: Some(s),
            boundary: false,
        }
    }

    /// `lim_{s→∞} (ρ s − Ψ(s))`, which is nondecreasing in `s`. Reported as
    /// the value at the last evaluation point unless it exceeds
    /// [`BOUNDARY_CAP`] or keeps growing by a non-shrinking amount per decade.
    fn boundary_value(&self, rho: f64) -> ExtendedReal {
        let f = |s: f64| rho * s - self.psi_value(s);
        let [a, b, c] = BOUNDARY_EVAL_POINTS.map(f);
        let (first, second) = (b - a, c - b);
        if !c.is_finite() || c > BOUNDARY_CAP || (second > GROWTH_FLOOR && second > 0.5 * first) {
            ExtendedReal::PosInfinity
        } else {
            ExtendedReal::Finite(c)
        }
    }

    /// Maximizes the concave `s ↦ u s − Ψ(s)` on `s ≥ 0`: doubling until the
    /// objective drops, then golden-section search.
    fn maximize(&self, u: f64) -> (f64, ExtendedReal) {
        let f = |s: f64| u * s - self.psi_value(s);
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut f_hi = f(hi);
        if f_hi > 0.0 {
            loop {
                let next = 2.0 * hi;
                let f_next = f(next);
                if f_next <= f_hi {
                    hi = next;
                    break;
                }
                if next > MAX_BRACKET {
                    return (next, ExtendedReal::PosInfinity);
                }
                lo = hi * 0.5;
                hi = next;
                f_hi = f_next;
            }
        }

        let mut a = lo;
        let mut b = hi;
        let mut x1 = b - INV_PHI * (b - a);
        let mut x2 = a + INV_PHI * (b - a);
        let (mut f1, mut f2) = (f(x1), f(x2));
        let mut iterations = 0;
        while b - a > GOLDEN_TOLERANCE * b.max(1.0) && iterations < 300 {
            if f1 < f2 {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + INV_PHI * (b - a);
                f2 = f(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - INV_PHI * (b - a);
                f1 = f(x1);
            }
            iterations += 1;
        }
        let (s, value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        // s = 0 always gives 0
        if value < 0.0 {
            (0.0, ExtendedReal::Finite(0.0))
        } else {
            (s, ExtendedReal::Finite(value))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Atom, NuDistribution};
    use crate::SQRT_2_OVER_PI;

    #[test]
    fn gaussian_conjugate_is_half_square() {
        let e = RateEngine::new(NuDistribution::gaussian());
        for i in 0..=30 {
            let u = 0.1 * i as f64;
            let v = e.conjugate(u).finite().unwrap();
            assert!((v - 0.5 * u * u).abs() < 1e-8, "u={u}: {v}");
        }
        assert!((e.conjugate(1.3).finite().unwrap() - 0.845).abs() < 1e-8);
        assert_eq!(e.conjugate(-1.3), e.conjugate(1.3));
    }

    #[test]
    fn rademacher_boundary_and_beyond() {
        let e = RateEngine::new(NuDistribution::rademacher());
        let at = e.conjugate_point(SQRT_2_OVER_PI);
        assert!(at.boundary);
        let v = at.value.finite().unwrap();
        assert!((v - 2f64.ln()).abs() < 0.01, "{v}");
        // the o(1) tail at s = 1e4 is about 0.33e-4
        assert!((v - 2f64.ln()).abs() < 1e-4);
        for u in [0.85, 0.9, 1.0] {
            assert_eq!(e.conjugate(u), ExtendedReal::PosInfinity);
        }
    }

    #[test]
    fn uniform_boundary_is_infinite() {
        let e = RateEngine::new(NuDistribution::uniform_symmetric());
        assert_eq!(e.conjugate(SQRT_2_OVER_PI), ExtendedReal::PosInfinity);
        assert!(e.conjugate(0.79).is_finite());
    }

    #[test]
    fn discrete_boundary_is_log_of_extreme_mass() {
        // Ψ(s) − ρ s → log(1/4) for atoms {−1: ¼, 0: ½, 1: ¼}
        let nu = NuDistribution::finite_discrete(&[
            Atom { x: -1.0, p: 0.25 },
            Atom { x: 0.0, p: 0.5 },
            Atom { x: 1.0, p: 0.25 },
        ])
        .unwrap();
        let e = RateEngine::new(nu);
        let v = e.conjugate(SQRT_2_OVER_PI).finite().unwrap();
        assert!((v - 4f64.ln()).abs() < 1e-3, "{v}");
    }

    #[test]
    fn conjugate_at_zero_and_lambda_star() {
        for nu in [NuDistribution::gaussian(), NuDistribution::rademacher(), NuDistribution::uniform_symmetric()] {
            let e = RateEngine::new(nu);
            assert_eq!(e.conjugate(0.0), ExtendedReal::Finite(0.0));
            assert_eq!(e.lambda_star(&[0.0, 0.0]), ExtendedReal::Finite(0.0));
        }
        let g = RateEngine::new(NuDistribution::gaussian());
        assert!((g.lambda_star(&[1.0, 1.0]).finite().unwrap() - 1.0).abs() < 1e-8);
        let r = RateEngine::new(NuDistribution::rademacher());
        let t = [0.3, 0.4];
        let (c, s) = (0.6f64.cos(), 0.6f64.sin());
        let qt = [c * t[0] - s * t[1], s * t[0] + c * t[1]];
        let (a, b) = (r.lambda_star(&t).finite().unwrap(), r.lambda_star(&qt).finite().unwrap());
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn biconjugate_recovers_psi() {
        let e = RateEngine::new(NuDistribution::rademacher());
        let rho = SQRT_2_OVER_PI;
        for s in [0.25, 0.5, 1.0, 2.0, 4.0] {
            if e.psi_prime_value(s) >= rho - 1e-3 {
                continue;
            }
            // Ψ**(s) = sup_u (u s − Ψ*(u)) over u in [0, ρ), golden section
            let g = |u: f64| u * s - e.conjugate(u).finite().unwrap();
            let (mut a, mut b) = (0.0, rho - 1e-9);
            while b - a > 1e-9 {
                let x1 = b - INV_PHI * (b - a);
                let x2 = a + INV_PHI * (b - a);
                if g(x1) < g(x2) {
                    a = x1;
                } else {
                    b = x2;
                }
            }
            let bi = g(0.5 * (a + b));
            assert!((bi - e.psi_value(s)).abs() < 1e-6, "s={s}: {bi} vs {}", e.psi_value(s));
        }
    }
}
