// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use alloc::string::String;
use alloc::vec::Vec;

use super::conjugate::{BOUNDARY_CAP, BOUNDARY_EVAL_POINTS};
use super::{ExtendedReal, RateEngine};
use crate::exec::{Executor, Sequential};
use crate::{Error, Result};

/// Tabulated rate function of one law: `Ψ` on a geometric `s` grid and `Ψ*`
/// on an even `u` grid, plus the recession slope and the boundary value.
#[derive(Clone, Debug, PartialEq)]
pub struct RateProfile {
    pub nu: String,
    pub recession_slope: ExtendedReal,
    /// `Ψ*(ρ)` when `ρ` is finite.
    pub boundary_value: Option<ExtendedReal>,
    pub boundary_cap: f64,
    pub boundary_eval_points: [f64; 3],
    /// `(s, Ψ(s))` for `s = 2⁻⁶, …, 2⁷`.
    pub psi_table: Vec<(f64, f64)>,
    /// `(u, Ψ*(u))` on `[0, u_max]`.
    pub conjugate_table: Vec<(f64, ExtendedReal)>,
}

impl RateProfile {
    /// Default right end of the `u` grid: `1.5 ρ` for finite slopes, else 3.
    pub fn default_u_max(engine: &RateEngine) -> f64 {
        match engine.recession_slope() {
            ExtendedReal::Finite(rho) => 1.5 * rho,
            ExtendedReal::PosInfinity => 3.0,
        }
    }

    pub fn build(engine: &RateEngine, u_max: f64, points: usize) -> Result<Self> {
        Self::build_with(engine, u_max, points, &Sequential)
    }

    pub fn build_with<E: Executor>(engine: &RateEngine, u_max: f64, points: usize, exec: &E) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidArgument("a rate table needs at least two points"));
        }
        if !u_max.is_finite() || u_max <= 0.0 {
            return Err(Error::InvalidArgument("u_max must be positive and finite"));
        }
        let step = u_max / (points - 1) as f64;
        let conjugate_table = exec.map_indexed(points, |i| {
            let u = if i == points - 1 { u_max } else { step * i as f64 };
            (u, engine.conjugate(u))
        });
        let psi_table = exec.map_indexed(14, |i| {
            let s = 2f64.powi(i as i32 - 6);
            (s, engine.psi_value(s))
        });
        let recession_slope = engine.recession_slope();
        let boundary_value = recession_slope.finite().map(|rho| engine.conjugate(rho));
        Ok(Self {
            nu: engine.nu().label(),
            recession_slope,
            boundary_value,
            boundary_cap: BOUNDARY_CAP,
            boundary_eval_points: BOUNDARY_EVAL_POINTS,
            psi_table,
            conjugate_table,
        })
    }

    /// `Ψ*(u)` by linear interpolation in the table (`+∞` if either neighbour is).
    pub fn conjugate_at(&self, u: f64) -> Option<ExtendedReal> {
        let u = u.abs();
        let t = &self.conjugate_table;
        let i = t.partition_point(|&(x, _)| x < u);
        if i == 0 {
            return t.first().map(|&(_, v)| v);
        }
        if i == t.len() {
            return None;
        }
        let ((x0, v0), (x1, v1)) = (t[i - 1], t[i]);
        match (v0, v1) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
                let w = (u - x0) / (x1 - x0);
                Some(ExtendedReal::Finite(a + w * (b - a)))
            }
            _ => Some(ExtendedReal::PosInfinity),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::NuDistribution;
    use crate::SQRT_2_OVER_PI;

    #[test]
    fn gaussian_table() {
        let e = RateEngine::new(NuDistribution::gaussian());
        let p = RateProfile::build(&e, 3.0, 31).unwrap();
        assert_eq!(p.boundary_value, None);
        for &(u, v) in &p.conjugate_table {
            assert!((v.finite().unwrap() - 0.5 * u * u).abs() < 1e-8);
        }
        assert!((p.conjugate_at(1.05).unwrap().finite().unwrap() - 0.5 * 1.05f64 * 1.05).abs() < 0.01);
    }

    #[test]
    fn rademacher_table_invariants() {
        let e = RateEngine::new(NuDistribution::rademacher());
        let p = RateProfile::build(&e, RateProfile::default_u_max(&e), 40).unwrap();
        assert_eq!(p.conjugate_table[0].1, ExtendedReal::Finite(0.0));
        let mut last = -1.0;
        for &(u, v) in &p.conjugate_table {
            match v {
                ExtendedReal::Finite(x) => {
                    assert!(u <= SQRT_2_OVER_PI);
                    assert!(x >= last - 1e-12, "nondecreasing");
                    last = x;
                }
                ExtendedReal::PosInfinity => assert!(u > SQRT_2_OVER_PI),
            }
        }
        // Fenchel–Young on all tabulated pairs
        for &(s, psi) in &p.psi_table {
            assert!(psi >= 0.0);
            for &(u, v) in &p.conjugate_table {
                if let ExtendedReal::Finite(x) = v {
                    assert!(u * s <= psi + x + 1e-8, "u={u} s={s}");
                }
            }
        }
        assert!((p.boundary_value.unwrap().finite().unwrap() - 2f64.ln()).abs() < 0.01);
    }

    #[test]
    fn table_arguments() {
        let e = RateEngine::new(NuDistribution::gaussian());
        assert!(RateProfile::build(&e, 3.0, 1).is_err());
        assert!(RateProfile::build(&e, -1.0, 10).is_err());
    }
}
