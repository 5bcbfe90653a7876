//! Gamma function by the Lanczos approximation (g = 7, nine coefficients).

// float methods for no_std builds; shadowed by inherent ones when std is linked
#[allow(unused_imports)]
use num_traits::Float as _;
use core::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFICIENTS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFICIENTS[0];
        for (i, &c) in LANCZOS_COEFFICIENTS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Binomial coefficient as a float (exact for the magnitudes used here).
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_values() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-14);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn half_integers_up_to_ten() {
        // Γ(m) = (m-1)! and Γ(m + 1/2) = (2m)! √π / (4^m m!)
        let mut fact = 1.0f64;
        for m in 1..=10u32 {
            let g = gamma(m as f64);
            assert!((g / fact - 1.0).abs() < 1e-10, "Γ({m})");
            fact *= m as f64;
        }
        let mut half = PI.sqrt();
        for m in 0..10u32 {
            let x = m as f64 + 0.5;
            assert!((gamma(x) / half - 1.0).abs() < 1e-10, "Γ({x})");
            half *= x;
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(30, 2), 435.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
