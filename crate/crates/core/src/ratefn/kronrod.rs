//! Globally adaptive Gauss–Kronrod (7/15) integration on finite intervals.
#![allow(clippy::excessive_precision)]

use alloc::vec::Vec;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_PANELS: usize = 4000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn panel(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).abs(),
    }
}

/// Integrates `f` over consecutive `breakpoints`, bisecting the panel with
/// the largest error estimate until the total estimate is below
/// `max(abs_tol, rel_tol · |I|)`.
pub fn integrate(f: impl Fn(f64) -> f64, breakpoints: &[f64], abs_tol: f64, rel_tol: f64) -> Integral {
    assert!(breakpoints.len() >= 2);
    let mut panels: Vec<Panel> = breakpoints.windows(2).map(|w| panel(&f, w[0], w[1])).collect();
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let converged = error <= abs_tol.max(rel_tol * value.abs());
        if converged || panels.len() >= MAX_PANELS {
            // sum in position order so the result does not depend on refinement history
            panels.sort_by(|p, q| p.a.total_cmp(&q.a));
            let value = panels.iter().map(|p| p.value).sum();
            return Integral { value, error, converged };
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            // interval cannot be split further in floating point
            let value = panels.iter().map(|q| q.value).sum::<f64>() + p.value;
            return Integral {
                value,
                error,
                converged: false,
            };
        }
        panels.push(panel(&f, p.a, mid));
        panels.push(panel(&f, mid, p.b));
    }
}
