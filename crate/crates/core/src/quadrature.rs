//! Quadrature rules used as independent oracles.
//!
//! [`adaptive_gk15`] is a globally adaptive Gauss–Kronrod (7/15) integrator in the
//! style of QUADPACK's `qag`. [`periodic_trapezoid`] is the composite trapezoid
//! rule on a full period, which converges geometrically for smooth periodic
//! integrands.

use crate::{Error, Result};

// Kronrod abscissae and weights (QUADPACK qk15). Gauss nodes are the odd entries.
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
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 10_000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`, bisecting the
/// interval with the largest error estimate until the summed estimate is below
/// `tol`.
pub fn adaptive_gk15<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) || !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "quadrature needs finite limits and positive tolerance (got [{lo}, {hi}], tol {tol})"
        )));
    }
    let mut segments = vec![gk15(&f, lo, hi)];
    loop {
        let total_error: f64 = segments.iter().map(|s| s.error).sum();
        if total_error <= tol {
            break;
        }
        if segments.len() >= MAX_INTERVALS {
            return Err(Error::Domain(format!(
                "adaptive quadrature exhausted {MAX_INTERVALS} intervals (error estimate {total_error:e})"
            )));
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("non-empty");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.lo + seg.hi);
        if mid <= seg.lo || mid >= seg.hi {
            // interval can no longer be split in f64; accept what we have
            segments.push(seg);
            break;
        }
        segments.push(gk15(&f, seg.lo, mid));
        segments.push(gk15(&f, mid, seg.hi));
    }
    // sum small contributions first
    segments.sort_by(|x, y| x.value.abs().total_cmp(&y.value.abs()));
    Ok(segments.iter().map(|s| s.value).sum())
}

/// Composite trapezoid rule for a function of period `period`, sampled at `n`
/// equispaced nodes starting at `start`.
pub fn periodic_trapezoid<F: Fn(f64) -> f64>(f: F, start: f64, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    (0..n).map(|i| f(start + i as f64 * h)).sum::<f64>() * h
}
