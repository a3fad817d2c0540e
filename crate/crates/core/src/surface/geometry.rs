use std::f64::consts::PI;

use serde::Serialize;

use super::triple::Triple;
use crate::elliptic::{complete_e, complete_k, Modulus};
use crate::quadrature::periodic_trapezoid;
use crate::Result;

/// Squared amplitudes of the three rescaled Lamé solutions and the metric data.
///
/// The immersion components are
/// `φ̃₁ = c₁ sin y`, `φ̃₂ = c₂ cos y`, `φ̃₃ = c₃ √(1 − k² sin² y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficients {
    pub c1_sq: f64,
    pub c2_sq: f64,
    pub c3_sq: f64,
    /// Lamé modulus squared; negative when `a > b`.
    pub k2: f64,
    /// `c² − a² − b²`.
    pub q: f64,
    /// `c²`, the constant part of `2P(y)`.
    pub c_sq: f64,
    /// `b² − a²`, the `cos 2y` amplitude of `2P(y)`.
    pub split: f64,
}

impl Coefficients {
    /// `P(y) = (c² + (b² − a²) cos 2y) / 2`.
    pub fn p(&self, y: f64) -> f64 {
        0.5 * (self.c_sq + self.split * (2.0 * y).cos())
    }

    /// `P'(y)`.
    pub fn dp(&self, y: f64) -> f64 {
        -self.split * (2.0 * y).sin()
    }

    /// `φ̃₃(y)` without the amplitude: `√(1 − k² sin² y)`.
    pub fn lame_root(&self, y: f64) -> f64 {
        (1.0 - self.k2 * y.sin().powi(2)).sqrt()
    }
}

/// Closed-form coefficients. Each value is a ratio of two exact integers,
/// divided once, so simple fractions such as 5/8 come out bit-exact.
pub fn coefficients(t: &Triple) -> Coefficients {
    let (a2, b2, c2) = (t.a() * t.a(), t.b() * t.b(), t.c_sq());
    let q = c2 - a2 - b2;
    let (c1_sq, c2_sq, c3_sq) = match t {
        Triple::Lawson { .. } => (1.0, 1.0, 0.0),
        Triple::Generalized { .. } => {
            // c² > a² + b² keeps every denominator away from zero
            debug_assert!(c2 - a2 > 0 && c2 - b2 > 0);
            (
                (b2 + c2 - a2) as f64 / (2 * (c2 - a2)) as f64,
                (a2 + c2 - b2) as f64 / (2 * (c2 - b2)) as f64,
                (a2 + b2 - c2) as f64 / (2 * (b2 - c2)) as f64,
            )
        }
    };
    Coefficients {
        c1_sq,
        c2_sq,
        c3_sq,
        k2: (b2 - a2) as f64 / (c2 - a2) as f64,
        q: q as f64,
        c_sq: c2 as f64,
        split: (b2 - a2) as f64,
    }
}

/// The rescaled Lamé solutions `(φ̃₁, φ̃₂, φ̃₃)` at `y`.
pub fn profiles(co: &Coefficients, y: f64) -> [f64; 3] {
    let (s, c) = y.sin_cos();
    [co.c1_sq.sqrt() * s, co.c2_sq.sqrt() * c, co.c3_sq.sqrt() * co.lame_root(y)]
}

/// `F_{a,b,c}(x, y) ∈ S⁵ ⊂ R⁶`.
pub fn immersion(t: &Triple, x: f64, y: f64) -> [f64; 6] {
    immersion_with(t, &coefficients(t), x, y)
}

/// [`immersion`] with precomputed coefficients, for grid sweeps.
pub fn immersion_with(t: &Triple, co: &Coefficients, x: f64, y: f64) -> [f64; 6] {
    let [f1, f2, f3] = profiles(co, y);
    let (sa, ca) = (t.a() as f64 * x).sin_cos();
    let (sb, cb) = (t.b() as f64 * x).sin_cos();
    let (sc, cc) = match t.c_int() {
        Some(c) => (c as f64 * x).sin_cos(),
        // φ̃₃ ≡ 0 on Lawson surfaces; the frequency is irrelevant
        None => (0.0, 0.0),
    };
    [sa * f1, ca * f1, sb * f2, cb * f2, sc * f3, cc * f3]
}

/// Diagonal induced metric `(g_xx, g_yy) = (P, 2P / (Q + 2P))`.
pub fn metric(t: &Triple, y: f64) -> (f64, f64) {
    let co = coefficients(t);
    let p = co.p(y);
    (p, 2.0 * p / (co.q + 2.0 * p))
}

/// Number of parameter-torus points over a generic surface point.
pub fn covering_degree(t: &Triple) -> u32 {
    match *t {
        Triple::Lawson { .. } => 2,
        Triple::Generalized { a, b, c } => {
            let (a_odd, b_odd, c_even) = (a % 2 != 0, b % 2 != 0, c % 2 == 0);
            if c_even && (a_odd || b_odd) {
                2
            } else {
                1
            }
        }
    }
}

/// `S(a, b, c)` (the area of the whole parameter torus) and the surface area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Area {
    pub s: f64,
    pub area: f64,
}

/// Closed-form area through complete elliptic integrals.
///
/// Generalized: `S = 4π/√(c²−a²)·(2(c²−a²)E(k) − (c²−a²−b²)K(k))`,
/// `k² = (b²−a²)/(c²−a²)`. Lawson: `S = 8πa·E(√(a²−b²)/a)`.
pub fn area_closed(t: &Triple) -> Result<Area> {
    let (a2, b2, c2) = ((t.a() * t.a()) as f64, (t.b() * t.b()) as f64, t.c_sq() as f64);
    let s = match t {
        Triple::Generalized { .. } => {
            let d = c2 - a2;
            let m = Modulus::from_k2((b2 - a2) / d);
            4.0 * PI / d.sqrt() * (2.0 * d * complete_e(m)? - (d - b2) * complete_k(m)?)
        }
        Triple::Lawson { a, .. } => {
            let m = Modulus::from_k2((a2 - b2) / a2);
            8.0 * PI * a.abs() as f64 * complete_e(m)?
        }
    };
    Ok(Area { s, area: s / covering_degree(t) as f64 })
}

/// Area by periodic trapezoid quadrature of `√(g_xx g_yy)` on `n` nodes in `y`
/// (the `x` integral is exact since the metric does not depend on `x`).
pub fn area_quadrature(t: &Triple, n: usize) -> f64 {
    let co = coefficients(t);
    let density = |y: f64| {
        let p = co.p(y);
        p * (2.0 / (co.q + 2.0 * p)).sqrt()
    };
    2.0 * PI * periodic_trapezoid(density, 0.0, 2.0 * PI, n) / covering_degree(t) as f64
}
