//! Complete elliptic integrals of the first and second kind.
//!
//! With the modulus convention
//!
//! ```text
//! K(k) = ∫₀¹ dα / (√(1−α²) √(1−k²α²)),   E(k) = ∫₀¹ √(1−k²α²) / √(1−α²) dα
//! ```
//!
//! both are evaluated by the arithmetic–geometric mean. The AGM identity
//! `∫₀^{π/2} dθ / √(a² cos²θ + b² sin²θ) = π / (2·AGM(a, b))` holds for any
//! positive `a`, `b`, so taking `a = 1`, `b = √(1 − k²)` also covers negative
//! `k²` (the real continuation that shows up before the `a ≤ b` swap).

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

const AGM_MAX_ITER: usize = 40;
const AGM_RTOL: f64 = 1e-15;

/// Elliptic modulus, stored through its square so that `k² < 0` is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k2: f64,
}

impl Modulus {
    /// Modulus from `k`; the sign of `k` is irrelevant.
    pub fn from_k(k: f64) -> Self {
        Self { k2: k * k }
    }

    /// Modulus from `k²`, which may be negative.
    pub fn from_k2(k2: f64) -> Self {
        Self { k2 }
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    /// `√(k²)` when `k² ≥ 0`; `None` for an imaginary modulus.
    pub fn k(&self) -> Option<f64> {
        (self.k2 >= 0.0).then(|| self.k2.sqrt())
    }

    /// Complementary modulus squared, `1 − k²`.
    pub fn complementary_k2(&self) -> f64 {
        1.0 - self.k2
    }
}

/// Common limit of the arithmetic–geometric mean iteration started at `(x, y)`.
pub fn agm(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("agm needs positive finite arguments (got {x}, {y})")));
    }
    let (mut a, mut b) = (x, y);
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_RTOL * a {
            return Ok(0.5 * (a + b));
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    // quadratic convergence makes this unreachable for finite positive input
    Ok(0.5 * (a + b))
}

/// Complete elliptic integral of the first kind.
pub fn complete_k(m: Modulus) -> Result<f64> {
    let k2 = m.k2();
    if !(k2 < 1.0) {
        return Err(Error::Domain(format!("K(k) needs k² < 1 (got {k2})")));
    }
    if k2 == 0.0 {
        return Ok(FRAC_PI_2);
    }
    Ok(FRAC_PI_2 / agm(1.0, m.complementary_k2().sqrt())?)
}

/// Complete elliptic integral of the second kind.
///
/// Uses `E = K·(1 − Σₙ 2ⁿ⁻¹ cₙ²)` with `c₀² = k²` and `cₙ = (aₙ₋₁ − bₙ₋₁)/2`
/// taken along the same AGM sequence as `K`.
pub fn complete_e(m: Modulus) -> Result<f64> {
    let k2 = m.k2();
    if !(k2 <= 1.0) {
        return Err(Error::Domain(format!("E(k) needs k² ≤ 1 (got {k2})")));
    }
    if k2 == 1.0 {
        return Ok(1.0);
    }
    if k2 == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let mut a = 1.0_f64;
    let mut b = m.complementary_k2().sqrt();
    let mut sum = 0.5 * k2;
    let mut weight = 0.5;
    for _ in 0..AGM_MAX_ITER {
        let c = 0.5 * (a - b);
        weight *= 2.0;
        sum += weight * c * c;
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
        if c.abs() <= AGM_RTOL * a {
            break;
        }
    }
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

/// Residual of the Landen-type identity
/// `E(2√k/(1+k)) = (2E(k) − (1−k²)K(k)) / (1+k)` for `0 ≤ k < 1`.
pub fn landen_gap(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("landen_gap needs 0 ≤ k < 1 (got {k})")));
    }
    let m = Modulus::from_k(k);
    // (2√k/(1+k))² written without the square root
    let transformed = Modulus::from_k2(4.0 * k / ((1.0 + k) * (1.0 + k)));
    let lhs = complete_e(transformed)?;
    let rhs = (2.0 * complete_e(m)? - (1.0 - k * k) * complete_k(m)?) / (1.0 + k);
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_gk15;
    use std::f64::consts::PI;

    // Oracles: the defining integrals after α = sin θ, so the 1/√(1−α²) factor
    // disappears.
    fn k_by_quadrature(k2: f64) -> f64 {
        adaptive_gk15(|t: f64| 1.0 / (1.0 - k2 * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-13)
            .unwrap()
    }

    fn e_by_quadrature(k2: f64) -> f64 {
        adaptive_gk15(|t: f64| (1.0 - k2 * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-13).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn agm_fixed_points() {
        assert_eq!(agm(1.0, 1.0).unwrap(), 1.0);
        for x in [1e-3, 0.7, 2.5, 1e4] {
            assert!(rel(agm(x, x).unwrap(), x) < 1e-15);
        }
    }

    #[test]
    fn agm_rejects_non_positive() {
        assert!(matches!(agm(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(agm(1.0, -2.0), Err(Error::Domain(_))));
        assert!(agm(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn agm_matches_quadrature_of_k() {
        let k = 0.5_f64;
        let via_agm = agm(1.0, (1.0 - k * k).sqrt()).unwrap();
        let oracle = PI / (2.0 * k_by_quadrature(k * k));
        assert!(rel(via_agm, oracle) < 1e-13);
    }

    #[test]
    fn k_values() {
        assert_eq!(complete_k(Modulus::from_k(0.0)).unwrap(), FRAC_PI_2);
        let k_half = complete_k(Modulus::from_k(0.5)).unwrap();
        assert!(rel(k_half, 1.685_750_354_8) < 1e-10);
        assert!(rel(k_half, k_by_quadrature(0.25)) < 1e-12);
        let k_neg = complete_k(Modulus::from_k2(-1.0 / 3.0)).unwrap();
        assert!(k_neg > 0.0 && k_neg < FRAC_PI_2);
        assert!(rel(k_neg, k_by_quadrature(-1.0 / 3.0)) < 1e-12);
    }

    #[test]
    fn e_values() {
        assert_eq!(complete_e(Modulus::from_k(0.0)).unwrap(), FRAC_PI_2);
        assert_eq!(complete_e(Modulus::from_k(1.0)).unwrap(), 1.0);
        let e_half = complete_e(Modulus::from_k(0.5)).unwrap();
        assert!(rel(e_half, 1.467_462_209_4) < 1e-10);
        assert!(rel(e_half, e_by_quadrature(0.25)) < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(complete_k(Modulus::from_k(1.0)).is_err());
        assert!(complete_k(Modulus::from_k2(1.5)).is_err());
        assert!(complete_e(Modulus::from_k2(1.0 + 1e-12)).is_err());
        assert!(landen_gap(1.0).is_err());
        assert!(landen_gap(-0.1).is_err());
    }

    #[test]
    fn modulus_accessors() {
        assert_eq!(Modulus::from_k(-0.5).k(), Some(0.5));
        assert_eq!(Modulus::from_k2(-0.25).k(), None);
        assert_eq!(Modulus::from_k2(-0.25).complementary_k2(), 1.25);
    }

    #[test]
    fn landen_examples() {
        assert_eq!(landen_gap(0.0).unwrap(), 0.0);
        assert!(landen_gap(0.5).unwrap().abs() <= 1e-12);
        assert!(landen_gap(8.0 / 9.0).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn agm_agrees_with_quadrature_on_sweep() {
        for i in 0..100 {
            let k2 = -2.0 + 2.99 * i as f64 / 99.0;
            let m = Modulus::from_k2(k2);
            assert!(rel(complete_k(m).unwrap(), k_by_quadrature(k2)) < 1e-10, "K at k²={k2}");
            assert!(rel(complete_e(m).unwrap(), e_by_quadrature(k2)) < 1e-10, "E at k²={k2}");
        }
    }

    #[test]
    fn legendre_relation() {
        for i in 1..=50 {
            let k = i as f64 / 51.0;
            let m = Modulus::from_k(k);
            let mc = Modulus::from_k2(1.0 - k * k);
            let (kk, ek) = (complete_k(m).unwrap(), complete_e(m).unwrap());
            let (kc, ec) = (complete_k(mc).unwrap(), complete_e(mc).unwrap());
            let lhs = ek * kc + ec * kk - kk * kc;
            assert!((lhs - FRAC_PI_2).abs() < 1e-11, "k = {k}: {lhs}");
        }
    }

    #[test]
    fn monotone_and_bracketing_pi_half() {
        let mut prev_k = 0.0;
        let mut prev_e = f64::INFINITY;
        for i in 0..200 {
            let k = 0.995 * i as f64 / 199.0;
            let m = Modulus::from_k(k);
            let (kk, ek) = (complete_k(m).unwrap(), complete_e(m).unwrap());
            assert!(ek <= FRAC_PI_2 && FRAC_PI_2 <= kk);
            if i > 0 {
                assert!(kk > prev_k && ek < prev_e);
                assert!(ek < FRAC_PI_2 && kk > FRAC_PI_2);
            }
            prev_k = kk;
            prev_e = ek;
        }
    }
}
