//! Deck transformations of the parameter torus and the injectivity probe.

use std::f64::consts::PI;

use serde::Serialize;

use super::classify::{subcase, Subcase};
use super::geometry::{coefficients, immersion_with};
use super::triple::Triple;
use crate::{Error, Result};

/// Residual at or below which a transformation counts as a symmetry of `F`.
pub const IDENTIFICATION_TOL: f64 = 1e-12;

/// Candidate identifications `F ∘ Φ = F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Phi {
    /// `(x, y) ↦ (x + π, π − y)`
    Phi1,
    /// `(x, y) ↦ (x + π, −y)`
    Phi2,
    /// `(x, y) ↦ (x + π, y + π)`
    Phi3,
}

impl Phi {
    pub const ALL: [Phi; 3] = [Phi::Phi1, Phi::Phi2, Phi::Phi3];

    pub fn apply(self, x: f64, y: f64) -> (f64, f64) {
        match self {
            Phi::Phi1 => (x + PI, PI - y),
            Phi::Phi2 => (x + PI, -y),
            Phi::Phi3 => (x + PI, y + PI),
        }
    }
}

/// `max |F(Φ(x, y)) − F(x, y)|` over an `n × n` grid of `[0, 2π)²`.
pub fn symmetry_residual(t: &Triple, phi: Phi, n: usize) -> Result<f64> {
    if n < 16 {
        return Err(Error::InvalidGrid(format!("symmetry residual needs n ≥ 16 (got {n})")));
    }
    let co = coefficients(t);
    let h = 2.0 * PI / n as f64;
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (i as f64 * h, j as f64 * h);
            let (xp, yp) = phi.apply(x, y);
            let f = immersion_with(t, &co, x, y);
            let g = immersion_with(t, &co, xp, yp);
            let d = f.iter().zip(&g).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt();
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

/// The identification predicted from parities: with `a` even it is `Φ₁`,
/// with `a` odd and `b` even `Φ₂`, with both odd `Φ₃` (subcases I, II and the
/// Lawson surfaces; subcase III has none).
pub fn predicted_identification(t: &Triple) -> Option<Phi> {
    if subcase(t) == Subcase::III {
        return None;
    }
    match (t.a() % 2 == 0, t.b() % 2 == 0) {
        (true, _) => Some(Phi::Phi1),
        (false, true) => Some(Phi::Phi2),
        (false, false) => Some(Phi::Phi3),
    }
}

/// The identification found by evaluating every candidate on a grid: the
/// unique `Φ` whose residual is within [`IDENTIFICATION_TOL`], if any.
pub fn detect_identification(t: &Triple) -> Result<Option<Phi>> {
    let mut found = None;
    for phi in Phi::ALL {
        if symmetry_residual(t, phi, 16)? <= IDENTIFICATION_TOL {
            if found.is_some() {
                return Err(Error::Degenerate(format!("{t} admits more than one identification")));
            }
            found = Some(phi);
        }
    }
    Ok(found)
}

/// Minimum distance in `R⁶` between images of distinct nodes of an `n × n`
/// grid of `[0, 2π)²`. Only meaningful where the map is one-to-one.
pub fn injectivity_scan(t: &Triple, n: usize) -> Result<f64> {
    if subcase(t) != Subcase::III {
        return Err(Error::QuotientSurface);
    }
    if n < 32 {
        return Err(Error::InvalidGrid(format!("injectivity scan needs n ≥ 32 (got {n})")));
    }
    let co = coefficients(t);
    let h = 2.0 * PI / n as f64;
    let points: Vec<[f64; 6]> = (0..n * n)
        .map(|k| immersion_with(t, &co, (k / n) as f64 * h, (k % n) as f64 * h))
        .collect();
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d2: f64 = p.iter().zip(q).map(|(u, v)| (u - v) * (u - v)).sum();
            best = best.min(d2);
        }
    }
    Ok(best.sqrt())
}

/// Lower bound expected of [`injectivity_scan`] for an embedded surface: a
/// quarter of the shortest grid edge measured in the induced metric.
pub fn injectivity_floor(t: &Triple, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    let shortest = (0..n)
        .map(|j| {
            let (gxx, gyy) = super::geometry::metric(t, j as f64 * h);
            gxx.min(gyy).sqrt()
        })
        .fold(f64::INFINITY, f64::min);
    0.25 * h * shortest
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::triple::{validate, Family};

    fn gen(a: i64, b: i64, c: i64) -> Triple {
        validate(Family::Generalized, a, b, Some(c)).unwrap()
    }

    #[test]
    fn t012_keeps_phi1_after_swap() {
        let t = gen(1, 0, 2);
        assert_eq!(t, Triple::Generalized { a: 0, b: 1, c: 2 });
        assert!(symmetry_residual(&t, Phi::Phi1, 32).unwrap() <= IDENTIFICATION_TOL);
        assert!(symmetry_residual(&t, Phi::Phi2, 32).unwrap() >= 0.1);
        assert!(symmetry_residual(&t, Phi::Phi3, 32).unwrap() >= 0.1);
        // before the swap the odd entry sits in slot a and Φ₂ is the survivor
        let raw = Triple::Generalized { a: 1, b: 0, c: 2 };
        assert!(symmetry_residual(&raw, Phi::Phi2, 32).unwrap() <= IDENTIFICATION_TOL);
        assert!(symmetry_residual(&raw, Phi::Phi1, 32).unwrap() >= 0.1);
    }

    #[test]
    fn t112_phi3() {
        let t = gen(1, 1, 2);
        assert!(symmetry_residual(&t, Phi::Phi3, 32).unwrap() <= IDENTIFICATION_TOL);
        assert_eq!(detect_identification(&t).unwrap(), Some(Phi::Phi3));
    }

    #[test]
    fn t123_has_no_identification() {
        let t = gen(1, 2, 3);
        for phi in Phi::ALL {
            assert!(symmetry_residual(&t, phi, 32).unwrap() >= 0.1, "{phi:?}");
        }
        assert_eq!(detect_identification(&t).unwrap(), None);
    }

    #[test]
    fn detection_matches_parity_prediction() {
        let triples = [
            gen(0, 0, 1),
            gen(0, 1, 2),
            gen(1, 2, 4),
            gen(2, 3, 6),
            gen(3, 4, 6),
            gen(1, 3, 4),
            gen(1, 2, 5),
            validate(Family::Lawson, 2, 1, None).unwrap(),
            validate(Family::Lawson, 3, 1, None).unwrap(),
            validate(Family::Lawson, 3, 2, None).unwrap(),
        ];
        for t in triples {
            assert_eq!(detect_identification(&t).unwrap(), predicted_identification(&t), "{t}");
        }
    }

    #[test]
    fn grid_too_small() {
        assert!(matches!(symmetry_residual(&gen(1, 1, 2), Phi::Phi1, 8), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn injectivity_examples() {
        for t in [gen(0, 0, 1), gen(1, 2, 3)] {
            let d = injectivity_scan(&t, 32).unwrap();
            assert!(d > injectivity_floor(&t, 32), "{t}: {d}");
        }
        assert!(matches!(injectivity_scan(&gen(1, 1, 2), 32), Err(Error::QuotientSurface)));
        assert!(matches!(
            injectivity_scan(&validate(Family::Lawson, 1, 1, None).unwrap(), 32),
            Err(Error::QuotientSurface)
        ));
    }
}
