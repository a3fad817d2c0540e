use std::f64::consts::PI;

use super::problem::sl_coefficients;
use crate::surface::{coefficients, immersion_with, Triple};
use crate::{Error, Result};

const RESIDUAL_NODES: usize = 1024;

fn nodes() -> impl Iterator<Item = f64> {
    (0..RESIDUAL_NODES).map(|i| 2.0 * PI * i as f64 / RESIDUAL_NODES as f64)
}

/// `√(1 − k² sin² y)` with its first two derivatives.
fn lame_root_jet(k2: f64, y: f64) -> (f64, f64, f64) {
    let (s, c) = y.sin_cos();
    let r = (1.0 - k2 * s * s).sqrt();
    let num = k2 * s * c;
    let d1 = -num / r;
    let d2 = -k2 * (c * c - s * s) / r - num * num / (r * r * r);
    (r, d1, d2)
}

/// Largest residual of the separated equation at `λ = 2` for the profile
/// `φ̃_which` with its own frequency (`a`, `b` or `c`).
pub fn profile_residual(t: &Triple, which: u8) -> Result<f64> {
    let co = coefficients(t);
    let (l, amp) = match which {
        1 => (t.a(), co.c1_sq.sqrt()),
        2 => (t.b(), co.c2_sq.sqrt()),
        3 => match t.c_int() {
            Some(c) => (c, co.c3_sq.sqrt()),
            None => return Ok(0.0),
        },
        _ => return Err(Error::Domain(format!("profile index must be 1, 2 or 3 (got {which})"))),
    };
    let form = sl_coefficients(t, l.unsigned_abs() as u32);
    let jet = |y: f64| -> (f64, f64, f64) {
        let (s, c) = y.sin_cos();
        match which {
            1 => (s, c, -s),
            2 => (c, -s, -c),
            _ => lame_root_jet(co.k2, y),
        }
    };
    Ok(nodes()
        .map(|y| {
            let (f, d1, d2) = jet(y);
            (amp * form.separated_lhs(2.0, y, f, d1, d2)).abs()
        })
        .fold(0.0, f64::max))
}

/// Largest residual of the trigonometric Lamé equation with `n = 1`,
///
/// ```text
/// (1 − k² sin² y) φ'' − k² sin y cos y φ' + (h − 2 k² sin² y) φ = 0,
/// ```
///
/// for `√(1 − k² sin² y)` at `h = k²`, `cos y` at `h = 1` or `sin y` at `h = 1 + k²`.
pub fn lame_residual(k2: f64, h_index: u8) -> Result<f64> {
    if !(k2 < 1.0) {
        return Err(Error::Domain(format!("Lamé residual needs k² < 1 (got {k2})")));
    }
    let h = match h_index {
        0 => k2,
        1 => 1.0,
        2 => 1.0 + k2,
        _ => return Err(Error::Domain(format!("h index must be 0, 1 or 2 (got {h_index})"))),
    };
    Ok(nodes()
        .map(|y| {
            let (s, c) = y.sin_cos();
            let (f, d1, d2) = match h_index {
                0 => lame_root_jet(k2, y),
                1 => (c, -s, -c),
                _ => (s, c, -s),
            };
            let ks2 = k2 * s * s;
            ((1.0 - ks2) * d2 - k2 * s * c * d1 + (h - 2.0 * ks2) * f).abs()
        })
        .fold(0.0, f64::max))
}

/// Largest `|Δ_h Fⁱ − 2Fⁱ|` over an `n × n` periodic grid, where `Δ_h` is the
/// five-point conservative discretization of the Laplace–Beltrami operator of
/// `P dx² + G dy²`, `G = 2P/(Q + 2P)`:
///
/// ```text
/// Δf = −(1/√(PG)) [∂_x(√(G/P) ∂_x f) + ∂_y(√(P/G) ∂_y f)],   √(P/G) = √((Q + 2P)/2).
/// ```
pub fn takahashi_residual(t: &Triple, n: usize) -> Result<f64> {
    if n < 128 {
        return Err(Error::InvalidGrid(format!("Takahashi residual needs n ≥ 128 (got {n})")));
    }
    let co = coefficients(t);
    let h = 2.0 * PI / n as f64;
    let inv_h2 = 1.0 / (h * h);
    let g_yy = |y: f64| 2.0 * co.p(y) / (co.q + 2.0 * co.p(y));
    let y_flux = |y: f64| ((co.q + 2.0 * co.p(y)) / 2.0).sqrt();
    // values[i * n + j] = F(x_i, y_j)
    let values: Vec<[f64; 6]> =
        (0..n * n).map(|k| immersion_with(t, &co, (k / n) as f64 * h, (k % n) as f64 * h)).collect();
    let mut worst = 0.0_f64;
    for j in 0..n {
        let y = j as f64 * h;
        let (p, g) = (co.p(y), g_yy(y));
        let density = (p * g).sqrt();
        let x_coef = (g / p).sqrt();
        let (down, up) = (y_flux(y - 0.5 * h), y_flux(y + 0.5 * h));
        let (jm, jp) = ((j + n - 1) % n, (j + 1) % n);
        for i in 0..n {
            let (im, ip) = ((i + n - 1) % n, (i + 1) % n);
            let f = &values[i * n + j];
            let (w, e) = (&values[im * n + j], &values[ip * n + j]);
            let (s, nn) = (&values[i * n + jm], &values[i * n + jp]);
            for k in 0..6 {
                let dxx = x_coef * (e[k] - 2.0 * f[k] + w[k]);
                let dyy = up * (nn[k] - f[k]) - down * (f[k] - s[k]);
                let lap = -(dxx + dyy) * inv_h2 / density;
                worst = worst.max((lap - 2.0 * f[k]).abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{validate, Family};

    fn gen(a: i64, b: i64, c: i64) -> Triple {
        validate(Family::Generalized, a, b, Some(c)).unwrap()
    }

    #[test]
    fn profiles_solve_separated_equation() {
        assert!(profile_residual(&gen(0, 1, 2), 3).unwrap() <= 1e-10);
        assert!(profile_residual(&gen(1, 1, 2), 1).unwrap() <= 1e-10);
        for t in [gen(1, 2, 3), gen(3, 4, 6), gen(1, 2, 5), validate(Family::Lawson, 3, 1, None).unwrap()] {
            for which in 1..=3 {
                assert!(profile_residual(&t, which).unwrap() <= 1e-10, "{t} φ{which}");
            }
        }
        assert_eq!(profile_residual(&validate(Family::Lawson, 2, 1, None).unwrap(), 3).unwrap(), 0.0);
    }

    #[test]
    fn wrong_frequency_is_detected() {
        // φ̃₃ of T(1,2,3) is not an eigenfunction at l = 2
        let t = gen(1, 2, 3);
        let co = coefficients(&t);
        let form = sl_coefficients(&t, 2);
        let worst = nodes()
            .map(|y| {
                let (f, d1, d2) = lame_root_jet(co.k2, y);
                form.separated_lhs(2.0, y, f, d1, d2).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst > 0.1);
    }

    #[test]
    fn lame_examples() {
        for h in 0..3 {
            assert!(lame_residual(0.0, h).unwrap() <= 1e-15);
        }
        assert!(lame_residual(0.5, 0).unwrap() <= 1e-12);
        assert!(lame_residual(-1.0 / 3.0, 2).unwrap() <= 1e-12);
        for k2 in [-8.0, -0.9, 0.3, 0.99] {
            for h in 0..3 {
                assert!(lame_residual(k2, h).unwrap() <= 1e-12 * (1.0 + k2.abs()), "k2={k2} h={h}");
            }
        }
        assert!(lame_residual(1.0, 0).is_err());
        assert!(lame_residual(0.2, 3).is_err());
    }

    #[test]
    fn takahashi_examples() {
        assert!(takahashi_residual(&gen(0, 0, 1), 256).unwrap() <= 1e-3);
        assert!(takahashi_residual(&gen(0, 1, 2), 512).unwrap() <= 2e-3);
        let t = gen(1, 2, 3);
        let ratio = takahashi_residual(&t, 128).unwrap() / takahashi_residual(&t, 256).unwrap();
        assert!((3.2..=4.8).contains(&ratio), "{ratio}");
        assert!(takahashi_residual(&t, 64).is_err());
    }
}
