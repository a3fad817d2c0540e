use serde::Serialize;

use super::problem::{sl_spectrum, SlProblem, Symmetry};
use crate::surface::{detect_identification, extremal_index, Phi, Triple};
use crate::{Error, Result};

/// Smallest grid accepted by [`count_n2`].
pub const MIN_COUNT_GRID: usize = 2048;

/// Floor of the guard around `λ = 2`.
pub const EPSILON_FLOOR: f64 = 1e-6;

/// Slack used for the strict and non-strict comparisons of [`interlacing_check`].
pub const INTERLACING_TOL: f64 = 1e-6;

/// One known eigenvalue `λ_index(l) = 2` of the periodic problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Anchor {
    pub l: u32,
    pub index: usize,
    pub value: f64,
    pub residual: f64,
}

/// `λ₀(c)`, `λ₁(max(a, b))` and `λ₂(min(a, b))` from `FullPeriodic` spectra.
/// Lawson surfaces have no third profile and report only the last two.
pub fn anchor_check(t: &Triple, grid_n: usize) -> Result<Vec<Anchor>> {
    let (a, b) = (t.a().unsigned_abs() as u32, t.b().unsigned_abs() as u32);
    let mut wanted = Vec::with_capacity(3);
    if let Some(c) = t.c_int() {
        wanted.push((c.unsigned_abs() as u32, 0));
    }
    wanted.push((a.max(b), 1));
    wanted.push((a.min(b), 2));
    wanted
        .into_iter()
        .map(|(l, index)| {
            let s = sl_spectrum(&SlProblem::new(*t, l, Symmetry::FullPeriodic), grid_n, index + 1)?;
            let value = s.eigenvalues[index];
            Ok(Anchor { l, index, value, residual: (value - 2.0).abs() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub n2: u32,
    /// `(l, #{λ_i(l) < 2 − ε})` for the filtered spectra.
    pub per_l_counts: Vec<(u32, u32)>,
    pub epsilon: f64,
    pub j_closed: u32,
    pub agree: bool,
    pub grid_n: usize,
    pub identification: Option<Phi>,
    pub anchors: Vec<Anchor>,
    /// Last `l` included in the sum.
    pub l_stop: u32,
    /// `λ₀(l_stop + 1)`, which must exceed `2 + ε`.
    pub tail_lambda0: f64,
    /// `λ₃(0)` of the unfiltered problem.
    pub lambda3_zero: f64,
}

/// Number of profiles of `F` with frequency `l`, i.e. filtered eigenvalues
/// expected to equal 2 at that `l`.
fn anchor_multiplicity(t: &Triple, l: u32) -> u32 {
    let hit = |v: i64| u32::from(v.unsigned_abs() as u32 == l);
    hit(t.a()) + hit(t.b()) + t.c_int().map_or(0, hit)
}

/// Lowest eigenvalues of a problem, enough of them to pass `bound`.
fn spectrum_past(problem: &SlProblem, grid_n: usize, bound: f64) -> Result<Vec<f64>> {
    let mut m = 8;
    loop {
        let s = sl_spectrum(problem, grid_n, m)?;
        let exhausted = s.eigenvalues.len() < m;
        if exhausted || s.eigenvalues.last().is_some_and(|v| *v > bound) {
            return Ok(s.eigenvalues);
        }
        m *= 2;
    }
}

/// `N(2) = #{λ_i(0) < 2} + 2·Σ_{l≥1} #{λ_i(l) < 2}` over the spectra of the
/// surface, i.e. the parameter-torus spectra filtered by the identification.
///
/// Eigenvalues within `ε` of 2 are the profiles of `F` and are not counted;
/// their number at each `l` must match the profiles with that frequency.
pub fn count_n2(t: &Triple, grid_n: usize) -> Result<CountReport> {
    if grid_n < MIN_COUNT_GRID {
        return Err(Error::InvalidGrid(format!("count needs grid ≥ {MIN_COUNT_GRID} (got {grid_n})")));
    }
    let anchors = anchor_check(t, grid_n)?;
    let worst = anchors.iter().map(|a| a.residual).fold(0.0, f64::max);
    let epsilon = (10.0 * worst).max(EPSILON_FLOOR);
    let identification = detect_identification(t)?;
    let l_stop = t.l_stop();

    let mut per_l_counts = Vec::with_capacity(l_stop as usize + 1);
    let mut n2 = 0;
    for l in 0..=l_stop {
        let problem = SlProblem::filtered(*t, l, identification);
        let eigenvalues = spectrum_past(&problem, grid_n, 2.0 + epsilon)?;
        let below = eigenvalues.iter().filter(|v| **v < 2.0 - epsilon).count() as u32;
        let near = eigenvalues.iter().filter(|v| (**v - 2.0).abs() <= epsilon).count() as u32;
        let expected = anchor_multiplicity(t, l);
        if near != expected {
            return Err(Error::IndeterminateCount { l, near, expected, epsilon });
        }
        per_l_counts.push((l, below));
        n2 += if l == 0 { below } else { 2 * below };
    }

    let tail = sl_spectrum(&SlProblem::new(*t, l_stop + 1, Symmetry::FullPeriodic), grid_n, 1)?;
    let tail_lambda0 = tail.eigenvalues[0];
    if !(tail_lambda0 > 2.0 + epsilon) {
        return Err(Error::Truncation { l: l_stop + 1, lambda0: tail_lambda0 });
    }
    let lambda3_zero = sl_spectrum(&SlProblem::new(*t, 0, Symmetry::FullPeriodic), grid_n, 4)?.eigenvalues[3];

    let (j_closed, _, _) = extremal_index(t)?;
    Ok(CountReport {
        n2,
        per_l_counts,
        epsilon,
        j_closed,
        agree: n2 == j_closed,
        grid_n,
        identification,
        anchors,
        l_stop,
        tail_lambda0,
        lambda3_zero,
    })
}

/// Checks `λ₀(l) < λ₁(l) ≤ λ₂(l) < λ₃(l)` and `λ_i(l) < λ_i(l + 1)` for
/// `i ≤ 3`, `l ≤ l_max` on the unfiltered spectra. A strict inequality needs a
/// gap above [`INTERLACING_TOL`]; a non-strict one tolerates that much overlap.
pub fn interlacing_check(t: &Triple, grid_n: usize, l_max: u32) -> Result<bool> {
    let spectra = (0..=l_max)
        .map(|l| sl_spectrum(&SlProblem::new(*t, l, Symmetry::FullPeriodic), grid_n, 4).map(|s| s.eigenvalues))
        .collect::<Result<Vec<_>>>()?;
    let strict = |lo: f64, hi: f64| hi - lo > INTERLACING_TOL;
    let weak = |lo: f64, hi: f64| hi - lo >= -INTERLACING_TOL;
    let oscillation =
        spectra.iter().all(|s| strict(s[0], s[1]) && weak(s[1], s[2]) && strict(s[2], s[3]));
    let monotone = spectra.windows(2).all(|w| (0..4).all(|i| strict(w[0][i], w[1][i])));
    Ok(oscillation && monotone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{validate, Family};

    fn gen(a: i64, b: i64, c: i64) -> Triple {
        validate(Family::Generalized, a, b, Some(c)).unwrap()
    }

    #[test]
    fn clifford_anchor_is_exact() {
        let anchors = anchor_check(&gen(0, 0, 1), 512).unwrap();
        assert_eq!((anchors[0].l, anchors[0].index), (1, 0));
        assert!(anchors[0].residual < 1e-9);
    }

    #[test]
    fn anchors_at_4096() {
        for t in [gen(1, 1, 2), gen(1, 2, 4)] {
            for a in anchor_check(&t, 4096).unwrap() {
                assert!(a.residual <= 1e-4, "{t}: {a:?}");
            }
        }
    }

    #[test]
    fn count_examples() {
        for (t, n2) in [(gen(0, 0, 1), 1), (gen(0, 1, 2), 1), (gen(1, 2, 3), 9), (gen(1, 1, 2), 1)] {
            let r = count_n2(&t, 2048).unwrap();
            assert_eq!(r.n2, n2, "{t}: {r:?}");
            assert!(r.agree);
        }
    }

    #[test]
    fn t123_count_breakdown() {
        let r = count_n2(&gen(1, 2, 3), 2048).unwrap();
        // λ₀(0..3), λ₁(0..2), λ₂(0) lie below 2
        assert_eq!(r.per_l_counts, vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
        assert!(r.lambda3_zero > 2.0);
    }

    #[test]
    fn count_rejects_coarse_grid() {
        assert!(matches!(count_n2(&gen(1, 2, 3), 1024), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlacing_check(&gen(0, 0, 1), 512, 4).unwrap());
        assert!(interlacing_check(&gen(1, 1, 2), 512, 5).unwrap());
        assert!(interlacing_check(&gen(1, 2, 4), 512, 6).unwrap());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(anchor_multiplicity(&gen(0, 0, 1), 0), 2);
        assert_eq!(anchor_multiplicity(&gen(1, 1, 2), 1), 2);
        assert_eq!(anchor_multiplicity(&validate(Family::Lawson, 2, 1, None).unwrap(), 2), 1);
        assert_eq!(anchor_multiplicity(&gen(1, 2, 3), 0), 0);
    }
}
