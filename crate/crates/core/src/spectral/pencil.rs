//! Lowest eigenvalues of a symmetric tridiagonal pencil `A x = λ W x` with
//! diagonal positive `W`.
//!
//! The pencil is reduced to `W^{-1/2} A W^{-1/2}` and eigenvalues are located by
//! bisection on the Sturm count of the `LDLᵀ` pivots.

use crate::{Error, Result};

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone)]
pub struct SymmetricPencil {
    diag: Vec<f64>,
    off: Vec<f64>,
    pivmin: f64,
}

impl SymmetricPencil {
    /// `stiff_diag[i] = A_ii`, `stiff_off[i] = A_{i,i+1}` and `weight[i] = W_ii > 0`.
    pub fn new(stiff_diag: &[f64], stiff_off: &[f64], weight: &[f64]) -> Result<Self> {
        let n = stiff_diag.len();
        if n == 0 || stiff_off.len() + 1 != n || weight.len() != n {
            return Err(Error::InvalidGrid(format!(
                "inconsistent pencil sizes: diag {n}, off {}, weight {}",
                stiff_off.len(),
                weight.len()
            )));
        }
        if let Some(w) = weight.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::Domain(format!("pencil weight must be positive (got {w})")));
        }
        let scale: Vec<f64> = weight.iter().map(|w| w.sqrt().recip()).collect();
        let diag: Vec<f64> = stiff_diag.iter().zip(&scale).map(|(d, s)| d * s * s).collect();
        let off: Vec<f64> = stiff_off.iter().enumerate().map(|(i, e)| e * scale[i] * scale[i + 1]).collect();
        let norm = diag
            .iter()
            .map(|d| d.abs())
            .chain(off.iter().map(|e| e.abs()))
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        Ok(Self { diag, off, pivmin: f64::EPSILON * norm })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn guard(&self, u: f64) -> f64 {
        if u.abs() < self.pivmin {
            -self.pivmin
        } else {
            u
        }
    }

    /// Number of eigenvalues strictly below `sigma` (up to rounding).
    pub fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut u = 1.0;
        for (i, d) in self.diag.iter().enumerate() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / u };
            u = self.guard(d - sigma - coupling);
            count += usize::from(u < 0.0);
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        let pad = self.pivmin + f64::EPSILON * lo.abs().max(hi.abs());
        (lo - pad, hi + pad)
    }

    /// The `m` smallest eigenvalues in ascending order (fewer if the pencil is smaller).
    pub fn lowest(&self, m: usize) -> Result<Vec<f64>> {
        let m = m.min(self.len());
        let (glo, ghi) = self.gershgorin();
        let mut out = Vec::with_capacity(m);
        let mut floor = glo;
        for k in 0..m {
            let (mut lo, mut hi) = (floor, ghi);
            let mut converged = false;
            for _ in 0..MAX_BISECTIONS {
                let mid = 0.5 * (lo + hi);
                let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + self.pivmin;
                if hi - lo <= tol || mid <= lo || mid >= hi {
                    converged = true;
                    break;
                }
                if self.count_below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if !converged {
                return Err(Error::NonConvergence { grid_n: self.len() });
            }
            let value = 0.5 * (lo + hi);
            out.push(value);
            // eigenvalue k+1 is not below eigenvalue k
            floor = lo;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SymmetricEigen};

    // Dense oracle: symmetric eigen-decomposition of W^{-1/2} A W^{-1/2}.
    fn dense(diag: &[f64], off: &[f64], w: &[f64]) -> Vec<f64> {
        let n = diag.len();
        let mut a = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = diag[i] / w[i];
            if i + 1 < n {
                let e = off[i] / (w[i] * w[i + 1]).sqrt();
                a[(i, i + 1)] = e;
                a[(i + 1, i)] = e;
            }
        }
        let mut ev: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn sample(n: usize, seed: u64, scale: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        // small deterministic LCG; values only need to be irregular
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        let diag = (0..n).map(|_| scale * (4.0 * next() - 1.0)).collect();
        let off = (0..n - 1).map(|_| scale * (2.0 * next() - 1.0)).collect();
        let w = (0..n).map(|_| 0.5 + next()).collect();
        (diag, off, w)
    }

    #[test]
    fn matches_dense_oracle() {
        for (n, seed, scale) in [(1, 9, 1.0), (7, 1, 1.0), (40, 2, 1.0), (65, 4, 1.0), (200, 5, 1e5)] {
            let (d, e, w) = sample(n, seed, scale);
            let got = SymmetricPencil::new(&d, &e, &w).unwrap().lowest(n).unwrap();
            let want = dense(&d, &e, &w);
            for (g, x) in got.iter().zip(&want) {
                assert!((g - x).abs() < 1e-11 * scale * n as f64, "n={n}: {g} vs {x}");
            }
        }
    }

    #[test]
    fn dirichlet_laplacian() {
        let n = 2000;
        let h = 1.0 / (n + 1) as f64;
        let d = vec![2.0 / (h * h); n];
        let e = vec![-1.0 / (h * h); n - 1];
        let ev = SymmetricPencil::new(&d, &e, &vec![1.0; n]).unwrap().lowest(4).unwrap();
        for (k, g) in ev.iter().enumerate() {
            let exact = 4.0 / (h * h) * (std::f64::consts::PI * (k + 1) as f64 * h / 2.0).sin().powi(2);
            assert!((g - exact).abs() < 1e-9 * exact, "{g} vs {exact}");
        }
    }

    #[test]
    fn requesting_more_than_size() {
        let p = SymmetricPencil::new(&[1.0, 3.0], &[0.0], &[1.0, 1.0]).unwrap();
        let ev = p.lowest(5).unwrap();
        assert_eq!(ev.len(), 2);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SymmetricPencil::new(&[1.0, 2.0], &[0.1], &[1.0, 0.0]).is_err());
        assert!(SymmetricPencil::new(&[1.0, 2.0], &[], &[1.0, 1.0]).is_err());
        assert!(SymmetricPencil::new(&[], &[], &[]).is_err());
    }
}
