use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::pencil::SymmetricPencil;
use crate::surface::{coefficients, Coefficients, Phi, Triple};
use crate::{Error, Result};

/// Smallest grid accepted by [`sl_spectrum`].
pub const MIN_GRID: usize = 256;

/// Default number of eigenvalues returned.
pub const DEFAULT_COUNT: usize = 8;

/// Boundary conditions selecting a symmetry class of solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// `φ(y + 2π) = φ(y)`.
    FullPeriodic,
    /// Even about the reflection axis.
    EvenInY,
    /// Odd about the reflection axis.
    OddInY,
    /// `φ(y + π) = φ(y)`.
    PiPeriodic,
    /// `φ(y + π) = −φ(y)`.
    PiAntiperiodic,
}

/// Axis of the reflection used by [`Symmetry::EvenInY`] and [`Symmetry::OddInY`].
/// Both are symmetry axes of the coefficients, which depend on `cos 2y` only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReflectionAxis {
    /// `y ↦ −y`
    Zero,
    /// `y ↦ π − y`
    HalfPi,
}

impl ReflectionAxis {
    fn offset(self) -> f64 {
        match self {
            ReflectionAxis::Zero => 0.0,
            ReflectionAxis::HalfPi => FRAC_PI_2,
        }
    }
}

/// Coefficients of the self-adjoint form `−(p φ')' + q φ = λ w φ` of the
/// separated equation
///
/// ```text
/// (1 + Q/(2P)) φ'' + P'/(2P) φ' + (λ − l²/P) φ = 0.
/// ```
///
/// The integrating factor is `√(2P + Q)`: `p = √(2P+Q)`, `q = 2l²/√(2P+Q)`,
/// `w = 2P/√(2P+Q)`. Multiplying the equation above by `−w` gives the
/// self-adjoint form term by term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfAdjointForm {
    pub coefficients: Coefficients,
    pub l: u32,
}

impl SelfAdjointForm {
    fn root(&self, y: f64) -> f64 {
        (2.0 * self.coefficients.p(y) + self.coefficients.q).sqrt()
    }

    pub fn p(&self, y: f64) -> f64 {
        self.root(y)
    }

    pub fn dp(&self, y: f64) -> f64 {
        self.coefficients.dp(y) / self.root(y)
    }

    pub fn q(&self, y: f64) -> f64 {
        let l = self.l as f64;
        2.0 * l * l / self.root(y)
    }

    pub fn w(&self, y: f64) -> f64 {
        2.0 * self.coefficients.p(y) / self.root(y)
    }

    /// Left side of the separated equation in its original, non-symmetric form.
    pub fn separated_lhs(&self, lambda: f64, y: f64, phi: f64, dphi: f64, ddphi: f64) -> f64 {
        let co = &self.coefficients;
        let p = co.p(y);
        let l = self.l as f64;
        (1.0 + co.q / (2.0 * p)) * ddphi + co.dp(y) / (2.0 * p) * dphi + (lambda - l * l / p) * phi
    }
}

pub fn sl_coefficients(t: &Triple, l: u32) -> SelfAdjointForm {
    SelfAdjointForm { coefficients: coefficients(t), l }
}

/// One separated eigenproblem: the triple, the Fourier index `l` in `x` and
/// the symmetry class of admissible `φ(y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlProblem {
    pub triple: Triple,
    pub l: u32,
    pub symmetry: Symmetry,
    pub axis: ReflectionAxis,
}

impl SlProblem {
    pub fn new(triple: Triple, l: u32, symmetry: Symmetry) -> Self {
        Self { triple, l, symmetry, axis: ReflectionAxis::Zero }
    }

    pub fn with_axis(mut self, axis: ReflectionAxis) -> Self {
        self.axis = axis;
        self
    }

    /// Solutions `ψ = φ(y)·e^{ilx}` invariant under an identification `Φ`:
    /// `Φ₁` ⇒ `φ(π − y) = (−1)^l φ(y)`, `Φ₂` ⇒ `φ(−y) = (−1)^l φ(y)`,
    /// `Φ₃` ⇒ `φ(y + π) = (−1)^l φ(y)`; no identification ⇒ plain periodicity.
    pub fn filtered(triple: Triple, l: u32, identification: Option<Phi>) -> Self {
        let even = l % 2 == 0;
        let reflect = if even { Symmetry::EvenInY } else { Symmetry::OddInY };
        match identification {
            None => Self::new(triple, l, Symmetry::FullPeriodic),
            Some(Phi::Phi1) => Self::new(triple, l, reflect).with_axis(ReflectionAxis::HalfPi),
            Some(Phi::Phi2) => Self::new(triple, l, reflect),
            Some(Phi::Phi3) => Self::new(
                triple,
                l,
                if even { Symmetry::PiPeriodic } else { Symmetry::PiAntiperiodic },
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub grid_n: usize,
    pub l: u32,
    pub symmetry: Symmetry,
}

/// Behaviour of `φ` at an end of a reflection-reduced interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    /// Even about the end point.
    Neumann,
    /// Odd about the end point.
    Dirichlet,
}

/// Conservative three-point discretization on the uniform grid `y_i = i·2π/N`
/// (shifted by the reflection axis), restricted to the symmetry class.
///
/// The coefficients depend on `cos 2y`, so reflections about `0` and `π/2`
/// commute with the operator. Each class splits into reflection-even and
/// reflection-odd parts living on `[0, π]` or `[0, π/2]` with Neumann or
/// Dirichlet ends, and every block is a plain tridiagonal pencil. All blocks
/// use nodes of the same `N`-point grid, so their union reproduces the
/// `FullPeriodic` matrix spectrum exactly.
pub fn discretize(problem: &SlProblem, grid_n: usize) -> Result<Vec<SymmetricPencil>> {
    if grid_n < 16 || grid_n % 4 != 0 {
        return Err(Error::InvalidGrid(format!("grid must be a multiple of 4, at least 16 (got {grid_n})")));
    }
    let form = sl_coefficients(&problem.triple, problem.l);
    let h = 2.0 * PI / grid_n as f64;
    let origin = problem.axis.offset();
    let half = grid_n / 2;
    let quarter = grid_n / 4;
    let block = |last: usize, left: End, right: End| reduced(&form, origin, h, last, left, right);
    use End::{Dirichlet as D, Neumann as N};
    let blocks = match problem.symmetry {
        Symmetry::FullPeriodic => vec![block(half, N, N)?, block(half, D, D)?],
        Symmetry::EvenInY => vec![block(half, N, N)?],
        Symmetry::OddInY => vec![block(half, D, D)?],
        Symmetry::PiPeriodic => vec![block(quarter, N, N)?, block(quarter, D, D)?],
        Symmetry::PiAntiperiodic => vec![block(quarter, N, D)?, block(quarter, D, N)?],
    };
    Ok(blocks)
}

/// Nodes `0..=last` of the grid starting at `origin`. A Neumann end keeps its
/// node with half a cell of flux and weight; a Dirichlet end drops it.
fn reduced(form: &SelfAdjointForm, origin: f64, h: f64, last: usize, left: End, right: End) -> Result<SymmetricPencil> {
    let inv_h2 = 1.0 / (h * h);
    let node = |i: usize| origin + i as f64 * h;
    // p at y_{i+1/2}
    let flux = |i: usize| form.p(origin + (i as f64 + 0.5) * h) * inv_h2;
    let first = if left == End::Neumann { 0 } else { 1 };
    let end = if right == End::Neumann { last } else { last - 1 };
    let mut diag = Vec::with_capacity(end + 1 - first);
    let mut weight = Vec::with_capacity(end + 1 - first);
    for i in first..=end {
        let (q, w) = (form.q(node(i)), form.w(node(i)));
        if i == 0 {
            diag.push(flux(0) + 0.5 * q);
            weight.push(0.5 * w);
        } else if i == last {
            diag.push(flux(last - 1) + 0.5 * q);
            weight.push(0.5 * w);
        } else {
            diag.push(flux(i - 1) + flux(i) + q);
            weight.push(w);
        }
    }
    let off: Vec<f64> = (first..end).map(|i| -flux(i)).collect();
    SymmetricPencil::new(&diag, &off, &weight)
}

/// Lowest `count` eigenvalues of the discretized problem.
pub fn sl_spectrum(problem: &SlProblem, grid_n: usize, count: usize) -> Result<SpectrumResult> {
    if grid_n < MIN_GRID {
        return Err(Error::InvalidGrid(format!("spectrum needs grid ≥ {MIN_GRID} (got {grid_n})")));
    }
    let mut eigenvalues = Vec::new();
    for pencil in discretize(problem, grid_n)? {
        let part = pencil.lowest(count).map_err(|e| match e {
            Error::NonConvergence { .. } => Error::NonConvergence { grid_n },
            other => other,
        })?;
        eigenvalues.extend(part);
    }
    eigenvalues.sort_by(f64::total_cmp);
    eigenvalues.truncate(count);
    Ok(SpectrumResult { eigenvalues, grid_n, l: problem.l, symmetry: problem.symmetry })
}
