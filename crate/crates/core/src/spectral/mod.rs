//! Separated Laplace–Beltrami spectra on the parameter torus.
//!
//! The metric `P dx² + 2P/(Q + 2P) dy²` depends on `y` only, so modes
//! `ψ = φ(y) e^{ilx}` reduce `Δψ = λψ` to a periodic Sturm–Liouville problem
//! for each `l ≥ 0`.

mod count;
mod pencil;
mod problem;
mod residuals;

pub use count::{
    anchor_check, count_n2, interlacing_check, Anchor, CountReport, EPSILON_FLOOR, INTERLACING_TOL, MIN_COUNT_GRID,
};
pub use pencil::SymmetricPencil;
pub use problem::{
    discretize, sl_coefficients, sl_spectrum, ReflectionAxis, SelfAdjointForm, SlProblem, SpectrumResult, Symmetry,
    DEFAULT_COUNT, MIN_GRID,
};
pub use residuals::{profile_residual, lame_residual, takahashi_residual};
