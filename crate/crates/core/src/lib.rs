//! Generalized Lawson tori and Klein bottles `T_{a,b,c}` minimally immersed in the
//! unit 5-sphere.
//!
//! The crate builds the immersion from the three `n = 1` solutions of the
//! trigonometric Lamé equation, classifies the resulting surface (torus or Klein
//! bottle, covering degree, extremal eigenvalue index), and checks the closed-form
//! claims numerically: unit-sphere identity, Takahashi residual, area, anchor
//! eigenvalues and the eigenvalue count `N(2)` of the separated Sturm–Liouville
//! problem.
//!
//! Module map:
//! - [`elliptic`]: complete elliptic integrals `K`, `E` via the AGM.
//! - [`quadrature`]: adaptive Gauss–Kronrod and periodic trapezoid rules (oracles).
//! - [`surface`]: parameter triples, coefficients, immersion, metric, area, topology.
//! - [`spectral`]: the separated eigenproblem, its discretization and the count.
//! - [`verify`]: the per-triple verification report.
//! - [`cli`]: command implementations behind the `lawson` binary.

pub mod cli;
pub mod elliptic;
pub mod error;
pub mod quadrature;
pub mod spectral;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
