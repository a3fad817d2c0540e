//! The surfaces `T_{a,b,c}`: parameters, coefficients, immersion, metric, area,
//! topology and the extremal index.

mod classify;
mod geometry;
mod symmetry;
mod triple;

pub use classify::{classify, extremal_index, subcase, topology, Functional, Subcase, SurfaceClass, Topology};
pub use geometry::{
    area_closed, area_quadrature, coefficients, covering_degree, immersion, immersion_with, metric,
    profiles, Area, Coefficients,
};
pub use symmetry::{
    detect_identification, injectivity_floor, injectivity_scan, predicted_identification,
    symmetry_residual, Phi, IDENTIFICATION_TOL,
};
pub use triple::{canonicalize, validate, Family, Triple};
