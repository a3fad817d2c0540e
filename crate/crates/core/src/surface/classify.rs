use serde::Serialize;

use super::geometry::{area_closed, covering_degree};
use super::triple::Triple;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Topology {
    Torus,
    KleinBottle,
}

/// Parity subcase of the generalized family, or the Lawson boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subcase {
    LawsonCase,
    /// `a`, `b` of different parity, `c` even: Klein bottle, double cover.
    I,
    /// `a`, `b` odd, `c` even: torus, double cover.
    II,
    /// Everything else: torus, one-to-one.
    III,
}

/// Which normalized eigenvalue functional the metric is extremal for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Functional {
    TorusFunctional,
    KleinFunctional,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceClass {
    pub topology: Topology,
    pub subcase: Subcase,
    pub covering_degree: u32,
    pub s: f64,
    pub area: f64,
    /// Index `j` of the functional `Λ_j` the induced metric is extremal for.
    pub j: u32,
    pub functional: Functional,
    /// `Λ_j = λ · area` with `λ = 2`.
    pub lambda_value: f64,
}

pub fn subcase(t: &Triple) -> Subcase {
    match *t {
        Triple::Lawson { .. } => Subcase::LawsonCase,
        Triple::Generalized { a, b, c } => {
            let (a_odd, b_odd, c_even) = (a % 2 != 0, b % 2 != 0, c % 2 == 0);
            match (a_odd, b_odd, c_even) {
                (true, true, true) => Subcase::II,
                (x, y, true) if x != y => Subcase::I,
                _ => Subcase::III,
            }
        }
    }
}

pub fn topology(t: &Triple) -> Topology {
    match *t {
        Triple::Lawson { a, b } if (a % 2 == 0) != (b % 2 == 0) => Topology::KleinBottle,
        Triple::Lawson { .. } => Topology::Torus,
        Triple::Generalized { .. } if subcase(t) == Subcase::I => Topology::KleinBottle,
        Triple::Generalized { .. } => Topology::Torus,
    }
}

/// Closed-form extremal index `j`, the functional and `Λ_j`.
///
/// Expects a canonical triple: the special cases with a zero entry are keyed
/// off `a = 0`, where the `a ≤ b` ordering puts the zero.
pub fn extremal_index(t: &Triple) -> Result<(u32, Functional, f64)> {
    let area = area_closed(t)?;
    let (a, b) = (t.a().unsigned_abs() as u32, t.b().unsigned_abs() as u32);
    let j = match (*t, subcase(t)) {
        (Triple::Lawson { .. }, _) => 2 * (t.l_stop() / 2) + a + b - 1,
        (Triple::Generalized { c, .. }, sub) => {
            let c = c.unsigned_abs() as u32;
            // the nonzero partner when one of a, b vanishes
            let zero_entry = a == 0 || b == 0;
            let nonzero = a.max(b);
            match sub {
                Subcase::I if zero_entry => nonzero + c - 2,
                Subcase::I | Subcase::II => a + b + c - 3,
                _ if a == 0 && b == 0 => 1,
                _ if zero_entry => 2 * (nonzero + c) - 2,
                _ => 2 * (a + b + c) - 3,
            }
        }
    };
    let functional = match topology(t) {
        Topology::KleinBottle => Functional::KleinFunctional,
        Topology::Torus => Functional::TorusFunctional,
    };
    Ok((j, functional, 2.0 * area.area))
}

/// Full classification of a canonical triple.
pub fn classify(t: &Triple) -> Result<SurfaceClass> {
    let area = area_closed(t)?;
    let (j, functional, lambda_value) = extremal_index(t)?;
    Ok(SurfaceClass {
        topology: topology(t),
        subcase: subcase(t),
        covering_degree: covering_degree(t),
        s: area.s,
        area: area.area,
        j,
        functional,
        lambda_value,
    })
}
