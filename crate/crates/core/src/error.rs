use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a special function or numeric routine.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not in family: c² must exceed a²+b² (got a={a}, b={b}, c={c}; request c² = a²+b² as a Lawson surface)")]
    NotInFamily { a: i64, b: i64, c: i64 },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("quotient surface; scan the quotient domain instead")]
    QuotientSurface,

    #[error("eigensolver did not converge on grid {grid_n}")]
    NonConvergence { grid_n: usize },

    #[error("indeterminate count; refine grid (l = {l}: {near} eigenvalues within {epsilon:e} of 2, expected {expected})")]
    IndeterminateCount {
        l: u32,
        near: u32,
        expected: u32,
        epsilon: f64,
    },

    #[error("truncation bound violated: lowest eigenvalue at l = {l} is {lambda0}, not above 2")]
    Truncation { l: u32, lambda0: f64 },
}

impl Error {
    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::IndeterminateCount { .. } | Error::Truncation { .. }
        )
    }
}
