use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Which branch of the family a triple belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Integers with `c² > a² + b²`.
    Generalized,
    /// Nonzero integers with `c = √(a² + b²)`: the Lawson tau-surfaces.
    Lawson,
}

/// Parameters of a surface `T_{a,b,c}`.
///
/// Values produced by [`validate`] are canonical: non-negative, reduced by their
/// gcd, ordered `a ≤ b` for [`Triple::Generalized`] and `a ≥ b` for
/// [`Triple::Lawson`]. The variants can also be built by hand to hold a raw,
/// non-canonical triple (negative or unordered entries); geometric formulas are
/// valid for those as well, which is what the isometry checks rely on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Triple {
    Generalized { a: i64, b: i64, c: i64 },
    /// `c = √(a² + b²)` is implied and need not be an integer.
    Lawson { a: i64, b: i64 },
}

/// Serialized as `{case, a, b, c, c_squared}` with `c` null for Lawson surfaces.
impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            case: Family,
            a: i64,
            b: i64,
            c: Option<i64>,
            c_squared: i64,
        }
        Repr { case: self.family(), a: self.a(), b: self.b(), c: self.c_int(), c_squared: self.c_sq() }
            .serialize(serializer)
    }
}

impl Triple {
    pub fn family(&self) -> Family {
        match self {
            Triple::Generalized { .. } => Family::Generalized,
            Triple::Lawson { .. } => Family::Lawson,
        }
    }

    pub fn a(&self) -> i64 {
        match *self {
            Triple::Generalized { a, .. } | Triple::Lawson { a, .. } => a,
        }
    }

    pub fn b(&self) -> i64 {
        match *self {
            Triple::Generalized { b, .. } | Triple::Lawson { b, .. } => b,
        }
    }

    /// Integer `c` for the generalized family, `None` for Lawson surfaces.
    pub fn c_int(&self) -> Option<i64> {
        match *self {
            Triple::Generalized { c, .. } => Some(c),
            Triple::Lawson { .. } => None,
        }
    }

    /// `c²`, exact in both families.
    pub fn c_sq(&self) -> i64 {
        match *self {
            Triple::Generalized { c, .. } => c * c,
            Triple::Lawson { a, b } => a * a + b * b,
        }
    }

    /// `|c|` as a real number.
    pub fn c(&self) -> f64 {
        match *self {
            Triple::Generalized { c, .. } => c.abs() as f64,
            Triple::Lawson { .. } => (self.c_sq() as f64).sqrt(),
        }
    }

    /// `Q = c² − a² − b²`; zero exactly for Lawson surfaces.
    pub fn q(&self) -> i64 {
        self.c_sq() - self.a() * self.a() - self.b() * self.b()
    }

    /// Largest `l` for which `λ₀(l) ≤ 2` can hold: `c`, or `⌊c⌋` in the Lawson case.
    pub fn l_stop(&self) -> u32 {
        match *self {
            Triple::Generalized { c, .. } => c.unsigned_abs() as u32,
            Triple::Lawson { .. } => isqrt(self.c_sq() as u64) as u32,
        }
    }

    /// Checks the admissibility conditions on the raw entries.
    pub fn check(&self) -> Result<()> {
        match *self {
            Triple::Generalized { a, b, c } => {
                if a == 0 && b == 0 && c == 0 {
                    return Err(Error::Degenerate("all entries are zero".into()));
                }
                if c * c <= a * a + b * b {
                    return Err(Error::NotInFamily { a, b, c });
                }
                Ok(())
            }
            Triple::Lawson { a, b } => {
                if a == 0 || b == 0 {
                    return Err(Error::Degenerate(format!(
                        "Lawson surfaces need nonzero a and b (got a={a}, b={b})"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        canonicalize(self) == *self
    }

    /// Short label such as `T(0,1,2)` or `tau(3,1)`.
    pub fn label(&self) -> String {
        match *self {
            Triple::Generalized { a, b, c } => format!("T({a},{b},{c})"),
            Triple::Lawson { a, b } => format!("tau({a},{b})"),
        }
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub(crate) fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// Builds a canonical triple from integer input, rejecting inadmissible values.
///
/// `c` is required for [`Family::Generalized`] and ignored for [`Family::Lawson`].
pub fn validate(family: Family, a: i64, b: i64, c: Option<i64>) -> Result<Triple> {
    let raw = match family {
        Family::Generalized => {
            let c = c.ok_or_else(|| Error::Degenerate("generalized triple needs c".into()))?;
            Triple::Generalized { a, b, c }
        }
        Family::Lawson => Triple::Lawson { a, b },
    };
    raw.check()?;
    let canonical = canonicalize(&raw);
    debug_assert!(canonical.check().is_ok());
    Ok(canonical)
}

/// Absolute values, division by the gcd of the nonzero entries, then the
/// family's orientation (`a ≤ b` generalized, `a ≥ b` Lawson). Idempotent.
pub fn canonicalize(t: &Triple) -> Triple {
    match *t {
        Triple::Generalized { a, b, c } => {
            let (a, b, c) = (a.unsigned_abs(), b.unsigned_abs(), c.unsigned_abs());
            let g = gcd(gcd(a, b), c).max(1);
            let (a, b, c) = (a / g, b / g, c / g);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            Triple::Generalized { a: a as i64, b: b as i64, c: c as i64 }
        }
        Triple::Lawson { a, b } => {
            let (a, b) = (a.unsigned_abs(), b.unsigned_abs());
            let g = gcd(a, b).max(1);
            let (a, b) = (a / g, b / g);
            let (a, b) = if a >= b { (a, b) } else { (b, a) };
            Triple::Lawson { a: a as i64, b: b as i64 }
        }
    }
}
