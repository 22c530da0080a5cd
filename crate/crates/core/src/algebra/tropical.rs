use std::cmp::Ordering;
use std::fmt;

use super::Semiring;

/// Min-plus scalar over the integers, with `Infinity` as the `⊕`-identity.
///
/// The derived order puts every finite value below `Infinity`, which is the
/// order `⊕ = min` needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    Finite(i64),
    Infinity,
}

impl Tropical {
    pub fn finite(self) -> Option<i64> {
        match self {
            Tropical::Finite(v) => Some(v),
            Tropical::Infinity => None,
        }
    }

    pub fn plus(self, rhs: Self) -> Self {
        self.min(rhs)
    }

    pub fn times(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a + b),
            _ => Tropical::Infinity,
        }
    }

    /// Adjoint multiplication `a ⊕ b ⊕ (a ⊗ b)`.
    pub fn star(self, rhs: Self) -> Self {
        self.plus(rhs).plus(self.times(rhs))
    }
}

pub fn trop_star(a: Tropical, b: Tropical) -> Tropical {
    a.star(b)
}

impl From<i64> for Tropical {
    fn from(v: i64) -> Self {
        Tropical::Finite(v)
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Finite(v) => write!(f, "{v}"),
            Tropical::Infinity => f.write_str("inf"),
        }
    }
}

impl Semiring for Tropical {
    type Params = ();

    fn params(&self) {}

    fn zero(_: &()) -> Self {
        Tropical::Infinity
    }

    fn one(_: &()) -> Self {
        Tropical::Finite(0)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.plus(*rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.times(*rhs)
    }

    fn is_zero(&self) -> bool {
        *self == Tropical::Infinity
    }
}

/// Entrywise comparison used by the monotonicity attack.
pub(crate) fn partial_cmp_entries(a: &[Tropical], b: &[Tropical]) -> Option<Ordering> {
    let mut le = true;
    let mut ge = true;
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    match (le, ge) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}
