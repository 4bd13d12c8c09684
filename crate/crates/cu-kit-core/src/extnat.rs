//! Extended natural numbers: `0, 1, 2, ...` together with infinity.
//!
//! These are the values carried by each matrix-algebra block, so they are the
//! scalar building block of every AF-side computation in this crate. Addition
//! saturates at [`ExtNat::Inf`]; multiplication by a nonnegative integer uses
//! the convention `0 * Inf = 0`, which is the unique choice making
//! multiplicity maps preserve zero and compact containment.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

/// A nonnegative integer or infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtNat {
    Fin(u128),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == ExtNat::Fin(0)
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<u128> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    /// Saturating addition: anything plus `Inf` is `Inf`.
    pub fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => {
                ExtNat::Fin(a.checked_add(b).expect("ExtNat addition overflow"))
            }
            _ => ExtNat::Inf,
        }
    }

    /// Multiplication by a nonnegative integer with `0 * Inf = 0` and
    /// `m * Inf = Inf` for `m >= 1`.
    pub fn times(self, coef: u128) -> ExtNat {
        if coef == 0 {
            return ExtNat::Fin(0);
        }
        match self {
            ExtNat::Fin(n) => ExtNat::Fin(n.checked_mul(coef).expect("ExtNat multiply overflow")),
            ExtNat::Inf => ExtNat::Inf,
        }
    }

    pub fn leq(self, other: ExtNat) -> bool {
        self <= other
    }

    /// Compact containment: `a << b` holds exactly when `a` is finite and
    /// `a <= b`. `Inf << Inf` fails, witnessed by the sequence `1, 2, 3, ...`
    /// whose supremum is `Inf` but none of whose terms dominates `Inf`.
    pub fn way_below(self, other: ExtNat) -> bool {
        self.is_finite() && self <= other
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.cmp(b),
            (ExtNat::Fin(_), ExtNat::Inf) => Ordering::Less,
            (ExtNat::Inf, ExtNat::Fin(_)) => Ordering::Greater,
            (ExtNat::Inf, ExtNat::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

/// Parse error for the `"inf" | <decimal>` encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseExtNatError;

impl fmt::Display for ParseExtNatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected a nonnegative integer or \"inf\"")
    }
}

impl FromStr for ExtNat {
    type Err = ParseExtNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(ExtNat::Inf);
        }
        s.parse::<u128>().map(ExtNat::Fin).map_err(|_| ParseExtNatError)
    }
}
