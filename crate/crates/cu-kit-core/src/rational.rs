//! Extended nonnegative rationals: an order-dense instance used to stress
//! the law harness and as a mediating-map target. Arithmetic is exact.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// An exact nonnegative rational or infinity. Addition saturates at `Inf`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtRational {
    Fin(BigRational),
    Inf,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Fin(BigRational::zero())
    }

    /// Build from an integer fraction; `None` if negative or zero-denominator.
    pub fn from_ratio(num: i64, den: i64) -> Option<Self> {
        if den == 0 || (num != 0 && (num < 0) != (den < 0)) {
            return None;
        }
        Some(ExtRational::Fin(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Wrap a rational, rejecting negatives.
    pub fn from_rational(q: BigRational) -> Option<Self> {
        if q.is_negative() {
            None
        } else {
            Some(ExtRational::Fin(q))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Fin(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Fin(q) if q.is_zero())
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Fin(q) => Some(q),
            ExtRational::Inf => None,
        }
    }

    pub fn add(&self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Fin(a), ExtRational::Fin(b)) => ExtRational::Fin(a + b),
            _ => ExtRational::Inf,
        }
    }

    pub fn leq(&self, other: &ExtRational) -> bool {
        self.cmp(other) != Ordering::Greater
    }

    /// Compact containment. Zero is way below everything; a positive finite
    /// value is way below `y` exactly when it is strictly below `y` (the
    /// sequence `y - y/2^n` has supremum `y` but never reaches it), and no
    /// positive element is way below itself.
    pub fn way_below(&self, other: &ExtRational) -> bool {
        if self.is_zero() {
            return true;
        }
        match (self, other) {
            (ExtRational::Fin(a), ExtRational::Fin(b)) => a < b,
            (ExtRational::Fin(_), ExtRational::Inf) => true,
            (ExtRational::Inf, _) => false,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Fin(a), ExtRational::Fin(b)) => a.cmp(b),
            (ExtRational::Fin(_), ExtRational::Inf) => Ordering::Less,
            (ExtRational::Inf, ExtRational::Fin(_)) => Ordering::Greater,
            (ExtRational::Inf, ExtRational::Inf) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Fin(q) => write!(f, "{q}"),
            ExtRational::Inf => write!(f, "inf"),
        }
    }
}

/// Render as the CLI/JSON value string (`"p/q"`, `"n"`, or `"inf"`).
pub fn to_value_string(x: &ExtRational) -> String {
    use alloc::format;
    format!("{x}")
}
