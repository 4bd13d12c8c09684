//! The value-level contract for ordered abelian semigroups with suprema and
//! compact containment, together with the certified-sequence machinery that
//! makes suprema computable.

use alloc::boxed::Box;
use core::fmt;

use crate::extnat::ExtNat;
use crate::rational::ExtRational;
use num_rational::BigRational;

/// An increasing sequence, indexed from 1, with an optional finite
/// certificate describing its limiting behaviour.
///
/// The quantifier "all increasing sequences" is not computable; every
/// sequence handled here instead carries evidence supplied by its
/// constructor. A sequence without a certificate is well-formed but its
/// supremum cannot be taken ([`SupError::MissingCertificate`]).
pub struct IncreasingSeq<E, C> {
    gen: Box<dyn Fn(u32) -> E>,
    cert: Option<C>,
}

impl<E, C> IncreasingSeq<E, C> {
    pub fn new(gen: impl Fn(u32) -> E + 'static, cert: Option<C>) -> Self {
        IncreasingSeq { gen: Box::new(gen), cert }
    }

    /// Term at index `n >= 1`.
    pub fn term(&self, n: u32) -> E {
        debug_assert!(n >= 1, "sequence indices start at 1");
        (self.gen)(n)
    }

    pub fn cert(&self) -> Option<&C> {
        self.cert.as_ref()
    }
}

/// An increasing sequence each of whose terms is claimed to be compactly
/// contained in the next. The claim is the constructor's; the law harness
/// probes it against sampled sequences.
pub struct RapidSeq<E, C>(pub IncreasingSeq<E, C>);

impl<E, C> RapidSeq<E, C> {
    pub fn term(&self, n: u32) -> E {
        self.0.term(n)
    }
}

/// Why a supremum could not be produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupError {
    /// The sequence carries neither a stabilization index nor an
    /// unboundedness (or limit) declaration.
    MissingCertificate,
}

impl fmt::Display for SupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupError::MissingCertificate => {
                write!(f, "sequence carries no stabilization or unboundedness certificate")
            }
        }
    }
}

/// A value-level description of an ordered abelian semigroup with zero
/// least, sequential suprema, a compact-containment relation compatible
/// with addition, and a rapid basis under every element.
///
/// `way_below` is instance-supplied decision procedure, not computed from
/// its defining quantifier; the law harness checks its soundness on sampled
/// sequences. `basis(x)` must be rapidly increasing with supremum `x`.
pub trait CuInstance {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display;
    /// Certificate vocabulary understood by this instance's `sup`.
    type Cert: Clone;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn way_below(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn sup(&self, s: &IncreasingSeq<Self::Elem, Self::Cert>) -> Result<Self::Elem, SupError>;
    fn basis(&self, x: &Self::Elem) -> RapidSeq<Self::Elem, Self::Cert>;
}

/// An element is compact when it is compactly contained in itself.
pub fn is_compact<I: CuInstance + ?Sized>(inst: &I, x: &I::Elem) -> bool {
    inst.way_below(x, x)
}

/// Certificate for scalar [`ExtNat`] sequences.
///
/// Conventions: `Stabilizes(m)` asserts `term(n) = term(m)` for all
/// `n >= m`; `Unbounded` asserts every term is finite and no finite value
/// dominates all terms (so the supremum is `Inf`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtNatCert {
    Stabilizes(u32),
    Unbounded,
}

/// The extended naturals as a semigroup instance.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtNatCu;

impl CuInstance for ExtNatCu {
    type Elem = ExtNat;
    type Cert = ExtNatCert;

    fn zero(&self) -> ExtNat {
        ExtNat::Fin(0)
    }

    fn add(&self, a: &ExtNat, b: &ExtNat) -> ExtNat {
        a.add(*b)
    }

    fn leq(&self, a: &ExtNat, b: &ExtNat) -> bool {
        a.leq(*b)
    }

    fn way_below(&self, a: &ExtNat, b: &ExtNat) -> bool {
        a.way_below(*b)
    }

    fn sup(&self, s: &IncreasingSeq<ExtNat, ExtNatCert>) -> Result<ExtNat, SupError> {
        match s.cert() {
            Some(ExtNatCert::Stabilizes(m)) => Ok(s.term((*m).max(1))),
            Some(ExtNatCert::Unbounded) => Ok(ExtNat::Inf),
            None => Err(SupError::MissingCertificate),
        }
    }

    fn basis(&self, x: &ExtNat) -> RapidSeq<ExtNat, ExtNatCert> {
        match *x {
            ExtNat::Fin(v) => {
                // 0, 1, ..., v, v, v, ... — stabilizes once the ramp arrives.
                assert!(v < u32::MAX as u128, "basis ramp index exceeds u32");
                RapidSeq(IncreasingSeq::new(
                    move |n| ExtNat::Fin(((n - 1) as u128).min(v)),
                    Some(ExtNatCert::Stabilizes(v as u32 + 1)),
                ))
            }
            ExtNat::Inf => RapidSeq(IncreasingSeq::new(
                |n| ExtNat::Fin(n as u128),
                Some(ExtNatCert::Unbounded),
            )),
        }
    }
}

/// Certificate for [`ExtRational`] sequences.
///
/// `Limit(q)` asserts the terms are all strictly below `q` and that `q` is
/// the least upper bound (used by the geometric basis ramps).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRationalCert {
    Stabilizes(u32),
    Unbounded,
    Limit(BigRational),
}

/// The extended nonnegative rationals as a semigroup instance.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExtRationalCu;

impl CuInstance for ExtRationalCu {
    type Elem = ExtRational;
    type Cert = ExtRationalCert;

    fn zero(&self) -> ExtRational {
        ExtRational::zero()
    }

    fn add(&self, a: &ExtRational, b: &ExtRational) -> ExtRational {
        a.add(b)
    }

    fn leq(&self, a: &ExtRational, b: &ExtRational) -> bool {
        a.leq(b)
    }

    fn way_below(&self, a: &ExtRational, b: &ExtRational) -> bool {
        a.way_below(b)
    }

    fn sup(
        &self,
        s: &IncreasingSeq<ExtRational, ExtRationalCert>,
    ) -> Result<ExtRational, SupError> {
        match s.cert() {
            Some(ExtRationalCert::Stabilizes(m)) => Ok(s.term((*m).max(1))),
            Some(ExtRationalCert::Unbounded) => Ok(ExtRational::Inf),
            Some(ExtRationalCert::Limit(q)) => Ok(ExtRational::Fin(q.clone())),
            None => Err(SupError::MissingCertificate),
        }
    }

    fn basis(&self, x: &ExtRational) -> RapidSeq<ExtRational, ExtRationalCert> {
        use num_traits::{One, Zero};
        match x {
            ExtRational::Fin(q) if q.is_zero() => RapidSeq(IncreasingSeq::new(
                |_| ExtRational::zero(),
                Some(ExtRationalCert::Stabilizes(1)),
            )),
            ExtRational::Fin(q) => {
                // q * (1 - 2^{-n}): strictly increasing toward q, never reaching it.
                let q = q.clone();
                let limit = q.clone();
                RapidSeq(IncreasingSeq::new(
                    move |n| {
                        let mut denom = BigRational::one();
                        for _ in 0..n {
                            denom = &denom + &denom;
                        }
                        ExtRational::Fin(&q - &q / denom)
                    },
                    Some(ExtRationalCert::Limit(limit)),
                ))
            }
            ExtRational::Inf => RapidSeq(IncreasingSeq::new(
                |n| {
                    ExtRational::Fin(BigRational::from_integer(num_bigint::BigInt::from(n)))
                },
                Some(ExtRationalCert::Unbounded),
            )),
        }
    }
}
