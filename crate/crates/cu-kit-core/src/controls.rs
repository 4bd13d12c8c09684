//! Deliberately broken instances used to validate the law harness itself:
//! each control must fail exactly its intended law and no other.

use crate::extnat::ExtNat;
use crate::instance::{CuInstance, ExtNatCert, ExtNatCu, IncreasingSeq, RapidSeq, SupError};
use crate::laws::Sampler;
use crate::samplers::{NatSampler, NatSeqSpec};
use rand_chacha::ChaCha8Rng;

/// Extended naturals with `way_below` set to plain `leq` and the basis set
/// to the constant sequence. Internally consistent everywhere except that
/// the claim `Inf << Inf` is refutable by a sampled unbounded sequence, so
/// the basis law (L3) fails at `x = Inf` and nothing else does.
#[derive(Clone, Copy, Debug, Default)]
pub struct WayBelowAsLeq;

impl CuInstance for WayBelowAsLeq {
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
        a.leq(*b)
    }

    fn sup(&self, s: &IncreasingSeq<ExtNat, ExtNatCert>) -> Result<ExtNat, SupError> {
        ExtNatCu.sup(s)
    }

    fn basis(&self, x: &ExtNat) -> RapidSeq<ExtNat, ExtNatCert> {
        let x = *x;
        RapidSeq(IncreasingSeq::new(move |_| x, Some(ExtNatCert::Stabilizes(1))))
    }
}

impl Sampler<WayBelowAsLeq> for NatSampler {
    type Seq = NatSeqSpec;

    fn element(&self, rng: &mut ChaCha8Rng) -> ExtNat {
        <NatSampler as Sampler<ExtNatCu>>::element(self, rng)
    }

    fn sequence(&self, rng: &mut ChaCha8Rng) -> NatSeqSpec {
        <NatSampler as Sampler<ExtNatCu>>::sequence(self, rng)
    }

    fn dominating_sequence(&self, rng: &mut ChaCha8Rng, floor: &ExtNat) -> NatSeqSpec {
        <NatSampler as Sampler<ExtNatCu>>::dominating_sequence(self, rng, floor)
    }

    fn realize(&self, s: &NatSeqSpec) -> IncreasingSeq<ExtNat, ExtNatCert> {
        <NatSampler as Sampler<ExtNatCu>>::realize(self, s)
    }

    fn sum(&self, a: &NatSeqSpec, b: &NatSeqSpec) -> NatSeqSpec {
        a.sum(b)
    }

    fn eventually_dominates(&self, s: &NatSeqSpec, x: &ExtNat) -> Option<bool> {
        Some(s.eventually_dominates(*x))
    }

    fn is_upper_bound(&self, s: &NatSeqSpec, bound: &ExtNat) -> Option<bool> {
        Some(s.is_upper_bound(*bound))
    }
}

/// Extended naturals with the skewed addition `a (+) b = a + 2b`, which is
/// neither commutative nor unital, so the semigroup law (L1) fails. All the
/// other laws are checked against this same addition and remain internally
/// consistent, so they pass.
#[derive(Clone, Copy, Debug, Default)]
pub struct SkewedAdd;

impl CuInstance for SkewedAdd {
    type Elem = ExtNat;
    type Cert = ExtNatCert;

    fn zero(&self) -> ExtNat {
        ExtNat::Fin(0)
    }

    fn add(&self, a: &ExtNat, b: &ExtNat) -> ExtNat {
        a.add(*b).add(*b)
    }

    fn leq(&self, a: &ExtNat, b: &ExtNat) -> bool {
        a.leq(*b)
    }

    fn way_below(&self, a: &ExtNat, b: &ExtNat) -> bool {
        a.way_below(*b)
    }

    fn sup(&self, s: &IncreasingSeq<ExtNat, ExtNatCert>) -> Result<ExtNat, SupError> {
        ExtNatCu.sup(s)
    }

    fn basis(&self, x: &ExtNat) -> RapidSeq<ExtNat, ExtNatCert> {
        ExtNatCu.basis(x)
    }
}

/// Sampler for [`SkewedAdd`] whose sum sequences follow the instance's own
/// addition, keeping every law except L1 internally consistent.
#[derive(Clone, Copy, Debug, Default)]
pub struct SkewedAddSampler(pub NatSampler);

impl Sampler<SkewedAdd> for SkewedAddSampler {
    type Seq = NatSeqSpec;

    fn element(&self, rng: &mut ChaCha8Rng) -> ExtNat {
        <NatSampler as Sampler<ExtNatCu>>::element(&self.0, rng)
    }

    fn sequence(&self, rng: &mut ChaCha8Rng) -> NatSeqSpec {
        <NatSampler as Sampler<ExtNatCu>>::sequence(&self.0, rng)
    }

    fn dominating_sequence(&self, rng: &mut ChaCha8Rng, floor: &ExtNat) -> NatSeqSpec {
        <NatSampler as Sampler<ExtNatCu>>::dominating_sequence(&self.0, rng, floor)
    }

    fn realize(&self, s: &NatSeqSpec) -> IncreasingSeq<ExtNat, ExtNatCert> {
        <NatSampler as Sampler<ExtNatCu>>::realize(&self.0, s)
    }

    fn sum(&self, a: &NatSeqSpec, b: &NatSeqSpec) -> NatSeqSpec {
        // a (+) b = a + 2b, termwise.
        a.sum(b).sum(b)
    }

    fn eventually_dominates(&self, s: &NatSeqSpec, x: &ExtNat) -> Option<bool> {
        Some(s.eventually_dominates(*x))
    }

    fn is_upper_bound(&self, s: &NatSeqSpec, bound: &ExtNat) -> Option<bool> {
        Some(s.is_upper_bound(*bound))
    }
}
