//! Samplers backing the law harness.
//!
//! Each sampler keeps a rich closed-form description of every sequence it
//! hands out (`prefix` + `tail`), so eventual-domination and upper-bound
//! queries have exact answers independent of the instance under test.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::extnat::ExtNat;
use crate::instance::{
    ExtNatCert, ExtNatCu, ExtRationalCert, ExtRationalCu, IncreasingSeq,
};
use crate::laws::Sampler;
use crate::matrix_map::MatrixCuMap;
use crate::rational::ExtRational;
use crate::vector::{ExtNatVector, VectorCu};

// ---------------------------------------------------------------------------
// Scalar extended-natural sequences
// ---------------------------------------------------------------------------

/// Closed-form increasing sequence of extended naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatSeqSpec {
    prefix: Vec<ExtNat>,
    tail: NatTail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NatTail {
    Const(ExtNat),
    /// `start, start+step, start+2*step, ...` — all terms finite, `step >= 1`.
    Linear { start: u128, step: u128 },
}

impl NatSeqSpec {
    pub fn new(prefix: Vec<ExtNat>, tail: NatTail) -> Self {
        let spec = NatSeqSpec { prefix, tail };
        debug_assert!(spec.is_monotone());
        spec
    }

    fn is_monotone(&self) -> bool {
        let mut prev = None;
        for t in &self.prefix {
            if let Some(p) = prev {
                if !ExtNat::leq(p, *t) {
                    return false;
                }
            }
            prev = Some(*t);
        }
        match (prev, self.tail) {
            (Some(p), NatTail::Const(v)) => p.leq(v),
            (Some(p), NatTail::Linear { start, .. }) => p.leq(ExtNat::Fin(start)),
            (None, _) => true,
        }
    }

    pub fn term(&self, n: u32) -> ExtNat {
        let len = self.prefix.len() as u32;
        if n <= len {
            return self.prefix[(n - 1) as usize];
        }
        let m = (n - len) as u128; // 1-based offset into the tail
        match self.tail {
            NatTail::Const(v) => v,
            NatTail::Linear { start, step } => ExtNat::Fin(start + step * (m - 1)),
        }
    }

    pub fn cert(&self) -> ExtNatCert {
        match self.tail {
            NatTail::Const(_) => ExtNatCert::Stabilizes(self.prefix.len() as u32 + 1),
            NatTail::Linear { .. } => ExtNatCert::Unbounded,
        }
    }

    pub fn sup(&self) -> ExtNat {
        match self.tail {
            NatTail::Const(v) => v,
            NatTail::Linear { .. } => ExtNat::Inf,
        }
    }

    pub fn sum(&self, other: &NatSeqSpec) -> NatSeqSpec {
        let plen = self.prefix.len().max(other.prefix.len()) as u32;
        let prefix = (1..=plen).map(|n| self.term(n).add(other.term(n))).collect();
        let first = self.term(plen + 1).add(other.term(plen + 1));
        let tail = match (self.tail, other.tail) {
            (NatTail::Const(_), NatTail::Const(_)) => NatTail::Const(first),
            (NatTail::Linear { step: s1, .. }, NatTail::Linear { step: s2, .. }) => {
                match first {
                    ExtNat::Fin(f) => NatTail::Linear { start: f, step: s1 + s2 },
                    ExtNat::Inf => NatTail::Const(ExtNat::Inf),
                }
            }
            (NatTail::Linear { step, .. }, NatTail::Const(c))
            | (NatTail::Const(c), NatTail::Linear { step, .. }) => match (first, c) {
                (ExtNat::Fin(f), ExtNat::Fin(_)) => NatTail::Linear { start: f, step },
                _ => NatTail::Const(ExtNat::Inf),
            },
        };
        NatSeqSpec::new(prefix, tail)
    }

    /// Pointwise multiple under the `0 * Inf = 0` convention.
    pub fn scale(&self, coef: u128) -> NatSeqSpec {
        if coef == 0 {
            return NatSeqSpec::new(Vec::new(), NatTail::Const(ExtNat::Fin(0)));
        }
        let prefix = self.prefix.iter().map(|t| t.times(coef)).collect();
        let tail = match self.tail {
            NatTail::Const(v) => NatTail::Const(v.times(coef)),
            NatTail::Linear { start, step } => {
                NatTail::Linear { start: start * coef, step: step * coef }
            }
        };
        NatSeqSpec::new(prefix, tail)
    }

    pub fn eventually_dominates(&self, x: ExtNat) -> bool {
        if self.prefix.iter().any(|t| x.leq(*t)) {
            return true;
        }
        match self.tail {
            NatTail::Const(v) => x.leq(v),
            NatTail::Linear { .. } => x.is_finite(),
        }
    }

    pub fn is_upper_bound(&self, c: ExtNat) -> bool {
        self.prefix.iter().all(|t| t.leq(c))
            && match self.tail {
                NatTail::Const(v) => v.leq(c),
                NatTail::Linear { .. } => c == ExtNat::Inf,
            }
    }
}

fn sample_nat(rng: &mut ChaCha8Rng) -> ExtNat {
    match rng.gen_range(0..100u32) {
        0..=9 => ExtNat::Fin(0),
        10..=49 => ExtNat::Fin(rng.gen_range(1..=10) as u128),
        50..=74 => ExtNat::Fin(rng.gen_range(11..=200) as u128),
        75..=84 => ExtNat::Fin(rng.gen_range(201..=100_000) as u128),
        _ => ExtNat::Inf,
    }
}

fn sample_nat_spec(rng: &mut ChaCha8Rng) -> NatSeqSpec {
    let mut prefix = Vec::new();
    let mut last: u128 = rng.gen_range(0..=5) as u128;
    for _ in 0..rng.gen_range(0..=3u32) {
        prefix.push(ExtNat::Fin(last));
        last += rng.gen_range(0..=5) as u128;
    }
    if rng.gen_range(0..100u32) < 55 {
        let v = if rng.gen_range(0..100u32) < 20 {
            ExtNat::Inf
        } else {
            ExtNat::Fin(last + rng.gen_range(0..=10) as u128)
        };
        NatSeqSpec::new(prefix, NatTail::Const(v))
    } else {
        NatSeqSpec::new(
            prefix,
            NatTail::Linear {
                start: last + rng.gen_range(0..=3) as u128,
                step: rng.gen_range(1..=4) as u128,
            },
        )
    }
}

fn sample_nat_dominating(rng: &mut ChaCha8Rng, floor: ExtNat) -> NatSeqSpec {
    match floor {
        ExtNat::Fin(f) => {
            if rng.gen_bool(0.5) {
                let target = f + rng.gen_range(0..=5) as u128;
                let prefix = if target > 0 && rng.gen_bool(0.5) {
                    alloc::vec![ExtNat::Fin(target / 2)]
                } else {
                    Vec::new()
                };
                NatSeqSpec::new(prefix, NatTail::Const(ExtNat::Fin(target)))
            } else {
                NatSeqSpec::new(
                    Vec::new(),
                    NatTail::Linear {
                        start: rng.gen_range(0..=3) as u128,
                        step: rng.gen_range(1..=3) as u128,
                    },
                )
            }
        }
        // Unbounded all-finite sequences witness that nothing finite
        // dominates Inf termwise; constant-Inf tails cover the rest.
        ExtNat::Inf => {
            if rng.gen_bool(0.6) {
                NatSeqSpec::new(
                    Vec::new(),
                    NatTail::Linear {
                        start: rng.gen_range(0..=3) as u128,
                        step: rng.gen_range(1..=3) as u128,
                    },
                )
            } else {
                NatSeqSpec::new(
                    alloc::vec![ExtNat::Fin(rng.gen_range(0..=4) as u128)],
                    NatTail::Const(ExtNat::Inf),
                )
            }
        }
    }
}

/// Sampler for the scalar extended naturals.
#[derive(Clone, Copy, Debug, Default)]
pub struct NatSampler;

impl Sampler<ExtNatCu> for NatSampler {
    type Seq = NatSeqSpec;

    fn element(&self, rng: &mut ChaCha8Rng) -> ExtNat {
        sample_nat(rng)
    }

    fn sequence(&self, rng: &mut ChaCha8Rng) -> NatSeqSpec {
        sample_nat_spec(rng)
    }

    fn dominating_sequence(&self, rng: &mut ChaCha8Rng, floor: &ExtNat) -> NatSeqSpec {
        sample_nat_dominating(rng, *floor)
    }

    fn realize(&self, s: &NatSeqSpec) -> IncreasingSeq<ExtNat, ExtNatCert> {
        let spec = s.clone();
        let cert = s.cert();
        IncreasingSeq::new(move |n| spec.term(n), Some(cert))
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

// ---------------------------------------------------------------------------
// Product sequences: one scalar spec per coordinate
// ---------------------------------------------------------------------------

/// Sampler for `ExtNatVector` products of a fixed dimension.
#[derive(Clone, Copy, Debug)]
pub struct VectorSampler {
    dim: usize,
}

impl VectorSampler {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1);
        VectorSampler { dim }
    }

    pub fn sample_element(&self, rng: &mut ChaCha8Rng) -> ExtNatVector {
        ExtNatVector::new((0..self.dim).map(|_| sample_nat(rng)).collect())
    }

    pub fn sample_sequence(&self, rng: &mut ChaCha8Rng) -> Vec<NatSeqSpec> {
        (0..self.dim).map(|_| sample_nat_spec(rng)).collect()
    }

    pub fn spec_sup(&self, specs: &[NatSeqSpec]) -> ExtNatVector {
        vector_spec_sup(specs)
    }

    pub fn spec_sup_with_dim(&self, specs: &[NatSeqSpec], dim: usize) -> ExtNatVector {
        assert_eq!(specs.len(), dim);
        vector_spec_sup(specs)
    }
}

/// Coordinatewise supremum of a vector of scalar specs.
pub fn vector_spec_sup(specs: &[NatSeqSpec]) -> ExtNatVector {
    ExtNatVector::new(specs.iter().map(|s| s.sup()).collect())
}

/// Image of a coordinatewise sequence under a matrix map, as specs — each
/// output coordinate is the weighted sum of the input coordinate sequences,
/// so the image certificate is derived and not just copied.
pub fn map_spec(map: &MatrixCuMap, specs: &[NatSeqSpec]) -> Vec<NatSeqSpec> {
    assert_eq!(specs.len(), map.in_dim());
    let mut out = Vec::with_capacity(map.out_dim());
    for r in 0..map.out_dim() {
        let mut acc = NatSeqSpec::new(Vec::new(), NatTail::Const(ExtNat::Fin(0)));
        for (c, spec) in specs.iter().enumerate() {
            acc = acc.sum(&spec.scale(map.entry(r, c)));
        }
        out.push(acc);
    }
    out
}

impl Sampler<VectorCu> for VectorSampler {
    type Seq = Vec<NatSeqSpec>;

    fn element(&self, rng: &mut ChaCha8Rng) -> ExtNatVector {
        self.sample_element(rng)
    }

    fn sequence(&self, rng: &mut ChaCha8Rng) -> Vec<NatSeqSpec> {
        self.sample_sequence(rng)
    }

    fn dominating_sequence(&self, rng: &mut ChaCha8Rng, floor: &ExtNatVector) -> Vec<NatSeqSpec> {
        floor.coords().iter().map(|f| sample_nat_dominating(rng, *f)).collect()
    }

    fn realize(&self, s: &Vec<NatSeqSpec>) -> IncreasingSeq<ExtNatVector, Vec<ExtNatCert>> {
        let specs = s.clone();
        let certs: Vec<ExtNatCert> = s.iter().map(|c| c.cert()).collect();
        // Coordinates may stabilize at different indices; the per-coordinate
        // certificates carry that.
        IncreasingSeq::new(
            move |n| ExtNatVector::new(specs.iter().map(|sp| sp.term(n)).collect()),
            Some(certs),
        )
    }

    fn sum(&self, a: &Vec<NatSeqSpec>, b: &Vec<NatSeqSpec>) -> Vec<NatSeqSpec> {
        a.iter().zip(b).map(|(x, y)| x.sum(y)).collect()
    }

    fn eventually_dominates(&self, s: &Vec<NatSeqSpec>, x: &ExtNatVector) -> Option<bool> {
        // Coordinates are monotone, so simultaneous eventual domination is
        // the conjunction of the coordinatewise answers.
        Some(
            s.iter()
                .zip(x.coords())
                .all(|(spec, c)| spec.eventually_dominates(*c)),
        )
    }

    fn is_upper_bound(&self, s: &Vec<NatSeqSpec>, bound: &ExtNatVector) -> Option<bool> {
        Some(s.iter().zip(bound.coords()).all(|(spec, c)| spec.is_upper_bound(*c)))
    }
}

// ---------------------------------------------------------------------------
// Extended nonnegative rational sequences
// ---------------------------------------------------------------------------

/// Closed-form increasing sequence of extended nonnegative rationals. The
/// tail is `base + step*(m-1) - gap/2^(m-1)` (or constant infinity), which
/// is closed under pointwise sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatSeqSpec {
    prefix: Vec<ExtRational>,
    tail: RatTail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatTail {
    Inf,
    Affine { base: BigRational, step: BigRational, gap: BigRational },
}

fn pow2(m: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << m)
}

impl RatSeqSpec {
    pub fn new(prefix: Vec<ExtRational>, tail: RatTail) -> Self {
        if let RatTail::Affine { base, step, gap } = &tail {
            debug_assert!(!step.is_negative() && !gap.is_negative());
            debug_assert!(!(base - gap).is_negative(), "first tail term must be nonnegative");
        }
        RatSeqSpec { prefix, tail }
    }

    pub fn term(&self, n: u32) -> ExtRational {
        let len = self.prefix.len() as u32;
        if n <= len {
            return self.prefix[(n - 1) as usize].clone();
        }
        let m = n - len;
        match &self.tail {
            RatTail::Inf => ExtRational::Inf,
            RatTail::Affine { base, step, gap } => {
                let linear = base + step * BigRational::from_integer(BigInt::from(m - 1));
                ExtRational::Fin(linear - gap / pow2(m - 1))
            }
        }
    }

    pub fn cert(&self) -> ExtRationalCert {
        let stab = ExtRationalCert::Stabilizes(self.prefix.len() as u32 + 1);
        match &self.tail {
            RatTail::Inf => stab,
            RatTail::Affine { base, step, gap } => {
                if step.is_zero() {
                    if gap.is_zero() {
                        stab
                    } else {
                        ExtRationalCert::Limit(base.clone())
                    }
                } else {
                    ExtRationalCert::Unbounded
                }
            }
        }
    }

    pub fn sup(&self) -> ExtRational {
        match &self.tail {
            RatTail::Inf => ExtRational::Inf,
            RatTail::Affine { base, step, .. } => {
                if step.is_zero() {
                    ExtRational::Fin(base.clone())
                } else {
                    ExtRational::Inf
                }
            }
        }
    }

    /// Re-express the tail with its first term at prefix length `to`.
    fn tail_at(&self, to: u32) -> RatTail {
        let from = self.prefix.len() as u32;
        debug_assert!(to >= from);
        match &self.tail {
            RatTail::Inf => RatTail::Inf,
            RatTail::Affine { base, step, gap } => {
                let shift = to - from;
                RatTail::Affine {
                    base: base + step * BigRational::from_integer(BigInt::from(shift)),
                    step: step.clone(),
                    gap: gap / pow2(shift),
                }
            }
        }
    }

    pub fn sum(&self, other: &RatSeqSpec) -> RatSeqSpec {
        let plen = self.prefix.len().max(other.prefix.len()) as u32;
        let prefix = (1..=plen).map(|n| self.term(n).add(&other.term(n))).collect();
        let tail = match (self.tail_at(plen), other.tail_at(plen)) {
            (RatTail::Inf, _) | (_, RatTail::Inf) => RatTail::Inf,
            (
                RatTail::Affine { base: b1, step: s1, gap: g1 },
                RatTail::Affine { base: b2, step: s2, gap: g2 },
            ) => RatTail::Affine { base: b1 + b2, step: s1 + s2, gap: g1 + g2 },
        };
        RatSeqSpec::new(prefix, tail)
    }

    pub fn eventually_dominates(&self, x: &ExtRational) -> bool {
        if self.prefix.iter().any(|t| x.leq(t)) {
            return true;
        }
        match &self.tail {
            RatTail::Inf => true,
            RatTail::Affine { base, step, gap } => match x {
                ExtRational::Inf => false,
                ExtRational::Fin(f) => {
                    if !step.is_zero() {
                        true
                    } else if gap.is_zero() {
                        f <= base
                    } else {
                        f < base
                    }
                }
            },
        }
    }

    pub fn is_upper_bound(&self, c: &ExtRational) -> bool {
        self.prefix.iter().all(|t| t.leq(c))
            && match &self.tail {
                RatTail::Inf => *c == ExtRational::Inf,
                RatTail::Affine { base, step, .. } => {
                    if step.is_zero() {
                        ExtRational::Fin(base.clone()).leq(c)
                    } else {
                        *c == ExtRational::Inf
                    }
                }
            }
    }
}

fn small_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.gen_range(0..=20i64);
    let den = rng.gen_range(1..=12i64);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn sample_rational(rng: &mut ChaCha8Rng) -> ExtRational {
    match rng.gen_range(0..100u32) {
        0..=9 => ExtRational::zero(),
        10..=64 => ExtRational::Fin(small_ratio(rng)),
        65..=79 => ExtRational::Fin(BigRational::from_integer(BigInt::from(
            rng.gen_range(1..=50i64),
        ))),
        _ => ExtRational::Inf,
    }
}

/// Sampler for the extended nonnegative rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalSampler;

fn sample_rat_spec(rng: &mut ChaCha8Rng) -> RatSeqSpec {
    let mut last = small_ratio(rng);
    let mut prefix = Vec::new();
    for _ in 0..rng.gen_range(0..=2u32) {
        prefix.push(ExtRational::Fin(last.clone()));
        last += small_ratio(rng);
    }
    match rng.gen_range(0..100u32) {
        0..=39 => RatSeqSpec::new(prefix, RatTail::Affine {
            base: last + small_ratio(rng),
            step: BigRational::zero(),
            gap: BigRational::zero(),
        }),
        40..=69 => {
            // strictly increasing toward a finite limit
            let gap = small_ratio(rng) + BigRational::one();
            RatSeqSpec::new(prefix, RatTail::Affine {
                base: last + gap.clone(),
                step: BigRational::zero(),
                gap,
            })
        }
        70..=89 => RatSeqSpec::new(prefix, RatTail::Affine {
            base: last.clone(),
            step: small_ratio(rng) + BigRational::one(),
            gap: BigRational::zero(),
        }),
        _ => RatSeqSpec::new(prefix, RatTail::Inf),
    }
}

impl Sampler<ExtRationalCu> for RationalSampler {
    type Seq = RatSeqSpec;

    fn element(&self, rng: &mut ChaCha8Rng) -> ExtRational {
        sample_rational(rng)
    }

    fn sequence(&self, rng: &mut ChaCha8Rng) -> RatSeqSpec {
        sample_rat_spec(rng)
    }

    fn dominating_sequence(&self, rng: &mut ChaCha8Rng, floor: &ExtRational) -> RatSeqSpec {
        match floor {
            ExtRational::Inf => {
                if rng.gen_bool(0.7) {
                    RatSeqSpec::new(Vec::new(), RatTail::Affine {
                        base: small_ratio(rng),
                        step: BigRational::one(),
                        gap: BigRational::zero(),
                    })
                } else {
                    RatSeqSpec::new(alloc::vec![ExtRational::zero()], RatTail::Inf)
                }
            }
            ExtRational::Fin(f) => {
                let extra = if rng.gen_bool(0.4) { BigRational::zero() } else { small_ratio(rng) };
                let limit = f + extra;
                if rng.gen_bool(0.5) {
                    // approach the target strictly from below
                    let gap = if limit.is_zero() { BigRational::zero() } else { limit.clone() };
                    RatSeqSpec::new(Vec::new(), RatTail::Affine {
                        base: limit,
                        step: BigRational::zero(),
                        gap,
                    })
                } else {
                    RatSeqSpec::new(Vec::new(), RatTail::Affine {
                        base: limit,
                        step: BigRational::zero(),
                        gap: BigRational::zero(),
                    })
                }
            }
        }
    }

    fn realize(&self, s: &RatSeqSpec) -> IncreasingSeq<ExtRational, ExtRationalCert> {
        let spec = s.clone();
        let cert = s.cert();
        IncreasingSeq::new(move |n| spec.term(n), Some(cert))
    }

    fn sum(&self, a: &RatSeqSpec, b: &RatSeqSpec) -> RatSeqSpec {
        a.sum(b)
    }

    fn eventually_dominates(&self, s: &RatSeqSpec, x: &ExtRational) -> Option<bool> {
        Some(s.eventually_dominates(x))
    }

    fn is_upper_bound(&self, s: &RatSeqSpec, bound: &ExtRational) -> Option<bool> {
        Some(s.is_upper_bound(bound))
    }
}
