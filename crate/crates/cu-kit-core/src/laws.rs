//! Seeded, instance-generic law checking.
//!
//! Six laws are checked, each against `cases` sampled situations:
//!
//! * `L1` — ordered abelian semigroup with zero least (commutativity,
//!   associativity, identity, order axioms, zero least, addition monotone);
//! * `L2` — suprema of certified increasing sequences exist and are least
//!   upper bounds against sampled competitors;
//! * `L3` — `basis(x)` is rapidly increasing with supremum `x`, and its
//!   way-below claims survive refutation probes by sampled sequences;
//! * `L4` — `sup(s + t) = sup(s) + sup(t)`;
//! * `L5` — `x1 << y1` and `x2 << y2` imply `x1 + x2 << y1 + y2`;
//! * `L6` — `x <= y << z` implies `x << z`, and `x << y <= z` implies
//!   `x <= z`.
//!
//! Failures are data, not errors: each law yields a [`LawReport`] with the
//! first counterexample rendered as text. Sampling is deterministic in the
//! seed; identical configurations yield identical reports.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::{CuInstance, IncreasingSeq};
use crate::matrix_map::{MapError, MatrixCuMap};
use crate::samplers::{map_spec, VectorSampler};
use crate::vector::ExtNatVector;

/// Outcome of checking one law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    /// Number of sampled situations in which the law was evaluated
    /// (for conditional laws, the premise must hold to count).
    pub cases: u32,
    pub failures: u32,
    pub first_counterexample: Option<String>,
}

impl LawReport {
    /// Fresh report; checkers fill it with [`LawReport::pass`] and
    /// [`LawReport::fail`].
    pub fn new(law: &str) -> Self {
        LawReport { law: String::from(law), cases: 0, failures: 0, first_counterexample: None }
    }

    pub fn pass(&mut self) {
        self.cases += 1;
    }

    pub fn fail(&mut self, cx: String) {
        self.cases += 1;
        self.failures += 1;
        if self.first_counterexample.is_none() {
            self.first_counterexample = Some(cx);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Test-side sequence source for one instance.
///
/// The sampler owns a rich description of each sequence it emits, so it can
/// answer eventual-domination and upper-bound queries exactly; these answers
/// are the independent oracle against which instance claims are probed. The
/// instance under test only ever sees the realized closure-backed sequence.
pub trait Sampler<I: CuInstance> {
    type Seq;

    fn element(&self, rng: &mut ChaCha8Rng) -> I::Elem;
    /// An increasing certified sequence.
    fn sequence(&self, rng: &mut ChaCha8Rng) -> Self::Seq;
    /// An increasing certified sequence whose supremum dominates `floor`.
    fn dominating_sequence(&self, rng: &mut ChaCha8Rng, floor: &I::Elem) -> Self::Seq;
    fn realize(&self, s: &Self::Seq) -> IncreasingSeq<I::Elem, I::Cert>;
    /// Pointwise sum with the combined certificate.
    fn sum(&self, a: &Self::Seq, b: &Self::Seq) -> Self::Seq;
    /// Does some term of `s` dominate `x`? Exact, `None` when undecidable.
    fn eventually_dominates(&self, s: &Self::Seq, x: &I::Elem) -> Option<bool>;
    /// Is `bound` an upper bound for every term of `s`? Exact.
    fn is_upper_bound(&self, s: &Self::Seq, bound: &I::Elem) -> Option<bool>;
}

fn order_eq<I: CuInstance>(inst: &I, a: &I::Elem, b: &I::Elem) -> bool {
    inst.leq(a, b) && inst.leq(b, a)
}

fn law_rng(seed: u64, law: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(law))
}

/// Terms probed when scanning a sequence.
const PROBE_DEPTH: u32 = 12;
/// Basis terms whose rapidity is checked.
const RAPID_DEPTH: u32 = 6;

/// Run the full law suite.
pub fn check_laws<I, S>(inst: &I, sampler: &S, cases: u32, seed: u64) -> Vec<LawReport>
where
    I: CuInstance,
    S: Sampler<I>,
{
    assert!(cases >= 1);
    let mut reports = Vec::new();
    reports.push(law_l1(inst, sampler, cases, seed));
    reports.push(law_l2(inst, sampler, cases, seed));
    reports.push(law_l3(inst, sampler, cases, seed));
    reports.push(law_l4(inst, sampler, cases, seed));
    reports.push(law_l5(inst, sampler, cases, seed));
    reports.push(law_l6(inst, sampler, cases, seed));
    reports
}

fn law_l1<I: CuInstance, S: Sampler<I>>(inst: &I, sampler: &S, cases: u32, seed: u64) -> LawReport {
    let mut rep = LawReport::new("L1-ordered-semigroup");
    let mut rng = law_rng(seed, 1);
    for _ in 0..cases {
        let x = sampler.element(&mut rng);
        let y = sampler.element(&mut rng);
        let z = sampler.element(&mut rng);
        let zero = inst.zero();

        if !order_eq(inst, &inst.add(&x, &y), &inst.add(&y, &x)) {
            rep.fail(format!("commutativity: x={x}, y={y}"));
            continue;
        }
        let assoc_l = inst.add(&inst.add(&x, &y), &z);
        let assoc_r = inst.add(&x, &inst.add(&y, &z));
        if !order_eq(inst, &assoc_l, &assoc_r) {
            rep.fail(format!("associativity: x={x}, y={y}, z={z}"));
            continue;
        }
        if inst.add(&zero, &x) != x {
            rep.fail(format!("identity: 0+x != x at x={x}"));
            continue;
        }
        if !inst.leq(&zero, &x) {
            rep.fail(format!("zero least: 0 <= x fails at x={x}"));
            continue;
        }
        if !inst.leq(&x, &x) {
            rep.fail(format!("reflexivity at x={x}"));
            continue;
        }
        if inst.leq(&x, &y) && inst.leq(&y, &x) && x != y {
            rep.fail(format!("antisymmetry: x={x}, y={y}"));
            continue;
        }
        // Constructed chain x <= x+y <= x+y+z plus a random triple.
        let xy = inst.add(&x, &y);
        let xyz = inst.add(&xy, &z);
        if inst.leq(&x, &xy) && inst.leq(&xy, &xyz) && !inst.leq(&x, &xyz) {
            rep.fail(format!("transitivity: x={x}, y={y}, z={z}"));
            continue;
        }
        if inst.leq(&x, &y) && inst.leq(&y, &z) && !inst.leq(&x, &z) {
            rep.fail(format!("transitivity (random): x={x}, y={y}, z={z}"));
            continue;
        }
        // Addition monotone: x <= x+z and y <= y+z pointwise.
        let x1 = inst.add(&x, &z);
        let y1 = inst.add(&y, &z);
        if inst.leq(&x, &x1) && inst.leq(&y, &y1) {
            let sum = inst.add(&x, &y);
            let sum1 = inst.add(&x1, &y1);
            if !inst.leq(&sum, &sum1) {
                rep.fail(format!("addition monotone: x={x}, y={y}, z={z}"));
                continue;
            }
        }
        rep.pass();
    }
    rep
}

fn law_l2<I: CuInstance, S: Sampler<I>>(inst: &I, sampler: &S, cases: u32, seed: u64) -> LawReport {
    let mut rep = LawReport::new("L2-suprema");
    let mut rng = law_rng(seed, 2);
    for _ in 0..cases {
        let spec = sampler.sequence(&mut rng);
        let seq = sampler.realize(&spec);
        let v = match inst.sup(&seq) {
            Ok(v) => v,
            Err(e) => {
                rep.fail(format!("sup rejected a certified sequence: {e}"));
                continue;
            }
        };
        let mut bad = None;
        for n in 1..=PROBE_DEPTH {
            let t = seq.term(n);
            if !inst.leq(&t, &v) {
                bad = Some(format!("sup {v} is not an upper bound: term({n})={t}"));
                break;
            }
        }
        if bad.is_none() {
            for _ in 0..3 {
                let c = sampler.element(&mut rng);
                if sampler.is_upper_bound(&spec, &c) == Some(true) && !inst.leq(&v, &c) {
                    bad = Some(format!("sup {v} not least: competitor {c} dominates all terms"));
                    break;
                }
            }
        }
        match bad {
            Some(cx) => rep.fail(cx),
            None => rep.pass(),
        }
    }
    rep
}

fn law_l3<I: CuInstance, S: Sampler<I>>(inst: &I, sampler: &S, cases: u32, seed: u64) -> LawReport {
    let mut rep = LawReport::new("L3-basis-rapid");
    let mut rng = law_rng(seed, 3);
    for _ in 0..cases {
        let x = sampler.element(&mut rng);
        let b = inst.basis(&x);
        let mut bad = None;
        match inst.sup(&b.0) {
            Ok(v) => {
                if !order_eq(inst, &v, &x) {
                    bad = Some(format!("sup(basis({x})) = {v} differs from {x}"));
                }
            }
            Err(e) => bad = Some(format!("basis({x}) has no computable sup: {e}")),
        }
        if bad.is_none() {
            for n in 1..=RAPID_DEPTH {
                let t0 = b.term(n);
                let t1 = b.term(n + 1);
                if !inst.way_below(&t0, &t1) {
                    bad = Some(format!("basis({x}) not rapid at {n}: !({t0} << {t1})"));
                    break;
                }
                // Probe the claim against an independently sampled sequence
                // whose supremum dominates the right-hand side.
                if n <= 2 {
                    for _ in 0..2 {
                        let probe = sampler.dominating_sequence(&mut rng, &t1);
                        if sampler.eventually_dominates(&probe, &t0) == Some(false) {
                            bad = Some(format!(
                                "claimed {t0} << {t1} refuted by a sampled sequence with sup >= {t1}"
                            ));
                            break;
                        }
                    }
                    if bad.is_some() {
                        break;
                    }
                }
            }
        }
        match bad {
            Some(cx) => rep.fail(cx),
            None => rep.pass(),
        }
    }
    rep
}

fn law_l4<I: CuInstance, S: Sampler<I>>(inst: &I, sampler: &S, cases: u32, seed: u64) -> LawReport {
    let mut rep = LawReport::new("L4-sup-additivity");
    let mut rng = law_rng(seed, 4);
    for _ in 0..cases {
        let s = sampler.sequence(&mut rng);
        let t = sampler.sequence(&mut rng);
        let u = sampler.sum(&s, &t);
        let vs = inst.sup(&sampler.realize(&s));
        let vt = inst.sup(&sampler.realize(&t));
        let vu = inst.sup(&sampler.realize(&u));
        match (vs, vt, vu) {
            (Ok(vs), Ok(vt), Ok(vu)) => {
                let sum = inst.add(&vs, &vt);
                if !order_eq(inst, &vu, &sum) {
                    rep.fail(format!("sup(s+t)={vu} but sup(s)+sup(t)={sum}"));
                    continue;
                }
                let mut bad = None;
                for _ in 0..2 {
                    let c = sampler.element(&mut rng);
                    if sampler.is_upper_bound(&u, &c) == Some(true) && !inst.leq(&vu, &c) {
                        bad = Some(format!("sup(s+t)={vu} not least against {c}"));
                        break;
                    }
                }
                match bad {
                    Some(cx) => rep.fail(cx),
                    None => rep.pass(),
                }
            }
            _ => rep.fail(String::from("sup rejected a certified sum sequence")),
        }
    }
    rep
}

fn law_l5<I: CuInstance, S: Sampler<I>>(inst: &I, sampler: &S, cases: u32, seed: u64) -> LawReport {
    let mut rep = LawReport::new("L5-way-below-additivity");
    let mut rng = law_rng(seed, 5);
    for _ in 0..cases {
        let x1 = sampler.element(&mut rng);
        let x2 = sampler.element(&mut rng);
        let y1 = inst.add(&x1, &sampler.element(&mut rng));
        let y2 = inst.add(&x2, &sampler.element(&mut rng));
        if inst.way_below(&x1, &y1) && inst.way_below(&x2, &y2) {
            let xs = inst.add(&x1, &x2);
            let ys = inst.add(&y1, &y2);
            if inst.way_below(&xs, &ys) {
                rep.pass();
            } else {
                rep.fail(format!("x1={x1} << y1={y1}, x2={x2} << y2={y2}, but !({xs} << {ys})"));
            }
        }
    }
    rep
}

fn law_l6<I: CuInstance, S: Sampler<I>>(inst: &I, sampler: &S, cases: u32, seed: u64) -> LawReport {
    let mut rep = LawReport::new("L6-interplay");
    let mut rng = law_rng(seed, 6);
    for _ in 0..cases {
        let x = sampler.element(&mut rng);
        let d = sampler.element(&mut rng);
        let e = sampler.element(&mut rng);
        let mut evaluated = false;
        let mut failed = None;

        // x <= y << z  =>  x << z
        let y = inst.add(&x, &d);
        let z = inst.add(&y, &e);
        if inst.leq(&x, &y) && inst.way_below(&y, &z) {
            evaluated = true;
            if !inst.way_below(&x, &z) {
                failed = Some(format!("x={x} <= y={y} << z={z} but !(x << z)"));
            }
        }

        // x << y <= z  =>  x <= z
        if failed.is_none() {
            if inst.way_below(&x, &y) && inst.leq(&y, &z) {
                evaluated = true;
                if !inst.leq(&x, &z) {
                    failed = Some(format!("x={x} << y={y} <= z={z} but !(x <= z)"));
                }
            }
        }

        match (evaluated, failed) {
            (_, Some(cx)) => rep.fail(cx),
            (true, None) => rep.pass(),
            (false, None) => {}
        }
    }
    rep
}

/// Check that a matrix map is a morphism: it must preserve zero, addition,
/// order, compact containment, and suprema of certified sequences.
pub fn check_morphism(map: &MatrixCuMap, cases: u32, seed: u64) -> Vec<LawReport> {
    check_morphism_with(map, &|v| map.apply(v), cases, seed)
}

/// Morphism checks with an injectable application, so alternate (wrong)
/// conventions can be exercised as negative controls.
pub fn check_morphism_with(
    map: &MatrixCuMap,
    apply: &dyn Fn(&ExtNatVector) -> Result<ExtNatVector, MapError>,
    cases: u32,
    seed: u64,
) -> Vec<LawReport> {
    let dom = VectorSampler::new(map.in_dim());
    let mut rng = law_rng(seed, 101);
    let apply_ok = |v: &ExtNatVector| apply(v).expect("shape-compatible by construction");

    let mut zero = LawReport::new("zero-preservation");
    let mut add = LawReport::new("addition-preservation");
    let mut mono = LawReport::new("order-preservation");
    let mut wb = LawReport::new("way-below-preservation");
    let mut sup = LawReport::new("sup-preservation");

    let zin = ExtNatVector::zeros(map.in_dim());
    let zout = ExtNatVector::zeros(map.out_dim());

    for _ in 0..cases {
        if apply_ok(&zin) == zout {
            zero.pass();
        } else {
            zero.fail(format!("map(0) = {} != 0", apply_ok(&zin)));
        }

        let a = dom.sample_element(&mut rng);
        let b = dom.sample_element(&mut rng);
        let lhs = apply_ok(&a.add(&b));
        let rhs = apply_ok(&a).add(&apply_ok(&b));
        if lhs == rhs {
            add.pass();
        } else {
            add.fail(format!("map(a+b)={lhs} but map(a)+map(b)={rhs} at a={a}, b={b}"));
        }

        // a <= a+b by construction in the honest order.
        let bigger = a.add(&b);
        if a.leq(&bigger) {
            if apply_ok(&a).leq(&apply_ok(&bigger)) {
                mono.pass();
            } else {
                mono.fail(format!("a={a} <= {bigger} but images are not ordered"));
            }
        }

        if a.way_below(&bigger) {
            if apply_ok(&a).way_below(&apply_ok(&bigger)) {
                wb.pass();
            } else {
                wb.fail(format!("a={a} << {bigger} but images violate compact containment"));
            }
        }
        // Pairs with infinite coordinates never satisfy the premise above,
        // so additionally check x << Inf-pattern pairs explicitly.
        let inf_target = bigger.add(&{
            let mut coords = alloc::vec![crate::extnat::ExtNat::Fin(0); map.in_dim()];
            let c = rng.gen_range(0..map.in_dim());
            coords[c] = crate::extnat::ExtNat::Inf;
            ExtNatVector::new(coords)
        });
        if a.way_below(&inf_target) {
            if apply_ok(&a).way_below(&apply_ok(&inf_target)) {
                wb.pass();
            } else {
                wb.fail(format!("a={a} << {inf_target} but images violate compact containment"));
            }
        }

        // Suprema: compute the image sequence's sup from its own certificate
        // and compare with the image of the sup.
        let spec = dom.sample_sequence(&mut rng);
        let v = dom.spec_sup(&spec);
        let image_spec = map_spec(map, &spec);
        let image_sup = dom.spec_sup_with_dim(&image_spec, map.out_dim());
        if image_sup == apply_ok(&v) {
            sup.pass();
        } else {
            sup.fail(format!(
                "sup of image sequence is {image_sup} but image of sup is {}",
                apply_ok(&v)
            ));
        }
    }

    alloc::vec![zero, add, mono, wb, sup]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{ExtNatCu, ExtRationalCu};
    use crate::matrix_map::{apply_dropping_inf, map_from};
    use crate::samplers::{NatSampler, RationalSampler};
    use crate::vector::VectorCu;

    fn assert_all_pass(reports: &[LawReport]) {
        for r in reports {
            assert!(
                r.passed(),
                "law {} failed {} of {} cases: {:?}",
                r.law,
                r.failures,
                r.cases,
                r.first_counterexample
            );
            assert!(r.cases > 0, "law {} never evaluated", r.law);
        }
    }

    #[test]
    fn extnat_laws_pass() {
        let reports = check_laws(&ExtNatCu, &NatSampler::default(), 400, 7);
        assert_all_pass(&reports);
    }

    #[test]
    fn vector_laws_pass() {
        let inst = VectorCu::new(3);
        let reports = check_laws(&inst, &VectorSampler::new(3), 300, 11);
        assert_all_pass(&reports);
    }

    #[test]
    fn rational_laws_pass() {
        let reports = check_laws(&ExtRationalCu, &RationalSampler::default(), 300, 13);
        assert_all_pass(&reports);
    }

    #[test]
    fn scaling_map_is_a_morphism() {
        let m = map_from(&[&[2]]);
        let reports = check_morphism(&m, 300, 5);
        assert_all_pass(&reports);
    }

    #[test]
    fn zero_map_is_a_morphism() {
        let m = map_from(&[&[0, 0], &[0, 0]]);
        let reports = check_morphism(&m, 200, 5);
        assert_all_pass(&reports);
    }

    #[test]
    fn dropping_inf_breaks_way_below_preservation() {
        let m = map_from(&[&[2]]);
        let reports = check_morphism_with(&m, &|v| apply_dropping_inf(&m, v), 200, 5);
        let wb = reports.iter().find(|r| r.law == "way-below-preservation").unwrap();
        assert!(wb.failures > 0, "expected the wrong convention to break << preservation");
        let zero = reports.iter().find(|r| r.law == "zero-preservation").unwrap();
        assert!(zero.passed());
    }
}
