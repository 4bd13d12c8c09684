//! Bratteli diagrams and the invariants of the AF algebras they present.
//!
//! A diagram lists per-stage matrix-block sizes and multiplicity matrices;
//! its induced diagram of product instances and matrix maps is handed to
//! the thread calculus, so every order query on the limit is answered by
//! the inductive-limit construction itself. A Perron functional on
//! stationary primitive diagrams serves as a refutation oracle only (trace
//! order is necessary, never sufficient, for the thread order).

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::certify::SubMatrix;
use crate::laws::LawReport;
use crate::limit::{
    rapid_rep_checks, rapid_representative, thread_leq, thread_way_below, CuDiagram, Thread, Tri,
};
use crate::matrix_map::MatrixCuMap;

/// A class of the AF limit, always presented through a thread.
pub type AfClass = Thread;

/// Stage block sizes plus multiplicity matrices, possibly repeating the
/// last matrix forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    dims: Vec<Vec<u64>>,
    mults: Vec<MatrixCuMap>,
    stationary: bool,
    unital: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BratteliError {
    Empty,
    BadBlockSize { stage: usize },
    BadMultCount { expected: usize, got: usize },
    BadMultShape { stage: usize, expected: (usize, usize), got: (usize, usize) },
    NotUnital { stage: usize },
}

impl core::fmt::Display for BratteliError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BratteliError::Empty => write!(f, "diagram needs at least one stage"),
            BratteliError::BadBlockSize { stage } => {
                write!(f, "stage {stage} has an empty or zero block size")
            }
            BratteliError::BadMultCount { expected, got } => {
                write!(f, "expected {expected} multiplicity matrices, got {got}")
            }
            BratteliError::BadMultShape { stage, expected, got } => write!(
                f,
                "multiplicity matrix at stage {stage} has shape {}x{}, expected {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
            BratteliError::NotUnital { stage } => write!(
                f,
                "declared unital but block sizes after stage {stage} do not match the multiplied sizes"
            ),
        }
    }
}

impl BratteliDiagram {
    pub fn new(
        dims: Vec<Vec<u64>>,
        mults: Vec<MatrixCuMap>,
        stationary: bool,
        unital: bool,
    ) -> Result<Self, BratteliError> {
        if dims.is_empty() {
            return Err(BratteliError::Empty);
        }
        for (i, d) in dims.iter().enumerate() {
            if d.is_empty() || d.iter().any(|&x| x == 0) {
                return Err(BratteliError::BadBlockSize { stage: i + 1 });
            }
        }
        let expected = if stationary { dims.len() } else { dims.len() - 1 };
        if mults.len() != expected {
            return Err(BratteliError::BadMultCount { expected, got: mults.len() });
        }
        for (i, m) in mults.iter().enumerate() {
            let in_dim = dims[i].len();
            let out_dim = if i + 1 < dims.len() { dims[i + 1].len() } else { dims[i].len() };
            if m.in_dim() != in_dim || m.out_dim() != out_dim {
                return Err(BratteliError::BadMultShape {
                    stage: i + 1,
                    expected: (out_dim, in_dim),
                    got: (m.out_dim(), m.in_dim()),
                });
            }
        }
        let diagram = BratteliDiagram { dims, mults, stationary, unital };
        if unital {
            for i in 0..diagram.mults.len() {
                let input = &diagram.dims[i];
                let output: &[u64] = if i + 1 < diagram.dims.len() {
                    &diagram.dims[i + 1]
                } else {
                    &diagram.dims[i]
                };
                let m = &diagram.mults[i];
                for (r, &out_size) in output.iter().enumerate() {
                    let mut acc: u128 = 0;
                    for (c, &in_size) in input.iter().enumerate() {
                        acc += m.entry(r, c) * in_size as u128;
                    }
                    if acc != out_size as u128 {
                        return Err(BratteliError::NotUnital { stage: i + 1 });
                    }
                }
            }
        }
        Ok(diagram)
    }

    pub fn stage_count(&self) -> usize {
        self.dims.len()
    }

    pub fn is_stationary(&self) -> bool {
        self.stationary
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn dims(&self) -> &[Vec<u64>] {
        &self.dims
    }

    pub fn mults(&self) -> &[MatrixCuMap] {
        &self.mults
    }

    /// The induced diagram of product instances and matrix maps.
    pub fn to_cu_diagram(&self) -> CuDiagram {
        CuDiagram::new(
            self.dims.iter().map(|d| d.len()).collect(),
            self.mults.clone(),
            self.stationary,
        )
        .expect("validated shapes")
    }
}

/// Compare two classes of the AF limit.
pub fn af_compare(d: &CuDiagram, a: &AfClass, b: &AfClass, horizon: u32) -> Tri {
    thread_leq(d, a, b, horizon)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompactsError {
    /// The construction could not be certified at the horizon.
    Undecided { detail: String },
}

impl core::fmt::Display for CompactsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CompactsError::Undecided { detail } => write!(f, "{detail}"),
        }
    }
}

/// An increasing list of `count` compact classes below `a` whose supremum
/// is `a` (the leading members of the rapid-entry family), certified at the
/// horizon or refused.
pub fn compacts_below(
    d: &CuDiagram,
    a: &AfClass,
    count: usize,
    horizon: u32,
) -> Result<Vec<AfClass>, CompactsError> {
    assert!(count >= 1);
    if a.is_compact_class(d) {
        return Ok(alloc::vec![a.clone(); count]);
    }
    let rep = rapid_representative(d, a, horizon);
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        let stage = a.start() + n as u32;
        let v = rep.entry_as_vector(stage).ok_or_else(|| CompactsError::Undecided {
            detail: alloc::format!("rapid entry at stage {stage} exceeds the representable range"),
        })?;
        let t = Thread::image(d, stage, v).map_err(|e| CompactsError::Undecided {
            detail: alloc::format!("rapid entry at stage {stage}: {e}"),
        })?;
        out.push(t);
    }
    for pair in out.windows(2) {
        if thread_leq(d, &pair[0], &pair[1], horizon) != Tri::Le {
            return Err(CompactsError::Undecided {
                detail: String::from("rapid entries are not certified increasing"),
            });
        }
    }
    for t in &out {
        if thread_leq(d, t, a, horizon) != Tri::Le {
            return Err(CompactsError::Undecided {
                detail: String::from("a rapid entry is not certified below the class"),
            });
        }
    }
    if !rapid_rep_checks(d, &rep, a, horizon, 8) {
        return Err(CompactsError::Undecided {
            detail: String::from("equivalence of the compact family with the class is uncertified"),
        });
    }
    Ok(out)
}

/// For each pair, check the two routes to compact containment against each
/// other: the thread machinery's `<<` versus the existence of a compact
/// interpolant `x <= z <= y` among searched finite-vector classes. Returns
/// the report and the number of undecided pairs.
pub fn compact_interpolation_check(
    d: &CuDiagram,
    pairs: &[(AfClass, AfClass)],
    horizon: u32,
) -> (LawReport, u32) {
    let mut report = LawReport::new("compact-interpolation");
    let mut unknown = 0;
    for (x, y) in pairs {
        let wb = thread_way_below(d, x, y, horizon);
        let interpolant = find_compact_interpolant(d, x, y, horizon);
        match wb {
            Tri::Le => {
                if interpolant.is_some() {
                    report.pass();
                } else {
                    report.fail(alloc::format!(
                        "{} << {} but no compact interpolant was found",
                        x.encode(),
                        y.encode()
                    ));
                }
            }
            Tri::NotLe(_) => {
                if interpolant.is_none() {
                    report.pass();
                } else {
                    report.fail(alloc::format!(
                        "interpolant found although !({} << {})",
                        x.encode(),
                        y.encode()
                    ));
                }
            }
            Tri::Unknown(_) => unknown += 1,
        }
    }
    (report, unknown)
}

/// Search for a compact class `z` with `x <= z <= y` among basis terms of
/// `y`'s entries (a grid of stages and depths).
pub fn find_compact_interpolant(
    d: &CuDiagram,
    x: &AfClass,
    y: &AfClass,
    horizon: u32,
) -> Option<AfClass> {
    let hmax = d.cap_stage(d.cap_stage(horizon).max(y.last_explicit()).max(x.last_explicit()));
    let growth = d
        .stationary_map()
        .map(|m| m.rows().map(|r| r.iter().sum::<u128>()).max().unwrap_or(1))
        .unwrap_or(1)
        .max(2) as f64;
    for stage in y.start()..=hmax {
        let ye = y.entry(d, stage).ok()?;
        let mut candidates: Vec<u128> = alloc::vec![1, 2, 3, 4, 6, 8, 12, 16];
        // The saturated term reaches y's finite coordinates exactly, and
        // depths derived from x's image are what domination of x needs.
        if let Some(maxfin) = ye.coords().iter().filter_map(|c| c.finite()).max() {
            candidates.push(maxfin + 1);
        }
        if let Ok(xe) = x.entry(d, stage) {
            if let Some(xmax) = xe.coords().iter().filter_map(|c| c.finite()).max() {
                candidates.push(xmax + 1);
                candidates.push(2 * xmax + 1);
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        // Largest depth first: basis terms increase with depth, so a
        // refuted candidate settles every smaller one at this stage.
        for depth in candidates.into_iter().rev() {
            // Skip candidates whose expansion to the horizon leaves the
            // representable range; that only shortens the search.
            let budget = (hmax - stage) as f64;
            if (depth.max(1) as f64).log2() + budget * growth.log2() > 120.0 {
                continue;
            }
            let z = ye.big_basis_term(depth);
            let Ok(zt) = Thread::image(d, stage, z) else { continue };
            match thread_leq(d, x, &zt, horizon) {
                Tri::Le => {
                    if thread_leq(d, &zt, y, horizon) == Tri::Le {
                        return Some(zt);
                    }
                }
                Tri::NotLe(_) => break,
                Tri::Unknown(_) => {}
            }
        }
    }
    None
}

/// For compact classes, compare the thread order against direct
/// coordinatewise domination of the expanded entries at some stage (the
/// algebraic, cancellation-backed order of the AF setting). Returns the
/// report and the number of undecided pairs.
pub fn order_equals_inclusion_check(
    d: &CuDiagram,
    pairs: &[(AfClass, AfClass)],
    horizon: u32,
) -> (LawReport, u32) {
    let mut report = LawReport::new("order-equals-inclusion");
    let mut unknown = 0;
    for (x, y) in pairs {
        let lhs = af_compare(d, x, y, horizon);
        let hmax = d.cap_stage(
            d.cap_stage(horizon).max(x.last_explicit()).max(y.last_explicit()),
        );
        // Entries before the last explicit stage do not yet represent the
        // class (they are padding or partial prefixes), so domination is
        // only meaningful from there on.
        let mut dominated = false;
        for stage in x.last_explicit()..=hmax {
            let xe = x.entry(d, stage).expect("within range");
            let ye = y.entry(d, stage).expect("within range");
            if xe.leq(&ye) {
                dominated = true;
                break;
            }
        }
        match lhs {
            Tri::Le => {
                if dominated {
                    report.pass();
                } else {
                    report.fail(alloc::format!(
                        "{} <= {} but no stage shows domination",
                        x.encode(),
                        y.encode()
                    ));
                }
            }
            Tri::NotLe(_) => {
                if dominated {
                    report.fail(alloc::format!(
                        "stage-wise domination found although !({} <= {})",
                        x.encode(),
                        y.encode()
                    ));
                } else {
                    report.pass();
                }
            }
            Tri::Unknown(_) => unknown += 1,
        }
    }
    (report, unknown)
}

/// Value of the Perron functional on a class.
#[derive(Clone, Debug, PartialEq)]
pub enum TraceValue {
    Exact(BigRational),
    Infinite,
    /// Irrational Perron data: the value with a declared error bound.
    Approx { value: f64, error: f64 },
}

impl TraceValue {
    /// Certified strict order `self > other`; `None` when the intervals
    /// overlap.
    pub fn certified_gt(&self, other: &TraceValue) -> Option<bool> {
        use TraceValue::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Some(a > b),
            (Infinite, Infinite) => Some(false),
            (Infinite, _) => Some(true),
            (_, Infinite) => Some(false),
            (Approx { value: a, error: ea }, Approx { value: b, error: eb }) => {
                if a - ea > b + eb {
                    Some(true)
                } else if a + ea <= b - eb {
                    Some(false)
                } else {
                    None
                }
            }
            (Exact(a), Approx { value: b, error: eb }) => {
                let af = a.to_f64().unwrap_or(f64::MAX);
                if af > b + eb {
                    Some(true)
                } else if af <= b - eb {
                    Some(false)
                } else {
                    None
                }
            }
            (Approx { value: a, error: ea }, Exact(b)) => {
                let bf = b.to_f64().unwrap_or(f64::MAX);
                if a - ea > bf {
                    Some(true)
                } else if a + ea <= bf {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceError {
    NotStationary,
    NotPrimitive,
}

impl core::fmt::Display for TraceError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TraceError::NotStationary => write!(f, "trace needs a stationary diagram"),
            TraceError::NotPrimitive => write!(f, "trace needs a primitive multiplicity matrix"),
        }
    }
}

/// `lambda(entry)/rho^stage` for the left Perron eigenvector `lambda`
/// (normalized to sum 1) and Perron root `rho`, evaluated at the last
/// explicit stage inside the stationary tail. Exact rational arithmetic
/// when the Perron root is an integer; interval-valued otherwise. The
/// functional may refute comparisons, never confirm them.
pub fn perron_trace(d: &CuDiagram, a: &AfClass) -> Result<TraceValue, TraceError> {
    let m = d.stationary_map().ok_or(TraceError::NotStationary)?;
    if !m.is_primitive() {
        return Err(TraceError::NotPrimitive);
    }
    let stage = a.last_explicit().max(d.tail_start());
    let v = a.entry(d, stage).expect("within range");
    let k = m.in_dim();
    let sub = SubMatrix::from_map(m, &(0..k).collect::<Vec<_>>());

    // Exact route: a primitive matrix has a nonnegative eigenvector only at
    // its Perron root, so finding one at an integer value settles it.
    for rho in sub.integer_eigenvalues() {
        if let Some(lam) = sub.exact_nonneg_left_eigenvector(rho) {
            let total: BigRational = lam.iter().sum();
            let lam: Vec<BigRational> = lam.iter().map(|x| x / &total).collect();
            if v.coords().iter().zip(&lam).any(|(c, l)| !c.is_finite() && l.is_positive()) {
                return Ok(TraceValue::Infinite);
            }
            let mut num = BigRational::zero();
            for (c, l) in v.coords().iter().zip(&lam) {
                if let Some(f) = c.finite() {
                    num += l * BigRational::from_integer(BigInt::from(f));
                }
            }
            let mut denom = BigRational::one();
            for _ in 0..stage {
                denom *= BigRational::from_integer(BigInt::from(rho));
            }
            return Ok(TraceValue::Exact(num / denom));
        }
    }

    // Irrational Perron root: power-iteration interval.
    let (lam, rho, res) = sub.float_left_perron().ok_or(TraceError::NotPrimitive)?;
    if v.coords().iter().zip(&lam).any(|(c, l)| !c.is_finite() && *l > 0.0) {
        return Ok(TraceValue::Infinite);
    }
    let mut num = 0.0;
    for (c, l) in v.coords().iter().zip(&lam) {
        if let Some(f) = c.finite() {
            num += l * f as f64;
        }
    }
    let value = num / rho.powi(stage as i32);
    let rel = res * 10.0 + 1e-12;
    let error = value.abs() * rel * (1.0 + stage as f64) + 1e-15;
    Ok(TraceValue::Approx { value, error })
}

// Shipped fixtures.

/// One block of size 1, multiplicity 2, repeated (the CAR pattern).
pub fn uhf2() -> BratteliDiagram {
    BratteliDiagram::new(
        alloc::vec![alloc::vec![1]],
        alloc::vec![crate::matrix_map::map_from(&[&[2]])],
        true,
        false,
    )
    .unwrap()
}

/// One block, multiplicity 6, repeated.
pub fn uhf6() -> BratteliDiagram {
    BratteliDiagram::new(
        alloc::vec![alloc::vec![1]],
        alloc::vec![crate::matrix_map::map_from(&[&[6]])],
        true,
        false,
    )
    .unwrap()
}

/// Two blocks with the golden-mean multiplicity pattern, repeated.
pub fn fibonacci() -> BratteliDiagram {
    BratteliDiagram::new(
        alloc::vec![alloc::vec![1, 1]],
        alloc::vec![crate::matrix_map::map_from(&[&[1, 1], &[1, 0]])],
        true,
        false,
    )
    .unwrap()
}

/// Two blocks with a triangular (non-primitive) pattern: a non-simple
/// limit with a proper ideal.
pub fn two_block() -> BratteliDiagram {
    BratteliDiagram::new(
        alloc::vec![alloc::vec![1, 1]],
        alloc::vec![crate::matrix_map::map_from(&[&[1, 0], &[1, 1]])],
        true,
        false,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::thread_equiv;
    use crate::vector::{parse_vector, ExtNatVector};

    fn v1(n: u128) -> ExtNatVector {
        ExtNatVector::from_finite(&[n])
    }

    #[test]
    fn validation_errors_name_the_stage() {
        let err = BratteliDiagram::new(
            alloc::vec![alloc::vec![1], alloc::vec![2, 3]],
            alloc::vec![crate::matrix_map::map_from(&[&[1]])],
            false,
            false,
        )
        .unwrap_err();
        assert_eq!(err, BratteliError::BadMultShape { stage: 1, expected: (2, 1), got: (1, 1) });
        assert!(BratteliDiagram::new(
            alloc::vec![alloc::vec![1], alloc::vec![1, 2]],
            alloc::vec![crate::matrix_map::map_from(&[&[1], &[1]])],
            false,
            false,
        )
        .is_ok());
        // Unital needs the multiplied sizes to match exactly.
        assert!(BratteliDiagram::new(
            alloc::vec![alloc::vec![1]],
            alloc::vec![crate::matrix_map::map_from(&[&[2]])],
            true,
            true,
        )
        .is_err());
        assert!(BratteliDiagram::new(
            alloc::vec![alloc::vec![1], alloc::vec![2]],
            alloc::vec![crate::matrix_map::map_from(&[&[2]])],
            false,
            true,
        )
        .is_ok());
    }

    #[test]
    fn uhf2_comparisons() {
        let d = uhf2().to_cu_diagram();
        let a = Thread::image(&d, 2, v1(1)).unwrap();
        let b = Thread::image(&d, 1, v1(1)).unwrap();
        assert_eq!(af_compare(&d, &a, &b, 40), Tri::Le);
        assert!(matches!(af_compare(&d, &b, &a, 40), Tri::NotLe(_)));
        assert_eq!(af_compare(&d, &a, &a, 40), Tri::Le);
    }

    #[test]
    fn traces_on_uhf2() {
        let d = uhf2().to_cu_diagram();
        let one = Thread::image(&d, 1, v1(1)).unwrap();
        assert_eq!(
            perron_trace(&d, &one).unwrap(),
            TraceValue::Exact(BigRational::new(BigInt::from(1), BigInt::from(2)))
        );
        let deep = Thread::image(&d, 2, v1(1)).unwrap();
        assert_eq!(
            perron_trace(&d, &deep).unwrap(),
            TraceValue::Exact(BigRational::new(BigInt::from(1), BigInt::from(4)))
        );
        let zero = Thread::zero(&d);
        assert_eq!(perron_trace(&d, &zero).unwrap(), TraceValue::Exact(BigRational::zero()));
        let top = Thread::image(&d, 1, parse_vector("inf", 1).unwrap()).unwrap();
        assert_eq!(perron_trace(&d, &top).unwrap(), TraceValue::Infinite);
    }

    #[test]
    fn trace_requires_primitivity() {
        let d = two_block().to_cu_diagram();
        let a = Thread::image(&d, 1, parse_vector("1,0", 2).unwrap()).unwrap();
        assert_eq!(perron_trace(&d, &a), Err(TraceError::NotPrimitive));
    }

    #[test]
    fn fibonacci_trace_is_interval() {
        let d = fibonacci().to_cu_diagram();
        let a = Thread::image(&d, 1, parse_vector("1,0", 2).unwrap()).unwrap();
        match perron_trace(&d, &a).unwrap() {
            TraceValue::Approx { value, error } => {
                // lambda = (phi, 1)/(phi + 1), rho = phi
                let phi = 1.618033988749895_f64;
                let expect = (phi / (phi + 1.0)) / phi;
                assert!((value - expect).abs() < 1e-9, "{value} vs {expect}");
                assert!(error < 1e-6);
            }
            other => panic!("expected an interval, got {other:?}"),
        }
    }

    #[test]
    fn compacts_below_reconstructs() {
        let d = uhf2().to_cu_diagram();
        let top = Thread::image(&d, 1, parse_vector("inf", 1).unwrap()).unwrap();
        let list = compacts_below(&d, &top, 3, 40).unwrap();
        assert_eq!(list.len(), 3);
        // strictly growing trace values
        let mut traces = Vec::new();
        for t in &list {
            match perron_trace(&d, t).unwrap() {
                TraceValue::Exact(q) => traces.push(q),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(traces.windows(2).all(|w| w[0] < w[1]));

        // already-compact input: constant list
        let one = Thread::image(&d, 1, v1(1)).unwrap();
        let list = compacts_below(&d, &one, 3, 40).unwrap();
        assert!(list.iter().all(|t| thread_equiv(&d, t, &one, 40) == Tri::Le));

        // zero: list of zeros
        let zero = Thread::zero(&d);
        let list = compacts_below(&d, &zero, 2, 40).unwrap();
        assert!(list.iter().all(|t| thread_equiv(&d, t, &zero, 40) == Tri::Le));
    }

    #[test]
    fn interpolation_spec_cases() {
        let d = uhf2().to_cu_diagram();
        // x = embed(2,(1)), y = embed(1,(1)): x is its own interpolant.
        let x = Thread::image(&d, 2, v1(1)).unwrap();
        let y = Thread::image(&d, 1, v1(1)).unwrap();
        assert_eq!(thread_way_below(&d, &x, &y, 40), Tri::Le);
        assert!(find_compact_interpolant(&d, &x, &y, 40).is_some());
        // x = y = class of (inf): no interpolant and not way below.
        let top = Thread::image(&d, 1, parse_vector("inf", 1).unwrap()).unwrap();
        assert!(matches!(thread_way_below(&d, &top, &top, 40), Tri::NotLe(_)));
        assert!(find_compact_interpolant(&d, &top, &top, 40).is_none());
        // x = zero: holds with z = zero.
        let zero = Thread::zero(&d);
        assert_eq!(thread_way_below(&d, &zero, &y, 40), Tri::Le);
        assert!(find_compact_interpolant(&d, &zero, &y, 40).is_some());

        let (report, unknown) =
            compact_interpolation_check(&d, &[(x, y.clone()), (top.clone(), top), (zero, y)], 40);
        assert!(report.passed(), "{:?}", report.first_counterexample);
        assert_eq!(unknown, 0);
    }

    #[test]
    fn order_inclusion_spec_cases() {
        let d = uhf2().to_cu_diagram();
        let pairs = alloc::vec![
            (Thread::image(&d, 2, v1(1)).unwrap(), Thread::image(&d, 1, v1(1)).unwrap()),
            (Thread::image(&d, 1, v1(3)).unwrap(), Thread::image(&d, 1, v1(3)).unwrap()),
            (Thread::image(&d, 1, v1(5)).unwrap(), Thread::image(&d, 2, v1(1)).unwrap()),
        ];
        let (report, unknown) = order_equals_inclusion_check(&d, &pairs, 40);
        assert!(report.passed(), "{:?}", report.first_counterexample);
        assert_eq!(unknown, 0);

        let df = fibonacci().to_cu_diagram();
        let x = Thread::image(&df, 1, parse_vector("1,0", 2).unwrap()).unwrap();
        let y = Thread::image(&df, 1, parse_vector("0,1", 2).unwrap()).unwrap();
        let (report, unknown) = order_equals_inclusion_check(&df, &[(x, y)], 40);
        assert!(report.passed(), "{:?}", report.first_counterexample);
        assert_eq!(unknown, 0);
    }

    #[test]
    fn compactness_matches_finite_presentation() {
        let d = two_block().to_cu_diagram();
        let fin = Thread::image(&d, 1, parse_vector("2,3", 2).unwrap()).unwrap();
        assert!(fin.is_compact_class(&d));
        assert_eq!(thread_way_below(&d, &fin, &fin, 40), Tri::Le);
        let inf = Thread::image(&d, 1, parse_vector("0,inf", 2).unwrap()).unwrap();
        assert!(!inf.is_compact_class(&d));
        assert!(matches!(thread_way_below(&d, &inf, &inf, 40), Tri::NotLe(_)));
    }
}
