//! Finite-dimensional numerical ground truth: positive elements of a direct
//! sum of matrix algebras, functional-calculus cuts, rank vectors, and the
//! approximation comparison with constructive witnesses.
//!
//! The decision rule is blockwise rank domination; its agreement with the
//! approximation relation is validated constructively (witnesses on the
//! positive side, a randomized falsification probe on the negative side)
//! rather than assumed. All numerics are double precision with fixed
//! tolerances and explicit instability flags.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use cu_kit_core::laws::LawReport;
use cu_kit_core::vector::ExtNatVector;

type C64 = Complex<f64>;

/// Rank counting tolerance.
pub const RANK_TOL: f64 = 1e-8;
/// Residual accepted from a constructed witness.
pub const RESIDUAL_TOL: f64 = 1e-6;
/// Eigenvalue tolerance for positive semidefiniteness.
pub const PSD_TOL: f64 = 1e-10;
/// Hermiticity tolerance (blocks are symmetrized on construction).
pub const HERM_TOL: f64 = 1e-12;
/// Residual that the falsification probe must fail to reach.
pub const FALSIFICATION_TOL: f64 = 1e-3;
/// Candidates tried by the falsification probe.
pub const FALSIFICATION_CANDIDATES: usize = 10_000;
/// Smallest positive eigenvalue admitted when sampling random elements;
/// keeps the falsification threshold meaningfully below every spectral gap.
pub const SAMPLE_SPECTRAL_FLOOR: f64 = 0.02;

/// A direct sum of full matrix algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimAlgebra {
    block_sizes: Vec<usize>,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("algebra needs at least one block of size >= 1")]
    BadAlgebra,
    #[error("block {block} has shape {got_rows}x{got_cols}, expected {expected}x{expected}")]
    BadBlockShape { block: usize, expected: usize, got_rows: usize, got_cols: usize },
    #[error("block {block} is not Hermitian within {HERM_TOL}")]
    NotHermitian { block: usize },
    #[error("block {block} has an eigenvalue {value} below the tolerance -{PSD_TOL}")]
    NotPositive { block: usize, value: f64 },
    #[error("elements live over different algebras")]
    AlgebraMismatch,
}

impl FiniteDimAlgebra {
    pub fn new(block_sizes: Vec<usize>) -> Result<Self, OracleError> {
        if block_sizes.is_empty() || block_sizes.iter().any(|&n| n == 0) {
            return Err(OracleError::BadAlgebra);
        }
        Ok(FiniteDimAlgebra { block_sizes })
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn block_count(&self) -> usize {
        self.block_sizes.len()
    }

    /// The algebra carrying direct sums of elements: block sizes doubled.
    pub fn doubled(&self) -> FiniteDimAlgebra {
        FiniteDimAlgebra { block_sizes: self.block_sizes.iter().map(|&n| 2 * n).collect() }
    }
}

/// A block-diagonal positive semidefinite element.
#[derive(Clone, Debug)]
pub struct PositiveElement {
    blocks: Vec<DMatrix<C64>>,
}

impl PositiveElement {
    /// Validate shapes and Hermiticity (symmetrizing), then positivity.
    pub fn new(algebra: &FiniteDimAlgebra, blocks: Vec<DMatrix<C64>>) -> Result<Self, OracleError> {
        if blocks.len() != algebra.block_count() {
            return Err(OracleError::BadAlgebra);
        }
        let mut sym = Vec::with_capacity(blocks.len());
        for (i, (b, &n)) in blocks.iter().zip(algebra.block_sizes()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(OracleError::BadBlockShape {
                    block: i,
                    expected: n,
                    got_rows: b.nrows(),
                    got_cols: b.ncols(),
                });
            }
            let herm_defect = (b - b.adjoint()).map(|x| x.norm()).max();
            let scale = 1.0f64.max(b.map(|x| x.norm()).max());
            if herm_defect > HERM_TOL * scale {
                return Err(OracleError::NotHermitian { block: i });
            }
            sym.push((b + b.adjoint()).scale(0.5));
        }
        for (i, b) in sym.iter().enumerate() {
            let (vals, _) = eigh(b);
            if let Some(min) = vals.iter().cloned().reduce(f64::min) {
                if min < -PSD_TOL {
                    return Err(OracleError::NotPositive { block: i, value: min });
                }
            }
        }
        Ok(PositiveElement { blocks: sym })
    }

    pub fn zero(algebra: &FiniteDimAlgebra) -> Self {
        PositiveElement {
            blocks: algebra.block_sizes().iter().map(|&n| DMatrix::zeros(n, n)).collect(),
        }
    }

    pub fn blocks(&self) -> &[DMatrix<C64>] {
        &self.blocks
    }

    pub fn norm_max(&self) -> f64 {
        self.blocks.iter().map(|b| b.map(|x| x.norm()).max()).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue above `tol` over all blocks, if any.
    pub fn min_positive_eigenvalue(&self, tol: f64) -> Option<f64> {
        let mut min = None;
        for b in &self.blocks {
            let (vals, _) = eigh(b);
            for v in vals.iter() {
                if *v > tol {
                    min = Some(min.map_or(*v, |m: f64| m.min(*v)));
                }
            }
        }
        min
    }
}

/// Hermitian eigendecomposition with eigenvalues sorted descending.
fn eigh(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let se = nalgebra::SymmetricEigen::new(m.clone());
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[j].partial_cmp(&se.eigenvalues[i]).unwrap());
    let vals = DVector::from_iterator(n, order.iter().map(|&i| se.eigenvalues[i]));
    let mut vecs = DMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        vecs.set_column(new_col, &se.eigenvectors.column(old_col));
    }
    (vals, vecs)
}

/// Blockwise functional-calculus cut: eigenvalues mapped `t -> max(t-eps, 0)`.
pub fn eps_cut(a: &PositiveElement, eps: f64) -> PositiveElement {
    assert!(eps > 0.0, "cut level must be positive");
    let blocks = a
        .blocks
        .iter()
        .map(|b| {
            let (vals, vecs) = eigh(b);
            let cut = DVector::from_iterator(
                vals.len(),
                vals.iter().map(|&v| (v - eps).max(0.0)),
            );
            let diag = DMatrix::from_diagonal(&cut.map(|v| C64::new(v, 0.0)));
            &vecs * diag * vecs.adjoint()
        })
        .collect();
    PositiveElement { blocks }
}

/// Per-block eigenvalue counts above `tol`, with an instability flag when
/// any eigenvalue falls inside `(tol/10, 10*tol)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankVector {
    pub counts: Vec<usize>,
    pub stable: bool,
}

impl RankVector {
    pub fn dominated_by(&self, other: &RankVector) -> bool {
        self.counts.len() == other.counts.len()
            && self.counts.iter().zip(&other.counts).all(|(x, y)| x <= y)
    }

    pub fn as_ext_vector(&self) -> ExtNatVector {
        ExtNatVector::from_finite(
            &self.counts.iter().map(|&c| c as u128).collect::<Vec<_>>(),
        )
    }
}

pub fn rank_vector(a: &PositiveElement, tol: f64) -> RankVector {
    let mut counts = Vec::with_capacity(a.blocks.len());
    let mut stable = true;
    for b in &a.blocks {
        let (vals, _) = eigh(b);
        counts.push(vals.iter().filter(|&&v| v > tol).count());
        if vals.iter().any(|&v| v > tol / 10.0 && v < tol * 10.0) {
            stable = false;
        }
    }
    RankVector { counts, stable }
}

/// The comparison decision: blockwise rank domination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubeqAnswer {
    pub holds: bool,
    pub stable: bool,
}

pub fn cuntz_subeq(a: &PositiveElement, b: &PositiveElement, tol: f64) -> Result<SubeqAnswer, OracleError> {
    if a.blocks.len() != b.blocks.len()
        || a.blocks.iter().zip(&b.blocks).any(|(x, y)| x.nrows() != y.nrows())
    {
        return Err(OracleError::AlgebraMismatch);
    }
    let ra = rank_vector(a, tol);
    let rb = rank_vector(b, tol);
    Ok(SubeqAnswer { holds: ra.dominated_by(&rb), stable: ra.stable && rb.stable })
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum WitnessError {
    #[error("rank deficit in block {block}: the cut needs {need} but the target offers {have}")]
    RankDeficit { block: usize, need: usize, have: usize },
    #[error("{0}")]
    Oracle(#[from] OracleError),
}

/// A constructed approximant: `c` with certificate
/// `|| c b c* - (a - eps)_+ || <= RESIDUAL_TOL`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub blocks: Vec<DMatrix<C64>>,
    pub residual: f64,
}

/// Build `c` blockwise as `(a-eps)_+^{1/2} u b^{+1/2}` where `u` carries the
/// leading eigenvectors of `b` onto those of `(a-eps)_+`, then measure the
/// reconstruction residual.
pub fn witness_construct(
    a: &PositiveElement,
    b: &PositiveElement,
    eps: f64,
    tol: f64,
) -> Result<Witness, WitnessError> {
    if a.blocks.len() != b.blocks.len() {
        return Err(OracleError::AlgebraMismatch.into());
    }
    let mut blocks = Vec::with_capacity(a.blocks.len());
    for (i, (ab, bb)) in a.blocks.iter().zip(&b.blocks).enumerate() {
        let (mu, u) = eigh(ab);
        let (lam, v) = eigh(bb);
        let need = mu.iter().filter(|&&x| x > eps).count();
        let have = lam.iter().filter(|&&x| x > tol).count();
        if need > have {
            return Err(WitnessError::RankDeficit { block: i, need, have });
        }
        let n = ab.nrows();
        let mut c = DMatrix::<C64>::zeros(n, n);
        for j in 0..need {
            let coef = ((mu[j] - eps) / lam[j]).sqrt();
            let uj = u.column(j);
            let vj = v.column(j);
            // c += coef * u_j v_j^H
            for r in 0..n {
                for s in 0..n {
                    c[(r, s)] += C64::new(coef, 0.0) * uj[r] * vj[s].conj();
                }
            }
        }
        blocks.push(c);
    }
    let target = eps_cut(a, eps);
    let mut res_sq = 0.0;
    for ((c, bb), t) in blocks.iter().zip(&b.blocks).zip(&target.blocks) {
        let rec = c * bb * c.adjoint();
        res_sq += (rec - t).map(|x| x.norm_sqr()).sum();
    }
    Ok(Witness { blocks, residual: res_sq.sqrt() })
}

/// Random candidates `c` trying to reproduce `(a-eps)_+` from `b`; returns
/// the best residual achieved. A probe, not a proof.
pub fn falsification_probe(
    a: &PositiveElement,
    b: &PositiveElement,
    eps: f64,
    candidates: usize,
    seed: u64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = eps_cut(a, eps);
    let scale_base = (a.norm_max().max(1e-12) / b.norm_max().max(1e-12)).sqrt();
    let mut best = f64::INFINITY;
    // Flat per-block buffers, reused across candidates.
    let mut c_buf: Vec<Vec<C64>> =
        b.blocks.iter().map(|bb| vec![C64::new(0.0, 0.0); bb.nrows() * bb.nrows()]).collect();
    let mut cb_buf = c_buf.clone();
    for k in 0..candidates {
        let scale = scale_base * [0.25, 0.5, 1.0, 2.0, 4.0][k % 5];
        let mut res_sq = 0.0;
        for ((bb, t), (c, cb)) in b
            .blocks
            .iter()
            .zip(&target.blocks)
            .zip(c_buf.iter_mut().zip(cb_buf.iter_mut()))
        {
            let n = bb.nrows();
            for x in c.iter_mut() {
                *x = C64::new(gaussian(&mut rng) * scale, gaussian(&mut rng) * scale);
            }
            // cb = c * b, row-major c
            for r in 0..n {
                for s in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for m in 0..n {
                        acc += c[r * n + m] * bb[(m, s)];
                    }
                    cb[r * n + s] = acc;
                }
            }
            // residual of (c b c^H - target), entrywise
            for r in 0..n {
                for s in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for m in 0..n {
                        acc += cb[r * n + m] * c[s * n + m].conj();
                    }
                    res_sq += (acc - t[(r, s)]).norm_sqr();
                }
            }
        }
        best = best.min(res_sq.sqrt());
    }
    best
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller on open intervals.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
}

/// Random positive element: `g g*` per block with `g` an `n x r` complex
/// Gaussian (rank-truncated when `r < n`). Blocks whose smallest positive
/// eigenvalue falls under the spectral floor are resampled so that the
/// falsification threshold stays below every spectral gap.
pub fn random_positive(
    algebra: &FiniteDimAlgebra,
    rng: &mut ChaCha8Rng,
) -> PositiveElement {
    let blocks = algebra
        .block_sizes()
        .iter()
        .map(|&n| {
            let r = rng.gen_range(0..=n);
            if r == 0 {
                return DMatrix::zeros(n, n);
            }
            loop {
                let g = DMatrix::from_fn(n, r, |_, _| {
                    C64::new(gaussian(rng), gaussian(rng))
                });
                let b = &g * g.adjoint();
                let (vals, _) = eigh(&b);
                let ok = vals
                    .iter()
                    .filter(|&&v| v > RANK_TOL)
                    .all(|&v| v >= SAMPLE_SPECTRAL_FLOOR)
                    && vals.iter().filter(|&&v| v > RANK_TOL).count() == r;
                if ok {
                    return b;
                }
            }
        })
        .collect();
    PositiveElement { blocks }
}

/// Direct sum over the doubled algebra.
pub fn direct_sum(
    algebra: &FiniteDimAlgebra,
    a: &PositiveElement,
    b: &PositiveElement,
) -> (FiniteDimAlgebra, PositiveElement) {
    let doubled = algebra.doubled();
    let blocks = a
        .blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| {
            let n = x.nrows();
            let mut m = DMatrix::zeros(2 * n, 2 * n);
            m.view_mut((0, 0), (n, n)).copy_from(x);
            m.view_mut((n, n), (n, n)).copy_from(y);
            m
        })
        .collect();
    (doubled, PositiveElement { blocks })
}

/// Verify rank additivity of direct sums on sampled pairs.
pub fn class_addition_check(algebra: &FiniteDimAlgebra, samples: u32, tol: f64, seed: u64) -> LawReport {
    let mut report = LawReport::new("class-addition");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0add);
    for _ in 0..samples {
        let a = random_positive(algebra, &mut rng);
        let b = random_positive(algebra, &mut rng);
        let (_, s) = direct_sum(algebra, &a, &b);
        let ra = rank_vector(&a, tol);
        let rb = rank_vector(&b, tol);
        let rs = rank_vector(&s, tol);
        let expected: Vec<usize> =
            ra.counts.iter().zip(&rb.counts).map(|(x, y)| x + y).collect();
        if rs.counts == expected {
            report.pass();
        } else {
            report.fail(format!("rank(a (+) b) = {:?}, expected {:?}", rs.counts, expected));
        }
    }
    report
}

/// Outcome of the oracle's self-test suite. Numeric instability flags are
/// counted separately from failures.
#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub checks: Vec<LawReport>,
    pub instabilities: u32,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }
}

/// Run the oracle invariants at the configured sample count.
pub fn oracle_selftest(cases: u32, seed: u64) -> SelftestReport {
    let algebra = FiniteDimAlgebra::new(vec![4, 4]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0ac1e);
    let mut instabilities = 0u32;

    let mut agreement = LawReport::new("rank-agreement");
    let mut witness_ok = LawReport::new("witness-residual");
    let mut falsification = LawReport::new("witness-falsification");
    let mut cut_comp = LawReport::new("cut-composition");
    let mut cut_mono = LawReport::new("cut-rank-monotone");

    for case in 0..cases {
        let a = random_positive(&algebra, &mut rng);
        let b = random_positive(&algebra, &mut rng);
        let answer = cuntz_subeq(&a, &b, RANK_TOL).expect("same algebra");
        if !answer.stable {
            instabilities += 1;
            continue;
        }

        // Agreement with the product-instance order of the rank vectors.
        let va = rank_vector(&a, RANK_TOL).as_ext_vector();
        let vb = rank_vector(&b, RANK_TOL).as_ext_vector();
        if answer.holds == va.leq(&vb) {
            agreement.pass();
        } else {
            agreement.fail(format!("decision {} vs vector order {va} <= {vb}", answer.holds));
        }

        if answer.holds {
            // The witness must exist (choose the cut below the smallest
            // positive eigenvalue so no rank is lost) and reconstruct the
            // cut within tolerance.
            let eps = a.min_positive_eigenvalue(RANK_TOL).map_or(0.5, |m| m / 2.0);
            match witness_construct(&a, &b, eps, RANK_TOL) {
                Ok(w) => {
                    if w.residual <= RESIDUAL_TOL {
                        witness_ok.pass();
                    } else {
                        witness_ok.fail(format!("residual {} above {RESIDUAL_TOL}", w.residual));
                    }
                }
                Err(e) => witness_ok.fail(format!("witness refused: {e}")),
            }
        } else {
            // No random candidate may come close to a reconstruction.
            let eps = a.min_positive_eigenvalue(RANK_TOL).map_or(0.5, |m| m / 2.0);
            let best = falsification_probe(&a, &b, eps, FALSIFICATION_CANDIDATES, seed ^ case as u64);
            if best > FALSIFICATION_TOL {
                falsification.pass();
            } else {
                falsification.fail(format!("random candidate reached residual {best}"));
            }
        }

        // Functional-calculus composition.
        let e1 = 0.1 + 0.2 * rng.gen::<f64>();
        let e2 = 0.1 + 0.2 * rng.gen::<f64>();
        let lhs = eps_cut(&eps_cut(&a, e1), e2);
        let rhs = eps_cut(&a, e1 + e2);
        let diff: f64 = lhs
            .blocks
            .iter()
            .zip(&rhs.blocks)
            .map(|(x, y)| (x - y).map(|v| v.norm_sqr()).sum())
            .sum::<f64>()
            .sqrt();
        if diff <= 1e-9 {
            cut_comp.pass();
        } else {
            cut_comp.fail(format!("cut composition defect {diff}"));
        }

        // Cutting cannot raise ranks; and against the positive-semidefinite
        // order, cutting the smaller element deeper keeps the rank below
        // the larger element's shallower cut (eigenvalue monotonicity).
        let e = 0.05 + 0.1 * rng.gen::<f64>();
        let ra = rank_vector(&a, RANK_TOL);
        let rcut = rank_vector(&eps_cut(&a, e), RANK_TOL);
        let bigger = {
            let extra = random_positive(&algebra, &mut rng);
            let blocks = a
                .blocks
                .iter()
                .zip(&extra.blocks)
                .map(|(x, y)| x + y)
                .collect();
            PositiveElement { blocks }
        };
        let rdeep = rank_vector(&eps_cut(&a, e * 1.5), RANK_TOL);
        let rbig = rank_vector(&eps_cut(&bigger, e), RANK_TOL);
        if !rcut.stable || !rbig.stable || !rdeep.stable {
            instabilities += 1;
        } else if rcut.dominated_by(&ra) && rdeep.dominated_by(&rbig) {
            cut_mono.pass();
        } else {
            cut_mono.fail(format!(
                "cut ranks {:?}/{:?} not dominated by {:?}/{:?}",
                rcut.counts, rdeep.counts, ra.counts, rbig.counts
            ));
        }
    }

    let addition = class_addition_check(
        &FiniteDimAlgebra::new(vec![2, 3]).unwrap(),
        cases.min(200),
        RANK_TOL,
        seed,
    );

    SelftestReport {
        checks: vec![agreement, witness_ok, falsification, cut_comp, cut_mono, addition],
        instabilities,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(algebra: &FiniteDimAlgebra, values: &[&[f64]]) -> PositiveElement {
        let blocks = values
            .iter()
            .map(|vs| {
                DMatrix::from_diagonal(&DVector::from_iterator(
                    vs.len(),
                    vs.iter().map(|&v| C64::new(v, 0.0)),
                ))
            })
            .collect();
        PositiveElement::new(algebra, blocks).unwrap()
    }

    #[test]
    fn eps_cut_on_diagonal() {
        let alg = FiniteDimAlgebra::new(vec![3]).unwrap();
        let a = diag(&alg, &[&[1.0, 0.5, 0.2]]);
        let cut = eps_cut(&a, 0.3);
        let (vals, _) = eigh(&cut.blocks()[0]);
        let got: Vec<f64> = vals.iter().cloned().collect();
        assert!((got[0] - 0.7).abs() < 1e-12);
        assert!((got[1] - 0.2).abs() < 1e-12);
        assert!(got[2].abs() < 1e-12);
        // a cut past the norm kills the element
        let dead = eps_cut(&a, 2.0);
        assert!(dead.norm_max() < 1e-12);
    }

    #[test]
    fn rank_vector_cases() {
        let alg = FiniteDimAlgebra::new(vec![2, 1]).unwrap();
        let a = diag(&alg, &[&[1.0, 0.5], &[0.0]]);
        let r = rank_vector(&a, 1e-8);
        assert_eq!(r.counts, vec![2, 0]);
        assert!(r.stable);
        let z = PositiveElement::zero(&alg);
        assert_eq!(rank_vector(&z, 1e-8).counts, vec![0, 0]);
        // an eigenvalue in the unstable band flips the flag
        let u = diag(&alg, &[&[1.0, 5e-8], &[1.0]]);
        assert!(!rank_vector(&u, 1e-8).stable);
    }

    #[test]
    fn subeq_is_rank_domination() {
        let alg = FiniteDimAlgebra::new(vec![2, 2]).unwrap();
        let a = diag(&alg, &[&[1.0, 0.0], &[1.0, 1.0]]);
        let b = diag(&alg, &[&[3.0, 2.0], &[1.0, 2.0]]);
        assert!(cuntz_subeq(&a, &b, 1e-8).unwrap().holds);
        assert!(!cuntz_subeq(&b, &a, 1e-8).unwrap().holds);
        assert!(cuntz_subeq(&a, &a, 1e-8).unwrap().holds);
    }

    #[test]
    fn witness_examples() {
        let alg = FiniteDimAlgebra::new(vec![3]).unwrap();
        let a = diag(&alg, &[&[1.0, 0.0, 0.0]]);
        let b = diag(&alg, &[&[0.0, 5.0, 0.0]]);
        let w = witness_construct(&a, &b, 0.1, 1e-8).unwrap();
        assert!(w.residual <= 1e-8, "residual {}", w.residual);
        let w2 = witness_construct(&a, &a, 0.1, 1e-8).unwrap();
        assert!(w2.residual <= 1e-8);
        // rank deficit names the block
        let alg2 = FiniteDimAlgebra::new(vec![1, 2]).unwrap();
        let x = diag(&alg2, &[&[1.0], &[1.0, 1.0]]);
        let y = diag(&alg2, &[&[1.0], &[1.0, 0.0]]);
        match witness_construct(&x, &y, 0.1, 1e-8) {
            Err(WitnessError::RankDeficit { block: 1, need: 2, have: 1 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hermiticity_and_positivity_enforced() {
        let alg = FiniteDimAlgebra::new(vec![2]).unwrap();
        let bad = DMatrix::from_row_slice(2, 2, &[
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        ]);
        assert!(matches!(
            PositiveElement::new(&alg, vec![bad]),
            Err(OracleError::NotHermitian { block: 0 })
        ));
        let neg = DMatrix::from_diagonal(&DVector::from_iterator(
            2,
            [C64::new(1.0, 0.0), C64::new(-1.0, 0.0)],
        ));
        assert!(matches!(
            PositiveElement::new(&alg, vec![neg]),
            Err(OracleError::NotPositive { block: 0, .. })
        ));
    }

    #[test]
    fn selftest_smoke() {
        let report = oracle_selftest(10, 1);
        assert!(report.passed(), "{:?}", report.checks);
    }
}
