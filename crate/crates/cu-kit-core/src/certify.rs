//! Refutation certificates for stationary thread comparisons.
//!
//! Comparisons in an inductive limit quantify over "eventually"; a negative
//! answer is only reported when backed by a certificate that stays valid at
//! every later stage:
//!
//! * an exact nonnegative left eigenvector `l` of the (possibly trimmed)
//!   coordinate subsystem with integer eigenvalue `rho >= 1` such that
//!   `l . w < 0` for the difference vector `w` — since
//!   `l . (M^n w) = rho^n (l . w) < 0`, no iterate of `w` is ever
//!   coordinatewise nonnegative;
//! * the same functional obtained by power iteration when the Perron root
//!   is irrational, accepted only outside a declared safety margin
//!   ([`FLOAT_MARGIN`]); anything inside the margin is left undecided.
//!
//! Trimming is sound because certificates are built on a reach-closed
//! coordinate set after removing coordinates whose entire influence cone is
//! zero in `w`; those coordinates stay identically zero under iteration.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix_map::MatrixCuMap;

/// Declared margin for floating-point functional certificates.
pub const FLOAT_MARGIN: f64 = 1e-6;

/// Which certificate refuted a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    /// Eigenvector functional of the reach-closed subsystem.
    Perron,
    /// Functional on a zero-trimmed subsystem: the witness's deficit
    /// against the other side cannot recover under the maps.
    Deficit,
}

/// A square nonnegative integer matrix restricted to a coordinate subset,
/// keeping the original coordinate labels.
#[derive(Clone, Debug)]
pub struct SubMatrix {
    coords: Vec<usize>,
    entries: Vec<u128>,
}

impl SubMatrix {
    /// Restrict a square map to `coords` (original indices).
    pub fn from_map(m: &MatrixCuMap, coords: &[usize]) -> SubMatrix {
        assert_eq!(m.out_dim(), m.in_dim());
        let mut entries = Vec::with_capacity(coords.len() * coords.len());
        for &r in coords {
            for &c in coords {
                entries.push(m.entry(r, c));
            }
        }
        SubMatrix { coords: coords.to_vec(), entries }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    fn entry(&self, r: usize, c: usize) -> u128 {
        self.entries[r * self.dim() + c]
    }

    /// Local indices reachable from local index `c` (the influence cone).
    pub fn reach_local(&self, c: usize) -> Vec<usize> {
        let k = self.dim();
        let mut seen = alloc::vec![false; k];
        let mut stack = alloc::vec![c];
        seen[c] = true;
        while let Some(r) = stack.pop() {
            for m in 0..k {
                if !seen[m] && self.entry(r, m) > 0 {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        (0..k).filter(|&i| seen[i]).collect()
    }

    /// Restrict further to a set of local indices.
    pub fn restrict(&self, locals: &[usize]) -> SubMatrix {
        let mut entries = Vec::with_capacity(locals.len() * locals.len());
        for &r in locals {
            for &c in locals {
                entries.push(self.entry(r, c));
            }
        }
        SubMatrix { coords: locals.iter().map(|&l| self.coords[l]).collect(), entries }
    }

    pub fn max_row_sum(&self) -> u128 {
        (0..self.dim())
            .map(|r| (0..self.dim()).map(|c| self.entry(r, c)).sum::<u128>())
            .max()
            .unwrap_or(0)
    }

    /// Does some power have all entries positive? (Wielandt bound.)
    pub fn is_primitive(&self) -> bool {
        let k = self.dim();
        if k == 0 {
            return false;
        }
        let bound = (k - 1) * (k - 1) + 1;
        let base: Vec<bool> = self.entries.iter().map(|&e| e > 0).collect();
        let mut pow = base.clone();
        for _ in 1..=bound {
            if pow.iter().all(|&b| b) {
                return true;
            }
            let mut next = alloc::vec![false; k * k];
            for r in 0..k {
                for c in 0..k {
                    next[r * k + c] = (0..k).any(|m| pow[r * k + m] && base[m * k + c]);
                }
            }
            pow = next;
        }
        pow.iter().all(|&b| b)
    }

    /// Coefficients `[c_1, ..., c_k]` of the monic characteristic
    /// polynomial `x^k + c_1 x^{k-1} + ... + c_k` (Faddeev-LeVerrier,
    /// exact integer arithmetic).
    pub fn char_poly(&self) -> Vec<BigInt> {
        let k = self.dim();
        let base: Vec<BigInt> = self.entries.iter().map(|&e| BigInt::from(e)).collect();
        let at = |m: &[BigInt], r: usize, c: usize| -> BigInt { m[r * k + c].clone() };
        let mut coeffs = Vec::with_capacity(k);
        let mut a = base.clone();
        for step in 1..=k {
            let trace: BigInt = (0..k).map(|i| at(&a, i, i)).sum();
            let c = -trace / BigInt::from(step as u64);
            coeffs.push(c.clone());
            if step == k {
                break;
            }
            let mut shifted = a.clone();
            for i in 0..k {
                shifted[i * k + i] += &c;
            }
            let mut next = alloc::vec![BigInt::zero(); k * k];
            for r in 0..k {
                for cc in 0..k {
                    let mut acc = BigInt::zero();
                    for m in 0..k {
                        acc += at(&base, r, m) * at(&shifted, m, cc);
                    }
                    next[r * k + cc] = acc;
                }
            }
            a = next;
        }
        coeffs
    }

    /// Integer eigenvalues `rho >= 1`; all integer roots lie in
    /// `1..=max_row_sum` for a nonnegative matrix.
    pub fn integer_eigenvalues(&self) -> Vec<u128> {
        let coeffs = self.char_poly();
        let mut out = Vec::new();
        for rho in 1..=self.max_row_sum() {
            let x = BigInt::from(rho);
            let mut acc = BigInt::one();
            for c in &coeffs {
                acc = acc * &x + c;
            }
            if acc.is_zero() {
                out.push(rho);
            }
        }
        out
    }

    /// Exact nonnegative left eigenvector for an integer eigenvalue, when
    /// one appears among the kernel basis vectors or their sum.
    pub fn exact_nonneg_left_eigenvector(&self, rho: u128) -> Option<Vec<BigRational>> {
        let k = self.dim();
        // Solve (M^T - rho I) y = 0 over the rationals.
        let mut a = alloc::vec![BigRational::zero(); k * k];
        for r in 0..k {
            for c in 0..k {
                a[r * k + c] = BigRational::from_integer(BigInt::from(self.entry(c, r)));
            }
            let d = a[r * k + r].clone() - BigRational::from_integer(BigInt::from(rho));
            a[r * k + r] = d;
        }
        let basis = kernel_basis(&mut a, k);
        if basis.is_empty() {
            return None;
        }
        let mut candidates: Vec<Vec<BigRational>> = Vec::new();
        for b in &basis {
            candidates.push(b.clone());
            candidates.push(b.iter().map(|x| -x).collect());
        }
        if basis.len() > 1 {
            let mut sum = alloc::vec![BigRational::zero(); k];
            for b in &basis {
                let negate = b
                    .iter()
                    .find(|x| !x.is_zero())
                    .map(|x| x.is_negative())
                    .unwrap_or(false);
                for (i, x) in b.iter().enumerate() {
                    if negate {
                        sum[i] -= x;
                    } else {
                        sum[i] += x;
                    }
                }
            }
            candidates.push(sum);
        }
        candidates
            .into_iter()
            .find(|cand| cand.iter().all(|x| !x.is_negative()) && cand.iter().any(|x| x.is_positive()))
    }

    /// Approximate left Perron data `(lambda, rho, residual)`: `lambda`
    /// nonnegative, L1-normalized; `residual` is the L1 defect of
    /// `lambda M = rho lambda`. Non-convergent (e.g. periodic) spectra
    /// surface as a large residual and are rejected by the margin test.
    pub fn float_left_perron(&self) -> Option<(Vec<f64>, f64, f64)> {
        let k = self.dim();
        let mut v = alloc::vec![1.0f64 / k as f64; k];
        let mut rho = 0.0;
        for _ in 0..400 {
            let mut w = alloc::vec![0.0f64; k];
            for c in 0..k {
                let mut acc = 0.0;
                for r in 0..k {
                    acc += self.entry(r, c) as f64 * v[r];
                }
                w[c] = acc;
            }
            let norm: f64 = w.iter().sum();
            if norm <= 0.0 {
                return None;
            }
            rho = norm;
            for (vi, wi) in v.iter_mut().zip(&w) {
                *vi = wi / norm;
            }
        }
        let mut res = 0.0;
        for c in 0..k {
            let mut acc = 0.0;
            for r in 0..k {
                acc += self.entry(r, c) as f64 * v[r];
            }
            let d = acc - rho * v[c];
            res += if d < 0.0 { -d } else { d };
        }
        Some((v, rho, res))
    }
}

/// Kernel basis of a `k x k` rational matrix (reduces `a` in place).
fn kernel_basis(a: &mut [BigRational], k: usize) -> Vec<Vec<BigRational>> {
    let mut pivot_col_of_row: Vec<Option<usize>> = alloc::vec![None; k];
    let mut row = 0;
    for col in 0..k {
        let mut piv = None;
        for r in row..k {
            if !a[r * k + col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else { continue };
        if p != row {
            for c in 0..k {
                a.swap(p * k + c, row * k + c);
            }
        }
        let inv = a[row * k + col].clone();
        for c in col..k {
            let val = a[row * k + c].clone() / inv.clone();
            a[row * k + c] = val;
        }
        for r in 0..k {
            if r != row && !a[r * k + col].is_zero() {
                let factor = a[r * k + col].clone();
                for c in col..k {
                    let sub = &factor * a[row * k + c].clone();
                    a[r * k + c] -= sub;
                }
            }
        }
        pivot_col_of_row[row] = Some(col);
        row += 1;
        if row == k {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.iter().flatten().copied().collect();
    let free_cols: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free_cols {
        let mut v = alloc::vec![BigRational::zero(); k];
        v[f] = BigRational::one();
        for (r, pc) in pivot_col_of_row.iter().enumerate() {
            if let Some(pc) = pc {
                v[*pc] = -a[r * k + f].clone();
            }
        }
        basis.push(v);
    }
    basis
}

fn dot_exact(lam: &[BigRational], w: &[BigInt]) -> BigRational {
    let mut acc = BigRational::zero();
    for (l, x) in lam.iter().zip(w) {
        acc += l * BigRational::from_integer(x.clone());
    }
    acc
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::MIN } else { f64::MAX })
}

/// Certificate that no iterate `M^n w` (`n >= 0`) is coordinatewise
/// nonnegative. `None` means no certificate was found, not that none exists.
pub fn never_nonnegative(m: &SubMatrix, w: &[BigInt]) -> Option<CertKind> {
    assert_eq!(m.dim(), w.len());
    if w.iter().all(|x| !x.is_negative()) {
        return None;
    }
    for c in 0..m.dim() {
        if !w[c].is_negative() {
            continue;
        }
        let reach = m.reach_local(c);
        // Drop coordinates whose entire influence cone carries zero.
        let keep: Vec<usize> = reach
            .iter()
            .copied()
            .filter(|&c2| m.reach_local(c2).iter().any(|&c3| !w[c3].is_zero()))
            .collect();
        if keep.is_empty() {
            continue;
        }
        let trimmed = keep.len() != reach.len();
        let sub = m.restrict(&keep);
        let wsub: Vec<BigInt> = keep.iter().map(|&i| w[i].clone()).collect();

        for rho in sub.integer_eigenvalues() {
            if let Some(lam) = sub.exact_nonneg_left_eigenvector(rho) {
                if dot_exact(&lam, &wsub).is_negative() {
                    return Some(if trimmed { CertKind::Deficit } else { CertKind::Perron });
                }
            }
        }
        // The floating route is only trusted on primitive subsystems, where
        // the dominant eigenvalue is simple and power iteration converges
        // geometrically; defective spectra can fool the residual.
        if sub.is_primitive() {
            if let Some((lam, rho, res)) = sub.float_left_perron() {
                if rho > 0.5 {
                    let wabs: f64 = wsub.iter().map(|x| big_to_f64(x).abs()).sum();
                    let margin = FLOAT_MARGIN * (1.0 + wabs) + res * wabs;
                    let val: f64 = lam.iter().zip(&wsub).map(|(l, x)| l * big_to_f64(x)).sum();
                    if val < -margin {
                        return Some(if trimmed { CertKind::Deficit } else { CertKind::Perron });
                    }
                }
            }
        }
    }
    None
}

/// Search for a nonnegative left eigenvector (eigenvalue >= 1) of the
/// subsystem reachable from one of `inf_locals`, with positive mass there
/// and provably zero mass on every coordinate of `forbidden`. Such a
/// functional sends the basis witnesses under an infinite coordinate to
/// arbitrarily large values while staying finite on the other side of the
/// comparison.
pub fn inf_mass_functional(m: &SubMatrix, inf_locals: &[usize], forbidden: &[usize]) -> bool {
    for &cstar in inf_locals {
        let reach = m.reach_local(cstar);
        let sub = m.restrict(&reach);
        let cpos = reach.iter().position(|&x| x == cstar).unwrap();
        let forb_pos: Vec<usize> =
            (0..reach.len()).filter(|&i| forbidden.contains(&reach[i])).collect();
        for rho in sub.integer_eigenvalues() {
            if let Some(lam) = sub.exact_nonneg_left_eigenvector(rho) {
                if lam[cpos].is_positive() && forb_pos.iter().all(|&i| lam[i].is_zero()) {
                    return true;
                }
            }
        }
        // With no zero-mass constraint, primitivity suffices: a nonzero
        // primitive nonnegative integer matrix has a strictly positive left
        // Perron eigenvector with eigenvalue at least 1.
        if forb_pos.is_empty() && sub.max_row_sum() >= 1 && sub.is_primitive() {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_map::map_from;

    #[test]
    fn char_poly_and_integer_roots() {
        let m = SubMatrix::from_map(&map_from(&[&[2]]), &[0]);
        assert_eq!(m.integer_eigenvalues(), alloc::vec![2]);
        let fib = SubMatrix::from_map(&map_from(&[&[1, 1], &[1, 0]]), &[0, 1]);
        // x^2 - x - 1 has no integer roots.
        assert!(fib.integer_eigenvalues().is_empty());
        let tri = SubMatrix::from_map(&map_from(&[&[1, 0], &[1, 1]]), &[0, 1]);
        assert_eq!(tri.integer_eigenvalues(), alloc::vec![1]);
    }

    #[test]
    fn exact_eigenvector_for_triangular() {
        let tri = SubMatrix::from_map(&map_from(&[&[1, 0], &[1, 1]]), &[0, 1]);
        let lam = tri.exact_nonneg_left_eigenvector(1).unwrap();
        // l M = l forces l = (t, 0).
        assert!(lam[0].is_positive());
        assert!(lam[1].is_zero());
    }

    #[test]
    fn float_perron_fibonacci() {
        let fib = SubMatrix::from_map(&map_from(&[&[1, 1], &[1, 0]]), &[0, 1]);
        let (lam, rho, res) = fib.float_left_perron().unwrap();
        assert!((rho - 1.618033988749895).abs() < 1e-9);
        assert!(res < 1e-9);
        assert!((lam[0] / lam[1] - 1.618033988749895).abs() < 1e-6);
    }

    #[test]
    fn never_nonnegative_simple() {
        let m = SubMatrix::from_map(&map_from(&[&[2]]), &[0]);
        assert_eq!(never_nonnegative(&m, &[BigInt::from(-1)]), Some(CertKind::Perron));
        assert_eq!(never_nonnegative(&m, &[BigInt::from(1)]), None);
    }

    #[test]
    fn never_nonnegative_trimmed() {
        // w = (0, -1): the first coordinate stays zero forever, so the
        // deficit in the second can never recover.
        let m = SubMatrix::from_map(&map_from(&[&[1, 0], &[1, 1]]), &[0, 1]);
        let w = alloc::vec![BigInt::from(0), BigInt::from(-1)];
        assert_eq!(never_nonnegative(&m, &w), Some(CertKind::Deficit));
        // w = (1, -5): the second coordinate accumulates the first and
        // recovers; no certificate may be produced.
        let w2 = alloc::vec![BigInt::from(1), BigInt::from(-5)];
        assert_eq!(never_nonnegative(&m, &w2), None);
    }

    #[test]
    fn never_nonnegative_fibonacci_float() {
        let m = SubMatrix::from_map(&map_from(&[&[1, 1], &[1, 0]]), &[0, 1]);
        // l . (-1, 1) = 1 - phi < 0: refuted via the float route.
        let w = alloc::vec![BigInt::from(-1), BigInt::from(1)];
        assert_eq!(never_nonnegative(&m, &w), Some(CertKind::Perron));
        // (1, -1) recovers: M (1,-1) = (0, 1), then (1, 0) >= 0.
        let w2 = alloc::vec![BigInt::from(1), BigInt::from(-1)];
        assert_eq!(never_nonnegative(&m, &w2), None);
    }

    #[test]
    fn inf_mass_functional_cases() {
        let uhf = SubMatrix::from_map(&map_from(&[&[2]]), &[0]);
        assert!(inf_mass_functional(&uhf, &[0], &[]));
        assert!(!inf_mass_functional(&uhf, &[0], &[0]));
        let tri = SubMatrix::from_map(&map_from(&[&[1, 0], &[1, 1]]), &[0, 1]);
        assert!(inf_mass_functional(&tri, &[0], &[]));
        // No nonnegative left eigenvector carries mass on coordinate 1.
        assert!(!inf_mass_functional(&tri, &[1], &[]));
        let fib = SubMatrix::from_map(&map_from(&[&[1, 1], &[1, 0]]), &[0, 1]);
        assert!(inf_mass_functional(&fib, &[0], &[]));
        assert!(inf_mass_functional(&fib, &[1], &[]));
    }
}
