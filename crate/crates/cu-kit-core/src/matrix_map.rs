//! Morphisms between product instances induced by nonnegative integer
//! matrices (multiplicity matrices of an embedding). Application uses the
//! saturating arithmetic of [`ExtNat`], in particular `0 * Inf = 0`.
//! Zero rows (non-unital embeddings) and zero columns (killed ideals) are
//! both allowed.

use alloc::vec::Vec;
use core::fmt;

use crate::extnat::ExtNat;
use crate::vector::ExtNatVector;

/// A `k_out x k_in` nonnegative integer matrix acting on [`ExtNatVector`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixCuMap {
    out_dim: usize,
    in_dim: usize,
    // Row-major.
    entries: Vec<u128>,
}

/// Shape violations when building, composing, or applying maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    EmptyMatrix,
    RaggedRows,
    DimensionMismatch { expected: usize, got: usize },
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::EmptyMatrix => write!(f, "matrix must have at least one row and column"),
            MapError::RaggedRows => write!(f, "matrix rows have unequal lengths"),
            MapError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl MatrixCuMap {
    pub fn from_rows(rows: &[Vec<u128>]) -> Result<Self, MapError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MapError::EmptyMatrix);
        }
        let in_dim = rows[0].len();
        if rows.iter().any(|r| r.len() != in_dim) {
            return Err(MapError::RaggedRows);
        }
        Ok(MatrixCuMap {
            out_dim: rows.len(),
            in_dim,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = alloc::vec![0u128; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        MatrixCuMap { out_dim: dim, in_dim: dim, entries }
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn entry(&self, row: usize, col: usize) -> u128 {
        self.entries[row * self.in_dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u128]> {
        self.entries.chunks(self.in_dim)
    }

    /// Matrix-vector product under the saturating conventions.
    pub fn apply(&self, v: &ExtNatVector) -> Result<ExtNatVector, MapError> {
        if v.dim() != self.in_dim {
            return Err(MapError::DimensionMismatch { expected: self.in_dim, got: v.dim() });
        }
        let mut out = Vec::with_capacity(self.out_dim);
        for row in self.rows() {
            let mut acc = ExtNat::Fin(0);
            for (coef, x) in row.iter().zip(v.coords()) {
                acc = acc.add(x.times(*coef));
            }
            out.push(acc);
        }
        Ok(ExtNatVector::new(out))
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &MatrixCuMap) -> Result<MatrixCuMap, MapError> {
        if other.out_dim != self.in_dim {
            return Err(MapError::DimensionMismatch {
                expected: self.in_dim,
                got: other.out_dim,
            });
        }
        let mut entries = alloc::vec![0u128; self.out_dim * other.in_dim];
        for r in 0..self.out_dim {
            for c in 0..other.in_dim {
                let mut acc: u128 = 0;
                for m in 0..self.in_dim {
                    acc = acc
                        .checked_add(
                            self.entry(r, m)
                                .checked_mul(other.entry(m, c))
                                .expect("matrix product overflow"),
                        )
                        .expect("matrix product overflow");
                }
                entries[r * other.in_dim + c] = acc;
            }
        }
        Ok(MatrixCuMap { out_dim: self.out_dim, in_dim: other.in_dim, entries })
    }

    /// Does some power of the matrix have all entries positive? Requires a
    /// square matrix. Uses the reachability bound `(k-1)^2 + 1`.
    pub fn is_primitive(&self) -> bool {
        if self.out_dim != self.in_dim {
            return false;
        }
        let k = self.in_dim;
        let bound = (k - 1) * (k - 1) + 1;
        // Boolean matrix powers; values only signify positivity.
        let mut pow: Vec<bool> = self.entries.iter().map(|&e| e > 0).collect();
        let base = pow.clone();
        for _ in 1..=bound {
            if pow.iter().all(|&b| b) {
                return true;
            }
            let mut next = alloc::vec![false; k * k];
            for r in 0..k {
                for c in 0..k {
                    next[r * k + c] =
                        (0..k).any(|m| pow[r * k + m] && base[m * k + c]);
                }
            }
            pow = next;
        }
        pow.iter().all(|&b| b)
    }

    /// Coordinates that can influence coordinate `c` after any number of
    /// applications (including `c` itself). Square matrices only.
    pub fn reach(&self, c: usize) -> Vec<usize> {
        assert_eq!(self.out_dim, self.in_dim);
        let k = self.in_dim;
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
}

impl fmt::Display for MatrixCuMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}

/// Helper for tests and fixtures.
pub fn map_from(rows: &[&[u128]]) -> MatrixCuMap {
    MatrixCuMap::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Negative-control application using the wrong convention
/// `m * Inf = 0` for every `m`; preservation of compact containment fails
/// under it (see the morphism checks).
pub fn apply_dropping_inf(map: &MatrixCuMap, v: &ExtNatVector) -> Result<ExtNatVector, MapError> {
    if v.dim() != map.in_dim() {
        return Err(MapError::DimensionMismatch { expected: map.in_dim(), got: v.dim() });
    }
    let mut out = Vec::with_capacity(map.out_dim());
    for row in map.rows() {
        let mut acc: u128 = 0;
        for (coef, x) in row.iter().zip(v.coords()) {
            if let ExtNat::Fin(f) = x {
                acc += coef * f;
            }
        }
        out.push(ExtNat::Fin(acc));
    }
    Ok(ExtNatVector::new(out))
}
