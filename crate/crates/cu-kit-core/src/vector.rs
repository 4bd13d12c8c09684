//! Finite products of extended naturals: the invariant of a
//! finite-dimensional algebra with one coordinate per matrix block.
//! Order, addition, and compact containment are all coordinatewise.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::extnat::ExtNat;
use crate::instance::{CuInstance, ExtNatCert, IncreasingSeq, RapidSeq, SupError};

/// A fixed-length vector of extended naturals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtNatVector(Vec<ExtNat>);

impl ExtNatVector {
    pub fn new(coords: Vec<ExtNat>) -> Self {
        assert!(!coords.is_empty(), "vectors have dimension >= 1");
        ExtNatVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        ExtNatVector::new(alloc::vec![ExtNat::Fin(0); dim])
    }

    pub fn from_finite(values: &[u128]) -> Self {
        ExtNatVector::new(values.iter().map(|&v| ExtNat::Fin(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[ExtNat] {
        &self.0
    }

    pub fn coord(&self, c: usize) -> ExtNat {
        self.0[c]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Indices of the `Inf` coordinates.
    pub fn inf_support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&c| !self.0[c].is_finite()).collect()
    }

    pub fn add(&self, other: &ExtNatVector) -> ExtNatVector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in vector addition");
        ExtNatVector::new(
            self.0.iter().zip(&other.0).map(|(a, b)| a.add(*b)).collect(),
        )
    }

    pub fn leq(&self, other: &ExtNatVector) -> bool {
        self.dim() == other.dim()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.leq(*b))
    }

    pub fn way_below(&self, other: &ExtNatVector) -> bool {
        self.dim() == other.dim()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.way_below(*b))
    }

    /// Term `n` of the coordinatewise rapid basis: finite coordinates ramp
    /// `0, 1, ..., f` and then stay, `Inf` coordinates enumerate `1, 2, 3, ...`.
    pub fn basis_term(&self, n: u32) -> ExtNatVector {
        ExtNatVector::new(
            self.0
                .iter()
                .map(|x| match x {
                    ExtNat::Fin(f) => ExtNat::Fin(((n - 1) as u128).min(*f)),
                    ExtNat::Inf => ExtNat::Fin(n as u128),
                })
                .collect(),
        )
    }

    /// Basis term at an arbitrary (possibly large) depth.
    pub fn big_basis_term(&self, n: u128) -> ExtNatVector {
        ExtNatVector::new(
            self.0
                .iter()
                .map(|x| match x {
                    ExtNat::Fin(f) => ExtNat::Fin(n.saturating_sub(1).min(*f)),
                    ExtNat::Inf => ExtNat::Fin(n),
                })
                .collect(),
        )
    }

    /// Coordinates with `Inf` replaced by zero.
    pub fn finite_part(&self) -> ExtNatVector {
        ExtNatVector::new(
            self.0
                .iter()
                .map(|x| match x {
                    ExtNat::Fin(f) => ExtNat::Fin(*f),
                    ExtNat::Inf => ExtNat::Fin(0),
                })
                .collect(),
        )
    }
}

impl fmt::Display for ExtNatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Parse the `"1,inf,0"` encoding; the expected dimension is checked.
pub fn parse_vector(s: &str, dim: usize) -> Result<ExtNatVector, String> {
    use alloc::format;
    let coords: Result<Vec<ExtNat>, _> =
        s.split(',').map(|tok| tok.trim().parse::<ExtNat>()).collect();
    let coords = coords.map_err(|e| format!("bad vector entry in {s:?}: {e}"))?;
    if coords.len() != dim {
        return Err(format!(
            "vector {s:?} has dimension {}, expected {dim}",
            coords.len()
        ));
    }
    Ok(ExtNatVector::new(coords))
}

/// The product instance of dimension `k >= 1`; sequence certificates are
/// per-coordinate scalar certificates.
#[derive(Clone, Copy, Debug)]
pub struct VectorCu {
    dim: usize,
}

impl VectorCu {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "product instances need dimension >= 1");
        VectorCu { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl CuInstance for VectorCu {
    type Elem = ExtNatVector;
    type Cert = Vec<ExtNatCert>;

    fn zero(&self) -> ExtNatVector {
        ExtNatVector::zeros(self.dim)
    }

    fn add(&self, a: &ExtNatVector, b: &ExtNatVector) -> ExtNatVector {
        a.add(b)
    }

    fn leq(&self, a: &ExtNatVector, b: &ExtNatVector) -> bool {
        a.leq(b)
    }

    fn way_below(&self, a: &ExtNatVector, b: &ExtNatVector) -> bool {
        a.way_below(b)
    }

    fn sup(
        &self,
        s: &IncreasingSeq<ExtNatVector, Vec<ExtNatCert>>,
    ) -> Result<ExtNatVector, SupError> {
        let certs = s.cert().ok_or(SupError::MissingCertificate)?;
        assert_eq!(certs.len(), self.dim, "certificate arity mismatch");
        let mut coords = Vec::with_capacity(self.dim);
        for (c, cert) in certs.iter().enumerate() {
            match cert {
                ExtNatCert::Stabilizes(m) => coords.push(s.term((*m).max(1)).coord(c)),
                ExtNatCert::Unbounded => coords.push(ExtNat::Inf),
            }
        }
        Ok(ExtNatVector::new(coords))
    }

    fn basis(&self, x: &ExtNatVector) -> RapidSeq<ExtNatVector, Vec<ExtNatCert>> {
        let certs: Vec<ExtNatCert> = x
            .coords()
            .iter()
            .map(|c| match c {
                ExtNat::Fin(f) => {
                    assert!(*f < u32::MAX as u128, "basis ramp index exceeds u32");
                    ExtNatCert::Stabilizes(*f as u32 + 1)
                }
                ExtNat::Inf => ExtNatCert::Unbounded,
            })
            .collect();
        let x = x.clone();
        RapidSeq(IncreasingSeq::new(move |n| x.basis_term(n), Some(certs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(parts: &[&str]) -> ExtNatVector {
        ExtNatVector::new(parts.iter().map(|p| p.parse().unwrap()).collect())
    }

    #[test]
    fn coordinatewise_way_below() {
        assert!(v(&["1", "2"]).way_below(&v(&["1", "inf"])));
        assert!(!v(&["1", "inf"]).way_below(&v(&["1", "inf"])));
    }

    #[test]
    fn mixed_sup() {
        let inst = VectorCu::new(3);
        // ((n, 1, 0))_{n>=1}: unbounded in coordinate 1 only.
        let s = IncreasingSeq::new(
            |n| ExtNatVector::new(alloc::vec![
                ExtNat::Fin(n as u128),
                ExtNat::Fin(1),
                ExtNat::Fin(0)
            ]),
            Some(alloc::vec![
                ExtNatCert::Unbounded,
                ExtNatCert::Stabilizes(1),
                ExtNatCert::Stabilizes(1)
            ]),
        );
        assert_eq!(inst.sup(&s).unwrap(), v(&["inf", "1", "0"]));
    }

    #[test]
    fn display_and_parse() {
        let x = v(&["1", "inf", "0"]);
        assert_eq!(alloc::format!("{x}"), "1,inf,0");
        assert_eq!(parse_vector("1, inf ,0", 3).unwrap(), x);
        assert!(parse_vector("1,2", 3).is_err());
    }

    #[test]
    fn basis_terms() {
        let x = v(&["2", "inf"]);
        assert_eq!(x.basis_term(1), v(&["0", "1"]));
        assert_eq!(x.basis_term(3), v(&["2", "3"]));
        assert_eq!(x.basis_term(7), v(&["2", "7"]));
        let inst = VectorCu::new(2);
        let b = inst.basis(&x);
        assert_eq!(inst.sup(&b.0).unwrap(), x);
    }
}
