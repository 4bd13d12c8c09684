//! Computational core for Cuntz-semigroup-style invariants.
//!
//! The objects handled here are ordered abelian semigroups with a zero that
//! is least, suprema of increasing sequences, and a compact-containment
//! (way-below) relation `<<` compatible with addition. The crate provides
//!
//! * the value-level contract for such objects ([`CuInstance`]) together
//!   with a seeded, instance-generic law harness ([`laws`]),
//! * concrete instances: extended naturals ([`ExtNat`]), finite products
//!   ([`ExtNatVector`]), and extended nonnegative rationals ([`ExtRational`]),
//! * morphisms induced by nonnegative integer matrices ([`MatrixCuMap`])
//!   with their own preservation checks,
//! * the sequential inductive-limit calculus on finitely described threads
//!   ([`limit`]), including the three-valued comparison [`Tri`] with sound
//!   refutation certificates,
//! * Bratteli-diagram ingestion and order/compactness queries for the
//!   resulting AF invariants ([`bratteli`]).
//!
//! Everything is `no_std` (with `alloc`); IO, JSON, the CLI, and the
//! finite-dimensional numerical oracle live in the companion `cu-kit` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bratteli;
pub mod certify;
pub mod controls;
pub mod extnat;
pub mod instance;
pub mod laws;
pub mod limit;
pub mod matrix_map;
pub mod rational;
pub mod samplers;
pub mod vector;

pub use extnat::ExtNat;
pub use instance::{is_compact, CuInstance, IncreasingSeq, RapidSeq, SupError};
pub use laws::{check_laws, LawReport};
pub use limit::{CuDiagram, Thread, Tri};
pub use matrix_map::MatrixCuMap;
pub use rational::ExtRational;
pub use vector::ExtNatVector;
