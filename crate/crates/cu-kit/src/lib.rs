//! IO companion to `cu-kit-core`: the finite-dimensional numerical oracle,
//! JSON encodings of diagrams and reports, and the `cukit` command line.

pub mod cli;
pub mod json;
pub mod oracle;

pub use cu_kit_core as core;
