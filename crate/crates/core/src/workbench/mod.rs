//! Fixtures, enumeration up to symmetry and the cross-module property suite.

pub mod enumerate;
pub mod fixtures;
pub mod suite;
pub mod symmetry;

pub use enumerate::{admissible_lattices, enumerate_cn, enumerate_symplectic, Enumeration};
pub use fixtures::Fixture;
pub use suite::{run_property_suite, Corpus, Entry, Report};
pub use symmetry::{canonical_form, group, SignedPermutation};
