//! String diagrams as hypergraph adjacency representations.

pub mod bench;
pub mod circuit;
pub mod format;
pub mod har;
pub mod hypergraph;
pub mod perm;
pub mod random;
pub mod sample;
pub mod semiring;
pub mod signature;
pub mod sparse;
pub mod term;

pub use har::{
    canonical_order, canonicalize, check_permeq, check_permeq_strict, find_witness, iso_eq, Clause,
    Har, HarError, NodeLabel, Violation,
};
pub use hypergraph::{hyp_iso, HypError, HypViolation, Hyperedge, MaHypergraph};
pub use perm::{Perm, PermError};
pub use semiring::Semiring;
pub use signature::{OpId, Operation, Signature, SignatureError};
pub use sparse::{BoolMat, NatMat, SparseError, SparseMat};
pub use term::{Term, TermError};
