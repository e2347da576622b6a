//! Exact combinatorics of ranked symplectic matroids.
//!
//! A ranked symplectic matroid lives on the signed ground set
//! `{1..n, 1*..n*}` and is presented here through an enveloping ordinary
//! matroid whose admissible flats form a C(n) lattice.  The crate builds
//! these objects from basis lists, certifies the defining axioms, and
//! computes the derived invariants exactly: Möbius functions, matroid
//! polytopes with their facet descriptions, Bergman fans with Minkowski
//! weight groups, independent-set counts, and the Lagrangian (orthogonal)
//! specialization.
//!
//! All arithmetic is exact (`num::BigRational`, integer lattice normal
//! forms); geometric predicates reduce to exact linear programs.  Every
//! structural theorem exposed by the API is implemented as a checkable
//! operation, so desk-scale instances can be verified from scratch rather
//! than trusted.

pub mod corpus;
pub mod exact;
pub mod fan;
pub mod geometry;
pub mod ground;
pub mod lattice;
pub mod mason;
pub mod matroid;
pub mod moebius;
pub mod order;
pub mod ortho;
pub mod symp;
