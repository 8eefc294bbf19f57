//! Dehn graphs of knot exteriors and the invariants they carry.
//!
//! Starting from a planar-diagram (PD) code this crate builds the oriented
//! knot diagram, labels its corners and regions, assembles the Dehn graph of
//! the knot exterior and turns it into a three-term Morse-Smale chain complex
//! over Q(t). From an acyclic complex it constructs a chain contraction
//! (propagator) and evaluates the Reidemeister torsion and the defect
//! invariant of the maximal abelian representation. An Alexander polynomial
//! computed by Fox calculus serves as an independent oracle.
//!
//! All arithmetic is exact. The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod dehngraph;
pub mod diagram;
pub mod invariants;
pub mod mscomplex;
pub mod oracle;
pub mod pipeline;

pub use algebra::{FieldMatrix, Polynomial, RatFunc, Rational};
pub use dehngraph::{DehnGraph, GroupRingTerm, Word};
pub use diagram::{KnotDiagram, PdCode, WirtingerPresentation};
pub use invariants::{DefectValue, Propagator, TorsionValue};
pub use mscomplex::{ChainComplex, Representation};
pub use oracle::AlexanderPolynomial;
