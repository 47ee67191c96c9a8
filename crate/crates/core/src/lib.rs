//! Decision trees for monotone maps on simplicial complexes, semimatroids and
//! their Tutte polynomials, broken circuit complexes and collapse schedules,
//! with integral homology as the reference for every topological count.

pub mod broken_circuit;
pub mod canonical;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod generators;
pub mod homology;
pub mod io;
pub mod polynomial;
pub mod poset;
pub mod semimatroid;
pub mod suite;
pub mod tree;
pub mod verification;
