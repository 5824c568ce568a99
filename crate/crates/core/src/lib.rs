//! Finite and symbolic MV-algebras.
//!
//! Two regimes share one API. Finite algebras are given by operation tables
//! and support exhaustive checks. Symbolic algebras are finite products of
//! chains and Komori blocks, in which ideals are described by per-block
//! markers, morphisms come from a closed vocabulary of canonical maps, and
//! infinite carriers are probed by seeded sampling.

pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod double;
pub mod error;
pub mod finite;
pub mod galois;
pub mod homs;
pub mod ideals;
pub mod io;
pub mod markers;
pub mod morphism;
pub mod mundici;
pub mod pretorsion;
pub mod symbolic;
pub mod terms;

pub use algebra::{Algebra, Element, MvAlgebra, Op};
pub use error::{Error, Result};
pub use finite::{ElemSet, FiniteAlgebra, FiniteMorphism, Pullback};
pub use ideals::IdealDesc;
pub use markers::{Marker, Markers};
pub use morphism::{Morphism, SymMorphism};
pub use symbolic::{Block, BlockElem, SymElem, SymbolicAlgebra};
