//! Desk-scale computational category theory for compositional learning systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`fincat`] finite categories given by composition tables, functors,
//!   natural transformations, comma categories and (co)limits of finite
//!   set-valued diagrams.
//! * [`simplicial`] truncated simplicial sets, nerves, horns and Kan checks.
//! * [`lifting`] lifting squares over sets, categories and simplicial sets.
//! * [`elements`] categories of elements and the migration functors.
//! * [`learn`] learners, backpropagation and the transformer block.
//! * [`coalgebra`] transition systems, homomorphisms and bisimulation.
//! * [`genmetric`] generalized metric spaces and the metric Yoneda embedding.
//! * [`homology`] integer chain complexes and Smith normal form.
//!
//! [`random`] holds seeded generators of small random instances used by the
//! test suites and benchmarks.

pub mod coalgebra;
pub mod elements;
pub mod error;
pub mod fincat;
pub mod genmetric;
pub mod homology;
pub mod learn;
pub mod lifting;
pub mod random;
pub mod simplicial;

pub use error::{Error, Result};
pub use fincat::{FinCategory, FinFunctor, Mor, Ob, SetDiagram};
pub use simplicial::{SimplicialMap, SimplicialSet};

/// Default node budget for exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 2_000_000;
