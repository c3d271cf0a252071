//! Finite categories presented by explicit composition tables.
//!
//! Objects and morphisms are addressed internally by dense indices ([`Ob`],
//! [`Mor`]); the string identifiers from the text format are kept alongside
//! for reporting and serialization.

mod category;
mod comma;
mod diagram;
mod format;
mod functor;

pub use category::{CategoryViolation, FinCategory};
pub use comma::{comma_category, pullback_category, Comma, Pullback};
pub use diagram::{DiagramViolation, SetColimit, SetDiagram, SetLimit};
pub use format::{CategoryFile, FunctorFile, InstanceFile, MorphismRecord};
pub use functor::{
    enumerate_functors, FinFunctor, FunctorSearch, FunctorViolation, NaturalTransformation,
};

use serde::Serialize;

/// Object index inside a [`FinCategory`].
pub type Ob = usize;
/// Morphism index inside a [`FinCategory`].
pub type Mor = usize;

/// Every violated axiom instance found by a validator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<V> Default for ValidationReport<V> {
    fn default() -> Self {
        ValidationReport { violations: Vec::new() }
    }
}
