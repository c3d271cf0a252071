//! Learners `A → B`: a parameter space `P` with implementation
//! `I : P × A → B`, update `U : P × A × B → P` and request
//! `r : P × A × B → A`, composed in sequence and in parallel.
//!
//! Gradient descent turns a [`ParamFn`] into a learner; the zeroth-order
//! learner does the same from function values alone.

mod backprop;
mod checks;
mod equiv;
mod error_fn;
mod expr;
mod learner;
mod pipeline;
mod train;
mod transformer;

pub use backprop::{
    backprop, error_gradients, gradient_check, random_unit, relative_error, total_error, two_point, zeroth_order,
    Backprop, Schedule, ZerothOrder,
};
pub use checks::{
    compare_learners, functoriality_against, functoriality_check, random_samples, Deviation, FunctorialityReport,
    Sample,
};
pub use equiv::{equivalence_deviation, reparameterize, AffineBijection, Reparameterized};
pub use error_fn::ErrorFn;
pub use expr::{Activation, Node, ParamFn, ParamFnBuilder};
pub use learner::{compose_par, compose_seq, Learner, LearnerMap, StepContext};
pub use pipeline::{learner_nerve, FillerReport, Init, Layer, LearnerNerve, Optimizer, PipelineSpec};
pub use train::{mean_loss, train, TrainReport};
pub use transformer::{
    all_permutations, apply_stack, permute_columns, random_permutation, random_tokens, softmax_columns,
    stack_equivariance_error, Head, TransformerBlock,
};
