use serde::Serialize;

use super::{ErrorFn, Learner, StepContext};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainReport {
    pub params: Vec<f64>,
    /// parameters after each epoch
    pub trajectory: Vec<Vec<f64>>,
    /// mean `E` over the dataset after each epoch
    pub losses: Vec<f64>,
    pub initial_loss: f64,
}

/// Mean of `Σ_j e(I_j(p, a), b_j)` over the dataset.
pub fn mean_loss(learner: &Learner, error: &ErrorFn, data: &[(Vec<f64>, Vec<f64>)]) -> f64 {
    let total: f64 = data.iter().map(|(a, b)| error.total(&learner.implement(a), b)).sum();
    total / data.len() as f64
}

/// Runs `p ← U(p, a, b)` over the dataset in order, `epochs` times.
pub fn train(
    learner: &Learner,
    error: &ErrorFn,
    data: &[(Vec<f64>, Vec<f64>)],
    epochs: usize,
    seed: u64,
) -> Result<TrainReport> {
    if data.is_empty() {
        return Err(Error::invalid("dataset", "no rows"));
    }
    for (a, b) in data {
        if a.len() != learner.input_dim() {
            return Err(Error::Arity { expected: learner.input_dim(), got: a.len() });
        }
        if b.len() != learner.output_dim() {
            return Err(Error::Arity { expected: learner.output_dim(), got: b.len() });
        }
    }
    let mut l = learner.clone();
    let mut ctx = StepContext::new(seed);
    let initial_loss = mean_loss(&l, error, data);
    let mut trajectory = Vec::with_capacity(epochs);
    let mut losses = Vec::with_capacity(epochs);
    for _ in 0..epochs {
        for (a, b) in data {
            l.step(a, b, &mut ctx);
            ctx.advance();
        }
        trajectory.push(l.params().to_vec());
        losses.push(mean_loss(&l, error, data));
    }
    Ok(TrainReport { params: l.params().to_vec(), trajectory, losses, initial_loss })
}
