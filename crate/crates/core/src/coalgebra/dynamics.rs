use crate::error::{Error, Result};
use crate::learn::{Learner, StepContext};

/// A learner as a one-step dynamical system on its parameters: in state
/// `p`, an observation `(a, b)` emits `I(p, a)` and moves to `U(p, a, b)`.
#[derive(Debug, Clone)]
pub struct BackpropDynamics {
    learner: Learner,
}

impl BackpropDynamics {
    pub fn new(learner: Learner) -> Self {
        BackpropDynamics { learner }
    }

    pub fn learner(&self) -> &Learner {
        &self.learner
    }

    /// `(I(p, a), U(p, a, b))`
    pub fn transition(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Result<(Vec<f64>, Vec<f64>)> {
        let map = self.learner.map();
        if p.len() != map.param_dim() {
            return Err(Error::Arity { expected: map.param_dim(), got: p.len() });
        }
        Ok((map.implement(p, a), map.update(p, a, b, ctx)))
    }

    /// One pass of updates over `data`, as a map on parameters.
    pub fn epoch_map<'a>(&'a self, data: &'a [(Vec<f64>, Vec<f64>)]) -> impl Fn(&[f64]) -> Vec<f64> + 'a {
        move |p: &[f64]| {
            let mut ctx = StepContext::default();
            data.iter().fold(p.to_vec(), |q, (a, b)| self.learner.map().update(&q, a, b, &mut ctx))
        }
    }
}
