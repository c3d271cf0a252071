use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Per-step state handed to update and request maps: the step counter
/// `t ≥ 1` and the random stream for stochastic learners.
#[derive(Debug, Clone)]
pub struct StepContext {
    pub step: u64,
    pub rng: ChaCha8Rng,
}

impl StepContext {
    pub fn new(seed: u64) -> Self {
        StepContext { step: 1, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn advance(&mut self) {
        self.step += 1;
    }
}

impl Default for StepContext {
    fn default() -> Self {
        StepContext::new(0)
    }
}

/// The `(I, U, r)` part of a learner `A → B` with parameter space `P`.
pub trait LearnerMap: fmt::Debug + Send + Sync {
    fn param_dim(&self) -> usize;
    fn input_dim(&self) -> usize;
    fn output_dim(&self) -> usize;

    /// `I : P × A → B`
    fn implement(&self, p: &[f64], a: &[f64]) -> Vec<f64>;

    /// `U : P × A × B → P`
    fn update(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64>;

    /// `r : P × A × B → A`
    fn request(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64>;
}

/// A learner together with its current parameter value.
#[derive(Debug, Clone)]
pub struct Learner {
    map: Arc<dyn LearnerMap>,
    params: Vec<f64>,
}

impl Learner {
    pub fn new(map: Arc<dyn LearnerMap>, params: Vec<f64>) -> Result<Self> {
        if params.len() != map.param_dim() {
            return Err(Error::Arity { expected: map.param_dim(), got: params.len() });
        }
        Ok(Learner { map, params })
    }

    pub fn identity(n: usize) -> Self {
        Learner { map: Arc::new(IdentityLearner(n)), params: Vec::new() }
    }

    /// The monoidal unit: the identity on `ℝ⁰`.
    pub fn empty() -> Self {
        Learner::identity(0)
    }

    /// `σ(a, b) = (b, a)` on `ℝᵐ × ℝⁿ`.
    pub fn braid(m: usize, n: usize) -> Self {
        Learner { map: Arc::new(Braid { left: m, right: n }), params: Vec::new() }
    }

    pub fn map(&self) -> &Arc<dyn LearnerMap> {
        &self.map
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn set_params(&mut self, params: Vec<f64>) -> Result<()> {
        if params.len() != self.map.param_dim() {
            return Err(Error::Arity { expected: self.map.param_dim(), got: params.len() });
        }
        self.params = params;
        Ok(())
    }

    pub fn param_dim(&self) -> usize {
        self.map.param_dim()
    }

    pub fn input_dim(&self) -> usize {
        self.map.input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.map.output_dim()
    }

    pub fn implement(&self, a: &[f64]) -> Vec<f64> {
        self.map.implement(&self.params, a)
    }

    pub fn update(&self, a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        self.map.update(&self.params, a, b, ctx)
    }

    pub fn request(&self, a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        self.map.request(&self.params, a, b, ctx)
    }

    /// Replace the parameters by `U(p, a, b)`.
    pub fn step(&mut self, a: &[f64], b: &[f64], ctx: &mut StepContext) {
        self.params = self.map.update(&self.params, a, b, ctx);
    }

    /// `self` then `next`, as a learner `A → C` on `P × Q`.
    pub fn then(&self, next: &Learner) -> Result<Learner> {
        compose_seq(self, next)
    }

    /// `self ∥ other` on concatenated domains.
    pub fn par(&self, other: &Learner) -> Learner {
        compose_par(self, other)
    }
}

pub fn compose_seq(first: &Learner, second: &Learner) -> Result<Learner> {
    if first.output_dim() != second.input_dim() {
        return Err(Error::Arity { expected: second.input_dim(), got: first.output_dim() });
    }
    let mut params = first.params.clone();
    params.extend_from_slice(&second.params);
    let map = Seq { first: first.map.clone(), second: second.map.clone() };
    Ok(Learner { map: Arc::new(map), params })
}

pub fn compose_par(left: &Learner, right: &Learner) -> Learner {
    let mut params = left.params.clone();
    params.extend_from_slice(&right.params);
    Learner { map: Arc::new(Par { left: left.map.clone(), right: right.map.clone() }), params }
}

#[derive(Debug, Clone, Copy)]
struct IdentityLearner(usize);

impl LearnerMap for IdentityLearner {
    fn param_dim(&self) -> usize {
        0
    }
    fn input_dim(&self) -> usize {
        self.0
    }
    fn output_dim(&self) -> usize {
        self.0
    }
    fn implement(&self, _: &[f64], a: &[f64]) -> Vec<f64> {
        a.to_vec()
    }
    fn update(&self, _: &[f64], _: &[f64], _: &[f64], _: &mut StepContext) -> Vec<f64> {
        Vec::new()
    }
    fn request(&self, _: &[f64], _: &[f64], b: &[f64], _: &mut StepContext) -> Vec<f64> {
        b.to_vec()
    }
}

#[derive(Debug, Clone, Copy)]
struct Braid {
    left: usize,
    right: usize,
}

impl LearnerMap for Braid {
    fn param_dim(&self) -> usize {
        0
    }
    fn input_dim(&self) -> usize {
        self.left + self.right
    }
    fn output_dim(&self) -> usize {
        self.left + self.right
    }
    fn implement(&self, _: &[f64], a: &[f64]) -> Vec<f64> {
        let (x, y) = a.split_at(self.left);
        [y, x].concat()
    }
    fn update(&self, _: &[f64], _: &[f64], _: &[f64], _: &mut StepContext) -> Vec<f64> {
        Vec::new()
    }
    fn request(&self, _: &[f64], _: &[f64], c: &[f64], _: &mut StepContext) -> Vec<f64> {
        let (y, x) = c.split_at(self.right);
        [x, y].concat()
    }
}

#[derive(Debug, Clone)]
struct Seq {
    first: Arc<dyn LearnerMap>,
    second: Arc<dyn LearnerMap>,
}

impl LearnerMap for Seq {
    fn param_dim(&self) -> usize {
        self.first.param_dim() + self.second.param_dim()
    }
    fn input_dim(&self) -> usize {
        self.first.input_dim()
    }
    fn output_dim(&self) -> usize {
        self.second.output_dim()
    }

    fn implement(&self, pq: &[f64], a: &[f64]) -> Vec<f64> {
        let (p, q) = pq.split_at(self.first.param_dim());
        self.second.implement(q, &self.first.implement(p, a))
    }

    // (U·V)(p, q, a, c) = (U(p, a, s(q, I(p, a), c)), V(q, I(p, a), c))
    fn update(&self, pq: &[f64], a: &[f64], c: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let (p, q) = pq.split_at(self.first.param_dim());
        let b = self.first.implement(p, a);
        let s = self.second.request(q, &b, c, ctx);
        let mut out = self.first.update(p, a, &s, ctx);
        out.extend(self.second.update(q, &b, c, ctx));
        out
    }

    // (r·s)(p, q, a, c) = r(p, a, s(q, I(p, a), c))
    fn request(&self, pq: &[f64], a: &[f64], c: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let (p, q) = pq.split_at(self.first.param_dim());
        let b = self.first.implement(p, a);
        let s = self.second.request(q, &b, c, ctx);
        self.first.request(p, a, &s, ctx)
    }
}

#[derive(Debug, Clone)]
struct Par {
    left: Arc<dyn LearnerMap>,
    right: Arc<dyn LearnerMap>,
}

impl Par {
    fn split<'a>(&self, pq: &'a [f64], a: &'a [f64], b: &'a [f64]) -> [(&'a [f64], &'a [f64], &'a [f64]); 2] {
        let (p, q) = pq.split_at(self.left.param_dim());
        let (a1, a2) = a.split_at(self.left.input_dim());
        let (b1, b2) = b.split_at(self.left.output_dim().min(b.len()));
        [(p, a1, b1), (q, a2, b2)]
    }
}

impl LearnerMap for Par {
    fn param_dim(&self) -> usize {
        self.left.param_dim() + self.right.param_dim()
    }
    fn input_dim(&self) -> usize {
        self.left.input_dim() + self.right.input_dim()
    }
    fn output_dim(&self) -> usize {
        self.left.output_dim() + self.right.output_dim()
    }

    fn implement(&self, pq: &[f64], a: &[f64]) -> Vec<f64> {
        let [(p, a1, _), (q, a2, _)] = self.split(pq, a, &[]);
        let mut out = self.left.implement(p, a1);
        out.extend(self.right.implement(q, a2));
        out
    }

    fn update(&self, pq: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let [(p, a1, b1), (q, a2, b2)] = self.split(pq, a, b);
        let mut out = self.left.update(p, a1, b1, ctx);
        out.extend(self.right.update(q, a2, b2, ctx));
        out
    }

    fn request(&self, pq: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let [(p, a1, b1), (q, a2, b2)] = self.split(pq, a, b);
        let mut out = self.left.request(p, a1, b1, ctx);
        out.extend(self.right.request(q, a2, b2, ctx));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_twice_is_identity() {
        let s = Learner::braid(2, 1);
        let back = Learner::braid(1, 2);
        let ss = s.then(&back).unwrap();
        let mut ctx = StepContext::default();
        let a = [1.0, 2.0, 3.0];
        assert_eq!(s.implement(&a), vec![3.0, 1.0, 2.0]);
        assert_eq!(ss.implement(&a), a.to_vec());
        assert_eq!(ss.request(&a, &[4.0, 5.0, 6.0], &mut ctx), vec![4.0, 5.0, 6.0]);
        assert_eq!(s.request(&a, &s.implement(&a), &mut ctx), a.to_vec());
    }

    #[test]
    fn arity_mismatch() {
        assert!(Learner::identity(2).then(&Learner::identity(3)).is_err());
    }
}
