use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{Learner, LearnerMap, Sample, StepContext};
use crate::error::{Error, Result};

/// An invertible affine bijection `φ(p) = M p + c` of parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineBijection {
    matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
    offset: DVector<f64>,
}

impl AffineBijection {
    pub fn new(matrix: DMatrix<f64>, offset: DVector<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != offset.len() {
            return Err(Error::invalid("reparameterization", "matrix must be square and match the offset"));
        }
        let inverse = matrix
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::invalid("reparameterization", "matrix is singular"))?;
        Ok(AffineBijection { matrix, inverse, offset })
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn forward(&self, p: &[f64]) -> Vec<f64> {
        (&self.matrix * DVector::from_column_slice(p) + &self.offset).iter().copied().collect()
    }

    pub fn backward(&self, q: &[f64]) -> Vec<f64> {
        (&self.inverse * (DVector::from_column_slice(q) - &self.offset)).iter().copied().collect()
    }
}

/// The learner transported along `φ : P → P′`:
/// `I′(p′, a) = I(φ⁻¹p′, a)`, `U′ = φ ∘ U ∘ (φ⁻¹ × id)`, `r′(p′, a, b) = r(φ⁻¹p′, a, b)`.
#[derive(Debug, Clone)]
pub struct Reparameterized {
    inner: Arc<dyn LearnerMap>,
    phi: AffineBijection,
}

impl Reparameterized {
    pub fn new(inner: Arc<dyn LearnerMap>, phi: AffineBijection) -> Result<Self> {
        if phi.dim() != inner.param_dim() {
            return Err(Error::Arity { expected: inner.param_dim(), got: phi.dim() });
        }
        Ok(Reparameterized { inner, phi })
    }
}

impl LearnerMap for Reparameterized {
    fn param_dim(&self) -> usize {
        self.inner.param_dim()
    }
    fn input_dim(&self) -> usize {
        self.inner.input_dim()
    }
    fn output_dim(&self) -> usize {
        self.inner.output_dim()
    }
    fn implement(&self, p: &[f64], a: &[f64]) -> Vec<f64> {
        self.inner.implement(&self.phi.backward(p), a)
    }
    fn update(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        self.phi.forward(&self.inner.update(&self.phi.backward(p), a, b, ctx))
    }
    fn request(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        self.inner.request(&self.phi.backward(p), a, b, ctx)
    }
}

/// `learner` transported along `φ`, with its current parameters mapped too.
pub fn reparameterize(learner: &Learner, phi: AffineBijection) -> Result<Learner> {
    let params = phi.forward(learner.params());
    Learner::new(Arc::new(Reparameterized::new(learner.map().clone(), phi)?), params)
}

/// Largest deviation from `I₂(φp, a) = I₁(p, a)`, `U₂(φp, a, b) = φ U₁(p, a, b)`
/// and `r₂(φp, a, b) = r₁(p, a, b)` over the samples.
pub fn equivalence_deviation(
    l1: &dyn LearnerMap,
    l2: &dyn LearnerMap,
    phi: &AffineBijection,
    samples: &[Sample],
    seed: u64,
) -> f64 {
    let dev = |x: &[f64], y: &[f64]| {
        if x.len() != y.len() {
            return f64::INFINITY;
        }
        x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    };
    let mut worst: f64 = 0.0;
    for (k, s) in samples.iter().enumerate() {
        let ctx = StepContext::new(seed.wrapping_add(k as u64));
        let q = phi.forward(&s.p);
        worst = worst.max(dev(&l1.implement(&s.p, &s.a), &l2.implement(&q, &s.a)));
        let u1 = phi.forward(&l1.update(&s.p, &s.a, &s.b, &mut ctx.clone()));
        worst = worst.max(dev(&u1, &l2.update(&q, &s.a, &s.b, &mut ctx.clone())));
        let r1 = l1.request(&s.p, &s.a, &s.b, &mut ctx.clone());
        worst = worst.max(dev(&r1, &l2.request(&q, &s.a, &s.b, &mut ctx.clone())));
    }
    worst
}
