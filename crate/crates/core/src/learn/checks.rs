use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{backprop, ErrorFn, Learner, LearnerMap, ParamFn, StepContext};
use crate::error::{Error, Result};

/// A point `(p, a, b)` at which two learners are compared.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub p: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// Uniform samples in `[-scale, scale]` of the learner's arities.
pub fn random_samples(map: &dyn LearnerMap, count: usize, scale: f64, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |n: usize| (0..n).map(|_| rng.random_range(-scale..=scale)).collect::<Vec<f64>>();
    (0..count)
        .map(|_| Sample { p: draw(map.param_dim()), a: draw(map.input_dim()), b: draw(map.output_dim()) })
        .collect()
}

/// Largest absolute deviations between two learners on `I`, `U` and `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviation {
    pub implement: f64,
    pub update: f64,
    pub request: f64,
}

impl Deviation {
    pub fn max(&self) -> f64 {
        self.implement.max(self.update).max(self.request)
    }
}

fn max_abs(x: &[f64], y: &[f64]) -> f64 {
    if x.len() != y.len() {
        return f64::INFINITY;
    }
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Compares `l1` and `l2` at every sample. Both sides see identical random
/// streams, seeded per sample from `seed`.
pub fn compare_learners(l1: &dyn LearnerMap, l2: &dyn LearnerMap, samples: &[Sample], seed: u64) -> Result<Deviation> {
    let arity = |m: &dyn LearnerMap| (m.param_dim(), m.input_dim(), m.output_dim());
    if arity(l1) != arity(l2) {
        return Err(Error::invalid("learner comparison", "arities differ"));
    }
    let mut dev = Deviation { implement: 0.0, update: 0.0, request: 0.0 };
    for (k, s) in samples.iter().enumerate() {
        let ctx = StepContext::new(seed.wrapping_add(k as u64));
        dev.implement = dev.implement.max(max_abs(&l1.implement(&s.p, &s.a), &l2.implement(&s.p, &s.a)));
        let (u1, u2) = (l1.update(&s.p, &s.a, &s.b, &mut ctx.clone()), l2.update(&s.p, &s.a, &s.b, &mut ctx.clone()));
        dev.update = dev.update.max(max_abs(&u1, &u2));
        let (r1, r2) = (l1.request(&s.p, &s.a, &s.b, &mut ctx.clone()), l2.request(&s.p, &s.a, &s.b, &mut ctx.clone()));
        dev.request = dev.request.max(max_abs(&r1, &r2));
    }
    Ok(dev)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctorialityReport {
    pub passed: bool,
    pub samples: usize,
    pub tolerance: f64,
    pub deviation: Deviation,
}

/// Compares `L(g ∘ f)` against `L(f) ; L(g)` at random samples.
pub fn functoriality_check(
    f: &ParamFn,
    g: &ParamFn,
    epsilon: f64,
    error: ErrorFn,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<FunctorialityReport> {
    let whole = backprop(&f.then(g)?, vec![0.0; f.param_dim() + g.param_dim()], epsilon, error)?;
    let lf = backprop(f, vec![0.0; f.param_dim()], epsilon, error)?;
    let lg = backprop(g, vec![0.0; g.param_dim()], epsilon, error)?;
    let parts = lf.then(&lg)?;
    functoriality_against(&whole, &parts, samples, seed, tolerance)
}

/// As [`functoriality_check`], against an arbitrary candidate composite.
pub fn functoriality_against(
    whole: &Learner,
    parts: &Learner,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<FunctorialityReport> {
    let points = random_samples(whole.map().as_ref(), samples, 1.0, seed);
    let deviation = compare_learners(whole.map().as_ref(), parts.map().as_ref(), &points, seed)?;
    Ok(FunctorialityReport { passed: deviation.max() <= tolerance, samples, tolerance, deviation })
}
