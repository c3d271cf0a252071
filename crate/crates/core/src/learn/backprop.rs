use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{ErrorFn, Learner, LearnerMap, ParamFn, StepContext};
use crate::error::{Error, Result};

/// `E_I(p, a, b) = Σ_j e(I_j(p, a), b_j)`
pub fn total_error(f: &ParamFn, e: &ErrorFn, p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    e.total(&f.eval(p, a), b)
}

/// `(E, ∇_p E, ∇_a E)` by one reverse pass.
pub fn error_gradients(f: &ParamFn, e: &ErrorFn, p: &[f64], a: &[f64], b: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let out = f.eval(p, a);
    let w: Vec<f64> = out.iter().zip(b).map(|(&x, &y)| e.dx(x, y)).collect();
    let (_, gp, ga) = f.vjp(p, a, &w);
    (e.total(&out, b), gp, ga)
}

/// The gradient-descent learner `L_{ε,e}(I)`.
#[derive(Debug, Clone)]
pub struct Backprop {
    pub f: ParamFn,
    pub epsilon: f64,
    pub error: ErrorFn,
}

impl Backprop {
    pub fn new(f: ParamFn, epsilon: f64, error: ErrorFn) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::invalid("learning rate", format!("{epsilon} is not positive")));
        }
        error.check()?;
        Ok(Backprop { f, epsilon, error })
    }
}

impl LearnerMap for Backprop {
    fn param_dim(&self) -> usize {
        self.f.param_dim()
    }
    fn input_dim(&self) -> usize {
        self.f.input_dim()
    }
    fn output_dim(&self) -> usize {
        self.f.output_dim()
    }

    fn implement(&self, p: &[f64], a: &[f64]) -> Vec<f64> {
        self.f.eval(p, a)
    }

    // U(p, a, b) = p − ε ∇_p E(p, a, b)
    fn update(&self, p: &[f64], a: &[f64], b: &[f64], _: &mut StepContext) -> Vec<f64> {
        let (_, gp, _) = error_gradients(&self.f, &self.error, p, a, b);
        p.iter().zip(gp).map(|(&x, g)| x - self.epsilon * g).collect()
    }

    // r(p, a, b) = f_a(∇_a E(p, a, b))
    fn request(&self, p: &[f64], a: &[f64], b: &[f64], _: &mut StepContext) -> Vec<f64> {
        let (_, _, ga) = error_gradients(&self.f, &self.error, p, a, b);
        a.iter().zip(ga).map(|(&x, g)| self.error.invert(x, g)).collect()
    }
}

/// The learner `L_{ε,e}(f)` at parameters `params`.
pub fn backprop(f: &ParamFn, params: Vec<f64>, epsilon: f64, error: ErrorFn) -> Result<Learner> {
    Learner::new(Arc::new(Backprop::new(f.clone(), epsilon, error)?), params)
}

/// Step sizes `ε_t = c / t^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    Constant { c: f64 },
    /// `c / t`
    Harmonic { c: f64 },
    /// `c / t^k` with `½ < k ≤ 1`
    Power { c: f64, k: f64 },
}

impl Schedule {
    pub fn check(&self) -> Result<()> {
        let (c, ok) = match *self {
            Schedule::Constant { c } | Schedule::Harmonic { c } => (c, true),
            Schedule::Power { c, k } => (c, k > 0.5 && k <= 1.0),
        };
        if !(c > 0.0 && c.is_finite()) || !ok {
            return Err(Error::invalid("step schedule", format!("{self:?}")));
        }
        Ok(())
    }

    pub fn rate(&self, t: u64) -> f64 {
        let t = t.max(1) as f64;
        match *self {
            Schedule::Constant { c } => c,
            Schedule::Harmonic { c } => c / t,
            Schedule::Power { c, k } => c / t.powf(k),
        }
    }
}

/// Gradient-free learner: `p ← p − ε_t ĝ` with the two-point
/// random-direction estimate
/// `ĝ = d · (E(p + δu) − E(p − δu)) / (2δ) · u`, `u` uniform on the unit
/// sphere of `ℝᵈ`. With `literal` set, the update is `p − ε_t E(p, a, b)`
/// on every coordinate instead.
#[derive(Debug, Clone)]
pub struct ZerothOrder {
    pub f: ParamFn,
    pub schedule: Schedule,
    pub delta: f64,
    pub error: ErrorFn,
    pub literal: bool,
}

impl ZerothOrder {
    pub fn new(f: ParamFn, schedule: Schedule, delta: f64, error: ErrorFn) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::invalid("perturbation", format!("δ = {delta} is not positive")));
        }
        schedule.check()?;
        error.check()?;
        Ok(ZerothOrder { f, schedule, delta, error, literal: false })
    }

    pub fn literal(mut self, on: bool) -> Self {
        self.literal = on;
        self
    }

    /// The estimate of `∇_p E` at one random direction.
    pub fn estimate_param_gradient(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let e = |q: &[f64]| total_error(&self.f, &self.error, q, a, b);
        two_point(p, self.delta, &mut ctx.rng, e)
    }

    pub fn estimate_input_gradient(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let e = |x: &[f64]| total_error(&self.f, &self.error, p, x, b);
        two_point(a, self.delta, &mut ctx.rng, e)
    }
}

pub fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let u: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return u.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// `d · (E(x + δu) − E(x − δu)) / (2δ) · u`
pub fn two_point<R: Rng + ?Sized>(x: &[f64], delta: f64, rng: &mut R, e: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let d = x.len();
    if d == 0 {
        return Vec::new();
    }
    let u = random_unit(d, rng);
    let plus: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a + delta * b).collect();
    let minus: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a - delta * b).collect();
    let slope = (e(&plus) - e(&minus)) / (2.0 * delta);
    u.into_iter().map(|ui| d as f64 * slope * ui).collect()
}

impl LearnerMap for ZerothOrder {
    fn param_dim(&self) -> usize {
        self.f.param_dim()
    }
    fn input_dim(&self) -> usize {
        self.f.input_dim()
    }
    fn output_dim(&self) -> usize {
        self.f.output_dim()
    }

    fn implement(&self, p: &[f64], a: &[f64]) -> Vec<f64> {
        self.f.eval(p, a)
    }

    fn update(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let rate = self.schedule.rate(ctx.step);
        if self.literal {
            let v = total_error(&self.f, &self.error, p, a, b);
            return p.iter().map(|x| x - rate * v).collect();
        }
        let g = self.estimate_param_gradient(p, a, b, ctx);
        p.iter().zip(g).map(|(x, g)| x - rate * g).collect()
    }

    fn request(&self, p: &[f64], a: &[f64], b: &[f64], ctx: &mut StepContext) -> Vec<f64> {
        let g = self.estimate_input_gradient(p, a, b, ctx);
        a.iter().zip(g).map(|(&x, g)| self.error.invert(x, g)).collect()
    }
}

pub fn zeroth_order(f: &ParamFn, params: Vec<f64>, schedule: Schedule, delta: f64, error: ErrorFn) -> Result<Learner> {
    Learner::new(Arc::new(ZerothOrder::new(f.clone(), schedule, delta, error)?), params)
}

/// Maximum relative error between the reverse-pass gradients of `E` and
/// central differences with step `h`, over parameters and inputs.
pub fn gradient_check(f: &ParamFn, e: &ErrorFn, p: &[f64], a: &[f64], b: &[f64], h: f64) -> f64 {
    let (_, gp, ga) = error_gradients(f, e, p, a, b);
    let mut worst: f64 = 0.0;
    for i in 0..p.len() {
        let mut up = p.to_vec();
        let mut down = p.to_vec();
        up[i] += h;
        down[i] -= h;
        let fd = (total_error(f, e, &up, a, b) - total_error(f, e, &down, a, b)) / (2.0 * h);
        worst = worst.max(relative_error(gp[i], fd));
    }
    for i in 0..a.len() {
        let mut up = a.to_vec();
        let mut down = a.to_vec();
        up[i] += h;
        down[i] -= h;
        let fd = (total_error(f, e, p, &up, b) - total_error(f, e, p, &down, b)) / (2.0 * h);
        worst = worst.max(relative_error(ga[i], fd));
    }
    worst
}

/// `|x − y| / max(|x|, |y|, 1)`
pub fn relative_error(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1.0)
}
