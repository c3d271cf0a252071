use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    compare_learners, random_samples, Activation, Backprop, ErrorFn, Learner, LearnerMap, ParamFn, Schedule,
    ZerothOrder,
};
use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::simplicial::{nerve, HornProblem, Nerve};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Layer {
    Affine { out: usize },
    Linear { out: usize },
    Scale,
    Offset,
    Activation { function: Activation },
}

impl Layer {
    pub fn build(&self, width: usize) -> ParamFn {
        match *self {
            Layer::Affine { out } => ParamFn::affine(width, out),
            Layer::Linear { out } => ParamFn::linear(width, out),
            Layer::Scale => ParamFn::scale(width),
            Layer::Offset => ParamFn::offset(width),
            Layer::Activation { function } => ParamFn::activation(width, function),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Optimizer {
    Backprop,
    ZerothOrder {
        schedule: Schedule,
        delta: f64,
        #[serde(default)]
        literal: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Init {
    Explicit { params: Vec<f64> },
    /// uniform in `[-scale, scale]`
    Random { seed: u64, scale: f64 },
}

impl Default for Init {
    fn default() -> Self {
        Init::Random { seed: 0, scale: 0.5 }
    }
}

fn default_optimizer() -> Optimizer {
    Optimizer::Backprop
}

/// A chain of layers trained with one learning rule and one error.
///
/// ```text
/// {"input": 2, "layers": [{"kind": "affine", "out": 3}, {"kind": "activation", "function": "tanh"}],
///  "epsilon": 0.1, "error": {"kind": "quadratic", "scale": 1.0}, "init": {"seed": 0, "scale": 0.5}}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineSpec {
    pub input: usize,
    pub layers: Vec<Layer>,
    pub epsilon: f64,
    pub error: ErrorFn,
    #[serde(default = "default_optimizer")]
    pub optimizer: Optimizer,
    #[serde(default)]
    pub init: Init,
}

impl PipelineSpec {
    pub fn functions(&self) -> Vec<ParamFn> {
        let mut width = self.input;
        self.layers
            .iter()
            .map(|l| {
                let f = l.build(width);
                width = f.output_dim();
                f
            })
            .collect()
    }

    pub fn initial_params(&self) -> Result<Vec<f64>> {
        let dim: usize = self.functions().iter().map(ParamFn::param_dim).sum();
        match &self.init {
            Init::Explicit { params } if params.len() == dim => Ok(params.clone()),
            Init::Explicit { params } => Err(Error::Arity { expected: dim, got: params.len() }),
            Init::Random { seed, scale } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let s = scale.abs();
                Ok((0..dim).map(|_| if s > 0.0 { rng.random_range(-s..=s) } else { 0.0 }).collect())
            }
        }
    }

    fn layer_map(&self, f: ParamFn) -> Result<Arc<dyn LearnerMap>> {
        Ok(match &self.optimizer {
            Optimizer::Backprop => Arc::new(Backprop::new(f, self.epsilon, self.error)?),
            Optimizer::ZerothOrder { schedule, delta, literal } => {
                Arc::new(ZerothOrder::new(f, *schedule, *delta, self.error)?.literal(*literal))
            }
        })
    }

    /// One learner per layer, at the initial parameters.
    pub fn learners(&self) -> Result<Vec<Learner>> {
        let params = self.initial_params()?;
        let mut at = 0;
        self.functions()
            .into_iter()
            .map(|f| {
                let d = f.param_dim();
                let l = Learner::new(self.layer_map(f)?, params[at..at + d].to_vec());
                at += d;
                l
            })
            .collect()
    }

    /// The layer learners composed in sequence.
    pub fn learner(&self) -> Result<Learner> {
        compose_chain(&self.learners()?, self.input)
    }

    /// The learner of the composite function, as one block.
    pub fn fused_learner(&self) -> Result<Learner> {
        let whole = self.functions().into_iter().try_fold(ParamFn::identity(self.input), |acc, f| acc.then(&f))?;
        Learner::new(self.layer_map(whole)?, self.initial_params()?)
    }
}

fn compose_chain(chain: &[Learner], width: usize) -> Result<Learner> {
    chain.iter().try_fold(Learner::identity(width), |acc, l| acc.then(l))
}

/// The nerve of `[k]` for a chain of `k` learners, with the learner for
/// each arrow `i<=j` being the composite of learners `i … j−1`.
#[derive(Debug, Clone)]
pub struct LearnerNerve {
    pub category: FinCategory,
    pub nerve: Nerve,
    /// indexed by morphism of `[k]`
    pub learners: Vec<Learner>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillerReport {
    pub horns_checked: usize,
    pub unique: bool,
    pub max_deviation: f64,
    /// per 2-simplex `i<=j|j<=l`, deviation of its long edge from the composite
    pub deviations: BTreeMap<String, f64>,
}

pub fn learner_nerve(pipeline: &[Learner]) -> Result<LearnerNerve> {
    for (i, w) in pipeline.windows(2).enumerate() {
        if w[0].output_dim() != w[1].input_dim() {
            return Err(Error::invalid(
                "learner chain",
                format!("learner {i} ends in dimension {} but learner {} starts in {}", w[0].output_dim(), i + 1, w[1].input_dim()),
            ));
        }
    }
    let k = pipeline.len();
    let category = FinCategory::ordinal(k);
    let width = |i: usize| match pipeline.get(i) {
        Some(l) => l.input_dim(),
        None => pipeline.last().map_or(0, Learner::output_dim),
    };
    let learners = category
        .morphisms()
        .map(|m| {
            let (i, j) = (category.dom(m), category.cod(m));
            compose_chain(&pipeline[i..j], width(i))
        })
        .collect::<Result<Vec<_>>>()?;
    let nerve = nerve(&category, 3);
    Ok(LearnerNerve { category, nerve, learners })
}

impl LearnerNerve {
    pub fn learner(&self, i: usize, j: usize) -> Option<&Learner> {
        let m = *self.category.hom(i, j).first()?;
        Some(&self.learners[m])
    }

    /// For every inner horn `Λ²₁`, checks that it has a unique filler and
    /// that the filler's long edge carries `compose_seq` of the two short
    /// ones, numerically on random samples.
    pub fn check_fillers(&self, samples: usize, seed: u64) -> Result<FillerReport> {
        let x = &self.nerve.set;
        let c = &self.category;
        let mut report = FillerReport { horns_checked: 0, unique: true, max_deviation: 0.0, deviations: BTreeMap::new() };
        for f in c.morphisms() {
            for g in c.morphisms().filter(|&g| c.dom(g) == c.cod(f)) {
                let faces = BTreeMap::from([(0, g), (2, f)]);
                let fillers = HornProblem::new(x, 2, 1, &faces)?.fillers();
                report.horns_checked += 1;
                let [sigma] = fillers[..] else {
                    report.unique = false;
                    continue;
                };
                let long = x.face(2, 1, sigma);
                let composite = self.learners[f].then(&self.learners[g])?;
                let pts = random_samples(composite.map().as_ref(), samples, 1.0, seed);
                let dev = compare_learners(composite.map().as_ref(), self.learners[long].map().as_ref(), &pts, seed)?;
                report.max_deviation = report.max_deviation.max(dev.max());
                report.deviations.insert(x.name(2, sigma).to_string(), dev.max());
            }
        }
        Ok(report)
    }
}
