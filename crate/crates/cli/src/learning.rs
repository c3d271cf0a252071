use std::path::Path;

use gaia_core::learn::{
    all_permutations, functoriality_against, gradient_check, random_permutation, random_samples, random_tokens,
    stack_equivariance_error, train as run_training, Optimizer, ParamFn, PipelineSpec, TransformerBlock,
};
use gaia_core::random;
use serde_json::json;

use crate::input;
use crate::{Failure, Outcome};

type Dataset = Vec<(Vec<f64>, Vec<f64>)>;

/// Rows of `inputs ++ targets`; a non-numeric first row is taken as a header.
fn read_dataset(path: &Path, inputs: usize, outputs: usize) -> Result<Dataset, Failure> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let line = record.position().map_or(i as u64 + 1, |p| p.line());
        let values: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let values = match values {
            Ok(v) => v,
            Err(_) if i == 0 => continue,
            Err(e) => return Err(Failure::Input(format!("{}: line {line}: {e}", path.display()))),
        };
        if values.len() != inputs + outputs {
            return Err(Failure::Input(format!(
                "{}: line {line}: expected {} columns, found {}",
                path.display(),
                inputs + outputs,
                values.len()
            )));
        }
        let (a, b) = values.split_at(inputs);
        rows.push((a.to_vec(), b.to_vec()));
    }
    Ok(rows)
}

pub fn train(
    path: &Path,
    data: &Path,
    epochs: usize,
    seed: Option<u64>,
    epsilon: Option<f64>,
) -> Result<Outcome, Failure> {
    let mut spec: PipelineSpec = input::load(path)?;
    if let Some(e) = epsilon {
        spec.epsilon = e;
    }
    let seed = match (&spec.optimizer, seed) {
        (_, Some(s)) => s,
        (Optimizer::Backprop, None) => 0,
        (Optimizer::ZerothOrder { .. }, None) => {
            return Err(Failure::Input("zeroth-order training needs --seed".into()));
        }
    };
    let learner = spec.learner()?;
    let rows = read_dataset(data, learner.input_dim(), learner.output_dim())?;
    let report = run_training(&learner, &spec.error, &rows, epochs, seed)?;
    let final_loss = report.losses.last().copied().unwrap_or(report.initial_loss);
    let mut out = serde_json::to_value(&report).expect("serializable");
    out["final_loss"] = json!(final_loss);
    out["rows"] = json!(rows.len());
    Ok(Outcome::ok(out))
}

pub fn check_functoriality(
    path: &Path,
    samples: usize,
    seed: u64,
    tolerance: f64,
    step: f64,
    gradient_tolerance: f64,
) -> Result<Outcome, Failure> {
    let spec: PipelineSpec = input::load(path)?;
    let fused = spec.fused_learner()?;
    let chain = spec.learner()?;
    let report = functoriality_against(&fused, &chain, samples, seed, tolerance)?;
    let whole = spec.functions().into_iter().try_fold(ParamFn::identity(spec.input), |acc, f| acc.then(&f))?;
    let gradient_error = random_samples(fused.map().as_ref(), samples, 1.0, seed)
        .iter()
        .map(|s| gradient_check(&whole, &spec.error, &s.p, &s.a, &s.b, step))
        .fold(0.0, f64::max);
    let gradients_ok = gradient_error <= gradient_tolerance;
    let mut out = serde_json::to_value(report).expect("serializable");
    out["layers"] = json!(spec.layers.len());
    out["gradient_error"] = json!(gradient_error);
    out["gradient_tolerance"] = json!(gradient_tolerance);
    out["gradients_ok"] = json!(gradients_ok);
    Ok(Outcome { ok: report.passed && gradients_ok, report: out })
}

#[derive(Debug, Clone, Copy)]
pub struct BlockShape {
    pub dim: usize,
    pub tokens: usize,
    pub heads: usize,
    pub head_size: usize,
    pub hidden: usize,
    pub blocks: usize,
}

pub fn equivariance(shape: BlockShape, seed: u64, permutations: Option<usize>, tolerance: f64) -> Result<Outcome, Failure> {
    if shape.dim == 0 || shape.tokens == 0 || shape.blocks == 0 {
        return Err(Failure::Input("dimension, token count and block count must be positive".into()));
    }
    let blocks: Vec<TransformerBlock> = (0..shape.blocks as u64)
        .map(|i| TransformerBlock::random(shape.dim, shape.heads, shape.head_size, shape.hidden, seed.wrapping_add(i)))
        .collect();
    let x = random_tokens(shape.dim, shape.tokens, seed.wrapping_add(1 << 32));
    let exhaustive = permutations.is_none() && shape.tokens <= 6;
    let perms = if exhaustive {
        all_permutations(shape.tokens)
    } else {
        let mut rng = random::rng(seed.wrapping_add(1 << 33));
        (0..permutations.unwrap_or(50)).map(|_| random_permutation(shape.tokens, &mut rng)).collect()
    };
    let mut max_error: f64 = 0.0;
    for p in &perms {
        max_error = max_error.max(stack_equivariance_error(&blocks, &x, p)?);
    }
    let passed = max_error <= tolerance;
    let report = json!({
        "max_error": max_error,
        "permutations_checked": perms.len(),
        "exhaustive": exhaustive,
        "tolerance": tolerance,
        "passed": passed,
    });
    Ok(Outcome { report, ok: passed })
}
