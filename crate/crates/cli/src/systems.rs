use std::path::Path;
use std::sync::Arc;

use gaia_core::coalgebra::{greatest_bisimulation, metric_coinduction_iterate, CoinductionOptions, Modulus};
use gaia_core::genmetric::{check_isometry, SpaceFile};
use serde::Deserialize;
use serde_json::json;

use crate::input;
use crate::{Failure, Outcome};

pub fn bisim(left: &Path, right: Option<&Path>) -> Result<Outcome, Failure> {
    let c1 = input::lts(left)?;
    let c2 = match right {
        Some(p) => input::lts(p)?,
        None => c1.clone(),
    };
    let r = greatest_bisimulation(&c1, &c2)?;
    let pairs: Vec<[&str; 2]> =
        r.pairs.iter().map(|&(s, t)| [c1.states()[s].as_str(), c2.states()[t].as_str()]).collect();
    let verified = r.is_bisimulation(&c1, &c2)?;
    Ok(Outcome::ok(json!({ "pairs": pairs, "count": pairs.len(), "verified": verified })))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Invariant {
    Nonnegative,
}

/// `H(v) = A v + b` iterated from `start`.
///
/// ```text
/// {"matrix": [[0.5]], "offset": [1], "start": [0], "modulus": 0.5, "invariant": "nonnegative"}
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct AffineProblem {
    matrix: Vec<Vec<f64>>,
    offset: Vec<f64>,
    start: Vec<f64>,
    /// a known Lipschitz constant in the sup norm; estimated when absent
    #[serde(default)]
    modulus: Option<f64>,
    #[serde(default = "default_burn_in")]
    burn_in: usize,
    #[serde(default)]
    invariant: Option<Invariant>,
}

fn default_burn_in() -> usize {
    5
}

pub fn coinductive_solve(path: &Path, tolerance: f64, max_iterations: usize) -> Result<Outcome, Failure> {
    let problem: AffineProblem = input::load(path)?;
    let n = problem.offset.len();
    if problem.matrix.len() != n || problem.matrix.iter().any(|r| r.len() != n) || problem.start.len() != n {
        return Err(Failure::Input(format!("{}: need an {n}×{n} matrix and vectors of length {n}", path.display())));
    }
    if !(tolerance > 0.0) {
        return Err(Failure::Input("--tolerance must be positive".into()));
    }
    let h = |v: &[f64]| -> Vec<f64> {
        problem.matrix.iter().zip(&problem.offset).map(|(row, b)| row.iter().zip(v).map(|(a, x)| a * x).sum::<f64>() + b).collect()
    };
    let modulus = match problem.modulus {
        Some(c) => Modulus::Given { c },
        None => Modulus::Estimate { burn_in: problem.burn_in },
    };
    let options = CoinductionOptions { modulus, tolerance, max_iterations, try_square: true };
    let nonnegative = |v: &[f64]| v.iter().all(|&x| x >= 0.0);
    let invariant: Option<&dyn Fn(&[f64]) -> bool> = problem.invariant.map(|Invariant::Nonnegative| &nonnegative as _);
    let certificate = metric_coinduction_iterate(&h, &problem.start, &options, invariant)?;
    let ok = certificate.invariant != Some(false);
    Ok(Outcome { report: serde_json::to_value(certificate).expect("serializable"), ok })
}

pub fn yoneda_check(path: &Path) -> Result<Outcome, Failure> {
    let file: SpaceFile = input::load(path)?;
    let space = Arc::new(file.build()?);
    let report = check_isometry(&space)?;
    let ok = report.isometric;
    let mut out = serde_json::to_value(report).expect("serializable");
    out["points"] = json!(space.len());
    Ok(Outcome { report: out, ok })
}
