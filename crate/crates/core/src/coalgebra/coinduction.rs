use serde::Serialize;

use crate::error::{Error, Result};

/// Consecutive non-contracting steps tolerated before giving up.
const PATIENCE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Modulus {
    /// a known Lipschitz constant `c < 1`
    Given { c: f64 },
    /// the largest ratio observed over `burn_in` steps
    Estimate { burn_in: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinductionOptions {
    pub modulus: Modulus,
    pub tolerance: f64,
    pub max_iterations: usize,
    /// retry with `H ∘ H` when `H` itself fails to contract
    pub try_square: bool,
}

impl Default for CoinductionOptions {
    fn default() -> Self {
        CoinductionOptions {
            modulus: Modulus::Estimate { burn_in: 5 },
            tolerance: 1e-9,
            max_iterations: 10_000,
            try_square: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub fixed_point: Vec<f64>,
    pub iterations: usize,
    pub modulus: f64,
    /// the modulus came from observed ratios, not from the caller
    pub heuristic: bool,
    /// `1` when `H` contracts, `2` when only `H ∘ H` did
    pub power: usize,
    /// `‖x_{n+1} − x_n‖ / ‖x_n − x_{n−1}‖` along the run
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// `‖H(x) − x‖` at the returned point
    pub residual: f64,
    /// guaranteed `‖x − u*‖` bound, `c/(1−c)` times the last step
    pub error_bound: f64,
    /// the invariant, re-checked at the returned point
    pub invariant: Option<bool>,
}

fn sup_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Iterates `x ← H(x)` in the sup norm until the a posteriori bound
/// `c/(1−c)·‖x_{n+1} − x_n‖ ≤ tol` certifies `‖x − u*‖ ≤ tol`.
pub fn metric_coinduction_iterate(
    h: &dyn Fn(&[f64]) -> Vec<f64>,
    x0: &[f64],
    options: &CoinductionOptions,
    invariant: Option<&dyn Fn(&[f64]) -> bool>,
) -> Result<Certificate> {
    if !(options.tolerance > 0.0) {
        return Err(Error::invalid("tolerance", "must be positive"));
    }
    if let Modulus::Given { c } = options.modulus {
        if !(0.0..1.0).contains(&c) {
            return Err(Error::invalid("contraction modulus", format!("{c} is not in [0, 1)")));
        }
    }
    match iterate(h, x0, options, 1) {
        Err(Error::NonContraction { .. }) if options.try_square => {
            let h2 = |x: &[f64]| h(&h(x));
            let mut cert = iterate(&h2, x0, options, 2)?;
            cert.residual = sup_dist(&h(&cert.fixed_point), &cert.fixed_point);
            check_invariant(&mut cert, invariant);
            Ok(cert)
        }
        other => {
            let mut cert = other?;
            check_invariant(&mut cert, invariant);
            Ok(cert)
        }
    }
}

fn check_invariant(cert: &mut Certificate, invariant: Option<&dyn Fn(&[f64]) -> bool>) {
    cert.invariant = invariant.map(|phi| phi(&cert.fixed_point));
}

fn iterate(h: &dyn Fn(&[f64]) -> Vec<f64>, x0: &[f64], options: &CoinductionOptions, power: usize) -> Result<Certificate> {
    let (mut modulus, heuristic, burn_in) = match options.modulus {
        Modulus::Given { c } => (c, false, 0),
        Modulus::Estimate { burn_in } => (f64::NAN, true, burn_in.max(1)),
    };
    let mut x = x0.to_vec();
    let mut prev_step: Option<f64> = None;
    let mut ratios = Vec::new();
    let mut streak = 0;
    for n in 1..=options.max_iterations {
        let next = h(&x);
        if next.len() != x.len() {
            return Err(Error::Arity { expected: x.len(), got: next.len() });
        }
        let step = sup_dist(&next, &x);
        x = next;
        if let Some(p) = prev_step.filter(|&p| p > 0.0) {
            let ratio = step / p;
            ratios.push(ratio);
            streak = if ratio >= 1.0 { streak + 1 } else { 0 };
            if streak >= PATIENCE {
                return Err(Error::NonContraction { ratio, steps: streak });
            }
        }
        prev_step = Some(step);
        if heuristic && n == burn_in {
            modulus = ratios.iter().copied().fold(0.0, f64::max);
        }
        if modulus.is_nan() {
            if step == 0.0 {
                modulus = 0.0;
            } else {
                continue;
            }
        }
        if modulus >= 1.0 {
            return Err(Error::NonContraction { ratio: modulus, steps: ratios.len() });
        }
        if modulus * step <= options.tolerance * (1.0 - modulus) {
            let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
            let residual = sup_dist(&h(&x), &x);
            return Ok(Certificate {
                fixed_point: x,
                iterations: n * power,
                modulus,
                heuristic,
                power,
                ratios,
                max_ratio,
                residual,
                error_bound: if modulus == 0.0 { 0.0 } else { modulus / (1.0 - modulus) * step },
                invariant: None,
            });
        }
    }
    Err(Error::invalid("metric coinduction", format!("no certificate within {} iterations", options.max_iterations)))
}
