use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `|v|` accepted by the log-cosh inverse; `atanh` blows up at 1.
const LOGCOSH_CLAMP: f64 = 1.0 - 1e-12;

/// A scalar error `e(x, y)` whose partial `∂e/∂x(x₀, −)` is invertible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorFn {
    /// `scale/2 · (x − y)²`
    Quadratic { scale: f64 },
    /// `log cosh(x − y)`
    LogCosh,
}

impl ErrorFn {
    pub fn quadratic(scale: f64) -> Result<Self> {
        let e = ErrorFn::Quadratic { scale };
        e.check()?;
        Ok(e)
    }

    /// `½(x − y)²`
    pub fn half_squared() -> Self {
        ErrorFn::Quadratic { scale: 1.0 }
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            ErrorFn::Quadratic { scale } if !(scale.is_finite() && scale != 0.0) => {
                Err(Error::invalid("error function", format!("∂e/∂x is not invertible for scale {scale}")))
            }
            _ => Ok(()),
        }
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        match *self {
            ErrorFn::Quadratic { scale } => 0.5 * scale * (x - y) * (x - y),
            ErrorFn::LogCosh => {
                let z = (x - y).abs();
                z + (-2.0 * z).exp().ln_1p() - std::f64::consts::LN_2
            }
        }
    }

    pub fn dx(&self, x: f64, y: f64) -> f64 {
        match *self {
            ErrorFn::Quadratic { scale } => scale * (x - y),
            ErrorFn::LogCosh => (x - y).tanh(),
        }
    }

    pub fn dy(&self, x: f64, y: f64) -> f64 {
        -self.dx(x, y)
    }

    /// The `y` with `∂e/∂x(x₀, y) = v`.
    pub fn invert(&self, x0: f64, v: f64) -> f64 {
        match *self {
            ErrorFn::Quadratic { scale } => x0 - v / scale,
            ErrorFn::LogCosh => x0 - v.clamp(-LOGCOSH_CLAMP, LOGCOSH_CLAMP).atanh(),
        }
    }

    /// `Σ_j e(x_j, y_j)`
    pub fn total(&self, x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(y).map(|(&a, &b)| self.value(a, b)).sum()
    }
}
