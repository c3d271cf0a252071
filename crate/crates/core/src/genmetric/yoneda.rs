use std::sync::Arc;

use serde::Serialize;

use super::{Dist, GenMetricSpace};
use crate::error::{Error, Result};

/// A function `φ : X^op → [0, ∞]` on a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Copresheaf {
    space: Arc<GenMetricSpace>,
    values: Vec<Dist>,
}

impl Copresheaf {
    pub fn new(space: Arc<GenMetricSpace>, values: Vec<Dist>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::Arity { expected: space.len(), got: values.len() });
        }
        Ok(Copresheaf { space, values })
    }

    pub fn space(&self) -> &Arc<GenMetricSpace> {
        &self.space
    }

    pub fn values(&self) -> &[Dist] {
        &self.values
    }

    pub fn at(&self, y: usize) -> &Dist {
        &self.values[y]
    }

    /// `[0, ∞](φ(y), φ(y′)) ≤ d(y′, y)` for all `y, y′`.
    pub fn is_nonexpansive(&self) -> bool {
        let n = self.space.len();
        (0..n).all(|y| (0..n).all(|y2| &self.values[y].hom(&self.values[y2]) <= self.space.d(y2, y)))
    }
}

/// `y(x) = X(−, x)`
pub fn yoneda_embed(space: &Arc<GenMetricSpace>, x: usize) -> Result<Copresheaf> {
    if x >= space.len() {
        return Err(Error::unknown("point", x.to_string()));
    }
    let values = (0..space.len()).map(|y| space.d(y, x).clone()).collect();
    Ok(Copresheaf { space: space.clone(), values })
}

/// `X̂(φ, ψ) = sup_y [0, ∞](φ(y), ψ(y))`
pub fn presheaf_distance(phi: &Copresheaf, psi: &Copresheaf) -> Result<Dist> {
    if phi.space != psi.space {
        return Err(Error::invalid("copresheaves", "different ambient spaces"));
    }
    Ok(phi.values.iter().zip(&psi.values).map(|(a, b)| a.hom(b)).max().unwrap_or_else(Dist::zero))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDeviation {
    pub x: String,
    pub y: String,
    pub distance: Dist,
    pub embedded: Dist,
    pub deviation: Dist,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsometryReport {
    pub isometric: bool,
    pub max_deviation: Dist,
    pub pairs: Vec<PairDeviation>,
}

/// Compares `X(x, x′)` with `X̂(y(x), y(x′))` for every pair.
pub fn check_isometry(space: &Arc<GenMetricSpace>) -> Result<IsometryReport> {
    let embeds = (0..space.len()).map(|x| yoneda_embed(space, x)).collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::with_capacity(space.len() * space.len());
    let mut max_deviation = Dist::zero();
    for x in 0..space.len() {
        for y in 0..space.len() {
            let distance = space.d(x, y).clone();
            let embedded = presheaf_distance(&embeds[x], &embeds[y])?;
            let deviation = distance.deviation(&embedded);
            max_deviation = max_deviation.max(deviation.clone());
            pairs.push(PairDeviation {
                x: space.points()[x].clone(),
                y: space.points()[y].clone(),
                distance,
                embedded,
                deviation,
            });
        }
    }
    Ok(IsometryReport { isometric: max_deviation.is_zero(), max_deviation, pairs })
}

/// `|X̂(y(x), φ) − φ(x)|`, zero for nonexpansive `φ`.
pub fn yoneda_lemma_deviation(phi: &Copresheaf, x: usize) -> Result<Dist> {
    let yx = yoneda_embed(phi.space(), x)?;
    Ok(presheaf_distance(&yx, phi)?.deviation(phi.at(x)))
}
