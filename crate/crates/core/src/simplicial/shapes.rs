use std::collections::HashMap;
use std::str::FromStr;

use super::{LevelData, SimplicialSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Standard,
    Boundary,
    Horn,
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(ShapeKind::Standard),
            "boundary" => Ok(ShapeKind::Boundary),
            "horn" => Ok(ShapeKind::Horn),
            other => Err(Error::invalid("shape kind", other)),
        }
    }
}

/// `Δⁿ` truncated at `N`: the `m`-simplices are the monotone maps
/// `[m] → [n]`, stored as nondecreasing vertex sequences.
#[derive(Debug, Clone)]
pub struct StandardSimplex {
    pub n: usize,
    pub set: SimplicialSet,
    pub sequences: Vec<Vec<Vec<usize>>>,
}

pub(crate) fn sequence_name(seq: &[usize], n: usize) -> String {
    if n < 10 {
        seq.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        seq.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl StandardSimplex {
    pub fn new(n: usize, truncation: usize) -> Self {
        let mut sequences: Vec<Vec<Vec<usize>>> = Vec::with_capacity(truncation + 1);
        sequences.push((0..=n).map(|v| vec![v]).collect());
        for m in 1..=truncation {
            let mut next = Vec::new();
            for seq in &sequences[m - 1] {
                for v in *seq.last().unwrap()..=n {
                    let mut s = seq.clone();
                    s.push(v);
                    next.push(s);
                }
            }
            sequences.push(next);
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> = sequences
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut levels = Vec::new();
        for m in 0..=truncation {
            let faces = if m == 0 {
                Vec::new()
            } else {
                (0..=m)
                    .map(|i| {
                        sequences[m]
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.remove(i);
                                index[m - 1][&t]
                            })
                            .collect()
                    })
                    .collect()
            };
            let degeneracies = if m == truncation {
                Vec::new()
            } else {
                (0..=m)
                    .map(|j| {
                        sequences[m]
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.insert(j, s[j]);
                                index[m + 1][&t]
                            })
                            .collect()
                    })
                    .collect()
            };
            levels.push(LevelData {
                names: sequences[m].iter().map(|s| sequence_name(s, n)).collect(),
                faces,
                degeneracies,
            });
        }
        let set = SimplicialSet::new(levels).expect("standard simplex tables are well formed");
        StandardSimplex { n, set, sequences }
    }

    /// Index of a vertex sequence at level `seq.len() - 1`.
    pub fn index_of(&self, seq: &[usize]) -> Option<usize> {
        let m = seq.len().checked_sub(1)?;
        self.sequences.get(m)?.iter().position(|s| s == seq)
    }
}

fn missing(seq: &[usize], n: usize) -> Vec<usize> {
    (0..=n).filter(|v| !seq.contains(v)).collect()
}

/// `Δⁿ`, `∂Δⁿ` or the horn `Λⁿ_k`, truncated at `truncation ≥ n`.
pub fn build_shape(kind: ShapeKind, n: usize, k: Option<usize>, truncation: usize) -> Result<SimplicialSet> {
    if truncation < n {
        return Err(Error::invalid("shape", format!("truncation {truncation} is below dimension {n}")));
    }
    match (kind, k) {
        (ShapeKind::Horn, None) => return Err(Error::invalid("horn", "missing face index k")),
        (ShapeKind::Horn, Some(k)) if k > n => {
            return Err(Error::invalid("horn", format!("k = {k} out of range 0..={n}")))
        }
        (ShapeKind::Horn, Some(_)) if n == 0 => return Err(Error::invalid("horn", "horns need n ≥ 1")),
        (ShapeKind::Standard | ShapeKind::Boundary, Some(_)) => {
            return Err(Error::invalid("shape", "k only applies to horns"))
        }
        _ => {}
    }
    let simplex = StandardSimplex::new(n, truncation);
    let keep: Vec<Vec<bool>> = simplex
        .sequences
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|seq| {
                    let gaps = missing(seq, n);
                    match kind {
                        ShapeKind::Standard => true,
                        ShapeKind::Boundary => !gaps.is_empty(),
                        // in the horn iff some vertex other than k is missed
                        ShapeKind::Horn => gaps.iter().any(|&v| Some(v) != k),
                    }
                })
                .collect()
        })
        .collect();
    simplex.set.subcomplex(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_two_simplex() {
        let x = build_shape(ShapeKind::Standard, 2, None, 2).unwrap();
        assert_eq!(x.count_nondegenerate(0), 3);
        assert_eq!(x.count_nondegenerate(1), 3);
        assert_eq!(x.count_nondegenerate(2), 1);
        assert!(x.validate().is_empty());
    }

    #[test]
    fn boundary_two() {
        let x = build_shape(ShapeKind::Boundary, 2, None, 2).unwrap();
        assert_eq!(x.count_nondegenerate(2), 0);
        assert_eq!(x.count_nondegenerate(1), 3);
        assert!(x.validate().is_empty());
    }

    #[test]
    fn inner_horn_two_one() {
        let x = build_shape(ShapeKind::Horn, 2, Some(1), 2).unwrap();
        let edges: Vec<&str> = x.nondegenerate(1).map(|e| x.name(1, e)).collect();
        assert_eq!(edges, vec!["01", "12"]);
        assert!(x.validate().is_empty());
    }

    #[test]
    fn shape_argument_errors() {
        assert!(build_shape(ShapeKind::Horn, 2, Some(3), 2).is_err());
        assert!(build_shape(ShapeKind::Horn, 2, None, 2).is_err());
        assert!(build_shape(ShapeKind::Standard, 2, Some(0), 2).is_err());
        assert!(build_shape(ShapeKind::Standard, 3, None, 2).is_err());
    }

    #[test]
    fn level_counts_are_binomial() {
        // |Δⁿ_m| = C(n + m + 1, m + 1)
        let x = StandardSimplex::new(2, 3).set;
        assert_eq!((0..=3).map(|m| x.len(m)).collect::<Vec<_>>(), vec![3, 6, 10, 15]);
    }
}
