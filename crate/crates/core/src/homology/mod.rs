//! Integer homology of truncated simplicial sets through the normalized
//! chain complex `∂σ = Σ_i (−1)^i d_i σ` on nondegenerate simplices.
//!
//! For a set truncated at `N` the boundary `∂_{N+1}` is unknown, so the
//! Betti number in dimension `N` only bounds the true one from above and
//! torsion there is not seen.

mod snf;

pub use snf::{invariant_factors, rank};

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::elements::{category_of_elements, SetInstance};
use crate::fincat::FinCategory;
use crate::simplicial::{nerve, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    /// names of the nondegenerate simplices in each dimension
    pub bases: Vec<Vec<String>>,
    /// `boundaries[n]` is `∂_n : C_n → C_{n−1}` as a `|C_{n−1}| × |C_n|`
    /// matrix; `boundaries[0]` is empty
    pub boundaries: Vec<Vec<Vec<BigInt>>>,
}

/// One cell of the realization with the cells its faces land on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub dimension: usize,
    pub name: String,
    /// `d_i σ` for each `i`, `None` where the face is degenerate
    pub faces: Vec<Option<String>>,
}

pub fn chain_complex(x: &SimplicialSet) -> ChainComplex {
    let top = x.truncation();
    let ids: Vec<Vec<usize>> = (0..=top).map(|n| x.nondegenerate(n).collect()).collect();
    let bases = (0..=top).map(|n| ids[n].iter().map(|&s| x.name(n, s).to_string()).collect()).collect();
    let mut boundaries = vec![Vec::new()];
    for n in 1..=top {
        let position: std::collections::HashMap<usize, usize> =
            ids[n - 1].iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut m = vec![vec![BigInt::zero(); ids[n].len()]; ids[n - 1].len()];
        for (col, &s) in ids[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(&row) = position.get(&x.face(n, i, s)) {
                    if i % 2 == 0 {
                        m[row][col] += 1;
                    } else {
                        m[row][col] -= 1;
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { bases, boundaries }
}

fn multiply(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][c]))
                .collect()
        })
        .collect()
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.bases.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// `∂_{n} ∘ ∂_{n+1} = 0` for every `n`.
    pub fn is_complex(&self) -> bool {
        (1..self.boundaries.len().saturating_sub(1)).all(|n| {
            multiply(&self.boundaries[n], &self.boundaries[n + 1]).iter().flatten().all(Zero::is_zero)
        })
    }

    /// `Σ (−1)ⁿ |C_n|`
    pub fn euler_characteristic(&self) -> i64 {
        self.bases.iter().enumerate().map(|(n, b)| if n % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) }).sum()
    }

    pub fn homology(&self) -> HomologyResult {
        let top = self.top();
        if self.bases.iter().all(Vec::is_empty) {
            return HomologyResult { betti: vec![0; top + 1], torsion: vec![Vec::new(); top + 1], truncated_dimension: top };
        }
        let factors: Vec<Vec<BigInt>> =
            self.boundaries.iter().map(|m| if m.is_empty() { Vec::new() } else { invariant_factors(m) }).collect();
        let rank = |n: usize| factors.get(n).map_or(0, Vec::len);
        let mut betti = Vec::with_capacity(top + 1);
        let mut torsion = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let cycles = self.bases[n].len() - rank(n);
            betti.push(cycles - rank(n + 1));
            torsion.push(factors.get(n + 1).map_or_else(Vec::new, |f| f.iter().filter(|d| !d.is_one()).cloned().collect()));
        }
        HomologyResult { betti, torsion, truncated_dimension: top }
    }

    /// `n row col value` lines, one per nonzero entry of each `∂_n`.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for (n, m) in self.boundaries.iter().enumerate().skip(1) {
            for (r, row) in m.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        let _ = writeln!(out, "{n} {r} {c} {v}");
                    }
                }
            }
        }
        out
    }
}

/// The nondegenerate cells of `x` with their faces.
pub fn cells(x: &SimplicialSet) -> Vec<Cell> {
    let mut out = Vec::new();
    for n in 0..=x.truncation() {
        for s in x.nondegenerate(n) {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let f = x.face(n, i, s);
                        (!x.is_degenerate(n - 1, f)).then(|| x.name(n - 1, f).to_string())
                    })
                    .collect()
            };
            out.push(Cell { dimension: n, name: x.name(n, s).to_string(), faces });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// torsion coefficients `d > 1` of `H_n`, so `H_n ≅ ℤ^{β_n} ⊕ ⊕ ℤ/d`
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<Vec<BigInt>>,
    /// dimension whose Betti number is only an upper bound
    pub truncated_dimension: usize,
}

fn serialize_torsion<S: serde::Serializer>(t: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let as_text: Vec<Vec<String>> = t.iter().map(|v| v.iter().map(BigInt::to_string).collect()).collect();
    as_text.serialize(s)
}

impl HomologyResult {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn has_torsion(&self, n: usize, d: u64) -> bool {
        self.torsion.get(n).is_some_and(|t| t.contains(&BigInt::from(d)))
    }
}

pub fn homology(x: &SimplicialSet) -> HomologyResult {
    chain_complex(x).homology()
}

/// Homology of `|N(C)|` through dimension `truncation`.
pub fn classifying_space_homology(c: &FinCategory, truncation: usize) -> HomologyResult {
    homology(&nerve(c, truncation).set)
}

/// Homology of `hocolim δ ≃ |N(∫δ)|`.
pub fn hocolim_homology(delta: &SetInstance, truncation: usize) -> HomologyResult {
    classifying_space_homology(&category_of_elements(delta).category, truncation)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::SetDiagram;
    use crate::simplicial::{build_shape, ShapeKind, StandardSimplex};

    #[test]
    fn spheres_and_simplices() {
        let d2 = StandardSimplex::new(2, 2).set;
        let cx = chain_complex(&d2);
        assert_eq!(cx.ranks(), vec![3, 3, 1]);
        assert!(cx.is_complex());
        assert_eq!(homology(&d2).betti, vec![1, 0, 0]);
        let b2 = build_shape(ShapeKind::Boundary, 2, None, 2).unwrap().truncate(1);
        assert_eq!(chain_complex(&b2).ranks(), vec![3, 3]);
        assert_eq!(homology(&b2).betti, vec![1, 1]);
        let b3 = build_shape(ShapeKind::Boundary, 3, None, 3).unwrap().truncate(2);
        let h = homology(&b3);
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert_eq!(h.euler_characteristic(), chain_complex(&b3).euler_characteristic());
    }

    #[test]
    fn classifying_spaces() {
        let disc = FinCategory::discrete(&["a", "b", "c"]);
        assert_eq!(chain_complex(&nerve(&disc, 2).set).ranks(), vec![3, 0, 0]);
        assert_eq!(classifying_space_homology(&disc, 2).betti, vec![3, 0, 0]);
        assert_eq!(classifying_space_homology(&FinCategory::ordinal(3), 3).betti, vec![1, 0, 0, 0]);
        let z2 = classifying_space_homology(&FinCategory::cyclic_group(2), 3);
        assert!(z2.has_torsion(1, 2));
        assert_eq!(&z2.betti[..3], &[1, 0, 0]);
    }

    #[test]
    fn homotopy_colimits() {
        let one = Arc::new(FinCategory::ordinal(1));
        let single = SetDiagram::from_names(
            one.clone(),
            &[("0", vec!["x".into()]), ("1", vec!["y".into()])],
            &[("0<=1", vec![("x".into(), "y".into())])],
        )
        .unwrap();
        assert_eq!(hocolim_homology(&single, 2).betti, vec![1, 0, 0]);
        let two = SetDiagram::from_names(
            one.clone(),
            &[("0", vec!["x".into(), "z".into()]), ("1", vec!["y".into(), "w".into()])],
            &[("0<=1", vec![("x".into(), "y".into()), ("z".into(), "w".into())])],
        )
        .unwrap();
        assert_eq!(hocolim_homology(&two, 2).betti[0], 2);
        let empty = SetDiagram::from_names(one, &[("0", vec![]), ("1", vec![])], &[] as &[(&str, Vec<(String, String)>)]).unwrap();
        assert!(hocolim_homology(&empty, 2).betti.iter().all(|&b| b == 0));
    }

    #[test]
    fn triplets() {
        let b2 = build_shape(ShapeKind::Boundary, 2, None, 2).unwrap().truncate(1);
        assert_eq!(chain_complex(&b2).to_triplets().lines().count(), 6);
        assert_eq!(cells(&b2).len(), 6);
    }
}
