use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::Dist;
use crate::error::{Error, Result};

/// A finite generalized metric space: `d(x, x) = 0` and
/// `d(x, z) ≤ d(x, y) + d(y, z)`, nothing more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMetricSpace {
    points: Vec<String>,
    table: Vec<Vec<Dist>>,
    index: HashMap<String, usize>,
}

/// A failed axiom, named by the points involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricViolation {
    pub axiom: &'static str,
    pub points: Vec<String>,
}

impl GenMetricSpace {
    pub fn new(points: Vec<String>, table: Vec<Vec<Dist>>) -> Result<Self> {
        let space = GenMetricSpace::unchecked(points, table)?;
        if let Some(v) = space.violation() {
            return Err(Error::invalid("generalized metric", format!("{} fails at {}", v.axiom, v.points.join(", "))));
        }
        Ok(space)
    }

    /// Builds the table without checking the axioms.
    pub fn unchecked(points: Vec<String>, table: Vec<Vec<Dist>>) -> Result<Self> {
        let n = points.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::invalid("distance table", format!("need a {n}×{n} table")));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::Duplicate { kind: "point", id: p.clone() });
            }
        }
        Ok(GenMetricSpace { points, table, index })
    }

    /// The first axiom failure, if any.
    pub fn violation(&self) -> Option<MetricViolation> {
        let n = self.len();
        let name = |i: usize| self.points[i].clone();
        if let Some(x) = (0..n).find(|&x| !self.table[x][x].is_zero()) {
            return Some(MetricViolation { axiom: "d(x,x) = 0", points: vec![name(x)] });
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.table[x][z] > &self.table[x][y] + &self.table[y][z] {
                        return Some(MetricViolation {
                            axiom: "d(x,z) ≤ d(x,y) + d(y,z)",
                            points: vec![name(x), name(y), name(z)],
                        });
                    }
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::unknown("point", name))
    }

    pub fn d(&self, x: usize, y: usize) -> &Dist {
        &self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<Dist>] {
        &self.table
    }

    /// `d^op(x, y) = d(y, x)`
    pub fn opposite(&self) -> GenMetricSpace {
        let n = self.len();
        let table = (0..n).map(|x| (0..n).map(|y| self.table[y][x].clone()).collect()).collect();
        GenMetricSpace { points: self.points.clone(), table, index: self.index.clone() }
    }

    /// `d(p, q) = 0` if `p ≤ q`, else `∞`. The relation is closed under
    /// reflexivity; it must already be transitive.
    pub fn preorder<S: AsRef<str>>(points: &[S], leq: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let n = names.len();
        let at = |s: &S| names.iter().position(|p| p == s.as_ref()).ok_or_else(|| Error::unknown("point", s.as_ref()));
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (p, q) in leq {
            rel[at(p)?][at(q)?] = true;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if rel[a][b] && rel[b][c] && !rel[a][c] {
                        return Err(Error::invalid(
                            "preorder",
                            format!("not transitive: {} ≤ {} ≤ {}", names[a], names[b], names[c]),
                        ));
                    }
                }
            }
        }
        let table = rel.iter().map(|row| row.iter().map(|&le| if le { Dist::zero() } else { Dist::Inf }).collect()).collect();
        GenMetricSpace::new(names, table)
    }

    /// `d(u, v) = 0` if `u` is a prefix of `v`, else `2⁻ⁿ` with `n` the
    /// length of the longest common prefix.
    pub fn strings<S: AsRef<str>>(words: &[S], alphabet: Option<&str>) -> Result<Self> {
        let words: Vec<String> = words.iter().map(|w| w.as_ref().to_string()).collect();
        if let Some(sigma) = alphabet {
            let allowed: BTreeSet<char> = sigma.chars().collect();
            if let Some(w) = words.iter().find(|w| w.chars().any(|c| !allowed.contains(&c))) {
                return Err(Error::invalid("string", format!("`{w}` leaves the alphabet `{sigma}`")));
            }
        }
        let chars: Vec<Vec<char>> = words.iter().map(|w| w.chars().collect()).collect();
        let table = chars
            .iter()
            .map(|u| {
                chars
                    .iter()
                    .map(|v| {
                        let n = u.iter().zip(v).take_while(|(a, b)| a == b).count();
                        if n == u.len() {
                            Dist::zero()
                        } else {
                            Dist::dyadic(n)
                        }
                    })
                    .collect()
            })
            .collect();
        GenMetricSpace::new(words, table)
    }

    /// Points of `[0, ∞]` with `d(u, v) = [0, ∞](u, v)`.
    pub fn halfline(values: &[Dist]) -> Result<Self> {
        let names = values.iter().map(Dist::to_string).collect();
        let table = values.iter().map(|u| values.iter().map(|v| u.hom(v)).collect()).collect();
        GenMetricSpace::new(names, table)
    }

    /// Subsets of `base` under `d(V, W) = inf{ε | ∀v ∈ V ∃w ∈ W. d(v, w) ≤ ε}`;
    /// every subset when `subsets` is `None`.
    pub fn hausdorff(base: &GenMetricSpace, subsets: Option<&[Vec<usize>]>) -> Result<Self> {
        let sets: Vec<Vec<usize>> = match subsets {
            Some(s) => s.iter().map(|v| v.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()).collect(),
            None => {
                let n = base.len();
                if n > 16 {
                    return Err(Error::Capacity { what: "powerset", needed: 1 << n.min(63), limit: 1 << 16 });
                }
                (0..1usize << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
            }
        };
        if let Some(bad) = sets.iter().flatten().find(|&&i| i >= base.len()) {
            return Err(Error::unknown("point", bad.to_string()));
        }
        let names =
            sets.iter().map(|v| format!("{{{}}}", v.iter().map(|&i| base.points[i].as_str()).collect::<Vec<_>>().join(","))).collect();
        let table = sets
            .iter()
            .map(|v| {
                sets.iter()
                    .map(|w| {
                        v.iter()
                            .map(|&x| w.iter().map(|&y| base.d(x, y).clone()).min().unwrap_or(Dist::Inf))
                            .max()
                            .unwrap_or_else(Dist::zero)
                    })
                    .collect()
            })
            .collect();
        GenMetricSpace::new(names, table)
    }

    /// `|x − y|` on the given rationals.
    pub fn line(points: &[(i64, i64)]) -> Result<Self> {
        let vals: Vec<Dist> = points.iter().map(|&(n, d)| Dist::ratio(n, d)).collect();
        let names = vals.iter().map(Dist::to_string).collect();
        let table = vals.iter().map(|u| vals.iter().map(|v| u.deviation(v)).collect()).collect();
        GenMetricSpace::new(names, table)
    }
}
