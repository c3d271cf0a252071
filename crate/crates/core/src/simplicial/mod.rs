//! Truncated simplicial sets.
//!
//! A [`SimplicialSet`] stores levels `X_0 … X_N` with every face map
//! `d_i : X_n → X_{n-1}` and every degeneracy `s_j : X_n → X_{n+1}` below the
//! top level materialized as index tables. Degenerate simplices are flagged
//! at construction.

mod horn;
mod map;
mod nerve;
mod shapes;

pub use horn::{
    inner_horn_report, is_kan_complex, HornProblem, HornWitness, InnerHornReport, KanReport,
};
pub use map::{
    classifying_map, enumerate_maps, homotopic, homotopy, product, MapSearch, Product, SimplicialMap,
    DEFAULT_PRODUCT_CAPACITY,
};
pub use nerve::{functor_from_nerve_map, nerve, nerve_map, Nerve};
pub use shapes::{build_shape, ShapeKind, StandardSimplex};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
struct Level {
    names: Vec<String>,
    faces: Vec<Vec<usize>>,
    degeneracies: Vec<Vec<usize>>,
    degenerate: Vec<bool>,
    root: Vec<Option<(usize, usize)>>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialSet {
    levels: Vec<Level>,
}

/// Raw level data: names, `faces[i][x]`, `degeneracies[j][x]`.
#[derive(Debug, Clone, Default)]
pub struct LevelData {
    pub names: Vec<String>,
    pub faces: Vec<Vec<usize>>,
    pub degeneracies: Vec<Vec<usize>>,
}

/// One failed simplicial identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub identity: String,
    pub dimension: usize,
    pub simplex: String,
}

impl SimplicialSet {
    /// Builds a set truncated at `levels.len() - 1`.
    pub fn new(levels: Vec<LevelData>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Malformed("a simplicial set needs at least level 0".into()));
        }
        let top = levels.len() - 1;
        for (n, level) in levels.iter().enumerate() {
            let expected_faces = if n == 0 { 0 } else { n + 1 };
            let expected_degens = if n == top { 0 } else { n + 1 };
            if level.faces.len() != expected_faces || level.degeneracies.len() != expected_degens {
                return Err(Error::Malformed(format!(
                    "level {n}: expected {expected_faces} face and {expected_degens} degeneracy tables"
                )));
            }
            let len = level.names.len();
            for table in &level.faces {
                if table.len() != len || table.iter().any(|&y| y >= levels[n - 1].names.len()) {
                    return Err(Error::Malformed(format!("level {n}: face table out of range")));
                }
            }
            for table in &level.degeneracies {
                if table.len() != len || table.iter().any(|&y| y >= levels[n + 1].names.len()) {
                    return Err(Error::Malformed(format!("level {n}: degeneracy table out of range")));
                }
            }
        }
        let mut built: Vec<Level> = Vec::with_capacity(levels.len());
        for (n, data) in levels.iter().enumerate() {
            let mut index = HashMap::with_capacity(data.names.len());
            for (i, name) in data.names.iter().enumerate() {
                if index.insert(name.clone(), i).is_some() {
                    return Err(Error::Duplicate { kind: "simplex", id: format!("{n}:{name}") });
                }
            }
            let mut root = vec![None; data.names.len()];
            if n > 0 {
                for (j, table) in levels[n - 1].degeneracies.iter().enumerate() {
                    for (y, &x) in table.iter().enumerate() {
                        root[x].get_or_insert((j, y));
                    }
                }
            }
            built.push(Level {
                names: data.names.clone(),
                faces: data.faces.clone(),
                degeneracies: data.degeneracies.clone(),
                degenerate: root.iter().map(Option::is_some).collect(),
                root,
                index,
            });
        }
        Ok(SimplicialSet { levels: built })
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    /// `|X_n|`.
    pub fn len(&self, n: usize) -> usize {
        self.levels.get(n).map_or(0, |l| l.names.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len(0) == 0
    }

    pub fn name(&self, n: usize, x: usize) -> &str {
        &self.levels[n].names[x]
    }

    pub fn names(&self, n: usize) -> &[String] {
        &self.levels[n].names
    }

    pub fn simplex(&self, n: usize, name: &str) -> Result<usize> {
        self.levels
            .get(n)
            .and_then(|l| l.index.get(name).copied())
            .ok_or_else(|| Error::unknown("simplex", format!("{n}:{name}")))
    }

    /// `d_i x` for `x ∈ X_n`.
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.levels[n].faces[i][x]
    }

    /// `s_j x` for `x ∈ X_n`, `n < N`.
    pub fn degeneracy(&self, n: usize, j: usize, x: usize) -> usize {
        self.levels[n].degeneracies[j][x]
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        self.levels[n].degenerate[x]
    }

    /// Some `(j, y)` with `s_j y = x`, when `x` is degenerate.
    pub fn degeneracy_root(&self, n: usize, x: usize) -> Option<(usize, usize)> {
        self.levels[n].root[x]
    }

    pub fn nondegenerate(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let level = self.levels.get(n);
        (0..self.len(n)).filter(move |&x| !level.unwrap().degenerate[x])
    }

    pub fn count_nondegenerate(&self, n: usize) -> usize {
        self.nondegenerate(n).count()
    }

    /// The faces `(d_0 x, …, d_n x)`.
    pub fn faces_of(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|i| self.face(n, i, x)).collect()
    }

    /// Vertex `k` of `x ∈ X_n` (as a 0-simplex index).
    pub fn vertex(&self, n: usize, x: usize, k: usize) -> usize {
        let (mut s, mut dim) = (x, n);
        while dim > k {
            s = self.face(dim, dim, s);
            dim -= 1;
        }
        while dim > 0 {
            s = self.face(dim, 0, s);
            dim -= 1;
        }
        s
    }

    pub fn vertices(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|k| self.vertex(n, x, k)).collect()
    }

    /// Checks all three families of simplicial identities exhaustively.
    pub fn validate(&self) -> Vec<IdentityViolation> {
        let mut out = Vec::new();
        let top = self.truncation();
        let mut fail = |identity: String, n: usize, x: usize| {
            out.push(IdentityViolation { identity, dimension: n, simplex: self.name(n, x).to_string() })
        };
        for n in 2..=top {
            for x in 0..self.len(n) {
                for j in 0..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, i, self.face(n, j, x));
                        let rhs = self.face(n - 1, j - 1, self.face(n, i, x));
                        if lhs != rhs {
                            fail(format!("d{i} d{j} = d{} d{i}", j - 1), n, x);
                        }
                    }
                }
            }
        }
        for n in 0..top.saturating_sub(1) {
            for x in 0..self.len(n) {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = self.degeneracy(n + 1, i, self.degeneracy(n, j, x));
                        let rhs = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x));
                        if lhs != rhs {
                            fail(format!("s{i} s{j} = s{} s{i}", j + 1), n, x);
                        }
                    }
                }
            }
        }
        for n in 0..top {
            for x in 0..self.len(n) {
                for j in 0..=n {
                    let sx = self.degeneracy(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, i, sx);
                        let ok = if i < j {
                            lhs == self.degeneracy(n - 1, j - 1, self.face(n, i, x))
                        } else if i == j || i == j + 1 {
                            lhs == x
                        } else {
                            lhs == self.degeneracy(n - 1, j, self.face(n, i - 1, x))
                        };
                        if !ok {
                            fail(format!("d{i} s{j}"), n, x);
                        }
                    }
                }
            }
        }
        out
    }

    /// Keeps the simplices flagged in `keep`, which must be closed under
    /// faces and degeneracies.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> Result<SimplicialSet> {
        let mut new_index: Vec<Vec<usize>> = Vec::new();
        for (n, flags) in keep.iter().enumerate() {
            let mut next = 0;
            new_index.push(
                flags
                    .iter()
                    .map(|&k| {
                        if k {
                            next += 1;
                            next - 1
                        } else {
                            usize::MAX
                        }
                    })
                    .collect(),
            );
            if flags.len() != self.len(n) {
                return Err(Error::Malformed("subcomplex mask has the wrong shape".into()));
            }
        }
        let top = keep.len() - 1;
        let mut levels = Vec::new();
        for n in 0..=top {
            let kept: Vec<usize> = (0..self.len(n)).filter(|&x| keep[n][x]).collect();
            let remap = |table: &[usize], target: &[usize]| -> Result<Vec<usize>> {
                kept.iter()
                    .map(|&x| match target[table[x]] {
                        usize::MAX => Err(Error::invalid("subcomplex", "not closed under faces/degeneracies")),
                        y => Ok(y),
                    })
                    .collect()
            };
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n).map(|i| remap(&self.levels[n].faces[i], &new_index[n - 1])).collect::<Result<_>>()?
            };
            let degeneracies = if n == top {
                Vec::new()
            } else {
                (0..=n).map(|j| remap(&self.levels[n].degeneracies[j], &new_index[n + 1])).collect::<Result<_>>()?
            };
            levels.push(LevelData { names: kept.iter().map(|&x| self.name(n, x).to_string()).collect(), faces, degeneracies });
        }
        SimplicialSet::new(levels)
    }

    /// Restricts to levels `0..=n`.
    pub fn truncate(&self, n: usize) -> SimplicialSet {
        let keep: Vec<Vec<bool>> = (0..=n.min(self.truncation())).map(|k| vec![true; self.len(k)]).collect();
        self.subcomplex(&keep).expect("truncation is closed")
    }

    /// Renumbers simplices: `perm[n][old] = new`.
    pub fn relabel(&self, perm: &[Vec<usize>]) -> Result<SimplicialSet> {
        let top = self.truncation();
        if perm.len() != top + 1 {
            return Err(Error::Malformed("one permutation per level".into()));
        }
        let mut levels = Vec::new();
        for n in 0..=top {
            let len = self.len(n);
            let mut inverse = vec![usize::MAX; len];
            for (old, &new) in perm[n].iter().enumerate() {
                if new >= len || inverse[new] != usize::MAX {
                    return Err(Error::Malformed(format!("level {n}: not a permutation")));
                }
                inverse[new] = old;
            }
            let relabel_table =
                |table: &[usize], next: &[usize]| inverse.iter().map(|&old| next[table[old]]).collect::<Vec<_>>();
            let faces = if n == 0 {
                Vec::new()
            } else {
                self.levels[n].faces.iter().map(|t| relabel_table(t, &perm[n - 1])).collect()
            };
            let degeneracies = if n == top {
                Vec::new()
            } else {
                self.levels[n].degeneracies.iter().map(|t| relabel_table(t, &perm[n + 1])).collect()
            };
            levels.push(LevelData {
                names: inverse.iter().map(|&old| self.name(n, old).to_string()).collect(),
                faces,
                degeneracies,
            });
        }
        SimplicialSet::new(levels)
    }

    pub fn to_file(&self) -> SimplicialFile {
        let top = self.truncation();
        SimplicialFile {
            truncation: top,
            levels: (0..=top)
                .map(|n| {
                    let names_at = |k: usize, table: &Vec<usize>| {
                        table.iter().map(|&y| self.name(k, y).to_string()).collect::<Vec<_>>()
                    };
                    LevelFile {
                        simplices: self.names(n).to_vec(),
                        faces: self.levels[n].faces.iter().map(|t| names_at(n - 1, t)).collect(),
                        degeneracies: self.levels[n].degeneracies.iter().map(|t| names_at(n + 1, t)).collect(),
                    }
                })
                .collect(),
        }
    }
}

/// Text format: per-level simplex names with face and degeneracy tables
/// given as name lists aligned with `simplices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialFile {
    pub truncation: usize,
    pub levels: Vec<LevelFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelFile {
    pub simplices: Vec<String>,
    #[serde(default)]
    pub faces: Vec<Vec<String>>,
    #[serde(default)]
    pub degeneracies: Vec<Vec<String>>,
}

impl SimplicialFile {
    pub fn build(&self) -> Result<SimplicialSet> {
        if self.levels.len() != self.truncation + 1 {
            return Err(Error::Malformed(format!("truncation {} needs {} levels", self.truncation, self.truncation + 1)));
        }
        let indices: Vec<HashMap<&str, usize>> = self
            .levels
            .iter()
            .map(|l| l.simplices.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
            .collect();
        let resolve = |k: usize, names: &[String]| -> Result<Vec<usize>> {
            names
                .iter()
                .map(|s| indices[k].get(s.as_str()).copied().ok_or_else(|| Error::unknown("simplex", format!("{k}:{s}"))))
                .collect()
        };
        let mut levels = Vec::new();
        for (n, l) in self.levels.iter().enumerate() {
            let faces = if n == 0 { Vec::new() } else { l.faces.iter().map(|t| resolve(n - 1, t)).collect::<Result<_>>()? };
            let degeneracies = if n == self.truncation {
                Vec::new()
            } else {
                l.degeneracies.iter().map(|t| resolve(n + 1, t)).collect::<Result<_>>()?
            };
            if n == 0 && !l.faces.is_empty() {
                return Err(Error::Malformed("level 0 has no faces".into()));
            }
            levels.push(LevelData { names: l.simplices.clone(), faces, degeneracies });
        }
        SimplicialSet::new(levels)
    }
}
