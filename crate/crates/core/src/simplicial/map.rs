use std::collections::HashMap;
use std::sync::Arc;

use super::{LevelData, SimplicialSet, StandardSimplex};
use crate::error::{Budget, Error, Result};

/// Default cap on simplices per level of a product.
pub const DEFAULT_PRODUCT_CAPACITY: usize = 10_000;

#[derive(Debug, Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, levels: Vec<Vec<usize>>) -> Result<Self> {
        let top = source.truncation();
        if target.truncation() < top {
            return Err(Error::invalid("simplicial map", "target is truncated below the source"));
        }
        if levels.len() != top + 1 {
            return Err(Error::Malformed("simplicial map needs one table per source level".into()));
        }
        for (n, table) in levels.iter().enumerate() {
            if table.len() != source.len(n) || table.iter().any(|&y| y >= target.len(n)) {
                return Err(Error::Malformed(format!("simplicial map table at level {n} out of range")));
            }
        }
        Ok(SimplicialMap { source, target, levels })
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let levels = (0..=x.truncation()).map(|n| (0..x.len(n)).collect()).collect();
        SimplicialMap { source: x.clone(), target: x, levels }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }

    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *other.source {
            return Err(Error::invalid("simplicial map composite", "target does not match source"));
        }
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(n, t)| t.iter().map(|&y| other.levels[n][y]).collect())
            .collect();
        SimplicialMap::new(self.source.clone(), other.target.clone(), levels)
    }

    /// Commutation with faces and degeneracies, as `(level, simplex)` pairs.
    pub fn validate(&self) -> Vec<(usize, String)> {
        let (x, y) = (&*self.source, &*self.target);
        let mut bad = Vec::new();
        for n in 0..=x.truncation() {
            for s in 0..x.len(n) {
                let fs = self.levels[n][s];
                let faces_ok = n == 0 || (0..=n).all(|i| self.levels[n - 1][x.face(n, i, s)] == y.face(n, i, fs));
                let degens_ok = n == x.truncation()
                    || (0..=n).all(|j| self.levels[n + 1][x.degeneracy(n, j, s)] == y.degeneracy(n, j, fs));
                if !faces_ok || !degens_ok {
                    bad.push((n, x.name(n, s).to_string()));
                }
            }
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels && self.source == other.source && self.target == other.target
    }
}

/// Constraints for [`enumerate_maps`].
pub struct MapSearch<'a> {
    /// `allowed(level, source simplex, target simplex)`; applied to every
    /// simplex, degenerate or not.
    pub allowed: Option<&'a dyn Fn(usize, usize, usize) -> bool>,
    pub limit: Option<usize>,
    pub budget: u64,
}

impl Default for MapSearch<'_> {
    fn default() -> Self {
        MapSearch { allowed: None, limit: None, budget: crate::DEFAULT_BUDGET }
    }
}

enum Task {
    /// derive the images of the degenerate simplices at a level
    Degenerate(usize),
    Assign(usize, usize),
}

/// All simplicial maps `source → target` meeting the constraints.
///
/// Nondegenerate simplices are assigned in increasing dimension, each to a
/// target simplex with matching faces; degenerate ones follow from their
/// degeneracy roots. Every complete assignment is re-validated.
pub fn enumerate_maps(
    source: &Arc<SimplicialSet>,
    target: &Arc<SimplicialSet>,
    search: &MapSearch<'_>,
) -> Result<Vec<SimplicialMap>> {
    let (x, y) = (&**source, &**target);
    if y.truncation() < x.truncation() {
        return Err(Error::invalid("simplicial map", "target is truncated below the source"));
    }
    let top = x.truncation();
    let allowed = |n: usize, s: usize, t: usize| search.allowed.is_none_or(|f| f(n, s, t));
    // target simplices keyed by their face tuple
    let by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>> = (0..=top)
        .map(|n| {
            let mut m: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            if n > 0 {
                for t in 0..y.len(n) {
                    m.entry(y.faces_of(n, t)).or_default().push(t);
                }
            }
            m
        })
        .collect();
    let mut tasks = Vec::new();
    for n in 0..=top {
        if n > 0 {
            tasks.push(Task::Degenerate(n));
        }
        for s in x.nondegenerate(n) {
            tasks.push(Task::Assign(n, s));
        }
    }
    let mut values: Vec<Vec<usize>> = (0..=top).map(|n| vec![usize::MAX; x.len(n)]).collect();
    let mut out;
    let mut budget = Budget::new(search.budget);
    let limit = search.limit.unwrap_or(usize::MAX);

    #[allow(clippy::too_many_arguments)]
    fn go(
        depth: usize,
        tasks: &[Task],
        x: &SimplicialSet,
        y: &SimplicialSet,
        by_faces: &[HashMap<Vec<usize>, Vec<usize>>],
        values: &mut Vec<Vec<usize>>,
        allowed: &dyn Fn(usize, usize, usize) -> bool,
        budget: &mut Budget,
        out: &mut Vec<Vec<Vec<usize>>>,
        limit: usize,
    ) -> Result<()> {
        if out.len() >= limit {
            return Ok(());
        }
        let Some(task) = tasks.get(depth) else {
            out.push(values.clone());
            return Ok(());
        };
        match *task {
            Task::Degenerate(n) => {
                for s in 0..x.len(n) {
                    if let Some((j, r)) = x.degeneracy_root(n, s) {
                        let v = y.degeneracy(n - 1, j, values[n - 1][r]);
                        if !allowed(n, s, v) {
                            return Ok(());
                        }
                        values[n][s] = v;
                    }
                }
                go(depth + 1, tasks, x, y, by_faces, values, allowed, budget, out, limit)
            }
            Task::Assign(n, s) => {
                let candidates: Vec<usize> = if n == 0 {
                    (0..y.len(0)).collect()
                } else {
                    let key: Vec<usize> = (0..=n).map(|i| values[n - 1][x.face(n, i, s)]).collect();
                    by_faces[n].get(&key).cloned().unwrap_or_default()
                };
                for t in candidates {
                    budget.tick()?;
                    if !allowed(n, s, t) {
                        continue;
                    }
                    values[n][s] = t;
                    go(depth + 1, tasks, x, y, by_faces, values, allowed, budget, out, limit)?;
                    if out.len() >= limit {
                        break;
                    }
                }
                values[n][s] = usize::MAX;
                Ok(())
            }
        }
    }

    let collect = |raw: Vec<Vec<Vec<usize>>>| -> Vec<SimplicialMap> {
        raw.into_iter()
            .map(|levels| SimplicialMap { source: source.clone(), target: target.clone(), levels })
            .filter(SimplicialMap::is_valid)
            .collect()
    };
    let mut raw = Vec::new();
    go(0, &tasks, x, y, &by_faces, &mut values, &allowed, &mut budget, &mut raw, limit)?;
    let cut = raw.len() >= limit;
    out = collect(raw);
    if cut && out.len() < limit {
        // some limited results failed validation; redo the search in full
        let mut raw = Vec::new();
        go(0, &tasks, x, y, &by_faces, &mut values, &allowed, &mut budget, &mut raw, usize::MAX)?;
        out = collect(raw);
    }
    out.truncate(limit);
    Ok(out)
}

/// The levelwise product `A × B`, truncated at the smaller truncation.
/// Simplex `(a, b)` at level `n` has index `a * |B_n| + b`.
#[derive(Debug, Clone)]
pub struct Product {
    pub set: SimplicialSet,
    pub right_len: Vec<usize>,
}

impl Product {
    pub fn split(&self, n: usize, p: usize) -> (usize, usize) {
        (p / self.right_len[n], p % self.right_len[n])
    }
}

pub fn product(a: &SimplicialSet, b: &SimplicialSet, capacity: usize) -> Result<Product> {
    let top = a.truncation().min(b.truncation());
    for n in 0..=top {
        let needed = a.len(n) as u64 * b.len(n) as u64;
        if needed > capacity as u64 {
            return Err(Error::Capacity { what: "product level", needed, limit: capacity as u64 });
        }
    }
    let mut levels = Vec::new();
    for n in 0..=top {
        let (la, lb) = (a.len(n), b.len(n));
        let names = (0..la * lb).map(|p| format!("({},{})", a.name(n, p / lb), b.name(n, p % lb))).collect();
        let faces = if n == 0 {
            Vec::new()
        } else {
            let lb1 = b.len(n - 1);
            (0..=n)
                .map(|i| (0..la * lb).map(|p| a.face(n, i, p / lb) * lb1 + b.face(n, i, p % lb)).collect())
                .collect()
        };
        let degeneracies = if n == top {
            Vec::new()
        } else {
            let lb1 = b.len(n + 1);
            (0..=n)
                .map(|j| {
                    (0..la * lb).map(|p| a.degeneracy(n, j, p / lb) * lb1 + b.degeneracy(n, j, p % lb)).collect()
                })
                .collect()
        };
        levels.push(LevelData { names, faces, degeneracies });
    }
    let right_len = (0..=top).map(|n| b.len(n)).collect();
    Ok(Product { set: SimplicialSet::new(levels)?, right_len })
}

/// The map `Δⁿ → X` classifying `σ ∈ X_n`: a monotone `α : [m] → [n]`
/// goes to `α*σ`. `delta` supplies the vertex sequences of `Δⁿ`.
pub fn classifying_map(delta: &StandardSimplex, x: &Arc<SimplicialSet>, sigma: usize) -> Result<SimplicialMap> {
    let n = delta.n;
    if x.truncation() < n || sigma >= x.len(n) {
        return Err(Error::invalid("classifying map", "simplex out of range"));
    }
    let levels = delta
        .sequences
        .iter()
        .map(|level| level.iter().map(|seq| pull_back_along(x, n, sigma, seq)).collect())
        .collect();
    SimplicialMap::new(Arc::new(delta.set.clone()), x.clone(), levels)
}

/// `α*σ` for the monotone map with vertex sequence `seq`.
fn pull_back_along(x: &SimplicialSet, n: usize, sigma: usize, seq: &[usize]) -> usize {
    let mut distinct = seq.to_vec();
    distinct.dedup();
    // drop the vertices outside the image, highest first
    let (mut s, mut dim) = (sigma, n);
    for v in (0..=n).rev() {
        if !distinct.contains(&v) {
            s = x.face(dim, v, s);
            dim -= 1;
        }
    }
    // then repeat entries where seq repeats
    for j in 0..seq.len() - 1 {
        if seq[j] == seq[j + 1] {
            s = x.degeneracy(dim, j, s);
            dim += 1;
        }
    }
    s
}

/// A simplicial homotopy `h : Δ¹ × X → Y` from `f0` to `f1`, if one exists.
pub fn homotopy(f0: &SimplicialMap, f1: &SimplicialMap, capacity: usize, budget: u64) -> Result<Option<SimplicialMap>> {
    if f0.source != f1.source || f0.target != f1.target {
        return Err(Error::invalid("homotopy", "maps must share source and target"));
    }
    let x = &f0.source;
    let top = x.truncation();
    let interval = StandardSimplex::new(1, top);
    let prod = product(&interval.set, x, capacity)?;
    let set = Arc::new(prod.set.clone());
    // sides {0}×X and {1}×X
    let side = |n: usize, i: usize| -> Option<usize> {
        let seq = &interval.sequences[n][i];
        if seq.iter().all(|&v| v == 0) {
            Some(0)
        } else if seq.iter().all(|&v| v == 1) {
            Some(1)
        } else {
            None
        }
    };
    let allowed = |n: usize, p: usize, t: usize| {
        let (i, s) = prod.split(n, p);
        match side(n, i) {
            Some(0) => f0.apply(n, s) == t,
            Some(_) => f1.apply(n, s) == t,
            None => true,
        }
    };
    let search = MapSearch { allowed: Some(&allowed), limit: Some(1), budget };
    Ok(enumerate_maps(&set, &f0.target, &search)?.into_iter().next())
}

/// Is there a homotopy `f0 ⇒ f1`?
pub fn homotopic(f0: &SimplicialMap, f1: &SimplicialMap, capacity: usize, budget: u64) -> Result<bool> {
    Ok(homotopy(f0, f1, capacity, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::super::{build_shape, nerve, ShapeKind};
    use super::*;
    use crate::fincat::FinCategory;

    fn point(truncation: usize) -> Arc<SimplicialSet> {
        Arc::new(StandardSimplex::new(0, truncation).set)
    }

    fn vertex_map(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>, v: usize) -> SimplicialMap {
        // the map from the point classifying the vertex v (degeneracies of v)
        let mut levels = vec![vec![v]];
        for n in 1..=x.truncation() {
            let prev = levels[n - 1][0];
            levels.push(vec![y.degeneracy(n - 1, 0, prev)]);
        }
        SimplicialMap::new(x.clone(), y.clone(), levels).unwrap()
    }

    #[test]
    fn equal_maps_are_homotopic() {
        let y = Arc::new(nerve(&FinCategory::ordinal(1), 2).set);
        let f = vertex_map(&point(2), &y, 0);
        assert!(homotopic(&f, &f, DEFAULT_PRODUCT_CAPACITY, 100_000).unwrap());
    }

    #[test]
    fn edge_gives_homotopy_in_one_direction() {
        let y = Arc::new(nerve(&FinCategory::ordinal(1), 2).set);
        let f0 = vertex_map(&point(2), &y, 0);
        let f1 = vertex_map(&point(2), &y, 1);
        assert!(homotopic(&f0, &f1, DEFAULT_PRODUCT_CAPACITY, 100_000).unwrap());
        assert!(!homotopic(&f1, &f0, DEFAULT_PRODUCT_CAPACITY, 100_000).unwrap());
    }

    #[test]
    fn discrete_points_are_not_homotopic() {
        let y = Arc::new(nerve(&FinCategory::discrete(&["a", "b"]), 2).set);
        let f0 = vertex_map(&point(2), &y, 0);
        let f1 = vertex_map(&point(2), &y, 1);
        assert!(!homotopic(&f0, &f1, DEFAULT_PRODUCT_CAPACITY, 100_000).unwrap());
    }

    #[test]
    fn product_capacity_is_a_hard_error() {
        let x = StandardSimplex::new(3, 3).set;
        assert!(matches!(product(&x, &x, 100), Err(Error::Capacity { .. })));
    }

    #[test]
    fn product_satisfies_identities() {
        let a = StandardSimplex::new(1, 3).set;
        let b = build_shape(ShapeKind::Boundary, 2, None, 3).unwrap();
        let p = product(&a, &b, DEFAULT_PRODUCT_CAPACITY).unwrap();
        assert!(p.set.validate().is_empty());
        // Δ¹ × Δ¹ has two nondegenerate triangles
        let sq = product(&a, &a, DEFAULT_PRODUCT_CAPACITY).unwrap().set;
        assert_eq!(sq.count_nondegenerate(2), 2);
        assert_eq!(sq.count_nondegenerate(3), 0);
    }

    #[test]
    fn maps_from_simplex_are_its_top_simplices() {
        // maps Δ² → N([2]) correspond to 2-simplices of the nerve (Yoneda)
        let d2 = Arc::new(StandardSimplex::new(2, 2).set);
        let n2 = Arc::new(nerve(&FinCategory::ordinal(2), 2).set);
        let maps = enumerate_maps(&d2, &n2, &MapSearch::default()).unwrap();
        assert_eq!(maps.len(), n2.len(2));
        let simplex = StandardSimplex::new(2, 2);
        for sigma in 0..n2.len(2) {
            let m = classifying_map(&simplex, &n2, sigma).unwrap();
            assert!(m.is_valid());
            assert_eq!(m.apply(2, simplex.index_of(&[0, 1, 2]).unwrap()), sigma);
            assert!(maps.contains(&m));
        }
        let limited = enumerate_maps(&d2, &n2, &MapSearch { limit: Some(3), ..Default::default() }).unwrap();
        assert_eq!(limited.len(), 3);
    }
}
