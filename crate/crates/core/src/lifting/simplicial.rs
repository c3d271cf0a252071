use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simplicial::{
    build_shape, classifying_map, enumerate_maps, HornProblem, MapSearch, ShapeKind, SimplicialMap, SimplicialSet,
    StandardSimplex,
};

/// A lifting square of simplicial maps.
#[derive(Debug, Clone)]
pub struct SimplicialSquare {
    pub f: SimplicialMap,
    pub p: SimplicialMap,
    pub mu: SimplicialMap,
    pub nu: SimplicialMap,
    horn: Option<(usize, usize)>,
}

/// The inclusion `Λⁿ_k ↪ Δⁿ`, truncated at `truncation`.
pub fn horn_inclusion(n: usize, k: usize, truncation: usize) -> Result<SimplicialMap> {
    let horn = Arc::new(build_shape(ShapeKind::Horn, n, Some(k), truncation)?);
    let simplex = Arc::new(StandardSimplex::new(n, truncation).set);
    let levels = (0..=truncation)
        .map(|m| (0..horn.len(m)).map(|x| simplex.simplex(m, horn.name(m, x))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(horn, simplex, levels)
}

impl SimplicialSquare {
    pub fn new(f: SimplicialMap, p: SimplicialMap, mu: SimplicialMap, nu: SimplicialMap) -> Result<Self> {
        let ends = f.source() == mu.source()
            && f.target() == nu.source()
            && mu.target() == p.source()
            && nu.target() == p.target();
        if !ends {
            return Err(Error::invalid("lifting square", "the four maps do not form a square"));
        }
        if let Some(bad) = [&f, &p, &mu, &nu].iter().find_map(|m| m.validate().into_iter().next()) {
            return Err(Error::invalid("lifting square", format!("not simplicial at `{}`", bad.1)));
        }
        if mu.then(&p)?.levels() != f.then(&nu)?.levels() {
            return Err(Error::invalid("lifting square", "p ∘ μ ≠ ν ∘ f"));
        }
        Ok(SimplicialSquare { f, p, mu, nu, horn: None })
    }

    /// The square with `f = Λⁿ_k ↪ Δⁿ`; solved through horn fillers.
    pub fn horn(n: usize, k: usize, p: SimplicialMap, mu: SimplicialMap, nu: SimplicialMap) -> Result<Self> {
        let f = horn_inclusion(n, k, mu.source().truncation())?;
        let mut sq = SimplicialSquare::new(f, p, mu, nu)?;
        sq.horn = Some((n, k));
        Ok(sq)
    }

    pub fn is_solution(&self, h: &SimplicialMap) -> bool {
        h.is_valid()
            && self.f.then(h).is_ok_and(|hf| hf.levels() == self.mu.levels())
            && h.then(&self.p).is_ok_and(|ph| ph.levels() == self.nu.levels())
    }

    /// All diagonals `h : B → X`.
    pub fn solve(&self, budget: u64) -> Result<Vec<SimplicialMap>> {
        if let Some((n, k)) = self.horn {
            return self.solve_horn(n, k);
        }
        let (a, b) = (self.f.source(), self.f.target());
        let top = b.truncation();
        let mut forced: Vec<Vec<Option<usize>>> = (0..=top).map(|m| vec![None; b.len(m)]).collect();
        for m in 0..=top {
            for x in 0..a.len(m) {
                let slot = &mut forced[m][self.f.apply(m, x)];
                match *slot {
                    Some(y) if y != self.mu.apply(m, x) => return Ok(Vec::new()),
                    _ => *slot = Some(self.mu.apply(m, x)),
                }
            }
        }
        let allowed = |m: usize, s: usize, t: usize| {
            self.p.apply(m, t) == self.nu.apply(m, s) && forced[m][s].is_none_or(|y| y == t)
        };
        let search = MapSearch { allowed: Some(&allowed), limit: None, budget };
        enumerate_maps(b, self.p.source(), &search)
    }

    fn solve_horn(&self, n: usize, k: usize) -> Result<Vec<SimplicialMap>> {
        let problem = HornProblem::from_horn_map(&self.mu, n, k)?;
        let simplex = StandardSimplex::new(n, self.f.target().truncation());
        let top = simplex.index_of(&(0..=n).collect::<Vec<_>>()).expect("top simplex");
        let x: &Arc<SimplicialSet> = self.p.source();
        let mut out = Vec::new();
        for sigma in problem.fillers() {
            if self.p.apply(n, sigma) != self.nu.apply(n, top) {
                continue;
            }
            let h = classifying_map(&simplex, x, sigma)?;
            if self.is_solution(&h) {
                out.push(h);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::simplicial::nerve;

    fn terminal(truncation: usize) -> Arc<SimplicialSet> {
        Arc::new(StandardSimplex::new(0, truncation).set)
    }

    fn to_point(x: &Arc<SimplicialSet>, pt: &Arc<SimplicialSet>) -> SimplicialMap {
        let levels = (0..=x.truncation()).map(|m| vec![0; x.len(m)]).collect();
        SimplicialMap::new(x.clone(), pt.clone(), levels).unwrap()
    }

    #[test]
    fn horn_path_matches_general_search() {
        let x = Arc::new(nerve(&FinCategory::ordinal(2), 2).set);
        let pt = terminal(2);
        let p = to_point(&x, &pt);
        let f = horn_inclusion(2, 1, 2).unwrap();
        let maps = enumerate_maps(f.source(), &x, &MapSearch::default()).unwrap();
        for mu in maps {
            let nu = to_point(f.target(), &pt);
            let fast = SimplicialSquare::horn(2, 1, p.clone(), mu.clone(), nu.clone()).unwrap();
            let slow = SimplicialSquare::new(f.clone(), p.clone(), mu, nu).unwrap();
            let a = fast.solve(1 << 20).unwrap();
            let b = slow.solve(1 << 20).unwrap();
            assert_eq!(a.len(), 1);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn outer_horn_without_filler() {
        let x = Arc::new(nerve(&FinCategory::ordinal(1), 2).set);
        let pt = terminal(2);
        let f = horn_inclusion(2, 0, 2).unwrap();
        let maps = enumerate_maps(f.source(), &x, &MapSearch::default()).unwrap();
        let empty = maps
            .into_iter()
            .filter(|mu| {
                let sq = SimplicialSquare::horn(2, 0, to_point(&x, &pt), mu.clone(), to_point(f.target(), &pt)).unwrap();
                sq.solve(1 << 20).unwrap().is_empty()
            })
            .count();
        assert!(empty >= 1);
    }
}
