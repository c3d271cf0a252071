use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};

/// A function between finite sets of named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetMap {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub table: Vec<usize>,
}

impl FinSetMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() || table.iter().any(|&y| y >= codomain.len()) {
            return Err(Error::Malformed("function table does not match its domain and codomain".into()));
        }
        Ok(FinSetMap { domain, codomain, table })
    }

    /// Elements named `0, 1, …`.
    pub fn from_table(domain_size: usize, codomain_size: usize, table: Vec<usize>) -> Result<Self> {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect();
        FinSetMap::new(names(domain_size), names(codomain_size), table)
    }

    pub fn identity(set: Vec<String>) -> Self {
        let table = (0..set.len()).collect();
        FinSetMap { domain: set.clone(), codomain: set, table }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn dom_size(&self) -> usize {
        self.domain.len()
    }

    pub fn cod_size(&self) -> usize {
        self.codomain.len()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinSetMap) -> Result<FinSetMap> {
        if self.codomain != other.domain {
            return Err(Error::invalid("composite", "codomain and domain differ"));
        }
        let table = self.table.iter().map(|&y| other.table[y]).collect();
        FinSetMap::new(self.domain.clone(), other.codomain.clone(), table)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod_size()];
        self.table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod_size()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// `{"domain": [...], "codomain": [...], "map": {"x": "y"}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSetMapFile {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub map: BTreeMap<String, String>,
}

impl FinSetMapFile {
    pub fn build(&self) -> Result<FinSetMap> {
        let find = |set: &[String], e: &str| {
            set.iter().position(|s| s == e).ok_or_else(|| Error::unknown("element", e))
        };
        let mut table = vec![usize::MAX; self.domain.len()];
        for (x, y) in &self.map {
            table[find(&self.domain, x)?] = find(&self.codomain, y)?;
        }
        if let Some(i) = table.iter().position(|&y| y == usize::MAX) {
            return Err(Error::Malformed(format!("map undefined on `{}`", self.domain[i])));
        }
        FinSetMap::new(self.domain.clone(), self.codomain.clone(), table)
    }
}

impl From<&FinSetMap> for FinSetMapFile {
    fn from(m: &FinSetMap) -> Self {
        FinSetMapFile {
            domain: m.domain.clone(),
            codomain: m.codomain.clone(),
            map: m.table.iter().enumerate().map(|(x, &y)| (m.domain[x].clone(), m.codomain[y].clone())).collect(),
        }
    }
}

/// A lifting square of finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSquare {
    pub f: FinSetMap,
    pub p: FinSetMap,
    pub mu: FinSetMap,
    pub nu: FinSetMap,
}

impl SetSquare {
    /// Rejects mismatched ends and non-commuting squares.
    pub fn new(f: FinSetMap, p: FinSetMap, mu: FinSetMap, nu: FinSetMap) -> Result<Self> {
        if f.domain != mu.domain || f.codomain != nu.domain || mu.codomain != p.domain || nu.codomain != p.codomain {
            return Err(Error::invalid("lifting square", "the four maps do not form a square"));
        }
        let sq = SetSquare { f, p, mu, nu };
        if let Some(a) = sq.failure() {
            return Err(Error::invalid("lifting square", format!("p ∘ μ ≠ ν ∘ f at `{}`", sq.f.domain[a])));
        }
        Ok(sq)
    }

    fn failure(&self) -> Option<usize> {
        (0..self.f.dom_size()).find(|&a| self.p.apply(self.mu.apply(a)) != self.nu.apply(self.f.apply(a)))
    }

    /// Is `h` a diagonal?
    pub fn is_solution(&self, h: &[usize]) -> bool {
        h.len() == self.f.cod_size()
            && h.iter().all(|&x| x < self.p.dom_size())
            && (0..self.f.dom_size()).all(|a| h[self.f.apply(a)] == self.mu.apply(a))
            && (0..h.len()).all(|b| self.p.apply(h[b]) == self.nu.apply(b))
    }

    /// All diagonals `h : B → X`, as tables.
    pub fn solve(&self, budget: u64) -> Result<Vec<Vec<usize>>> {
        // h(b) is forced on the image of f and ranges over p⁻¹(ν b) elsewhere
        let mut candidates: Vec<Vec<usize>> = (0..self.f.cod_size())
            .map(|b| (0..self.p.dom_size()).filter(|&x| self.p.apply(x) == self.nu.apply(b)).collect())
            .collect();
        for a in 0..self.f.dom_size() {
            let b = self.f.apply(a);
            let forced = self.mu.apply(a);
            candidates[b].retain(|&x| x == forced);
        }
        let mut out = Vec::new();
        let mut budget = Budget::new(budget);
        product_of(&candidates, &mut budget, &mut |h| {
            debug_assert!(self.is_solution(h));
            out.push(h.to_vec());
            true
        })?;
        Ok(out)
    }
}

/// Walks the cartesian product of candidate lists; `visit` returning false stops.
fn product_of(candidates: &[Vec<usize>], budget: &mut Budget, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<()> {
    if candidates.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let mut pick = vec![0usize; candidates.len()];
    let mut current: Vec<usize> = candidates.iter().map(|c| c[0]).collect();
    loop {
        budget.tick()?;
        if !visit(&current) {
            return Ok(());
        }
        let mut i = candidates.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < candidates[i].len() {
                current[i] = candidates[i][pick[i]];
                break;
            }
            pick[i] = 0;
            current[i] = candidates[i][0];
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RlpReport {
    pub holds: bool,
    pub squares_checked: u64,
    pub counterexample: Option<SetSquare>,
}

/// Does `p` have the right lifting property against every map in `against`?
///
/// Every commuting square is enumerated. The raw search space
/// `|X|^|A| · |Y|^|B|` per map must not exceed `capacity`.
pub fn has_rlp(p: &FinSetMap, against: &[FinSetMap], capacity: u64, budget: u64) -> Result<RlpReport> {
    let mut checked = 0;
    let mut budget = Budget::new(budget);
    for f in against {
        let space = (p.dom_size() as u64)
            .checked_pow(f.dom_size() as u32)
            .and_then(|m| (p.cod_size() as u64).checked_pow(f.cod_size() as u32).and_then(|n| m.checked_mul(n)))
            .unwrap_or(u64::MAX);
        if space > capacity {
            return Err(Error::Capacity { what: "lifting squares", needed: space, limit: capacity });
        }
        let all_mu = vec![(0..p.dom_size()).collect::<Vec<_>>(); f.dom_size()];
        let mut failure = None;
        let mut inner_err = None;
        product_of(&all_mu, &mut budget, &mut |mu| {
            // ν is forced on the image of f; the rest is free
            let mut nu_cands: Vec<Vec<usize>> = vec![(0..p.cod_size()).collect(); f.cod_size()];
            for a in 0..f.dom_size() {
                let want = p.apply(mu[a]);
                nu_cands[f.apply(a)].retain(|&y| y == want);
            }
            let mut inner = Budget::new(u64::MAX);
            let r = product_of(&nu_cands, &mut inner, &mut |nu| {
                checked += 1;
                let sq = SetSquare {
                    f: f.clone(),
                    p: p.clone(),
                    mu: FinSetMap { domain: f.domain.clone(), codomain: p.domain.clone(), table: mu.to_vec() },
                    nu: FinSetMap { domain: f.codomain.clone(), codomain: p.codomain.clone(), table: nu.to_vec() },
                };
                match sq.solve(u64::MAX) {
                    Ok(hs) if hs.is_empty() => {
                        failure = Some(sq);
                        false
                    }
                    Ok(_) => true,
                    Err(e) => {
                        inner_err = Some(e);
                        false
                    }
                }
            });
            if let Err(e) = r {
                inner_err = Some(e);
            }
            failure.is_none() && inner_err.is_none()
        })?;
        if let Some(e) = inner_err {
            return Err(e);
        }
        if failure.is_some() {
            return Ok(RlpReport { holds: false, squares_checked: checked, counterexample: failure });
        }
    }
    Ok(RlpReport { holds: true, squares_checked: checked, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(d: usize, c: usize, t: &[usize]) -> FinSetMap {
        FinSetMap::from_table(d, c, t.to_vec()).unwrap()
    }

    #[test]
    fn empty_to_point_against_two_to_one() {
        let f = map(0, 1, &[]);
        let p = map(2, 1, &[0, 0]);
        let sq = SetSquare::new(f, p, map(0, 2, &[]), map(1, 1, &[0])).unwrap();
        assert_eq!(sq.solve(100).unwrap().len(), 2);
    }

    #[test]
    fn missed_point_has_no_lift() {
        let f = map(0, 1, &[]);
        let p = map(1, 2, &[0]);
        let sq = SetSquare::new(f, p, map(0, 1, &[]), map(1, 2, &[1])).unwrap();
        assert!(sq.solve(100).unwrap().is_empty());
    }

    #[test]
    fn fold_against_injection() {
        let f = map(2, 1, &[0, 0]);
        let p = map(2, 3, &[0, 2]);
        let sq = SetSquare::new(f, p, map(2, 2, &[1, 1]), map(1, 3, &[2])).unwrap();
        assert_eq!(sq.solve(100).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn non_commuting_square_rejected() {
        let f = map(1, 1, &[0]);
        let p = map(2, 2, &[0, 1]);
        assert!(SetSquare::new(f, p, map(1, 2, &[0]), map(1, 2, &[1])).is_err());
    }

    #[test]
    fn rlp_examples() {
        let surj = map(3, 2, &[0, 1, 1]);
        assert!(has_rlp(&surj, &[map(0, 1, &[])], 1 << 20, 1 << 20).unwrap().holds);
        let fold = map(2, 1, &[0, 0]);
        let r = has_rlp(&map(3, 2, &[0, 0, 1]), &[fold.clone()], 1 << 20, 1 << 20).unwrap();
        assert!(!r.holds);
        let w = r.counterexample.unwrap();
        assert!(w.solve(100).unwrap().is_empty());
        let id = FinSetMap::identity(vec!["a".into(), "b".into()]);
        assert!(has_rlp(&id, &[fold, map(0, 1, &[]), map(1, 2, &[0])], 1 << 20, 1 << 20).unwrap().holds);
    }

    #[test]
    fn rlp_capacity_error() {
        let p = map(4, 4, &[0, 1, 2, 3]);
        assert!(matches!(has_rlp(&p, &[map(4, 4, &[0, 1, 2, 3])], 100, 1 << 20), Err(Error::Capacity { .. })));
    }

    #[test]
    fn set_map_file_round_trip() {
        let m = map(3, 2, &[1, 0, 1]);
        let file = FinSetMapFile::from(&m);
        assert_eq!(file.build().unwrap(), m);
    }
}
