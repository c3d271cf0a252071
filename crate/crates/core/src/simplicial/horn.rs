use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::shapes::sequence_name;
use super::{SimplicialMap, SimplicialSet};
use crate::error::{Error, Result};

/// A horn `Λⁿ_k → X` given by its faces: `faces[i]` is the image of the
/// `i`-th face of `Δⁿ` for `i ≠ k`.
#[derive(Debug, Clone)]
pub struct HornProblem<'a> {
    target: &'a SimplicialSet,
    n: usize,
    k: usize,
    faces: Vec<Option<usize>>,
}

impl<'a> HornProblem<'a> {
    pub fn new(target: &'a SimplicialSet, n: usize, k: usize, faces: &BTreeMap<usize, usize>) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::invalid("horn", format!("need 0 ≤ k ≤ n and n ≥ 1, got n = {n}, k = {k}")));
        }
        if target.truncation() < n {
            return Err(Error::invalid("horn", format!("target is truncated below dimension {n}")));
        }
        let mut slots = vec![None; n + 1];
        for (&i, &y) in faces {
            if i > n || i == k {
                return Err(Error::invalid("horn", format!("face {i} is not a face of the horn")));
            }
            if y >= target.len(n - 1) {
                return Err(Error::unknown("simplex", format!("{}:{y}", n - 1)));
            }
            slots[i] = Some(y);
        }
        if let Some(i) = (0..=n).find(|&i| i != k && slots[i].is_none()) {
            return Err(Error::invalid("horn", format!("face {i} is not assigned")));
        }
        // d_i y_j = d_{j-1} y_i for i < j
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    if let (Some(yi), Some(yj)) = (slots[i], slots[j]) {
                        if target.face(n - 1, i, yj) != target.face(n - 1, j - 1, yi) {
                            return Err(Error::invalid(
                                "horn",
                                format!("faces {i} and {j} disagree on their common face"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(HornProblem { target, n, k, faces: slots })
    }

    /// Resolves face names at level `n − 1`.
    pub fn from_names(target: &'a SimplicialSet, n: usize, k: usize, faces: &BTreeMap<usize, String>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("horn", "horns need n ≥ 1"));
        }
        let ids = faces
            .iter()
            .map(|(&i, name)| Ok((i, target.simplex(n - 1, name)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        HornProblem::new(target, n, k, &ids)
    }

    /// Reads the face assignment off a map from `Λⁿ_k` as built by
    /// [`super::build_shape`].
    pub fn from_horn_map(map: &'a SimplicialMap, n: usize, k: usize) -> Result<Self> {
        let horn = map.source();
        let mut faces = BTreeMap::new();
        for i in (0..=n).filter(|&i| i != k) {
            let seq: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
            let x = horn.simplex(n - 1, &sequence_name(&seq, n))?;
            faces.insert(i, map.apply(n - 1, x));
        }
        HornProblem::new(map.target(), n, k, &faces)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn face(&self, i: usize) -> Option<usize> {
        self.faces[i]
    }

    /// Every `σ ∈ X_n` with `d_i σ = faces[i]` for all `i ≠ k`.
    pub fn fillers(&self) -> Vec<usize> {
        let (x, n) = (self.target, self.n);
        (0..x.len(n))
            .filter(|&s| (0..=n).all(|i| self.faces[i].is_none_or(|y| x.face(n, i, s) == y)))
            .collect()
    }

    pub fn witness(&self) -> HornWitness {
        let faces = (0..=self.n)
            .filter_map(|i| self.faces[i].map(|y| (i, self.target.name(self.n - 1, y).to_string())))
            .collect();
        HornWitness { n: self.n, k: self.k, faces }
    }
}

/// A horn in serializable form: `(face index, simplex name)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HornWitness {
    pub n: usize,
    pub k: usize,
    pub faces: Vec<(usize, String)>,
}

/// Calls `visit(faces, filler count)` for every compatible horn `Λⁿ_k → X`.
/// Stops early when `visit` returns false.
fn scan_horns(x: &SimplicialSet, n: usize, k: usize, visit: &mut dyn FnMut(&[Option<usize>], usize) -> bool) {
    // filler counts keyed by the faces other than k
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in 0..x.len(n) {
        let key = (0..=n).filter(|&i| i != k).map(|i| x.face(n, i, s)).collect();
        *counts.entry(key).or_default() += 1;
    }
    let mut faces = vec![None; n + 1];
    let order: Vec<usize> = (0..=n).filter(|&i| i != k).collect();

    fn go(
        x: &SimplicialSet,
        n: usize,
        order: &[usize],
        depth: usize,
        faces: &mut Vec<Option<usize>>,
        counts: &HashMap<Vec<usize>, usize>,
        visit: &mut dyn FnMut(&[Option<usize>], usize) -> bool,
    ) -> bool {
        let Some(&j) = order.get(depth) else {
            let key: Vec<usize> = order.iter().map(|&i| faces[i].unwrap()).collect();
            return visit(faces, counts.get(&key).copied().unwrap_or(0));
        };
        for y in 0..x.len(n - 1) {
            let ok = n < 2
                || order[..depth].iter().all(|&i| {
                    let yi = faces[i].unwrap();
                    if i < j {
                        x.face(n - 1, i, y) == x.face(n - 1, j - 1, yi)
                    } else {
                        x.face(n - 1, j, yi) == x.face(n - 1, i - 1, y)
                    }
                });
            if ok {
                faces[j] = Some(y);
                if !go(x, n, order, depth + 1, faces, counts, visit) {
                    return false;
                }
            }
        }
        faces[j] = None;
        true
    }

    go(x, n, &order, 0, &mut faces, &counts, visit);
}

fn witness_of(x: &SimplicialSet, n: usize, k: usize, faces: &[Option<usize>]) -> HornWitness {
    let faces = (0..=n).filter_map(|i| faces[i].map(|y| (i, x.name(n - 1, y).to_string()))).collect();
    HornWitness { n, k, faces }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KanReport {
    pub kan: bool,
    pub horns_checked: u64,
    pub witness: Option<HornWitness>,
}

/// Does every horn `Λⁿ_k → X` with `1 ≤ n ≤ m` have a filler?
/// Reports the first unfillable horn in `(n, k)` order.
pub fn is_kan_complex(x: &SimplicialSet, m: usize) -> Result<KanReport> {
    if m > x.truncation() {
        return Err(Error::invalid("kan check", format!("dimension {m} exceeds truncation {}", x.truncation())));
    }
    let mut checked = 0;
    for n in 1..=m {
        for k in 0..=n {
            let mut witness = None;
            scan_horns(x, n, k, &mut |faces, count| {
                checked += 1;
                if count == 0 {
                    witness = Some(witness_of(x, n, k, faces));
                    return false;
                }
                true
            });
            if witness.is_some() {
                return Ok(KanReport { kan: false, horns_checked: checked, witness });
            }
        }
    }
    Ok(KanReport { kan: true, horns_checked: checked, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InnerHornReport {
    /// every inner horn has a filler
    pub complete: bool,
    /// every inner horn has exactly one filler
    pub unique: bool,
    pub horns_checked: u64,
    pub witness: Option<HornWitness>,
    pub non_unique: Option<HornWitness>,
}

/// Inner horns `Λⁿ_k`, `0 < k < n ≤ m`.
pub fn inner_horn_report(x: &SimplicialSet, m: usize) -> Result<InnerHornReport> {
    if m > x.truncation() {
        return Err(Error::invalid("inner horn check", format!("dimension {m} exceeds truncation {}", x.truncation())));
    }
    let mut report =
        InnerHornReport { complete: true, unique: true, horns_checked: 0, witness: None, non_unique: None };
    for n in 2..=m {
        for k in 1..n {
            scan_horns(x, n, k, &mut |faces, count| {
                report.horns_checked += 1;
                if count == 0 && report.witness.is_none() {
                    report.complete = false;
                    report.unique = false;
                    report.witness = Some(witness_of(x, n, k, faces));
                }
                if count > 1 && report.non_unique.is_none() {
                    report.unique = false;
                    report.non_unique = Some(witness_of(x, n, k, faces));
                }
                report.witness.is_none() || report.non_unique.is_none()
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::{build_shape, nerve, ShapeKind};
    use super::*;
    use crate::fincat::FinCategory;

    #[test]
    fn inner_horn_of_two_has_one_filler() {
        let c = FinCategory::ordinal(2);
        let x = nerve(&c, 2).set;
        let faces = BTreeMap::from([(0, "1<=2".to_string()), (2, "0<=1".to_string())]);
        let p = HornProblem::from_names(&x, 2, 1, &faces).unwrap();
        let fill = p.fillers();
        assert_eq!(fill.len(), 1);
        assert_eq!(x.name(2, fill[0]), "0<=1|1<=2");
    }

    #[test]
    fn outer_horn_in_arrow_has_no_filler() {
        let x = nerve(&FinCategory::ordinal(1), 2).set;
        // d_1 = edge(0,2) = id_0, d_2 = edge(0,1) = f
        let faces = BTreeMap::from([(1, "0<=0".to_string()), (2, "0<=1".to_string())]);
        let p = HornProblem::from_names(&x, 2, 0, &faces).unwrap();
        assert!(p.fillers().is_empty());
    }

    #[test]
    fn incompatible_faces_rejected() {
        let x = nerve(&FinCategory::ordinal(2), 2).set;
        let faces = BTreeMap::from([(0, "0<=1".to_string()), (2, "0<=1".to_string())]);
        assert!(HornProblem::from_names(&x, 2, 1, &faces).is_err());
    }

    #[test]
    fn kan_checks() {
        let z2 = nerve(&FinCategory::cyclic_group(2), 3).set;
        assert!(is_kan_complex(&z2, 3).unwrap().kan);
        let arrow = nerve(&FinCategory::ordinal(1), 2).set;
        let r = is_kan_complex(&arrow, 2).unwrap();
        assert!(!r.kan);
        assert_eq!(r.witness.as_ref().unwrap().n, 2);
        let point = build_shape(ShapeKind::Standard, 0, None, 2).unwrap();
        assert!(is_kan_complex(&point, 2).unwrap().kan);
    }

    #[test]
    fn inner_horns() {
        let n2 = nerve(&FinCategory::ordinal(2), 3).set;
        let r = inner_horn_report(&n2, 3).unwrap();
        assert!(r.complete && r.unique);
        let bd = build_shape(ShapeKind::Boundary, 3, None, 3).unwrap();
        assert!(!inner_horn_report(&bd, 3).unwrap().complete);
        let d2 = build_shape(ShapeKind::Standard, 2, None, 2).unwrap();
        assert!(inner_horn_report(&d2, 2).unwrap().complete);
    }

    #[test]
    fn horn_map_converts() {
        use super::super::{enumerate_maps, MapSearch};
        use std::sync::Arc;
        let horn = Arc::new(build_shape(ShapeKind::Horn, 2, Some(1), 2).unwrap());
        let target = Arc::new(nerve(&FinCategory::ordinal(2), 2).set);
        let maps = enumerate_maps(&horn, &target, &MapSearch::default()).unwrap();
        assert!(!maps.is_empty());
        for m in &maps {
            let p = HornProblem::from_horn_map(m, 2, 1).unwrap();
            assert_eq!(p.fillers().len(), 1);
        }
    }
}
