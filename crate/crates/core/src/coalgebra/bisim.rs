use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{check_homomorphism, same_alphabet, Coalgebra, Functor};
use crate::error::Result;

/// A relation `R ⊆ S × T`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Bisimulation {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Bisimulation {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Bisimulation { pairs: pairs.into_iter().collect() }
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.pairs.contains(&(s, t))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn inverse(&self) -> Bisimulation {
        Bisimulation::new(self.pairs.iter().map(|&(s, t)| (t, s)))
    }

    /// `{(s, u) | ∃t. (s, t) ∈ self, (t, u) ∈ other}`
    pub fn compose(&self, other: &Bisimulation) -> Bisimulation {
        let mut out = BTreeSet::new();
        for &(s, t) in &self.pairs {
            for &(_, u) in other.pairs.range((t, 0)..(t + 1, 0)) {
                out.insert((s, u));
            }
        }
        Bisimulation { pairs: out }
    }

    pub fn union(&self, other: &Bisimulation) -> Bisimulation {
        Bisimulation { pairs: self.pairs.union(&other.pairs).copied().collect() }
    }

    pub fn is_subset(&self, other: &Bisimulation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// `α_R(s, t) = {(a, (s′, t′)) | s -a-> s′, t -a-> t′, (s′, t′) ∈ R}`,
    /// as a coalgebra on the pairs of `R` (in order), when it has the
    /// shape the functor demands.
    pub fn mediating_structure(&self, c1: &Coalgebra, c2: &Coalgebra) -> Result<Coalgebra> {
        same_alphabet(c1, c2)?;
        let pairs: Vec<(usize, usize)> = self.pairs.iter().copied().collect();
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let transitions: Vec<BTreeSet<(usize, usize)>> = pairs
            .iter()
            .map(|&(s, t)| {
                let mut out = BTreeSet::new();
                for &(a, s2) in c1.transitions(s) {
                    for t2 in c2.successors(t, a) {
                        if let Some(&k) = index.get(&(s2, t2)) {
                            out.insert((a, k));
                        }
                    }
                }
                out
            })
            .collect();
        let states = pairs.iter().map(|&(s, t)| format!("({},{})", c1.states[s], c2.states[t])).collect();
        Coalgebra::from_parts(c1.functor, states, c1.labels.clone(), transitions)
    }

    /// Both projections `R → S` and `R → T` are homomorphisms out of the
    /// mediating structure.
    pub fn is_bisimulation(&self, c1: &Coalgebra, c2: &Coalgebra) -> Result<bool> {
        same_alphabet(c1, c2)?;
        if self.pairs.iter().any(|&(s, t)| s >= c1.len() || t >= c2.len()) {
            return Ok(false);
        }
        let Ok(r) = self.mediating_structure(c1, c2) else {
            return Ok(false);
        };
        let left: Vec<usize> = self.pairs.iter().map(|p| p.0).collect();
        let right: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        Ok(check_homomorphism(&left, &r, c1)?.holds && check_homomorphism(&right, &r, c2)?.holds)
    }
}

/// The union of all bisimulations between `c1` and `c2`, by partition
/// refinement on the disjoint union.
pub fn greatest_bisimulation(c1: &Coalgebra, c2: &Coalgebra) -> Result<Bisimulation> {
    same_alphabet(c1, c2)?;
    let n1 = c1.len();
    let total = n1 + c2.len();
    let succ = |x: usize| -> Vec<(usize, usize)> {
        if x < n1 {
            c1.transitions(x).iter().copied().collect()
        } else {
            c2.transitions(x - n1).iter().map(|&(a, t)| (a, t + n1)).collect()
        }
    };
    let edges: Vec<Vec<(usize, usize)>> = (0..total).map(succ).collect();
    let mut block = vec![0usize; total];
    let mut count = usize::from(total > 0);
    loop {
        let mut ids: HashMap<(usize, BTreeSet<(usize, usize)>), usize> = HashMap::new();
        let next: Vec<usize> = (0..total)
            .map(|x| {
                let sig = edges[x].iter().map(|&(a, y)| (a, block[y])).collect();
                let n = ids.len();
                *ids.entry((block[x], sig)).or_insert(n)
            })
            .collect();
        let stable = ids.len() == count;
        block = next;
        count = ids.len();
        if stable {
            break;
        }
    }
    let mut pairs = BTreeSet::new();
    for s in 0..n1 {
        for t in 0..c2.len() {
            if block[s] == block[n1 + t] {
                pairs.insert((s, t));
            }
        }
    }
    Ok(Bisimulation { pairs })
}

/// Greatest fixed point by deleting pairs that fail a zig or zag step,
/// starting from `S × T`.
pub fn naive_greatest_bisimulation(c1: &Coalgebra, c2: &Coalgebra) -> Result<Bisimulation> {
    same_alphabet(c1, c2)?;
    let mut r: BTreeSet<(usize, usize)> = (0..c1.len()).flat_map(|s| (0..c2.len()).map(move |t| (s, t))).collect();
    loop {
        let keep: BTreeSet<(usize, usize)> = r
            .iter()
            .copied()
            .filter(|&(s, t)| {
                let zig = c1.transitions(s).iter().all(|&(a, s2)| c2.successors(t, a).any(|t2| r.contains(&(s2, t2))));
                let zag = c2.transitions(t).iter().all(|&(a, t2)| c1.successors(s, a).any(|s2| r.contains(&(s2, t2))));
                zig && zag
            })
            .collect();
        if keep.len() == r.len() {
            return Ok(Bisimulation { pairs: keep });
        }
        r = keep;
    }
}

/// `K(f) = {(s, s′) | f(s) = f(s′)}`
pub fn kernel(f: &[usize]) -> Bisimulation {
    let mut pairs = BTreeSet::new();
    for (s, &x) in f.iter().enumerate() {
        for (s2, &y) in f.iter().enumerate() {
            if x == y {
                pairs.insert((s, s2));
            }
        }
    }
    Bisimulation { pairs }
}

/// `{(f(t), g(t)) | t ∈ T}` for a span `S ← T → U`.
pub fn span_image(f: &[usize], g: &[usize]) -> Bisimulation {
    Bisimulation::new(f.iter().copied().zip(g.iter().copied()))
}

/// The quotient by the greatest bisimulation on `c × c`, with the quotient map.
pub fn minimize(c: &Coalgebra) -> Result<(Coalgebra, Vec<usize>)> {
    let r = greatest_bisimulation(c, c)?;
    let mut class = vec![usize::MAX; c.len()];
    let mut reps = Vec::new();
    for s in 0..c.len() {
        if class[s] == usize::MAX {
            for &(_, t) in r.pairs.range((s, 0)..(s + 1, 0)) {
                class[t] = reps.len();
            }
            reps.push(s);
        }
    }
    let transitions = reps.iter().map(|&s| c.image(s, &class)).collect();
    let states = reps.iter().map(|&s| c.states[s].clone()).collect();
    let q = Coalgebra::from_parts(c.functor, states, c.labels.clone(), transitions)?;
    debug_assert!(c.functor != Functor::Stream || q.len() <= c.len());
    Ok((q, class))
}
