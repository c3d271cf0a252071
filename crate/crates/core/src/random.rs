//! Seeded generators of small random structures.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::Coalgebra;
use crate::fincat::{FinCategory, SetDiagram};
use crate::genmetric::{Dist, GenMetricSpace};
use crate::lifting::FinSetMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// A random preorder on `k` objects: a random relation closed under
/// reflexivity and transitivity.
pub fn random_preorder(rng: &mut impl Rng, k: usize, density: f64) -> FinCategory {
    let mut rel = vec![vec![false; k]; k];
    for (i, row) in rel.iter_mut().enumerate() {
        for (j, r) in row.iter_mut().enumerate() {
            *r = i == j || rng.random_bool(density);
        }
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if rel[i][m] && rel[m][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    FinCategory::preorder(&NAMES[..k], |i, j| rel[i][j]).expect("closed relation")
}

/// Free category on a random acyclic graph with edges `i → j` for `i < j`,
/// parallel edges allowed.
pub fn random_free(rng: &mut impl Rng, k: usize, max_edges: usize) -> FinCategory {
    let mut edges = Vec::new();
    if k >= 2 {
        for e in 0..rng.random_range(0..=max_edges) {
            let i = rng.random_range(0..k - 1);
            let j = rng.random_range(i + 1..k);
            edges.push((format!("f{e}"), NAMES[i].to_string(), NAMES[j].to_string()));
        }
    }
    FinCategory::free_on_acyclic_graph(&NAMES[..k].iter().map(|s| s.to_string()).collect::<Vec<_>>(), &edges)
        .expect("acyclic graph")
}

/// One of a few small monoids: cyclic groups, the idempotent `{1, a}` and
/// the left-zero monoid `{1, a, b}`.
pub fn random_monoid(rng: &mut impl Rng) -> FinCategory {
    match rng.random_range(0..5) {
        0 => FinCategory::cyclic_group(1),
        1 => FinCategory::cyclic_group(2),
        2 => FinCategory::cyclic_group(3),
        3 => FinCategory::monoid("•", &["1", "a"], 0, &[vec![0, 1], vec![1, 1]]).expect("idempotent"),
        _ => FinCategory::monoid("•", &["1", "a", "b"], 0, &[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]])
            .expect("left zero"),
    }
}

fn simple_category(rng: &mut impl Rng, cap: usize) -> FinCategory {
    let k = rng.random_range(1..=cap);
    match rng.random_range(0..3) {
        0 => random_preorder(rng, k, 0.4),
        1 => random_free(rng, k, 3),
        _ => random_monoid(rng),
    }
}

/// A random valid category with at most `max_objects` objects.
pub fn random_category(rng: &mut impl Rng, max_objects: usize) -> FinCategory {
    assert!(max_objects >= 1);
    if max_objects >= 2 && rng.random_bool(0.25) {
        let left = rng.random_range(1..max_objects);
        let a = simple_category(rng, left);
        let b = simple_category(rng, max_objects - left);
        a.coproduct(&b)
    } else {
        simple_category(rng, max_objects)
    }
}

/// A random covariant set-valued functor on `shape` with tables of at most
/// `max_size` elements. Random actions are tried first; when they keep
/// failing functoriality a sum of representables `C(a, −)` is used.
pub fn random_instance(rng: &mut impl Rng, shape: &Arc<FinCategory>, max_size: usize) -> SetDiagram {
    let c = &**shape;
    for _ in 0..64 {
        let sizes: Vec<usize> = c.objects().map(|_| rng.random_range(0..=max_size)).collect();
        let sets: Vec<Vec<String>> = sizes.iter().map(|&n| (0..n).map(|i| format!("x{i}")).collect()).collect();
        let mut ok = true;
        let functions: Vec<Vec<usize>> = c
            .morphisms()
            .map(|m| {
                let (d, t) = (c.dom(m), c.cod(m));
                if c.is_identity(m) {
                    (0..sizes[d]).collect()
                } else if sizes[t] == 0 {
                    ok &= sizes[d] == 0;
                    Vec::new()
                } else {
                    (0..sizes[d]).map(|_| rng.random_range(0..sizes[t])).collect()
                }
            })
            .collect();
        if !ok {
            continue;
        }
        let delta = SetDiagram::new(shape.clone(), sets, functions).expect("shapes match");
        if delta.validate().is_valid() {
            return delta;
        }
    }
    let roots: Vec<usize> = c.objects().filter(|_| rng.random_bool(0.5)).collect();
    representable_sum(shape, &roots)
}

/// `⊔_{a ∈ roots} C(a, −)`
pub fn representable_sum(shape: &Arc<FinCategory>, roots: &[usize]) -> SetDiagram {
    let c = &**shape;
    let mut sets = vec![Vec::new(); c.num_objects()];
    // (root position, morphism) for each element
    let mut elems: Vec<Vec<(usize, usize)>> = vec![Vec::new(); c.num_objects()];
    for (r, &a) in roots.iter().enumerate() {
        for x in c.objects() {
            for &m in c.hom(a, x) {
                elems[x].push((r, m));
                sets[x].push(format!("{}:{}", r, c.morphism_name(m)));
            }
        }
    }
    let functions = c
        .morphisms()
        .map(|g| {
            let t = c.cod(g);
            elems[c.dom(g)]
                .iter()
                .map(|&(r, m)| elems[t].iter().position(|&e| e == (r, c.comp(g, m))).expect("closed under composition"))
                .collect()
        })
        .collect();
    SetDiagram::new(shape.clone(), sets, functions).expect("representable")
}

/// A random transition system on `1..=max_states` states.
pub fn random_lts(rng: &mut impl Rng, max_states: usize, labels: usize, density: f64) -> Coalgebra {
    let n = rng.random_range(1..=max_states);
    let states: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let names: Vec<String> = (0..labels).map(|i| NAMES[i % NAMES.len()].to_string()).collect();
    let mut triples = Vec::new();
    for s in &states {
        for a in &names {
            for t in &states {
                if rng.random_bool(density) {
                    triples.push((s.clone(), a.clone(), t.clone()));
                }
            }
        }
    }
    Coalgebra::lts(&states, &names, &triples).expect("well formed")
}

/// Random finite or infinite weights closed under shortest paths, so the
/// result always satisfies the triangle inequality.
pub fn random_quasi_metric(rng: &mut impl Rng, n: usize, max_weight: i64, inf_probability: f64) -> GenMetricSpace {
    let mut d: Vec<Vec<Dist>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Dist::zero()
                    } else if rng.random_bool(inf_probability) {
                        Dist::Inf
                    } else {
                        Dist::ratio(rng.random_range(0..=2 * max_weight), 2)
                    }
                })
                .collect()
        })
        .collect();
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][m] + &d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    GenMetricSpace::new((0..n).map(|i| format!("p{i}")).collect(), d).expect("closed table")
}

pub fn random_set_map(rng: &mut impl Rng, dom: usize, cod: usize) -> FinSetMap {
    let table = (0..dom).map(|_| rng.random_range(0..cod)).collect();
    FinSetMap::from_table(dom, cod, table).expect("in range")
}

/// A random non-empty subset of `0..n`.
pub fn random_subset(rng: &mut impl Rng, n: usize) -> BTreeSet<usize> {
    let all: Vec<usize> = (0..n).collect();
    let mut out: BTreeSet<usize> = all.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
    if out.is_empty() {
        out.insert(*all.choose(rng).expect("n > 0"));
    }
    out
}
