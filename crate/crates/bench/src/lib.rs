//! Workloads shared by the benchmarks.

use std::sync::Arc;

use gaia_core::coalgebra::Coalgebra;
use gaia_core::{random, FinCategory, SetDiagram};

/// Random categories with at most `max_objects` objects, fixed seed.
pub fn categories(count: usize, max_objects: usize) -> Vec<Arc<FinCategory>> {
    let mut rng = random::rng(17);
    (0..count).map(|_| Arc::new(random::random_category(&mut rng, max_objects))).collect()
}

/// The graph schema `E ⇉ V`.
pub fn graph_schema() -> Arc<FinCategory> {
    Arc::new(FinCategory::free_on_acyclic_graph(&["E", "V"], &[("s", "E", "V"), ("t", "E", "V")]).expect("acyclic"))
}

/// A directed cycle on `n` vertices.
pub fn cycle(schema: &Arc<FinCategory>, n: usize) -> SetDiagram {
    let v: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let e: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let s = (0..n).map(|i| (e[i].clone(), v[i].clone())).collect();
    let t = (0..n).map(|i| (e[i].clone(), v[(i + 1) % n].clone())).collect();
    SetDiagram::from_names(schema.clone(), &[("E", e), ("V", v)], &[("s", s), ("t", t)]).expect("graph instance")
}

pub fn lts_pair(states: usize) -> (Coalgebra, Coalgebra) {
    let mut rng = random::rng(29);
    (random::random_lts(&mut rng, states, 2, 0.3), random::random_lts(&mut rng, states, 2, 0.3))
}
