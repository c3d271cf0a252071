mod common;

use std::sync::Arc;

use gaia_core::fincat::{enumerate_functors, FunctorSearch};
use gaia_core::random;
use gaia_core::simplicial::{build_shape, inner_horn_report, is_kan_complex, nerve, HornProblem, ShapeKind};
use gaia_core::{FinCategory, SimplicialSet};
use proptest::prelude::*;

/// Checks every simplicial identity directly from the face and degeneracy tables.
fn identity_failures(x: &SimplicialSet) -> usize {
    let top = x.truncation();
    let mut bad = 0;
    for n in 2..=top {
        for s in 0..x.len(n) {
            for j in 1..=n {
                for i in 0..j {
                    if x.face(n - 1, i, x.face(n, j, s)) != x.face(n - 1, j - 1, x.face(n, i, s)) {
                        bad += 1;
                    }
                }
            }
        }
    }
    for n in 0..top {
        for s in 0..x.len(n) {
            for j in 0..=n {
                let t = x.degeneracy(n, j, s);
                if x.face(n + 1, j, t) != s || x.face(n + 1, j + 1, t) != s {
                    bad += 1;
                }
                for i in 0..=n + 1 {
                    let lhs = x.face(n + 1, i, t);
                    if i < j && lhs != x.degeneracy(n - 1, j - 1, x.face(n, i, s)) {
                        bad += 1;
                    }
                    if i > j + 1 && lhs != x.degeneracy(n - 1, j, x.face(n, i - 1, s)) {
                        bad += 1;
                    }
                }
                if n + 1 < top {
                    for i in 0..=j {
                        let lhs = x.degeneracy(n + 1, i, t);
                        let rhs = x.degeneracy(n + 1, j + 1, x.degeneracy(n, i, s));
                        if lhs != rhs {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    bad
}

/// Number of composable strings of `n` morphisms.
fn chain_count(c: &FinCategory, n: usize) -> usize {
    let k = c.num_objects();
    // paths[b] = number of chains ending at b
    let mut paths = vec![1usize; k];
    for _ in 0..n {
        let mut next = vec![0; k];
        for a in 0..k {
            for b in 0..k {
                next[b] += paths[a] * c.hom(a, b).len();
            }
        }
        paths = next;
    }
    paths.iter().sum()
}

fn is_groupoid(c: &FinCategory) -> bool {
    c.morphisms().all(|m| c.is_invertible(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nerve_satisfies_identities(seed in any::<u64>()) {
        let c = random::random_category(&mut random::rng(seed), 4);
        let x = nerve(&c, 3).set;
        prop_assert_eq!(identity_failures(&x), 0);
        prop_assert!(x.validate().is_empty());
    }

    #[test]
    fn nerve_levels_count_chains(seed in any::<u64>()) {
        let c = random::random_category(&mut random::rng(seed), 4);
        let x = nerve(&c, 3).set;
        for n in 0..=3 {
            prop_assert_eq!(x.len(n), chain_count(&c, n));
        }
    }

    #[test]
    fn inner_horns_fill_uniquely(seed in any::<u64>()) {
        let c = random::random_category(&mut random::rng(seed), 3);
        let r = inner_horn_report(&nerve(&c, 3).set, 3).unwrap();
        prop_assert!(r.complete && r.unique, "{:?}", r.witness.or(r.non_unique));
    }

    #[test]
    fn kan_exactly_for_groupoids(seed in any::<u64>()) {
        let c = random::random_category(&mut random::rng(seed), 3);
        let r = is_kan_complex(&nerve(&c, 2).set, 2).unwrap();
        prop_assert_eq!(r.kan, is_groupoid(&c));
        if let Some(w) = r.witness {
            let x = nerve(&c, 2).set;
            let faces = w.faces.iter().cloned().collect();
            prop_assert!(HornProblem::from_names(&x, w.n, w.k, &faces).unwrap().fillers().is_empty());
        }
    }

    #[test]
    fn functor_counts_match_nerve_maps(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = Arc::new(random::random_category(&mut rng, 3));
        let d = Arc::new(random::random_category(&mut rng, 3));
        let functors = enumerate_functors(&c, &d, &FunctorSearch::default()).unwrap();
        let (nc, nd) = (Arc::new(nerve(&c, 2).set), Arc::new(nerve(&d, 2).set));
        let maps = gaia_core::simplicial::enumerate_maps(&nc, &nd, &Default::default()).unwrap();
        prop_assert_eq!(functors.len(), maps.len());
    }
}

#[test]
fn finite_groups_are_kan() {
    for n in 1..=3 {
        let r = is_kan_complex(&nerve(&FinCategory::cyclic_group(n), 3).set, 3).unwrap();
        assert!(r.kan, "ℤ/{n}");
    }
}

#[test]
fn standard_shapes_satisfy_identities() {
    for kind in [ShapeKind::Standard, ShapeKind::Boundary] {
        for n in 1..=3 {
            let x = build_shape(kind, n, None, 3).unwrap();
            assert_eq!(identity_failures(&x), 0, "{kind:?} {n}");
        }
    }
    let horn = build_shape(ShapeKind::Horn, 2, Some(1), 3).unwrap();
    assert_eq!(identity_failures(&horn), 0);
}

#[test]
fn outer_horn_of_interval() {
    let x = nerve(&FinCategory::ordinal(1), 2).set;
    let faces = [(1, "0<=0".to_string()), (2, "0<=1".to_string())].into_iter().collect();
    assert!(HornProblem::from_names(&x, 2, 0, &faces).unwrap().fillers().is_empty());
    let faces = [(0, "1<=1".to_string()), (1, "0<=1".to_string())].into_iter().collect();
    assert_eq!(HornProblem::from_names(&x, 2, 2, &faces).unwrap().fillers().len(), 1);
}

#[test]
fn shared_suite_runs() {
    common::simplicial_identities().unwrap();
    common::horn_laws().unwrap();
    common::full_faithfulness().unwrap();
}
