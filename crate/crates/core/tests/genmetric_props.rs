mod common;

use std::sync::Arc;

use gaia_core::genmetric::{
    check_isometry, presheaf_distance, yoneda_embed, yoneda_lemma_deviation, Copresheaf, Dist, GenMetricSpace,
};
use gaia_core::random;
use proptest::prelude::*;
use rand::Rng;

fn random_space(seed: u64) -> Arc<GenMetricSpace> {
    let mut rng = random::rng(seed);
    let n = rng.random_range(1..=5);
    Arc::new(random::random_quasi_metric(&mut rng, n, 6, 0.25))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn yoneda_is_isometric(seed in any::<u64>()) {
        let x = random_space(seed);
        let r = check_isometry(&x).unwrap();
        prop_assert!(r.isometric);
        prop_assert!(r.max_deviation.is_zero());
        // independent sup over carrier
        for a in 0..x.len() {
            for b in 0..x.len() {
                let sup = (0..x.len()).map(|y| x.d(y, a).hom(x.d(y, b))).max().unwrap();
                prop_assert_eq!(&sup, x.d(a, b));
            }
        }
    }

    #[test]
    fn representables_are_nonexpansive(seed in any::<u64>()) {
        let x = random_space(seed);
        for a in 0..x.len() {
            prop_assert!(yoneda_embed(&x, a).unwrap().is_nonexpansive());
        }
    }

    #[test]
    fn yoneda_lemma_on_nonexpansive_copresheaves(seed in any::<u64>()) {
        let x = random_space(seed);
        // φ = d(−, a) + r is nonexpansive for r ≥ 0
        let mut rng = random::rng(seed ^ 7);
        let a = rng.random_range(0..x.len());
        let r = Dist::ratio(rng.random_range(0..4), 2);
        let phi = Copresheaf::new(x.clone(), (0..x.len()).map(|y| x.d(y, a) + &r).collect()).unwrap();
        prop_assert!(phi.is_nonexpansive());
        for b in 0..x.len() {
            prop_assert!(yoneda_lemma_deviation(&phi, b).unwrap().is_zero());
        }
    }

    #[test]
    fn halfline_adjunction(t in 0i64..6, s in 0i64..6, r in 0i64..6, inf in 0u8..8) {
        let pick = |v: i64, bit: u8| if inf & bit != 0 { Dist::Inf } else { Dist::int(v) };
        let (t, s, r) = (pick(t, 1), pick(s, 2), pick(r, 4));
        prop_assert_eq!(&t + &s >= r, s >= t.hom(&r));
    }
}

#[test]
fn standard_constructions_are_isometric() {
    common::yoneda_isometry().unwrap();
}

#[test]
fn construction_examples() {
    let p = GenMetricSpace::preorder(&["a", "b"], &[("a", "b")]).unwrap();
    assert_eq!(p.d(0, 1), &Dist::zero());
    assert_eq!(p.d(1, 0), &Dist::Inf);
    let s = GenMetricSpace::strings(&["ab", "abc"], None).unwrap();
    assert_eq!(s.d(0, 1), &Dist::zero());
    assert_eq!(s.d(1, 0), &Dist::ratio(1, 4));
    let h = GenMetricSpace::halfline(&[Dist::int(3), Dist::int(5)]).unwrap();
    assert_eq!(h.d(0, 1), &Dist::int(2));
    assert_eq!(h.d(1, 0), &Dist::zero());
    let line = GenMetricSpace::line(&[(0, 1), (1, 1), (3, 1)]).unwrap();
    let hd = GenMetricSpace::hausdorff(&line, Some(&[vec![0], vec![1, 2]])).unwrap();
    assert_eq!(hd.d(0, 1), &Dist::int(1));
    assert_eq!(hd.d(1, 0), &Dist::int(3));
}

#[test]
fn distance_between_embeddings() {
    let x = GenMetricSpace::halfline(&[Dist::int(0), Dist::int(2), Dist::int(5)]).unwrap();
    let x = Arc::new(x);
    let (a, b) = (yoneda_embed(&x, 0).unwrap(), yoneda_embed(&x, 2).unwrap());
    assert_eq!(presheaf_distance(&a, &b).unwrap(), Dist::int(5));
    assert_eq!(presheaf_distance(&b, &a).unwrap(), Dist::zero());
}
