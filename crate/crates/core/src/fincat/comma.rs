use std::collections::HashMap;
use std::sync::Arc;

use super::{FinCategory, FinFunctor, Mor, Ob};
use crate::error::{Error, Result};

/// The comma category `F ↓ G` with its two projections.
#[derive(Debug, Clone)]
pub struct Comma {
    pub category: Arc<FinCategory>,
    /// `(a, b, e)` with `e : F a → G b`, indexed like the comma objects.
    pub objects: Vec<(Ob, Ob, Mor)>,
    /// `(α, β)` per comma morphism.
    pub morphisms: Vec<(Mor, Mor)>,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

/// Objects `(a, b, e : F a → G b)`; morphisms `(α, β)` with
/// `G β ∘ e = e' ∘ F α`.
pub fn comma_category(f: &FinFunctor, g: &FinFunctor) -> Result<Comma> {
    if f.target() != g.target() {
        return Err(Error::invalid("comma category", "functors have different targets"));
    }
    let (a_cat, b_cat, e_cat) = (f.source().clone(), g.source().clone(), f.target().clone());

    let mut objects = Vec::new();
    let mut ob_names = Vec::new();
    let mut ob_index = HashMap::new();
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            for &e in e_cat.hom(f.ob(a), g.ob(b)) {
                ob_index.insert((a, b, e), objects.len());
                ob_names.push(format!(
                    "({},{},{})",
                    a_cat.object_name(a),
                    b_cat.object_name(b),
                    e_cat.morphism_name(e)
                ));
                objects.push((a, b, e));
            }
        }
    }

    let mut morphisms = Vec::new();
    let mut records = Vec::new();
    let mut mor_index = HashMap::new();
    for (x, &(a, b, e)) in objects.iter().enumerate() {
        for (y, &(a2, b2, e2)) in objects.iter().enumerate() {
            for &alpha in a_cat.hom(a, a2) {
                for &beta in b_cat.hom(b, b2) {
                    let lhs = e_cat.comp(g.mor(beta), e);
                    let rhs = e_cat.comp(e2, f.mor(alpha));
                    if lhs == rhs {
                        mor_index.insert((x, y, alpha, beta), morphisms.len());
                        records.push((
                            format!(
                                "({},{}):{}->{}",
                                a_cat.morphism_name(alpha),
                                b_cat.morphism_name(beta),
                                ob_names[x],
                                ob_names[y]
                            ),
                            x,
                            y,
                        ));
                        morphisms.push((alpha, beta));
                    }
                }
            }
        }
    }
    let identity = objects
        .iter()
        .enumerate()
        .map(|(x, &(a, b, _))| mor_index[&(x, x, a_cat.id(a), b_cat.id(b))])
        .collect();
    let ends: Vec<(Ob, Ob)> = records.iter().map(|r| (r.1, r.2)).collect();
    let category = Arc::new(FinCategory::from_indexed(ob_names, records, identity, |gm, fm| {
        let (x, _) = ends[fm];
        let (_, z) = ends[gm];
        let (a1, b1) = morphisms[fm];
        let (a2, b2) = morphisms[gm];
        mor_index[&(x, z, a_cat.comp(a2, a1), b_cat.comp(b2, b1))]
    }));
    let left = FinFunctor::new(
        category.clone(),
        a_cat.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    )?;
    let right = FinFunctor::new(
        category.clone(),
        b_cat.clone(),
        objects.iter().map(|o| o.1).collect(),
        morphisms.iter().map(|m| m.1).collect(),
    )?;
    Ok(Comma { category, objects, morphisms, left, right })
}

/// The strict pullback `A ×_C B` of `F : A → C` and `G : B → C`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub category: Arc<FinCategory>,
    pub objects: Vec<(Ob, Ob)>,
    pub morphisms: Vec<(Mor, Mor)>,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

pub fn pullback_category(f: &FinFunctor, g: &FinFunctor) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::invalid("pullback", "functors have different targets"));
    }
    let (a_cat, b_cat) = (f.source().clone(), g.source().clone());
    let mut objects = Vec::new();
    let mut ob_index = HashMap::new();
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            if f.ob(a) == g.ob(b) {
                ob_index.insert((a, b), objects.len());
                objects.push((a, b));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_index = HashMap::new();
    for alpha in a_cat.morphisms() {
        for beta in b_cat.morphisms() {
            if f.mor(alpha) == g.mor(beta) {
                mor_index.insert((alpha, beta), morphisms.len());
                morphisms.push((alpha, beta));
            }
        }
    }
    let names = objects
        .iter()
        .map(|&(a, b)| format!("({},{})", a_cat.object_name(a), b_cat.object_name(b)))
        .collect();
    let records = morphisms
        .iter()
        .map(|&(alpha, beta)| {
            (
                format!("({},{})", a_cat.morphism_name(alpha), b_cat.morphism_name(beta)),
                ob_index[&(a_cat.dom(alpha), b_cat.dom(beta))],
                ob_index[&(a_cat.cod(alpha), b_cat.cod(beta))],
            )
        })
        .collect();
    let identity = objects.iter().map(|&(a, b)| mor_index[&(a_cat.id(a), b_cat.id(b))]).collect();
    let category = Arc::new(FinCategory::from_indexed(names, records, identity, |gm, fm| {
        let (a1, b1) = morphisms[fm];
        let (a2, b2) = morphisms[gm];
        mor_index[&(a_cat.comp(a2, a1), b_cat.comp(b2, b1))]
    }));
    let left = FinFunctor::new(
        category.clone(),
        a_cat,
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    )?;
    let right = FinFunctor::new(
        category.clone(),
        b_cat,
        objects.iter().map(|o| o.1).collect(),
        morphisms.iter().map(|m| m.1).collect(),
    )?;
    Ok(Pullback { category, objects, morphisms, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_category_of_ordinal_one() {
        let one = Arc::new(FinCategory::ordinal(1));
        let id = FinFunctor::identity(one.clone());
        let comma = comma_category(&id, &id).unwrap();
        // brute force: triples (c, d, f : c → d)
        let mut brute = 0;
        for c in one.objects() {
            for d in one.objects() {
                brute += one.hom(c, d).len();
            }
        }
        assert_eq!(brute, 3);
        assert_eq!(comma.category.num_objects(), 3);
        assert!(comma.category.validate().is_valid());
        assert!(comma.left.validate().is_valid());
        assert!(comma.right.validate().is_valid());
    }

    #[test]
    fn slice_under_an_object() {
        let two = Arc::new(FinCategory::ordinal(2));
        let point = Arc::new(FinCategory::terminal());
        let at1 = FinFunctor::constant(point, two.clone(), 1);
        let id = FinFunctor::identity(two.clone());
        let slice = comma_category(&at1, &id).unwrap();
        // objects of 1 ↓ [2] are arrows out of 1: to 1 and to 2
        assert_eq!(slice.category.num_objects(), 2);
        assert!(slice.category.validate().is_valid());
    }

    #[test]
    fn disjoint_images_give_empty_comma() {
        let e = Arc::new(FinCategory::discrete(&["x", "y"]));
        let point = Arc::new(FinCategory::terminal());
        let f = FinFunctor::constant(point.clone(), e.clone(), 0);
        let g = FinFunctor::constant(point, e, 1);
        let comma = comma_category(&f, &g).unwrap();
        assert_eq!(comma.category.num_objects(), 0);
        assert_eq!(comma.category.num_morphisms(), 0);
    }

    #[test]
    fn mismatched_targets_rejected() {
        let a = Arc::new(FinCategory::ordinal(1));
        let b = Arc::new(FinCategory::ordinal(2));
        assert!(comma_category(&FinFunctor::identity(a), &FinFunctor::identity(b)).is_err());
    }

    #[test]
    fn pullback_over_terminal_is_product() {
        let a = Arc::new(FinCategory::ordinal(1));
        let b = Arc::new(FinCategory::cyclic_group(2));
        let t = Arc::new(FinCategory::terminal());
        let p = pullback_category(
            &FinFunctor::constant(a.clone(), t.clone(), 0),
            &FinFunctor::constant(b.clone(), t, 0),
        )
        .unwrap();
        assert_eq!(p.category.num_objects(), 2);
        assert_eq!(p.category.num_morphisms(), 3 * 2);
        assert!(p.category.validate().is_valid());
        assert!(p.left.validate().is_valid() && p.right.validate().is_valid());
    }
}
