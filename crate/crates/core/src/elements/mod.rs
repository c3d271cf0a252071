//! Categories of elements and data migration along functors.

mod migrate;
mod nat;

pub use migrate::{left_kan_migration, pullback_migration, right_kan_migration, LeftKan, RightKan};
pub use nat::{
    enumerate_natural_maps, is_natural, is_natural_iso, left_transpose, left_untranspose, right_transpose,
    right_untranspose, NaturalMap,
};

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::fincat::{pullback_category, FinCategory, FinFunctor, Mor, Ob, SetDiagram};

/// A set-valued functor on a schema, read as a database instance.
pub type SetInstance = SetDiagram;

/// `∫δ`: objects `(s, x)` with `x ∈ δ s`, morphisms `(f, x) : (s, x) → (s', δf(x))`.
#[derive(Debug, Clone)]
pub struct Elements {
    pub category: Arc<FinCategory>,
    pub objects: Vec<(Ob, usize)>,
    /// `(f, element of the domain)` per morphism
    pub morphisms: Vec<(Mor, usize)>,
    pub projection: FinFunctor,
    index: HashMap<(Ob, usize), usize>,
}

impl Elements {
    pub fn object_of(&self, s: Ob, x: usize) -> Option<usize> {
        self.index.get(&(s, x)).copied()
    }
}

pub fn category_of_elements(delta: &SetInstance) -> Elements {
    let c = delta.shape();
    let mut objects = Vec::new();
    let mut names = Vec::new();
    let mut index = HashMap::new();
    for s in c.objects() {
        for (x, name) in delta.set(s).iter().enumerate() {
            index.insert((s, x), objects.len());
            names.push(format!("({},{})", c.object_name(s), name));
            objects.push((s, x));
        }
    }
    let mut morphisms = Vec::new();
    let mut records = Vec::new();
    let mut mor_index = HashMap::new();
    for f in c.morphisms() {
        let s = c.dom(f);
        for (x, name) in delta.set(s).iter().enumerate() {
            mor_index.insert((f, x), morphisms.len());
            records.push((
                format!("({},{})", c.morphism_name(f), name),
                index[&(s, x)],
                index[&(c.cod(f), delta.apply(f, x))],
            ));
            morphisms.push((f, x));
        }
    }
    let identity = objects.iter().map(|&(s, x)| mor_index[&(c.id(s), x)]).collect();
    let category = Arc::new(FinCategory::from_indexed(names, records, identity, |g, f| {
        let (fm, x) = morphisms[f];
        let (gm, _) = morphisms[g];
        mor_index[&(c.comp(gm, fm), x)]
    }));
    let projection = FinFunctor::new(
        category.clone(),
        c.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    )
    .expect("projection tables are in range");
    Elements { category, objects, morphisms, projection, index }
}

/// Both sides of `∫(Δ_F ε) ≅ S ×_T ∫ε` and the comparison functor.
#[derive(Debug, Clone)]
pub struct ElementsPullback {
    pub migrated: Elements,
    pub pullback: Arc<FinCategory>,
    /// `(s, y) ↦ (s, (F s, y))`, `(f, y) ↦ (f, (F f, y))`
    pub comparison: FinFunctor,
    pub isomorphic: bool,
}

pub fn verify_elements_pullback(f: &FinFunctor, epsilon: &SetInstance) -> Result<ElementsPullback> {
    let migrated = category_of_elements(&pullback_migration(f, epsilon)?);
    let over = category_of_elements(epsilon);
    let pb = pullback_category(f, &over.projection)?;
    let ob_index: HashMap<(Ob, Ob), usize> = pb.objects.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mor_index: HashMap<(Mor, Mor), usize> = pb.morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut objects = Vec::with_capacity(migrated.objects.len());
    for &(s, y) in &migrated.objects {
        let e = over.object_of(f.ob(s), y).expect("element of ε");
        objects.push(ob_index[&(s, e)]);
    }
    let over_mor: HashMap<(Mor, usize), usize> =
        over.morphisms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut morphisms = Vec::with_capacity(migrated.morphisms.len());
    for &(m, y) in &migrated.morphisms {
        let e = over_mor[&(f.mor(m), y)];
        morphisms.push(mor_index[&(m, e)]);
    }
    let comparison = FinFunctor::new(migrated.category.clone(), pb.category.clone(), objects, morphisms)?;
    let isomorphic = comparison.validate().is_valid() && comparison.is_isomorphism();
    Ok(ElementsPullback { migrated, pullback: pb.category, comparison, isomorphic })
}
