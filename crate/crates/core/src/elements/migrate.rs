use std::collections::HashMap;
use std::sync::Arc;

use super::SetInstance;
use crate::error::{Error, Result};
use crate::fincat::{comma_category, Comma, FinCategory, FinFunctor, Mor, Ob, SetColimit, SetDiagram, SetLimit};

fn check_schema(f: &FinFunctor, delta: &SetInstance, side: &str) -> Result<()> {
    let schema = if side == "source" { f.source() } else { f.target() };
    if **delta.shape() != **schema {
        return Err(Error::invalid("migration", format!("instance is not over the functor's {side}")));
    }
    Ok(())
}

/// `Δ_F ε = ε ∘ F`.
pub fn pullback_migration(f: &FinFunctor, epsilon: &SetInstance) -> Result<SetInstance> {
    check_schema(f, epsilon, "target")?;
    let s = f.source();
    let sets = s.objects().map(|x| epsilon.set(f.ob(x)).to_vec()).collect();
    let functions = s.morphisms().map(|m| epsilon.function(f.mor(m)).to_vec()).collect();
    SetDiagram::new(s.clone(), sets, functions)
}

/// `Σ_F δ` with the colimit data behind each table.
#[derive(Debug, Clone)]
pub struct LeftKan {
    pub instance: SetInstance,
    /// `F ↓ t` per target object
    pub commas: Vec<Comma>,
    pub colimits: Vec<SetColimit>,
    /// `(a, e : F a → t)` to comma object, per target object
    lookup: Vec<HashMap<(Ob, Mor), usize>>,
}

impl LeftKan {
    /// The class `[(a, e), x] ∈ Σ_F δ(t)`.
    pub fn class_of(&self, t: Ob, a: Ob, e: Mor, x: usize) -> usize {
        let o = self.lookup[t][&(a, e)];
        self.colimits[t].injections[o][x]
    }
}

/// `(Σ_F δ)(t) = colim_{F ↓ t} δ ∘ proj`.
pub fn left_kan_migration(f: &FinFunctor, delta: &SetInstance) -> Result<LeftKan> {
    check_schema(f, delta, "source")?;
    let t_cat = f.target().clone();
    let point = Arc::new(FinCategory::terminal());
    let mut commas = Vec::new();
    let mut colimits = Vec::new();
    let mut lookup: Vec<HashMap<(Ob, Mor), usize>> = Vec::new();
    for t in t_cat.objects() {
        let at = FinFunctor::constant(point.clone(), t_cat.clone(), t);
        let comma = comma_category(f, &at)?;
        let restricted = restrict(delta, &comma.left)?;
        colimits.push(restricted.colimit());
        lookup.push(comma.objects.iter().enumerate().map(|(i, &(a, _, e))| ((a, e), i)).collect());
        commas.push(comma);
    }
    let sets = colimits.iter().map(|c| c.elements.clone()).collect();
    let mut functions = Vec::with_capacity(t_cat.num_morphisms());
    for u in t_cat.morphisms() {
        let (t, t2) = (t_cat.dom(u), t_cat.cod(u));
        // [(a, e), x] ↦ [(a, u ∘ e), x]
        let table = colimits[t]
            .classes
            .iter()
            .map(|class| {
                let (o, x) = class[0];
                let (a, _, e) = commas[t].objects[o];
                let o2 = lookup[t2][&(a, t_cat.comp(u, e))];
                colimits[t2].injections[o2][x]
            })
            .collect();
        functions.push(table);
    }
    let instance = SetDiagram::new(t_cat, sets, functions)?;
    Ok(LeftKan { instance, commas, colimits, lookup })
}

/// `Π_F δ` with the limit data behind each table.
#[derive(Debug, Clone)]
pub struct RightKan {
    pub instance: SetInstance,
    /// `t ↓ F` per target object
    pub commas: Vec<Comma>,
    pub limits: Vec<SetLimit>,
    lookup: Vec<HashMap<(Ob, Mor), usize>>,
    families: Vec<HashMap<Vec<usize>, usize>>,
}

impl RightKan {
    /// Comma object `(a, e : t → F a)`.
    pub fn comma_object(&self, t: Ob, a: Ob, e: Mor) -> usize {
        self.lookup[t][&(a, e)]
    }

    /// Index of a family in `Π_F δ(t)`, if it is a cone.
    pub fn family_index(&self, t: Ob, family: &[usize]) -> Option<usize> {
        self.families[t].get(family).copied()
    }
}

/// `(Π_F δ)(t) = lim_{t ↓ F} δ ∘ proj`.
pub fn right_kan_migration(f: &FinFunctor, delta: &SetInstance, budget: u64) -> Result<RightKan> {
    check_schema(f, delta, "source")?;
    let t_cat = f.target().clone();
    let point = Arc::new(FinCategory::terminal());
    let mut commas = Vec::new();
    let mut limits = Vec::new();
    let mut lookup: Vec<HashMap<(Ob, Mor), usize>> = Vec::new();
    let mut families: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for t in t_cat.objects() {
        let at = FinFunctor::constant(point.clone(), t_cat.clone(), t);
        let comma = comma_category(&at, f)?;
        let restricted = restrict(delta, &comma.right)?;
        let limit = restricted.limit(budget)?;
        families.push(limit.families.iter().enumerate().map(|(i, fam)| (fam.clone(), i)).collect());
        lookup.push(comma.objects.iter().enumerate().map(|(i, &(_, a, e))| ((a, e), i)).collect());
        limits.push(limit);
        commas.push(comma);
    }
    let sets = limits.iter().map(|l| l.elements.clone()).collect();
    let mut functions = Vec::with_capacity(t_cat.num_morphisms());
    for u in t_cat.morphisms() {
        let (t, t2) = (t_cat.dom(u), t_cat.cod(u));
        // the family over (a, e' : t2 → F a) reads the old one at (a, e' ∘ u)
        let pick: Vec<usize> =
            commas[t2].objects.iter().map(|&(_, a, e2)| lookup[t][&(a, t_cat.comp(e2, u))]).collect();
        let table = limits[t]
            .families
            .iter()
            .map(|fam| {
                let image: Vec<usize> = pick.iter().map(|&o| fam[o]).collect();
                families[t2][&image]
            })
            .collect();
        functions.push(table);
    }
    let instance = SetDiagram::new(t_cat, sets, functions)?;
    Ok(RightKan { instance, commas, limits, lookup, families })
}

/// `δ ∘ P` for a functor `P` into the schema of `δ`.
fn restrict(delta: &SetInstance, p: &FinFunctor) -> Result<SetDiagram> {
    let sets = p.source().objects().map(|x| delta.set(p.ob(x)).to_vec()).collect();
    let functions = p.source().morphisms().map(|m| delta.function(p.mor(m)).to_vec()).collect();
    SetDiagram::new(p.source().clone(), sets, functions)
}
