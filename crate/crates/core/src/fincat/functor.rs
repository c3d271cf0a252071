use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{FinCategory, Mor, Ob, ValidationReport};
use crate::error::{Budget, Error, Result};

/// A functor between finite categories, stored as object and morphism tables.
#[derive(Debug, Clone)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    objects: Vec<Ob>,
    morphisms: Vec<Mor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctorViolation {
    DomainCodomain { morphism: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorViolation::DomainCodomain { morphism } => {
                write!(out, "image of {morphism} has the wrong endpoints")
            }
            FunctorViolation::Identity { object } => write!(out, "identity of {object} not preserved"),
            FunctorViolation::Composition { g, f } => write!(out, "F({g} ∘ {f}) ≠ F{g} ∘ F{f}"),
        }
    }
}

impl FinFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: Vec<Ob>,
        morphisms: Vec<Mor>,
    ) -> Result<Self> {
        if objects.len() != source.num_objects() || morphisms.len() != source.num_morphisms() {
            return Err(Error::Malformed("functor tables do not cover the source".into()));
        }
        if objects.iter().any(|&y| y >= target.num_objects())
            || morphisms.iter().any(|&m| m >= target.num_morphisms())
        {
            return Err(Error::Malformed("functor tables leave the target".into()));
        }
        Ok(FinFunctor { source, target, objects, morphisms })
    }

    /// Builds a functor from name-keyed maps. Identities missing from
    /// `morphisms` are sent to identities.
    pub fn from_names(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        objects: &[(impl AsRef<str>, impl AsRef<str>)],
        morphisms: &[(impl AsRef<str>, impl AsRef<str>)],
    ) -> Result<Self> {
        let mut ob_map = vec![None; source.num_objects()];
        for (x, y) in objects {
            ob_map[source.object(x.as_ref())?] = Some(target.object(y.as_ref())?);
        }
        let ob_map = ob_map
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| Error::Malformed(format!("object `{}` unmapped", source.object_name(x)))))
            .collect::<Result<Vec<_>>>()?;
        let mut mor_map = vec![None; source.num_morphisms()];
        for (m, n) in morphisms {
            mor_map[source.morphism(m.as_ref())?] = Some(target.morphism(n.as_ref())?);
        }
        let mor_map = mor_map
            .into_iter()
            .enumerate()
            .map(|(m, n)| match n {
                Some(n) => Ok(n),
                None if source.is_identity(m) => Ok(target.id(ob_map[source.dom(m)])),
                None => Err(Error::Malformed(format!("morphism `{}` unmapped", source.morphism_name(m)))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, ob_map, mor_map)
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let objects = c.objects().collect();
        let morphisms = c.morphisms().collect();
        FinFunctor { source: c.clone(), target: c, objects, morphisms }
    }

    /// Sends everything to `object` and its identity.
    pub fn constant(source: Arc<FinCategory>, target: Arc<FinCategory>, object: Ob) -> Self {
        let objects = vec![object; source.num_objects()];
        let morphisms = vec![target.id(object); source.num_morphisms()];
        FinFunctor { source, target, objects, morphisms }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn ob(&self, x: Ob) -> Ob {
        self.objects[x]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.morphisms[m]
    }

    pub fn object_table(&self) -> &[Ob] {
        &self.objects
    }

    pub fn morphism_table(&self) -> &[Mor] {
        &self.morphisms
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if *self.target != *other.source {
            return Err(Error::invalid("functor composite", "target of the first is not the source of the second"));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&y| other.objects[y]).collect(),
            morphisms: self.morphisms.iter().map(|&m| other.morphisms[m]).collect(),
        })
    }

    pub fn validate(&self) -> ValidationReport<FunctorViolation> {
        let (s, t) = (&*self.source, &*self.target);
        let mut violations = Vec::new();
        for m in s.morphisms() {
            let fm = self.morphisms[m];
            if t.dom(fm) != self.objects[s.dom(m)] || t.cod(fm) != self.objects[s.cod(m)] {
                violations.push(FunctorViolation::DomainCodomain { morphism: s.morphism_name(m).into() });
            }
        }
        for x in s.objects() {
            if self.morphisms[s.id(x)] != t.id(self.objects[x]) {
                violations.push(FunctorViolation::Identity { object: s.object_name(x).into() });
            }
        }
        for g in s.morphisms() {
            for f in s.morphisms() {
                if s.dom(g) != s.cod(f) {
                    continue;
                }
                let (Some(gf), (fg, ff)) = (s.compose(g, f), (self.morphisms[g], self.morphisms[f])) else {
                    continue;
                };
                if t.dom(fg) != t.cod(ff) || t.compose(fg, ff) != Some(self.morphisms[gf]) {
                    violations.push(FunctorViolation::Composition {
                        g: s.morphism_name(g).into(),
                        f: s.morphism_name(f).into(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Same tables (the categories are compared structurally).
    pub fn same_maps(&self, other: &FinFunctor) -> bool {
        self.objects == other.objects && self.morphisms == other.morphisms
    }

    /// Is this an isomorphism of categories (bijective on objects and
    /// morphisms)?
    pub fn is_isomorphism(&self) -> bool {
        let bijective = |table: &[usize], n: usize| {
            let mut seen = vec![false; n];
            table.len() == n && table.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        };
        bijective(&self.objects, self.target.num_objects())
            && bijective(&self.morphisms, self.target.num_morphisms())
    }
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.same_maps(other) && self.source == other.source && self.target == other.target
    }
}

/// A family of components `α_c : F c → G c`.
#[derive(Debug, Clone)]
pub struct NaturalTransformation {
    pub source: FinFunctor,
    pub target: FinFunctor,
    pub components: Vec<Mor>,
}

impl NaturalTransformation {
    /// Checks parallelism, component endpoints and every naturality square.
    /// Returns the names of the offending objects or morphisms.
    pub fn validate(&self) -> Result<Vec<String>> {
        let (f, g) = (&self.source, &self.target);
        if f.source != g.source || f.target != g.target {
            return Err(Error::invalid("natural transformation", "functors are not parallel"));
        }
        let (c, d) = (&*f.source, &*f.target);
        if self.components.len() != c.num_objects() {
            return Err(Error::Malformed("component table does not cover the objects".into()));
        }
        let mut bad = Vec::new();
        for x in c.objects() {
            let a = self.components[x];
            if d.dom(a) != f.ob(x) || d.cod(a) != g.ob(x) {
                bad.push(c.object_name(x).to_string());
            }
        }
        if !bad.is_empty() {
            return Ok(bad);
        }
        for m in c.morphisms() {
            let lhs = d.compose(g.mor(m), self.components[c.dom(m)]);
            let rhs = d.compose(self.components[c.cod(m)], f.mor(m));
            if lhs.is_none() || lhs != rhs {
                bad.push(c.morphism_name(m).to_string());
            }
        }
        Ok(bad)
    }
}

/// Constraints for [`enumerate_functors`].
pub struct FunctorSearch<'a> {
    pub object_ok: Option<&'a dyn Fn(Ob, Ob) -> bool>,
    pub morphism_ok: Option<&'a dyn Fn(Mor, Mor) -> bool>,
    pub limit: Option<usize>,
    pub budget: u64,
}

impl Default for FunctorSearch<'_> {
    fn default() -> Self {
        FunctorSearch { object_ok: None, morphism_ok: None, limit: None, budget: crate::DEFAULT_BUDGET }
    }
}

/// All functors `source → target` satisfying the search constraints, in
/// lexicographic order of their tables.
pub fn enumerate_functors(
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
    search: &FunctorSearch<'_>,
) -> Result<Vec<FinFunctor>> {
    let (s, t) = (&**source, &**target);
    let ob_ok = |x: Ob, y: Ob| search.object_ok.is_none_or(|f| f(x, y));
    let mor_ok = |m: Mor, n: Mor| search.morphism_ok.is_none_or(|f| f(m, n));
    let mut budget = Budget::new(search.budget);

    let order: Vec<Mor> = s.morphisms().filter(|&m| !s.is_identity(m)).collect();
    let mut position = vec![usize::MAX; s.num_morphisms()];
    for (i, &m) in order.iter().enumerate() {
        position[m] = i;
    }
    // identities come first (position "before 0"); a triple is checked once
    // its last member gets assigned.
    let mut checks_at: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); order.len() + 1];
    for g in s.morphisms() {
        for f in s.morphisms() {
            if s.dom(g) == s.cod(f) {
                if let Some(gf) = s.compose(g, f) {
                    let last = [g, f, gf]
                        .iter()
                        .map(|&m| if position[m] == usize::MAX { 0 } else { position[m] + 1 })
                        .max()
                        .unwrap();
                    checks_at[last].push((g, f, gf));
                }
            }
        }
    }

    let mut results = Vec::new();
    let mut obj = vec![usize::MAX; s.num_objects()];
    let limit = search.limit.unwrap_or(usize::MAX);

    struct Ctx<'c> {
        s: &'c FinCategory,
        t: &'c FinCategory,
        order: &'c [Mor],
        checks_at: &'c [Vec<(Mor, Mor, Mor)>],
    }

    fn assign_morphisms(
        ctx: &Ctx<'_>,
        depth: usize,
        obj: &[Ob],
        mors: &mut Vec<Mor>,
        mor_ok: &dyn Fn(Mor, Mor) -> bool,
        budget: &mut Budget,
        out: &mut Vec<Vec<Mor>>,
        limit: usize,
    ) -> Result<()> {
        let holds = |mors: &[Mor], checks: &[(Mor, Mor, Mor)]| {
            checks.iter().all(|&(g, f, gf)| ctx.t.compose(mors[g], mors[f]) == Some(mors[gf]))
        };
        if depth == ctx.order.len() {
            out.push(mors.clone());
            return Ok(());
        }
        let m = ctx.order[depth];
        for &n in ctx.t.hom(obj[ctx.s.dom(m)], obj[ctx.s.cod(m)]) {
            if out.len() >= limit {
                return Ok(());
            }
            budget.tick()?;
            if !mor_ok(m, n) {
                continue;
            }
            mors[m] = n;
            if holds(mors, &ctx.checks_at[depth + 1]) {
                assign_morphisms(ctx, depth + 1, obj, mors, mor_ok, budget, out, limit)?;
            }
        }
        mors[m] = usize::MAX;
        Ok(())
    }

    let ctx = Ctx { s, t, order: &order, checks_at: &checks_at };

    fn assign_objects(
        ctx: &Ctx<'_>,
        x: Ob,
        obj: &mut Vec<Ob>,
        ob_ok: &dyn Fn(Ob, Ob) -> bool,
        mor_ok: &dyn Fn(Mor, Mor) -> bool,
        budget: &mut Budget,
        out: &mut Vec<Vec<Mor>>,
        objects_out: &mut Vec<Vec<Ob>>,
        limit: usize,
    ) -> Result<()> {
        let (s, t) = (ctx.s, ctx.t);
        if x == s.num_objects() {
            let mut mors = vec![usize::MAX; s.num_morphisms()];
            for y in s.objects() {
                let i = s.id(y);
                let image = t.id(obj[y]);
                if !mor_ok(i, image) {
                    return Ok(());
                }
                mors[i] = image;
            }
            if !ctx.checks_at[0].iter().all(|&(g, f, gf)| t.compose(mors[g], mors[f]) == Some(mors[gf])) {
                return Ok(());
            }
            let before = out.len();
            assign_morphisms(ctx, 0, obj, &mut mors, mor_ok, budget, out, limit)?;
            for _ in before..out.len() {
                objects_out.push(obj.clone());
            }
            return Ok(());
        }
        for y in t.objects() {
            if out.len() >= limit {
                return Ok(());
            }
            budget.tick()?;
            if !ob_ok(x, y) {
                continue;
            }
            obj[x] = y;
            // every morphism between assigned objects needs some admissible image
            let feasible = (0..=x).all(|z| {
                [(z, x), (x, z)].iter().all(|&(a, b)| {
                    s.hom(a, b)
                        .iter()
                        .filter(|&&m| !s.is_identity(m))
                        .all(|&m| t.hom(obj[a], obj[b]).iter().any(|&n| mor_ok(m, n)))
                })
            });
            if feasible {
                assign_objects(ctx, x + 1, obj, ob_ok, mor_ok, budget, out, objects_out, limit)?;
            }
        }
        obj[x] = usize::MAX;
        Ok(())
    }

    let mut mor_tables = Vec::new();
    let mut ob_tables = Vec::new();
    assign_objects(&ctx, 0, &mut obj, &ob_ok, &mor_ok, &mut budget, &mut mor_tables, &mut ob_tables, limit)?;
    for (objects, morphisms) in ob_tables.into_iter().zip(mor_tables) {
        results.push(FinFunctor { source: source.clone(), target: target.clone(), objects, morphisms });
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FinCategory) -> Arc<FinCategory> {
        Arc::new(c)
    }

    #[test]
    fn inclusion_and_constant_are_valid() {
        let one = arc(FinCategory::ordinal(1));
        let two = arc(FinCategory::ordinal(2));
        let inc = FinFunctor::from_names(
            one.clone(),
            two.clone(),
            &[("0", "0"), ("1", "1")],
            &[("0<=1", "0<=1")],
        )
        .unwrap();
        assert!(inc.validate().is_valid());
        let constant = FinFunctor::constant(two.clone(), one.clone(), 1);
        assert!(constant.validate().is_valid());
    }

    #[test]
    fn id_to_non_identity_is_one_violation() {
        let z = arc(FinCategory::cyclic_group(2));
        let bad = FinFunctor::new(z.clone(), z.clone(), vec![0], vec![1, 1]).unwrap();
        let report = bad.validate();
        assert!(report.violations.contains(&FunctorViolation::Identity { object: "•".into() }));
        let ids = report.violations.iter().filter(|v| matches!(v, FunctorViolation::Identity { .. })).count();
        assert_eq!(ids, 1);
    }

    #[test]
    fn functor_counts_by_enumeration() {
        // functors [1] → [2] are monotone maps: 6
        let one = arc(FinCategory::ordinal(1));
        let two = arc(FinCategory::ordinal(2));
        let all = enumerate_functors(&one, &two, &FunctorSearch::default()).unwrap();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|f| f.validate().is_valid()));
        // endofunctors of ℤ/2: the trivial map and the identity
        let z = arc(FinCategory::cyclic_group(2));
        assert_eq!(enumerate_functors(&z, &z, &FunctorSearch::default()).unwrap().len(), 2);
        // ℤ/3 → ℤ/3: three homomorphisms
        let z3 = arc(FinCategory::cyclic_group(3));
        assert_eq!(enumerate_functors(&z3, &z3, &FunctorSearch::default()).unwrap().len(), 3);
    }

    #[test]
    fn composition_of_functors() {
        let one = arc(FinCategory::ordinal(1));
        let two = arc(FinCategory::ordinal(2));
        let f = enumerate_functors(&one, &two, &FunctorSearch::default()).unwrap();
        let g = enumerate_functors(&two, &two, &FunctorSearch::default()).unwrap();
        for a in &f {
            for b in &g {
                let ab = a.then(b).unwrap();
                assert!(ab.validate().is_valid());
            }
        }
        assert!(f[0].then(&f[0]).is_err());
    }

    #[test]
    fn naturality() {
        let one = arc(FinCategory::ordinal(1));
        let two = arc(FinCategory::ordinal(2));
        let c0 = FinFunctor::constant(one.clone(), two.clone(), 0);
        let c2 = FinFunctor::constant(one.clone(), two.clone(), 2);
        let to2 = two.morphism("0<=2").unwrap();
        let alpha = NaturalTransformation { source: c0.clone(), target: c2.clone(), components: vec![to2, to2] };
        assert!(alpha.validate().unwrap().is_empty());
        let backwards = NaturalTransformation { source: c2, target: c0, components: vec![to2, to2] };
        assert_eq!(backwards.validate().unwrap().len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let big = arc(FinCategory::ordinal(5));
        let search = FunctorSearch { budget: 10, ..Default::default() };
        assert!(matches!(enumerate_functors(&big, &big, &search), Err(Error::Budget(10))));
    }
}
