use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{Mor, Ob, ValidationReport};
use crate::error::{Error, Result};

/// A category with finitely many objects and morphisms and a total
/// composition table on composable pairs.
///
/// Construction only checks structure (identifiers resolve, tables have the
/// right shape). The category axioms are checked by [`FinCategory::validate`],
/// so invalid presentations can be built and reported on.
#[derive(Debug, Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<String>,
    dom: Vec<Ob>,
    cod: Vec<Ob>,
    identity: Vec<Mor>,
    // row-major by (g, f): the entry for g ∘ f
    table: Vec<Option<Mor>>,
    homs: Vec<Vec<Mor>>,
    ob_index: HashMap<String, Ob>,
    mor_index: HashMap<String, Mor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CategoryViolation {
    IdentityNotEndomorphism { object: String, morphism: String },
    MissingComposite { g: String, f: String },
    ComposedNonComposable { g: String, f: String },
    Coherence { g: String, f: String, composite: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for CategoryViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CategoryViolation::*;
        match self {
            IdentityNotEndomorphism { object, morphism } => {
                write!(out, "identity {morphism} of {object} is not an endomorphism")
            }
            MissingComposite { g, f } => write!(out, "no composite for {g} ∘ {f}"),
            ComposedNonComposable { g, f } => {
                write!(out, "composite given for non-composable pair {g} ∘ {f}")
            }
            Coherence { g, f, composite } => {
                write!(out, "{g} ∘ {f} = {composite} has the wrong domain or codomain")
            }
            LeftIdentity { f } => write!(out, "id ∘ {f} ≠ {f}"),
            RightIdentity { f } => write!(out, "{f} ∘ id ≠ {f}"),
            Associativity { h, g, f } => write!(out, "({h} ∘ {g}) ∘ {f} ≠ {h} ∘ ({g} ∘ {f})"),
        }
    }
}

impl FinCategory {
    /// Builds a category from string identifiers.
    ///
    /// `compose` entries are `(g, f, g∘f)`.
    pub fn new<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        identity: &[(S, S)],
        compose: &[(S, S, S)],
    ) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
        let mut ob_index = HashMap::new();
        for (i, name) in objects.iter().enumerate() {
            if ob_index.insert(name.clone(), i).is_some() {
                return Err(Error::Duplicate { kind: "object", id: name.clone() });
            }
        }
        let lookup_ob = |name: &str| -> Result<Ob> {
            ob_index.get(name).copied().ok_or_else(|| Error::unknown("object", name))
        };
        let mut names = Vec::with_capacity(morphisms.len());
        let mut dom = Vec::with_capacity(morphisms.len());
        let mut cod = Vec::with_capacity(morphisms.len());
        let mut mor_index = HashMap::new();
        for (id, d, c) in morphisms {
            let id = id.as_ref().to_string();
            if mor_index.insert(id.clone(), names.len()).is_some() {
                return Err(Error::Duplicate { kind: "morphism", id });
            }
            dom.push(lookup_ob(d.as_ref())?);
            cod.push(lookup_ob(c.as_ref())?);
            names.push(id);
        }
        let lookup_mor = |name: &str| -> Result<Mor> {
            mor_index.get(name).copied().ok_or_else(|| Error::unknown("morphism", name))
        };
        let mut ident: Vec<Option<Mor>> = vec![None; objects.len()];
        for (ob, m) in identity {
            let ob = lookup_ob(ob.as_ref())?;
            let m = lookup_mor(m.as_ref())?;
            if ident[ob].replace(m).is_some() {
                return Err(Error::Duplicate { kind: "identity for object", id: objects[ob].clone() });
            }
        }
        let identity = ident
            .iter()
            .enumerate()
            .map(|(ob, m)| m.ok_or_else(|| Error::Malformed(format!("object `{}` has no identity", objects[ob]))))
            .collect::<Result<Vec<_>>>()?;
        let n = names.len();
        let mut table = vec![None; n * n];
        for (g, f, gf) in compose {
            let (g, f, gf) = (lookup_mor(g.as_ref())?, lookup_mor(f.as_ref())?, lookup_mor(gf.as_ref())?);
            let slot = &mut table[g * n + f];
            if slot.is_some_and(|old| old != gf) {
                return Err(Error::Malformed(format!(
                    "conflicting composites for {} ∘ {}",
                    names[g], names[f]
                )));
            }
            *slot = Some(gf);
        }
        Ok(Self::assemble(objects, names, dom, cod, identity, table, ob_index, mor_index))
    }

    /// Builds a category from indexed data and a composition rule on
    /// composable pairs. Used by generators whose output is valid by
    /// construction.
    pub fn from_indexed(
        objects: Vec<String>,
        morphisms: Vec<(String, Ob, Ob)>,
        identity: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Mor,
    ) -> Self {
        let n = morphisms.len();
        let mut names = Vec::with_capacity(n);
        let mut dom = Vec::with_capacity(n);
        let mut cod = Vec::with_capacity(n);
        for (name, d, c) in morphisms {
            names.push(name);
            dom.push(d);
            cod.push(c);
        }
        let mut table = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if dom[g] == cod[f] {
                    table[g * n + f] = Some(compose(g, f));
                }
            }
        }
        let ob_index = objects.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mor_index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self::assemble(objects, names, dom, cod, identity, table, ob_index, mor_index)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<String>,
        dom: Vec<Ob>,
        cod: Vec<Ob>,
        identity: Vec<Mor>,
        table: Vec<Option<Mor>>,
        ob_index: HashMap<String, Ob>,
        mor_index: HashMap<String, Mor>,
    ) -> Self {
        let k = objects.len();
        let mut homs = vec![Vec::new(); k * k];
        for m in 0..morphisms.len() {
            homs[dom[m] * k + cod[m]].push(m);
        }
        FinCategory { objects, morphisms, dom, cod, identity, table, homs, ob_index, mor_index }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Ob> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, x: Ob) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, m: Mor) -> &str {
        &self.morphisms[m]
    }

    pub fn object(&self, name: &str) -> Result<Ob> {
        self.ob_index.get(name).copied().ok_or_else(|| Error::unknown("object", name))
    }

    pub fn morphism(&self, name: &str) -> Result<Mor> {
        self.mor_index.get(name).copied().ok_or_else(|| Error::unknown("morphism", name))
    }

    pub fn dom(&self, m: Mor) -> Ob {
        self.dom[m]
    }

    pub fn cod(&self, m: Mor) -> Ob {
        self.cod[m]
    }

    pub fn id(&self, x: Ob) -> Mor {
        self.identity[x]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.dom[m] == self.cod[m] && self.identity[self.dom[m]] == m
    }

    /// Table entry for `g ∘ f`, if one was given.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.table[g * self.morphisms.len() + f]
    }

    /// `g ∘ f` in a valid category.
    ///
    /// Panics when the pair is not composable or the entry is missing.
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        debug_assert_eq!(self.dom[g], self.cod[f], "non-composable pair");
        self.compose(g, f).unwrap_or_else(|| {
            panic!("missing composite {} ∘ {}", self.morphisms[g], self.morphisms[f])
        })
    }

    /// Morphisms `a → b`.
    pub fn hom(&self, a: Ob, b: Ob) -> &[Mor] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Named variant of [`FinCategory::hom`].
    pub fn hom_set(&self, a: &str, b: &str) -> Result<Vec<&str>> {
        let (a, b) = (self.object(a)?, self.object(b)?);
        Ok(self.hom(a, b).iter().map(|&m| self.morphism_name(m)).collect())
    }

    /// Lists every violated axiom instance.
    pub fn validate(&self) -> ValidationReport<CategoryViolation> {
        let mut violations = Vec::new();
        let n = self.num_morphisms();
        let name = |m: Mor| self.morphisms[m].clone();
        for x in self.objects() {
            let i = self.identity[x];
            if self.dom[i] != x || self.cod[i] != x {
                violations.push(CategoryViolation::IdentityNotEndomorphism {
                    object: self.objects[x].clone(),
                    morphism: name(i),
                });
            }
        }
        for g in 0..n {
            for f in 0..n {
                let entry = self.compose(g, f);
                if self.dom[g] != self.cod[f] {
                    if entry.is_some() {
                        violations.push(CategoryViolation::ComposedNonComposable { g: name(g), f: name(f) });
                    }
                    continue;
                }
                match entry {
                    None => violations.push(CategoryViolation::MissingComposite { g: name(g), f: name(f) }),
                    Some(k) if self.dom[k] != self.dom[f] || self.cod[k] != self.cod[g] => {
                        violations.push(CategoryViolation::Coherence {
                            g: name(g),
                            f: name(f),
                            composite: name(k),
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        for f in 0..n {
            if self.compose(self.identity[self.cod[f]], f).is_some_and(|k| k != f) {
                violations.push(CategoryViolation::LeftIdentity { f: name(f) });
            }
            if self.compose(f, self.identity[self.dom[f]]).is_some_and(|k| k != f) {
                violations.push(CategoryViolation::RightIdentity { f: name(f) });
            }
        }
        for f in 0..n {
            for g in 0..n {
                if self.dom[g] != self.cod[f] {
                    continue;
                }
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..n {
                    if self.dom[h] != self.cod[g] {
                        continue;
                    }
                    let Some(hg) = self.compose(h, g) else { continue };
                    let left = self.compose(hg, f);
                    let right = self.compose(h, gf);
                    if let (Some(l), Some(r)) = (left, right) {
                        if l != r {
                            violations.push(CategoryViolation::Associativity { h: name(h), g: name(g), f: name(f) });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// True when `m` has a two-sided inverse.
    pub fn is_invertible(&self, m: Mor) -> bool {
        self.hom(self.cod[m], self.dom[m]).iter().any(|&inv| {
            self.compose(inv, m) == Some(self.identity[self.dom[m]])
                && self.compose(m, inv) == Some(self.identity[self.cod[m]])
        })
    }

    // ---- standard constructions ----

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    /// The category with no objects.
    pub fn empty() -> Self {
        Self::discrete::<&str>(&[])
    }

    /// Only identity morphisms.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> Self {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let morphisms = objects.iter().enumerate().map(|(i, o)| (format!("id_{o}"), i, i)).collect();
        let identity = (0..objects.len()).collect();
        Self::from_indexed(objects, morphisms, identity, |g, _| g)
    }

    /// The ordinal `[n] = {0 < 1 < … < n}` as a category.
    pub fn ordinal(n: usize) -> Self {
        let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        Self::preorder(&names, |i, j| i <= j).expect("total order is a preorder")
    }

    /// A preorder on `names` with one morphism `a<=b` per related pair.
    ///
    /// Fails unless `leq` is reflexive and transitive.
    pub fn preorder<S: AsRef<str>>(names: &[S], leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let k = names.len();
        let rel: Vec<bool> = (0..k * k).map(|p| leq(p / k, p % k)).collect();
        for a in 0..k {
            if !rel[a * k + a] {
                return Err(Error::invalid("preorder", format!("not reflexive at `{}`", names[a].as_ref())));
            }
            for b in 0..k {
                for c in 0..k {
                    if rel[a * k + b] && rel[b * k + c] && !rel[a * k + c] {
                        return Err(Error::invalid(
                            "preorder",
                            format!(
                                "not transitive: {} <= {} <= {}",
                                names[a].as_ref(),
                                names[b].as_ref(),
                                names[c].as_ref()
                            ),
                        ));
                    }
                }
            }
        }
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut morphisms = Vec::new();
        let mut index = vec![usize::MAX; k * k];
        for a in 0..k {
            for b in 0..k {
                if rel[a * k + b] {
                    index[a * k + b] = morphisms.len();
                    morphisms.push((format!("{}<={}", objects[a], objects[b]), a, b));
                }
            }
        }
        let identity = (0..k).map(|a| index[a * k + a]).collect();
        let ends: Vec<(Ob, Ob)> = morphisms.iter().map(|(_, d, c)| (*d, *c)).collect();
        Ok(Self::from_indexed(objects, morphisms, identity, |g, f| index[ends[f].0 * k + ends[g].1]))
    }

    /// One-object category from a monoid multiplication table.
    ///
    /// `mul[g][f]` is the element `g · f` (apply `f` first). `unit` indexes the
    /// neutral element.
    pub fn monoid<S: AsRef<str>>(object: &str, elements: &[S], unit: usize, mul: &[Vec<usize>]) -> Result<Self> {
        let n = elements.len();
        if unit >= n || mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Malformed("monoid table shape".into()));
        }
        let morphisms = elements.iter().map(|e| (e.as_ref().to_string(), 0, 0)).collect();
        Ok(Self::from_indexed(vec![object.to_string()], morphisms, vec![unit], |g, f| mul[g][f]))
    }

    /// The cyclic group `ℤ/n` as a one-object category; element `k` is `x^k`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let names: Vec<String> = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("x{k}") }).collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|f| (g + f) % n).collect()).collect();
        Self::monoid("•", &names, 0, &mul).expect("cyclic table")
    }

    /// Free category on a directed acyclic graph: morphisms are paths.
    ///
    /// Paths are named by their edges in application order joined with `;`.
    pub fn free_on_acyclic_graph<S: AsRef<str>>(objects: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
        let ob_index: HashMap<&str, Ob> = objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut graph = Vec::new();
        for (id, d, c) in edges {
            let d = *ob_index.get(d.as_ref()).ok_or_else(|| Error::unknown("object", d.as_ref()))?;
            let c = *ob_index.get(c.as_ref()).ok_or_else(|| Error::unknown("object", c.as_ref()))?;
            graph.push((id.as_ref().to_string(), d, c));
        }
        // paths as edge sequences; depth bounded by the object count on a DAG
        let mut paths: Vec<(Vec<usize>, Ob, Ob)> = (0..objects.len()).map(|x| (Vec::new(), x, x)).collect();
        let mut frontier: Vec<usize> = (0..objects.len()).collect();
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            if depth > objects.len() {
                return Err(Error::invalid("graph", "contains a cycle; free category is infinite"));
            }
            let mut next = Vec::new();
            for &p in &frontier {
                let (edges_so_far, start, end) = paths[p].clone();
                for (e, (_, d, c)) in graph.iter().enumerate() {
                    if *d == end {
                        let mut path = edges_so_far.clone();
                        path.push(e);
                        next.push(paths.len());
                        paths.push((path, start, *c));
                    }
                }
            }
            frontier = next;
        }
        let path_index: HashMap<Vec<usize>, Mor> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.0.is_empty())
            .map(|(i, p)| (p.0.clone(), i))
            .collect();
        let morphisms = paths
            .iter()
            .map(|(p, d, c)| {
                let name = if p.is_empty() {
                    format!("id_{}", objects[*d])
                } else {
                    p.iter().map(|&e| graph[e].0.as_str()).collect::<Vec<_>>().join(";")
                };
                (name, *d, *c)
            })
            .collect();
        let identity = (0..objects.len()).collect();
        Ok(Self::from_indexed(objects, morphisms, identity, |g, f| {
            if paths[g].0.is_empty() {
                return f;
            }
            if paths[f].0.is_empty() {
                return g;
            }
            let mut joined = paths[f].0.clone();
            joined.extend_from_slice(&paths[g].0);
            path_index[&joined]
        }))
    }

    /// Disjoint union; identifiers are prefixed with `left.`/`right.` only
    /// when they would collide.
    pub fn coproduct(&self, other: &FinCategory) -> Self {
        let clash = self.objects.iter().any(|o| other.ob_index.contains_key(o))
            || self.morphisms.iter().any(|m| other.mor_index.contains_key(m));
        let tag = |side: &str, s: &str| if clash { format!("{side}.{s}") } else { s.to_string() };
        let k = self.num_objects();
        let n = self.num_morphisms();
        let objects = self
            .objects
            .iter()
            .map(|o| tag("left", o))
            .chain(other.objects.iter().map(|o| tag("right", o)))
            .collect();
        let morphisms = self
            .morphisms()
            .map(|m| (tag("left", &self.morphisms[m]), self.dom[m], self.cod[m]))
            .chain(other.morphisms().map(|m| (tag("right", &other.morphisms[m]), other.dom[m] + k, other.cod[m] + k)))
            .collect();
        let identity = self.identity.iter().copied().chain(other.identity.iter().map(|&i| i + n)).collect();
        Self::from_indexed(objects, morphisms, identity, |g, f| {
            if g < n {
                self.comp(g, f)
            } else {
                other.comp(g - n, f - n) + n
            }
        })
    }

    /// The category with all arrows reversed.
    pub fn opposite(&self) -> Self {
        let morphisms = self.morphisms().map(|m| (self.morphisms[m].clone(), self.cod[m], self.dom[m])).collect();
        Self::from_indexed(self.objects.clone(), morphisms, self.identity.clone(), |g, f| self.comp(f, g))
    }

    /// Composes a path given in application order.
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &m| self.compose(m, acc))
    }
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.dom == other.dom
            && self.cod == other.cod
            && self.identity == other.identity
            && self.table == other.table
    }
}

impl Eq for FinCategory {}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinCategory {
        FinCategory::cyclic_group(2)
    }

    #[test]
    fn ordinal_two_is_valid_with_six_morphisms() {
        let c = FinCategory::ordinal(2);
        assert_eq!(c.num_morphisms(), 6);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn z2_monoid_is_valid() {
        assert!(z2().validate().is_valid());
        assert_eq!(z2().hom_set("•", "•").unwrap().len(), 2);
    }

    #[test]
    fn wrong_domain_composite_is_one_coherence_violation() {
        // [1] plus a second object `b` with its identity; set id_1 ∘ f := id_b
        let c = FinCategory::new(
            &["0", "1", "b"],
            &[("id0", "0", "0"), ("id1", "1", "1"), ("f", "0", "1"), ("idb", "b", "b")],
            &[("0", "id0"), ("1", "id1"), ("b", "idb")],
            &[
                ("id0", "id0", "id0"),
                ("id1", "id1", "id1"),
                ("idb", "idb", "idb"),
                ("f", "id0", "f"),
                ("id1", "f", "idb"),
            ],
        )
        .unwrap();
        let report = c.validate();
        let coherence = report
            .violations
            .iter()
            .filter(|v| matches!(v, CategoryViolation::Coherence { .. }))
            .count();
        assert_eq!(coherence, 1, "{:?}", report.violations);
    }

    #[test]
    fn dangling_identifiers_are_structural_errors() {
        let err = FinCategory::new(&["a"], &[("ida", "a", "zz")], &[("a", "ida")], &[]).unwrap_err();
        assert!(matches!(err, Error::Unknown { kind: "object", .. }));
        let err = FinCategory::new(&["a"], &[("ida", "a", "a")], &[("a", "nope")], &[]).unwrap_err();
        assert!(matches!(err, Error::Unknown { kind: "morphism", .. }));
    }

    #[test]
    fn missing_composite_is_reported() {
        let c = FinCategory::new(&["a"], &[("ida", "a", "a")], &[("a", "ida")], &[]).unwrap();
        assert_eq!(
            c.validate().violations,
            vec![CategoryViolation::MissingComposite { g: "ida".into(), f: "ida".into() }]
        );
    }

    #[test]
    fn hom_sets() {
        let c = FinCategory::ordinal(2);
        assert_eq!(c.hom_set("0", "2").unwrap(), vec!["0<=2"]);
        assert!(c.hom_set("2", "0").unwrap().is_empty());
        let d = FinCategory::discrete(&["a", "b", "c"]);
        assert!(d.hom_set("a", "b").unwrap().is_empty());
        assert!(matches!(d.hom_set("a", "q"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn free_category_counts_paths() {
        let c = FinCategory::free_on_acyclic_graph(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
        )
        .unwrap();
        // 3 identities, f, g, h, f;g
        assert_eq!(c.num_morphisms(), 7);
        assert!(c.validate().is_valid());
        let fg = c.morphism("f;g").unwrap();
        assert_eq!(c.comp(c.morphism("g").unwrap(), c.morphism("f").unwrap()), fg);
        let cyclic = FinCategory::free_on_acyclic_graph(&["a"], &[("l", "a", "a")]);
        assert!(cyclic.is_err());
    }

    #[test]
    fn preorder_rejects_non_transitive() {
        let r = FinCategory::preorder(&["a", "b", "c"], |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2));
        assert!(r.is_err());
    }

    #[test]
    fn opposite_and_coproduct_are_valid() {
        let c = FinCategory::ordinal(2).coproduct(&z2());
        assert!(c.validate().is_valid());
        assert_eq!(c.num_objects(), 4);
        assert!(FinCategory::ordinal(3).opposite().validate().is_valid());
        let clash = FinCategory::ordinal(1).coproduct(&FinCategory::ordinal(1));
        assert!(clash.validate().is_valid());
        assert!(clash.object("left.0").is_ok());
    }

    #[test]
    fn invertibility() {
        let z = z2();
        assert!(z.morphisms().all(|m| z.is_invertible(m)));
        let c = FinCategory::ordinal(1);
        assert!(!c.is_invertible(c.morphism("0<=1").unwrap()));
    }
}
