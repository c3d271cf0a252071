use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{FinCategory, Mor, Ob, ValidationReport};
use crate::error::{Budget, Error, Result};

/// A functor from a finite category into finite sets.
///
/// Elements of each set are named; functions are stored as index tables.
#[derive(Debug, Clone, PartialEq)]
pub struct SetDiagram {
    shape: Arc<FinCategory>,
    sets: Vec<Vec<String>>,
    functions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiagramViolation {
    Identity { object: String },
    Composition { g: String, f: String },
}

impl fmt::Display for DiagramViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramViolation::Identity { object } => write!(out, "identity on {object} is not the identity function"),
            DiagramViolation::Composition { g, f } => write!(out, "action of {g} ∘ {f} is not the composite action"),
        }
    }
}

impl SetDiagram {
    pub fn new(shape: Arc<FinCategory>, sets: Vec<Vec<String>>, functions: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != shape.num_objects() || functions.len() != shape.num_morphisms() {
            return Err(Error::Malformed("diagram tables do not cover the shape".into()));
        }
        for (x, set) in sets.iter().enumerate() {
            let mut sorted: Vec<&String> = set.iter().collect();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Duplicate { kind: "element", id: format!("{}.{}", shape.object_name(x), w[0]) });
            }
        }
        for m in shape.morphisms() {
            let (d, c) = (shape.dom(m), shape.cod(m));
            if functions[m].len() != sets[d].len() || functions[m].iter().any(|&y| y >= sets[c].len()) {
                return Err(Error::Malformed(format!(
                    "action of `{}` is not a function {} → {}",
                    shape.morphism_name(m),
                    shape.object_name(d),
                    shape.object_name(c)
                )));
            }
        }
        Ok(SetDiagram { shape, sets, functions })
    }

    /// From name-keyed tables. Actions of identities may be omitted, and so
    /// may actions of morphisms that are composites of given ones.
    pub fn from_names(
        shape: Arc<FinCategory>,
        tables: &[(impl AsRef<str>, Vec<String>)],
        actions: &[(impl AsRef<str>, Vec<(String, String)>)],
    ) -> Result<Self> {
        let mut sets = vec![None; shape.num_objects()];
        for (x, elems) in tables {
            sets[shape.object(x.as_ref())?] = Some(elems.clone());
        }
        let sets: Vec<Vec<String>> = sets
            .into_iter()
            .enumerate()
            .map(|(x, s)| s.ok_or_else(|| Error::Malformed(format!("no table for `{}`", shape.object_name(x)))))
            .collect::<Result<_>>()?;
        let index_of = |x: Ob, e: &str| -> Result<usize> {
            sets[x]
                .iter()
                .position(|s| s == e)
                .ok_or_else(|| Error::unknown("element", format!("{}.{}", shape.object_name(x), e)))
        };
        let mut functions: Vec<Option<Vec<usize>>> = vec![None; shape.num_morphisms()];
        for (m, pairs) in actions {
            let m = shape.morphism(m.as_ref())?;
            let (d, c) = (shape.dom(m), shape.cod(m));
            let mut table = vec![usize::MAX; sets[d].len()];
            for (a, b) in pairs {
                table[index_of(d, a)?] = index_of(c, b)?;
            }
            if let Some(a) = table.iter().position(|&y| y == usize::MAX) {
                return Err(Error::Malformed(format!(
                    "action of `{}` undefined on `{}`",
                    shape.morphism_name(m),
                    sets[d][a]
                )));
            }
            functions[m] = Some(table);
        }
        for x in shape.objects() {
            let i = shape.id(x);
            if functions[i].is_none() {
                functions[i] = Some((0..sets[x].len()).collect());
            }
        }
        // fill composites from their factors until nothing changes
        loop {
            let mut changed = false;
            for g in shape.morphisms() {
                for f in shape.morphisms() {
                    if shape.dom(g) != shape.cod(f) {
                        continue;
                    }
                    let Some(gf) = shape.compose(g, f) else { continue };
                    if functions[gf].is_some() {
                        continue;
                    }
                    if let (Some(tg), Some(tf)) = (&functions[g], &functions[f]) {
                        functions[gf] = Some(tf.iter().map(|&y| tg[y]).collect());
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let functions = functions
            .into_iter()
            .enumerate()
            .map(|(m, t)| match t {
                Some(t) => Ok(t),
                // the empty function needs no listing
                None if sets[shape.dom(m)].is_empty() => Ok(Vec::new()),
                None => Err(Error::Malformed(format!("no action for `{}`", shape.morphism_name(m)))),
            })
            .collect::<Result<_>>()?;
        Self::new(shape, sets, functions)
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn set(&self, x: Ob) -> &[String] {
        &self.sets[x]
    }

    pub fn size(&self, x: Ob) -> usize {
        self.sets[x].len()
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn function(&self, m: Mor) -> &[usize] {
        &self.functions[m]
    }

    pub fn functions(&self) -> &[Vec<usize>] {
        &self.functions
    }

    pub fn apply(&self, m: Mor, x: usize) -> usize {
        self.functions[m][x]
    }

    pub fn element_index(&self, x: Ob, name: &str) -> Result<usize> {
        self.sets[x]
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::unknown("element", format!("{}.{}", self.shape.object_name(x), name)))
    }

    pub fn total_elements(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn validate(&self) -> ValidationReport<DiagramViolation> {
        let c = &*self.shape;
        let mut violations = Vec::new();
        for x in c.objects() {
            if self.functions[c.id(x)].iter().enumerate().any(|(i, &y)| i != y) {
                violations.push(DiagramViolation::Identity { object: c.object_name(x).into() });
            }
        }
        for g in c.morphisms() {
            for f in c.morphisms() {
                if c.dom(g) != c.cod(f) {
                    continue;
                }
                let Some(gf) = c.compose(g, f) else { continue };
                let ok = (0..self.sets[c.dom(f)].len())
                    .all(|x| self.functions[g][self.functions[f][x]] == self.functions[gf][x]);
                if !ok {
                    violations.push(DiagramViolation::Composition {
                        g: c.morphism_name(g).into(),
                        f: c.morphism_name(f).into(),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Name of element `i` of the set at `x`, tagged with the object.
    pub fn tagged(&self, x: Ob, i: usize) -> String {
        format!("{}.{}", self.shape.object_name(x), self.sets[x][i])
    }

    /// The colimit: `⊔ d(j)` modulo `x ~ d(f)(x)`.
    ///
    /// Each class is named by its least tagged member, and classes are
    /// listed in order of those names.
    pub fn colimit(&self) -> SetColimit {
        let c = &*self.shape;
        let mut offset = Vec::with_capacity(c.num_objects() + 1);
        offset.push(0);
        for x in c.objects() {
            offset.push(offset[x] + self.sets[x].len());
        }
        let total = offset[c.num_objects()];
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for m in c.morphisms() {
            let (d, cd) = (c.dom(m), c.cod(m));
            for (i, &y) in self.functions[m].iter().enumerate() {
                let (a, b) = (find(&mut parent, offset[d] + i), find(&mut parent, offset[cd] + y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut members: Vec<(Ob, usize)> = Vec::with_capacity(total);
        for x in c.objects() {
            for i in 0..self.sets[x].len() {
                members.push((x, i));
            }
        }
        let mut classes: std::collections::BTreeMap<usize, Vec<(Ob, usize)>> = Default::default();
        for (flat, &(x, i)) in members.iter().enumerate() {
            let root = find(&mut parent, flat);
            classes.entry(root).or_default().push((x, i));
        }
        let mut named: Vec<(String, Vec<(Ob, usize)>)> = classes
            .into_values()
            .map(|class| {
                let name = class.iter().map(|&(x, i)| self.tagged(x, i)).min().expect("nonempty class");
                (name, class)
            })
            .collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let mut injections: Vec<Vec<usize>> = self.sets.iter().map(|s| vec![0; s.len()]).collect();
        for (k, (_, class)) in named.iter().enumerate() {
            for &(x, i) in class {
                injections[x][i] = k;
            }
        }
        let (elements, classes) = named.into_iter().unzip();
        SetColimit { elements, classes, injections }
    }

    /// The limit: families `(x_j)` with `d(f)(x_j) = x_k` for all `f : j → k`.
    pub fn limit(&self, budget: u64) -> Result<SetLimit> {
        let c = &*self.shape;
        let k = c.num_objects();
        // constraints checked when the later endpoint is assigned
        let mut checks: Vec<Vec<Mor>> = vec![Vec::new(); k];
        for m in c.morphisms() {
            if !c.is_identity(m) {
                checks[c.dom(m).max(c.cod(m))].push(m);
            }
        }
        let mut budget = Budget::new(budget);
        let mut families = Vec::new();
        let mut current = vec![0usize; k];
        fn go(
            d: &SetDiagram,
            j: usize,
            current: &mut Vec<usize>,
            checks: &[Vec<Mor>],
            budget: &mut Budget,
            out: &mut Vec<Vec<usize>>,
        ) -> Result<()> {
            let c = &*d.shape;
            if j == c.num_objects() {
                out.push(current.clone());
                return Ok(());
            }
            for x in 0..d.sets[j].len() {
                budget.tick()?;
                current[j] = x;
                if checks[j].iter().all(|&m| d.functions[m][current[c.dom(m)]] == current[c.cod(m)]) {
                    go(d, j + 1, current, checks, budget, out)?;
                }
            }
            Ok(())
        }
        go(self, 0, &mut current, &checks, &mut budget, &mut families)?;
        let elements = families
            .iter()
            .map(|fam| {
                let parts: Vec<&str> = fam.iter().enumerate().map(|(j, &x)| self.sets[j][x].as_str()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let projections = (0..k).map(|j| families.iter().map(|fam| fam[j]).collect()).collect();
        Ok(SetLimit { elements, families, projections })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetColimit {
    pub elements: Vec<String>,
    /// Members `(object, element)` of each class.
    pub classes: Vec<Vec<(Ob, usize)>>,
    /// `injections[j][x]` is the class of element `x` of `d(j)`.
    pub injections: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetLimit {
    pub elements: Vec<String>,
    pub families: Vec<Vec<usize>>,
    /// `projections[j][i]` is component `j` of family `i`.
    pub projections: Vec<Vec<usize>>,
}

impl SetLimit {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

impl SetColimit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
