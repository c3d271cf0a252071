use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::CategorySquare;
use crate::elements::{category_of_elements, SetInstance};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, CategoryFile, FinCategory, FinFunctor, FunctorSearch};

/// A query `f : Q → R` with `ν : R → C` over a schema `C`, answered by
/// lifting against `p : ∫δ → C`.
#[derive(Debug, Clone)]
pub struct Query {
    pub f: FinFunctor,
    pub nu: FinFunctor,
}

/// A superpattern `g : R → R'` whose presence rules a solution out.
#[derive(Debug, Clone)]
pub struct Exclusion {
    pub g: FinFunctor,
    pub nu: FinFunctor,
}

#[derive(Debug, Clone)]
pub struct QueryOptions {
    /// distinct objects of `R` must go to distinct elements
    pub injective: bool,
    /// keep one solution per set of bound elements
    pub dedup: bool,
    pub exclusions: Vec<Exclusion>,
    pub budget: u64,
}

impl Default for QueryOptions {
    fn default() -> Self {
        QueryOptions { injective: false, dedup: false, exclusions: Vec::new(), budget: crate::DEFAULT_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuerySolution {
    /// objects of `Q` to elements `(s,x)`, i.e. `μ = h ∘ f`
    pub binding: BTreeMap<String, String>,
    /// objects of `R` to elements, i.e. `h`
    pub assignment: BTreeMap<String, String>,
}

impl Query {
    pub fn new(f: FinFunctor, nu: FinFunctor) -> Result<Self> {
        if f.target() != nu.source() {
            return Err(Error::invalid("query", "ν must start where f ends"));
        }
        Ok(Query { f, nu })
    }

    pub fn schema(&self) -> &Arc<FinCategory> {
        self.nu.target()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryAnswer {
    pub solutions: Vec<QuerySolution>,
    /// bindings `μ` with no diagonal at all
    pub unsolved: Vec<BTreeMap<String, String>>,
}

/// Every diagonal `h : R → ∫δ` over `C`, across all bindings
/// `μ : Q → ∫δ` over `C`.
pub fn query_by_lifting(query: &Query, instance: &SetInstance, options: &QueryOptions) -> Result<QueryAnswer> {
    if **instance.shape() != **query.schema() {
        return Err(Error::invalid("query", "instance and query use different schemas"));
    }
    for ex in &options.exclusions {
        if ex.g.source() != query.f.target() || ex.nu.target() != query.schema() || !ex.g.then(&ex.nu)?.same_maps(&query.nu)
        {
            return Err(Error::invalid("query exclusion", "ν' ∘ g must equal ν"));
        }
    }
    let el = category_of_elements(instance);
    let p = el.projection.clone();
    let (q, r) = (query.f.source(), query.f.target());
    let down = query.f.then(&query.nu)?;
    let object_ok = |qo: usize, eo: usize| p.ob(eo) == down.ob(qo);
    let morphism_ok = |qm: usize, em: usize| p.mor(em) == down.mor(qm);
    let search = FunctorSearch {
        object_ok: Some(&object_ok),
        morphism_ok: Some(&morphism_ok),
        limit: None,
        budget: options.budget,
    };
    let mus = enumerate_functors(q, &el.category, &search)?;
    let mut out = Vec::new();
    let mut unsolved = Vec::new();
    let mut seen = BTreeSet::new();
    let name = |x: usize| el.category.object_name(x).to_string();
    for mu in mus {
        let sq = CategorySquare::new(query.f.clone(), p.clone(), mu.clone(), query.nu.clone())?;
        let binding: BTreeMap<String, String> =
            q.objects().map(|x| (q.object_name(x).to_string(), name(mu.ob(x)))).collect();
        let before = out.len();
        let mut any = false;
        for h in sq.solve(options.budget)? {
            if options.injective && !injective_on_objects(&h) {
                continue;
            }
            let mut excluded = false;
            for ex in &options.exclusions {
                let wider = CategorySquare::new(ex.g.clone(), p.clone(), h.clone(), ex.nu.clone())?;
                if !wider.solve(options.budget)?.is_empty() {
                    excluded = true;
                    break;
                }
            }
            if excluded {
                continue;
            }
            any = true;
            if options.dedup {
                let image: BTreeSet<usize> = r.objects().map(|x| h.ob(x)).collect();
                if !seen.insert(image) {
                    continue;
                }
            }
            out.push(QuerySolution {
                binding: binding.clone(),
                assignment: r.objects().map(|x| (r.object_name(x).to_string(), name(h.ob(x)))).collect(),
            });
        }
        if !any && out.len() == before {
            unsolved.push(binding);
        }
    }
    Ok(QueryAnswer { solutions: out, unsolved })
}

fn injective_on_objects(h: &FinFunctor) -> bool {
    let mut seen = BTreeSet::new();
    h.object_table().iter().all(|&y| seen.insert(y))
}

/// Object and morphism assignments of a functor between named categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMaps {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorMaps {
    pub fn build(&self, source: Arc<FinCategory>, target: Arc<FinCategory>) -> Result<FinFunctor> {
        let objects: Vec<(&String, &String)> = self.objects.iter().collect();
        let morphisms: Vec<(&String, &String)> = self.morphisms.iter().collect();
        FinFunctor::from_names(source, target, &objects, &morphisms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExclusionFile {
    pub r: CategoryFile,
    pub g: FunctorMaps,
    pub nu: FunctorMaps,
}

/// `{"q": category, "r": category, "f": maps, "nu": maps, "injective", "dedup", "exclude": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryFile {
    pub q: CategoryFile,
    pub r: CategoryFile,
    pub f: FunctorMaps,
    pub nu: FunctorMaps,
    #[serde(default)]
    pub injective: bool,
    #[serde(default)]
    pub dedup: bool,
    #[serde(default)]
    pub exclude: Vec<ExclusionFile>,
}

impl QueryFile {
    pub fn build(&self, schema: Arc<FinCategory>, budget: u64) -> Result<(Query, QueryOptions)> {
        let q = Arc::new(self.q.build()?);
        let r = Arc::new(self.r.build()?);
        let f = self.f.build(q, r.clone())?;
        let nu = self.nu.build(r.clone(), schema.clone())?;
        let exclusions = self
            .exclude
            .iter()
            .map(|e| {
                let wider = Arc::new(e.r.build()?);
                Ok(Exclusion { g: e.g.build(r.clone(), wider.clone())?, nu: e.nu.build(wider, schema.clone())? })
            })
            .collect::<Result<Vec<_>>>()?;
        let options = QueryOptions { injective: self.injective, dedup: self.dedup, exclusions, budget };
        Ok((Query::new(f, nu)?, options))
    }
}
