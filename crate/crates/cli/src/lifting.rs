use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use gaia_core::elements::{left_kan_migration, pullback_migration, right_kan_migration};
use gaia_core::fincat::{FunctorFile, InstanceFile};
use gaia_core::lifting::{query_by_lifting, CategorySquare, FinSetMap, FinSetMapFile, QueryFile, SetSquare};
use gaia_core::FinFunctor;
use serde_json::{json, Value};

use crate::input::{self, Document, Kind};
use crate::{Failure, MigrationMode, Outcome, Search};

fn maps_of(h: &FinFunctor) -> Value {
    let file = FunctorFile::from(h);
    json!({ "objects": file.objects, "morphisms": file.morphisms })
}

pub fn lift(paths: [&PathBuf; 4], search: Search) -> Result<Outcome, Failure> {
    let docs = paths.iter().map(|p| input::document(p)).collect::<Result<Vec<_>, _>>()?;
    let kind = docs[0].kind();
    if docs.iter().any(|d| d.kind() != kind) {
        return Err(Failure::Input("the four maps must all be set maps or all be functors".into()));
    }
    let budget = search.budget()?;
    let diagonals: Vec<Value> = match kind {
        Kind::SetMap => {
            let maps = docs
                .iter()
                .map(|d| match d {
                    Document::SetMap(f) => Ok(f.build()?),
                    _ => unreachable!(),
                })
                .collect::<Result<Vec<FinSetMap>, Failure>>()?;
            let [f, p, mu, nu]: [FinSetMap; 4] = maps.try_into().expect("four maps");
            let square = SetSquare::new(f, p, mu, nu)?;
            let (b, x) = (square.f.codomain.clone(), square.p.domain.clone());
            square
                .solve(budget)?
                .into_iter()
                .map(|h| {
                    let map = FinSetMap::new(b.clone(), x.clone(), h).expect("diagonal is a function");
                    json!(FinSetMapFile::from(&map).map)
                })
                .collect()
        }
        Kind::Functor => {
            let fs = paths.iter().map(|p| input::functor(p)).collect::<Result<Vec<_>, _>>()?;
            let [f, p, mu, nu]: [FinFunctor; 4] = fs.try_into().expect("four functors");
            let square = CategorySquare::new(f, p, mu, nu)?;
            square.solve(budget)?.iter().map(maps_of).collect()
        }
        other => return Err(Failure::Input(format!("cannot lift with {} files", other.name()))),
    };
    let count = diagonals.len();
    let report = json!({ "kind": kind.name(), "count": count, "diagonals": diagonals });
    Ok(Outcome { report, ok: !(search.expect_solution && count == 0) })
}

pub fn query(instance: &Path, pattern: &Path, schema: Option<&Path>, search: Search) -> Result<Outcome, Failure> {
    let schema = schema.map(input::category).transpose()?;
    let delta = input::instance_over(instance, schema)?;
    let file: QueryFile = input::load(pattern)?;
    let (q, options) = file.build(delta.shape().clone(), search.budget()?)?;
    let answer = query_by_lifting(&q, &delta, &options)?;
    let count = answer.solutions.len();
    let mut report = serde_json::to_value(&answer).expect("serializable");
    report["count"] = json!(count);
    Ok(Outcome { report, ok: !(search.expect_solution && count == 0) })
}

pub fn migrate(mode: MigrationMode, functor: &Path, instance: &Path, budget: u64) -> Result<Outcome, Failure> {
    let f = input::functor(functor)?;
    let (name, out) = match mode {
        MigrationMode::Delta => ("delta", pullback_migration(&f, &input::instance_over(instance, Some(f.target().clone()))?)?),
        MigrationMode::Sigma => {
            ("sigma", left_kan_migration(&f, &input::instance_over(instance, Some(f.source().clone()))?)?.instance)
        }
        MigrationMode::Pi => {
            ("pi", right_kan_migration(&f, &input::instance_over(instance, Some(f.source().clone()))?, budget)?.instance)
        }
    };
    let sizes: BTreeMap<String, usize> =
        out.shape().objects().map(|x| (out.shape().object_name(x).to_string(), out.size(x))).collect();
    Ok(Outcome::ok(json!({ "mode": name, "sizes": sizes, "instance": InstanceFile::from(&out) })))
}
