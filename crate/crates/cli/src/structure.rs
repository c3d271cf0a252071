use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use gaia_core::homology::{cells, chain_complex};
use gaia_core::simplicial::{self, inner_horn_report, is_kan_complex, HornProblem};
use gaia_core::{elements, Error};
use serde_json::{json, Value};

use crate::input::{self, Document};
use crate::{Failure, Outcome, Search};

fn violations<V: std::fmt::Display>(items: &[V]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// Builder errors that reject the content rather than the syntax.
fn rejection<T>(r: gaia_core::Result<T>) -> Result<Vec<String>, Failure> {
    match r {
        Ok(_) => Ok(Vec::new()),
        Err(e @ Error::Invalid { .. }) => Ok(vec![e.to_string()]),
        Err(e) => Err(e.into()),
    }
}

pub fn validate(path: &Path) -> Result<Outcome, Failure> {
    let doc = input::document(path)?;
    let found = match &doc {
        Document::Category(f) => violations(&f.build()?.validate().violations),
        Document::Functor(f) => {
            let mut out: Vec<String> =
                violations(&f.source.build()?.validate().violations).into_iter().map(|v| format!("source: {v}")).collect();
            out.extend(violations(&f.target.build()?.validate().violations).into_iter().map(|v| format!("target: {v}")));
            if out.is_empty() {
                out = violations(&f.build()?.validate().violations);
            }
            out
        }
        Document::Instance(f) => {
            let schema = f.schema.build()?;
            let out = violations(&schema.validate().violations);
            if out.is_empty() {
                violations(&f.build()?.validate().violations)
            } else {
                out.into_iter().map(|v| format!("schema: {v}")).collect()
            }
        }
        Document::Simplicial(f) => f
            .build()?
            .validate()
            .iter()
            .map(|v| format!("{} fails at {}:{}", v.identity, v.dimension, v.simplex))
            .collect(),
        Document::Lts(f) => rejection(f.build())?,
        Document::Space(f) => rejection(f.build())?,
        Document::Pipeline(p) => rejection(p.learner())?,
        Document::SetMap(f) => rejection(f.build())?,
    };
    let valid = found.is_empty();
    let mut report = json!({ "valid": valid, "kind": doc.kind().name() });
    if !valid {
        report["violations"] = json!(found);
    }
    Ok(Outcome { report, ok: valid })
}

pub fn nerve(path: &Path, truncation: usize, emit: bool) -> Result<Outcome, Failure> {
    let c = input::category(path)?;
    let x = simplicial::nerve(&c, truncation).set;
    if emit {
        return Ok(Outcome::ok(serde_json::to_value(x.to_file()).expect("serializable")));
    }
    let inner = inner_horn_report(&x, truncation)?;
    let identity_failures = x.validate().len();
    Ok(Outcome::ok(json!({
        "truncation": truncation,
        "counts": (0..=truncation).map(|n| x.len(n)).collect::<Vec<_>>(),
        "nondegenerate": (0..=truncation).map(|n| x.count_nondegenerate(n)).collect::<Vec<_>>(),
        "identities_hold": identity_failures == 0,
        "inner_horns": inner,
    })))
}

fn parse_faces(specs: &[String]) -> Result<BTreeMap<usize, String>, Failure> {
    let mut out = BTreeMap::new();
    for s in specs {
        let (i, name) = s.split_once('=').ok_or_else(|| Failure::Input(format!("face `{s}` is not of the form i=name")))?;
        let i: usize = i.trim().parse().map_err(|_| Failure::Input(format!("face index `{i}` is not a number")))?;
        if out.insert(i, name.trim().to_string()).is_some() {
            return Err(Failure::Input(format!("face {i} given twice")));
        }
    }
    Ok(out)
}

pub fn fill_horn(
    path: &Path,
    n: usize,
    k: usize,
    faces: &[String],
    truncation: Option<usize>,
    search: Search,
) -> Result<Outcome, Failure> {
    let faces = parse_faces(faces)?;
    let x = input::simplicial_or_nerve(path, truncation.unwrap_or(n).max(n))?;
    let problem = HornProblem::from_names(&x, n, k, &faces)?;
    let fillers = problem.fillers();
    let names: Vec<&str> = fillers.iter().map(|&s| x.name(n, s)).collect();
    let report = json!({
        "fillers": fillers.len(),
        "filler_names": names,
        "horn": problem.witness(),
    });
    Ok(Outcome { report, ok: !(search.expect_solution && fillers.is_empty()) })
}

pub fn kan_check(path: &Path, truncation: usize, dim: Option<usize>, expect: bool) -> Result<Outcome, Failure> {
    let x = input::simplicial_or_nerve(path, truncation)?;
    let m = dim.unwrap_or(x.truncation());
    let kan = is_kan_complex(&x, m)?;
    let inner = inner_horn_report(&x, m)?;
    let ok = !(expect && !kan.kan);
    let mut report = serde_json::to_value(&kan).expect("serializable");
    report["dimension"] = json!(m);
    report["inner_horns"] = serde_json::to_value(inner).expect("serializable");
    Ok(Outcome { report, ok })
}

pub fn homology(path: &Path, truncation: usize, triplets: Option<&Path>, with_cells: bool) -> Result<Outcome, Failure> {
    let x = match input::document(path)? {
        Document::Simplicial(f) => input::simplicial(&f)?,
        Document::Category(f) => {
            let c = input::valid_category(f.build()?)?;
            simplicial::nerve(&c, truncation).set
        }
        Document::Instance(_) => {
            let delta = input::instance_over(path, None)?;
            let elements = elements::category_of_elements(&delta);
            simplicial::nerve(&elements.category, truncation).set
        }
        other => {
            return Err(Failure::Input(format!(
                "{}: homology needs a simplicial set, category or instance, found {}",
                path.display(),
                other.kind().name()
            )))
        }
    };
    let complex = chain_complex(&x);
    let result = complex.homology();
    if let Some(out) = triplets {
        fs::write(out, complex.to_triplets()).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    }
    let mut report: Value = serde_json::to_value(&result).expect("serializable");
    report["ranks"] = json!(complex.ranks());
    report["euler_characteristic"] = json!(complex.euler_characteristic());
    report["boundary_squares_to_zero"] = json!(complex.is_complex());
    if with_cells {
        report["cells"] = serde_json::to_value(cells(&x)).expect("serializable");
    }
    Ok(Outcome::ok(report))
}
