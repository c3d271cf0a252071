use std::fs;
use std::path::PathBuf;

use gaia_core::coalgebra::LtsFile;
use gaia_core::fincat::{CategoryFile, FunctorFile, InstanceFile};
use gaia_core::genmetric::SpaceFile;
use gaia_core::learn::PipelineSpec;
use gaia_core::lifting::{FinSetMapFile, QueryFile};
use gaia_core::simplicial::SimplicialFile;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn canonical(v: &Value) -> String {
    serde_json::to_string(v).unwrap()
}

/// parse, print, parse again; both printings agree and match the source.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(name: &str) {
    let text = fs::read_to_string(fixtures().join(name)).unwrap();
    let parsed: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    let printed = serde_json::to_string(&parsed).unwrap();
    let again: T = serde_json::from_str(&printed).unwrap();
    assert_eq!(parsed, again, "{name}");
    assert_eq!(printed, serde_json::to_string(&again).unwrap(), "{name}");
    let source: Value = serde_json::from_str(&text).unwrap();
    let ours: Value = serde_json::from_str(&printed).unwrap();
    assert_eq!(canonical(&strip_defaults(&source, &ours)), canonical(&ours), "{name}");
}

/// Brings the source into printed form: defaulted fields filled in, integers
/// accepted where exact distances print as strings.
fn strip_defaults(source: &Value, ours: &Value) -> Value {
    match (source, ours) {
        (Value::Object(a), Value::Object(b)) => {
            let mut out = a.clone();
            for (k, v) in b {
                match a.get(k) {
                    Some(x) => {
                        out.insert(k.clone(), strip_defaults(x, v));
                    }
                    None => {
                        out.insert(k.clone(), v.clone());
                    }
                }
            }
            Value::Object(out)
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
            Value::Array(a.iter().zip(b).map(|(x, y)| strip_defaults(x, y)).collect())
        }
        (Value::Number(a), Value::Number(b)) if a.as_f64() == b.as_f64() => ours.clone(),
        (Value::Number(a), Value::String(b)) if a.to_string() == *b => ours.clone(),
        _ => source.clone(),
    }
}

#[test]
fn categories() {
    for f in ["poset2.json", "interval.json", "z2.json", "broken_category.json", "discrete3.json", "graph_schema.json"] {
        round_trip::<CategoryFile>(f);
    }
}

#[test]
fn functors() {
    for f in ["vertex_functor.json"] {
        round_trip::<FunctorFile>(f);
    }
}

#[test]
fn instances() {
    for f in ["graph_instance.json", "point_instance.json"] {
        round_trip::<InstanceFile>(f);
    }
}

#[test]
fn simplicial_sets() {
    round_trip::<SimplicialFile>("boundary2.json");
}

#[test]
fn set_maps() {
    for f in ["lift_f.json", "lift_p.json", "lift_mu.json", "lift_nu.json", "lift_p_not_onto.json", "lift_mu_point.json"] {
        round_trip::<FinSetMapFile>(f);
    }
}

#[test]
fn queries() {
    round_trip::<QueryFile>("source_query.json");
}

#[test]
fn transition_systems() {
    for f in ["lts_s.json", "lts_t.json"] {
        round_trip::<LtsFile>(f);
    }
}

#[test]
fn spaces() {
    for f in ["halfline.json", "asym_table.json", "bad_table.json"] {
        round_trip::<SpaceFile>(f);
    }
}

#[test]
fn pipelines() {
    for f in ["pipeline.json", "line_fit.json", "zeroth.json"] {
        round_trip::<PipelineSpec>(f);
    }
}

#[test]
fn built_structures_print_back() {
    let text = fs::read_to_string(fixtures().join("poset2.json")).unwrap();
    let file: CategoryFile = serde_json::from_str(&text).unwrap();
    let c = file.build().unwrap();
    let back = CategoryFile::from(&c);
    assert_eq!(back.build().unwrap().validate().violations.len(), 0);
    assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&CategoryFile::from(&back.build().unwrap())).unwrap());

    let text = fs::read_to_string(fixtures().join("boundary2.json")).unwrap();
    let file: SimplicialFile = serde_json::from_str(&text).unwrap();
    let x = file.build().unwrap();
    assert_eq!(x.to_file().build().unwrap().to_file(), x.to_file());
}
