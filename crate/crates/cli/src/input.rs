use std::fs;
use std::path::Path;
use std::sync::Arc;

use gaia_core::coalgebra::{Coalgebra, LtsFile};
use gaia_core::fincat::{CategoryFile, FunctorFile, InstanceFile};
use gaia_core::genmetric::SpaceFile;
use gaia_core::learn::PipelineSpec;
use gaia_core::lifting::FinSetMapFile;
use gaia_core::simplicial::SimplicialFile;
use gaia_core::{FinCategory, FinFunctor, SetDiagram, SimplicialSet};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses `text` as `T`; serde reports line and column.
pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    parse(path, &read(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Category,
    Functor,
    Instance,
    Simplicial,
    Lts,
    Space,
    Pipeline,
    SetMap,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Functor => "functor",
            Kind::Instance => "instance",
            Kind::Simplicial => "simplicial",
            Kind::Lts => "lts",
            Kind::Space => "space",
            Kind::Pipeline => "pipeline",
            Kind::SetMap => "set_map",
        }
    }
}

/// Guesses the format from the top-level keys.
pub fn detect(path: &Path, text: &str) -> Result<Kind, Failure> {
    let value: Value = parse(path, text)?;
    let Value::Object(map) = value else {
        return Err(Failure::Input(format!("{}: expected a JSON object", path.display())));
    };
    let has = |k: &str| map.contains_key(k);
    let kind = if has("levels") {
        Kind::Simplicial
    } else if has("schema") {
        Kind::Instance
    } else if has("source") && has("target") {
        Kind::Functor
    } else if has("objects") && has("morphisms") {
        Kind::Category
    } else if has("states") {
        Kind::Lts
    } else if has("kind") {
        Kind::Space
    } else if has("layers") {
        Kind::Pipeline
    } else if has("domain") && has("codomain") {
        Kind::SetMap
    } else {
        return Err(Failure::Input(format!("{}: unrecognised file format", path.display())));
    };
    Ok(kind)
}

/// A file of any supported kind, parsed but not yet built.
pub enum Document {
    Category(CategoryFile),
    Functor(FunctorFile),
    Instance(InstanceFile),
    Simplicial(SimplicialFile),
    Lts(LtsFile),
    Space(SpaceFile),
    Pipeline(PipelineSpec),
    SetMap(FinSetMapFile),
}

pub fn document(path: &Path) -> Result<Document, Failure> {
    let text = read(path)?;
    Ok(match detect(path, &text)? {
        Kind::Category => Document::Category(parse(path, &text)?),
        Kind::Functor => Document::Functor(parse(path, &text)?),
        Kind::Instance => Document::Instance(parse(path, &text)?),
        Kind::Simplicial => Document::Simplicial(parse(path, &text)?),
        Kind::Lts => Document::Lts(parse(path, &text)?),
        Kind::Space => Document::Space(parse(path, &text)?),
        Kind::Pipeline => Document::Pipeline(parse(path, &text)?),
        Kind::SetMap => Document::SetMap(parse(path, &text)?),
    })
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Category(_) => Kind::Category,
            Document::Functor(_) => Kind::Functor,
            Document::Instance(_) => Kind::Instance,
            Document::Simplicial(_) => Kind::Simplicial,
            Document::Lts(_) => Kind::Lts,
            Document::Space(_) => Kind::Space,
            Document::Pipeline(_) => Kind::Pipeline,
            Document::SetMap(_) => Kind::SetMap,
        }
    }
}

pub fn category(path: &Path) -> Result<Arc<FinCategory>, Failure> {
    let file: CategoryFile = load(path)?;
    valid_category(file.build()?)
}

pub fn valid_category(c: FinCategory) -> Result<Arc<FinCategory>, Failure> {
    let report = c.validate();
    if let Some(v) = report.violations.first() {
        return Err(Failure::Input(format!("not a category: {v}")));
    }
    Ok(Arc::new(c))
}

pub fn functor(path: &Path) -> Result<FinFunctor, Failure> {
    let file: FunctorFile = load(path)?;
    valid_category(file.source.build()?)?;
    valid_category(file.target.build()?)?;
    let f = file.build()?;
    if let Some(v) = f.validate().violations.first() {
        return Err(Failure::Input(format!("not a functor: {v}")));
    }
    Ok(f)
}

pub fn instance_over(path: &Path, schema: Option<Arc<FinCategory>>) -> Result<SetDiagram, Failure> {
    let file: InstanceFile = load(path)?;
    let schema = match schema {
        Some(s) => s,
        None => valid_category(file.schema.build()?)?,
    };
    let d = file.build_over(schema)?;
    if let Some(v) = d.validate().violations.first() {
        return Err(Failure::Input(format!("not a functor to sets: {v}")));
    }
    Ok(d)
}

pub fn simplicial(file: &SimplicialFile) -> Result<SimplicialSet, Failure> {
    let x = file.build()?;
    if let Some(v) = x.validate().first() {
        return Err(Failure::Input(format!("simplicial identity {} fails at {}:{}", v.identity, v.dimension, v.simplex)));
    }
    Ok(x)
}

/// A simplicial set from a simplicial file or the nerve of a category file.
pub fn simplicial_or_nerve(path: &Path, truncation: usize) -> Result<SimplicialSet, Failure> {
    match document(path)? {
        Document::Simplicial(f) => simplicial(&f),
        Document::Category(f) => {
            let c = valid_category(f.build()?)?;
            Ok(gaia_core::simplicial::nerve(&c, truncation).set)
        }
        other => Err(Failure::Input(format!(
            "{}: expected a simplicial set or a category, found {}",
            path.display(),
            other.kind().name()
        ))),
    }
}

pub fn lts(path: &Path) -> Result<Coalgebra, Failure> {
    let file: LtsFile = load(path)?;
    Ok(file.build()?)
}
