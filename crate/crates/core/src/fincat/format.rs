//! JSON-shaped text formats for categories, functors and set-valued
//! instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FinCategory, FinFunctor, SetDiagram};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismRecord {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

/// `{"objects": [...], "morphisms": [{"id","dom","cod"}...],
///   "identity": {...}, "compose": [["g","f","gf"]...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismRecord>,
    pub identity: BTreeMap<String, String>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

impl CategoryFile {
    pub fn build(&self) -> Result<FinCategory> {
        let morphisms: Vec<(&str, &str, &str)> =
            self.morphisms.iter().map(|m| (m.id.as_str(), m.dom.as_str(), m.cod.as_str())).collect();
        let identity: Vec<(&str, &str)> = self.identity.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let compose: Vec<(&str, &str, &str)> =
            self.compose.iter().map(|[g, f, gf]| (g.as_str(), f.as_str(), gf.as_str())).collect();
        let objects: Vec<&str> = self.objects.iter().map(String::as_str).collect();
        FinCategory::new(&objects, &morphisms, &identity, &compose)
    }
}

impl From<&FinCategory> for CategoryFile {
    fn from(c: &FinCategory) -> Self {
        let mut compose = Vec::new();
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(gf) = c.compose(g, f) {
                    compose.push([
                        c.morphism_name(g).to_string(),
                        c.morphism_name(f).to_string(),
                        c.morphism_name(gf).to_string(),
                    ]);
                }
            }
        }
        CategoryFile {
            objects: c.objects().map(|x| c.object_name(x).to_string()).collect(),
            morphisms: c
                .morphisms()
                .map(|m| MorphismRecord {
                    id: c.morphism_name(m).to_string(),
                    dom: c.object_name(c.dom(m)).to_string(),
                    cod: c.object_name(c.cod(m)).to_string(),
                })
                .collect(),
            identity: c
                .objects()
                .map(|x| (c.object_name(x).to_string(), c.morphism_name(c.id(x)).to_string()))
                .collect(),
            compose,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub source: CategoryFile,
    pub target: CategoryFile,
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

impl FunctorFile {
    pub fn build(&self) -> Result<FinFunctor> {
        let source = Arc::new(self.source.build()?);
        let target = Arc::new(self.target.build()?);
        let objects: Vec<(&String, &String)> = self.objects.iter().collect();
        let morphisms: Vec<(&String, &String)> = self.morphisms.iter().collect();
        FinFunctor::from_names(source, target, &objects, &morphisms)
    }
}

impl From<&FinFunctor> for FunctorFile {
    fn from(f: &FinFunctor) -> Self {
        let (s, t) = (f.source(), f.target());
        FunctorFile {
            source: CategoryFile::from(&**s),
            target: CategoryFile::from(&**t),
            objects: s
                .objects()
                .map(|x| (s.object_name(x).to_string(), t.object_name(f.ob(x)).to_string()))
                .collect(),
            morphisms: s
                .morphisms()
                .map(|m| (s.morphism_name(m).to_string(), t.morphism_name(f.mor(m)).to_string()))
                .collect(),
        }
    }
}

/// A schema plus tables and actions:
/// `{"schema": {...}, "tables": {"V": [...]}, "actions": {"s": {"e1": "v1"}}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: CategoryFile,
    pub tables: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub actions: BTreeMap<String, BTreeMap<String, String>>,
}

impl InstanceFile {
    pub fn build(&self) -> Result<SetDiagram> {
        self.build_over(Arc::new(self.schema.build()?))
    }

    /// Builds the instance over an already constructed schema.
    pub fn build_over(&self, schema: Arc<FinCategory>) -> Result<SetDiagram> {
        let tables: Vec<(&String, Vec<String>)> = self.tables.iter().map(|(k, v)| (k, v.clone())).collect();
        let actions: Vec<(&String, Vec<(String, String)>)> = self
            .actions
            .iter()
            .map(|(m, pairs)| (m, pairs.iter().map(|(a, b)| (a.clone(), b.clone())).collect()))
            .collect();
        SetDiagram::from_names(schema, &tables, &actions)
    }
}

impl From<&SetDiagram> for InstanceFile {
    fn from(d: &SetDiagram) -> Self {
        let c = d.shape();
        let tables = c.objects().map(|x| (c.object_name(x).to_string(), d.set(x).to_vec())).collect();
        let actions = c
            .morphisms()
            .filter(|&m| !c.is_identity(m))
            .map(|m| {
                let pairs = d
                    .function(m)
                    .iter()
                    .enumerate()
                    .map(|(i, &y)| (d.set(c.dom(m))[i].clone(), d.set(c.cod(m))[y].clone()))
                    .collect();
                (c.morphism_name(m).to_string(), pairs)
            })
            .collect();
        InstanceFile { schema: CategoryFile::from(&**c), tables, actions }
    }
}
