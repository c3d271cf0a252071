//! Generalized metric spaces: distances in `[0, ∞]`, neither symmetric
//! nor separating, with the metric Yoneda embedding `x ↦ X(−, x)` into
//! nonexpansive copresheaves.
//!
//! Distances are exact rationals so that isometry is checked by equality.

mod dist;
mod space;
mod yoneda;

pub use dist::Dist;
pub use space::{GenMetricSpace, MetricViolation};
pub use yoneda::{
    check_isometry, presheaf_distance, yoneda_embed, yoneda_lemma_deviation, Copresheaf, IsometryReport,
    PairDeviation,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Space files. Distances are numbers, `"p/q"` strings or `"inf"`.
///
/// ```text
/// {"kind": "table", "points": ["x", "y"], "distances": [[0, 1], ["inf", 0]]}
/// {"kind": "preorder", "points": ["a", "b"], "leq": [["a", "b"]]}
/// {"kind": "strings", "words": ["ab", "abc"], "alphabet": "abc"}
/// {"kind": "halfline", "values": [3, 5, "inf"]}
/// {"kind": "hausdorff", "base": {...}, "subsets": [["0"], ["1", "3"]]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceFile {
    Table {
        points: Vec<String>,
        distances: Vec<Vec<Dist>>,
    },
    Preorder {
        points: Vec<String>,
        #[serde(default)]
        leq: Vec<[String; 2]>,
    },
    Strings {
        words: Vec<String>,
        #[serde(default)]
        alphabet: Option<String>,
    },
    Halfline {
        values: Vec<Dist>,
    },
    Hausdorff {
        base: Box<SpaceFile>,
        #[serde(default)]
        subsets: Option<Vec<Vec<String>>>,
    },
}

impl SpaceFile {
    pub fn build(&self) -> Result<GenMetricSpace> {
        match self {
            SpaceFile::Table { points, distances } => GenMetricSpace::new(points.clone(), distances.clone()),
            SpaceFile::Preorder { points, leq } => {
                let pairs: Vec<(&str, &str)> = leq.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
                let names: Vec<&str> = points.iter().map(String::as_str).collect();
                GenMetricSpace::preorder(&names, &pairs)
            }
            SpaceFile::Strings { words, alphabet } => GenMetricSpace::strings(words, alphabet.as_deref()),
            SpaceFile::Halfline { values } => GenMetricSpace::halfline(values),
            SpaceFile::Hausdorff { base, subsets } => {
                let base = base.build()?;
                let ids = subsets
                    .as_ref()
                    .map(|sets| {
                        sets.iter().map(|s| s.iter().map(|p| base.point(p)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()
                    })
                    .transpose()?;
                GenMetricSpace::hausdorff(&base, ids.as_deref())
            }
        }
    }
}

impl From<&GenMetricSpace> for SpaceFile {
    fn from(space: &GenMetricSpace) -> Self {
        SpaceFile::Table { points: space.points().to_vec(), distances: space.table().to_vec() }
    }
}
