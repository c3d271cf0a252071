//! Lifting problems
//!
//! ```text
//!   A --μ--> X
//!   |        |
//!   f        p
//!   v        v
//!   B --ν--> Y
//! ```
//!
//! over finite sets, finite categories and simplicial sets. A solution is a
//! diagonal `h : B → X` with `h ∘ f = μ` and `p ∘ h = ν`.

mod category;
mod query;
mod sets;
mod simplicial;

pub use category::CategorySquare;
pub use query::{
    query_by_lifting, Exclusion, ExclusionFile, FunctorMaps, Query, QueryAnswer, QueryFile, QueryOptions,
    QuerySolution,
};
pub use sets::{has_rlp, FinSetMap, FinSetMapFile, RlpReport, SetSquare};
pub use simplicial::{horn_inclusion, SimplicialSquare};
