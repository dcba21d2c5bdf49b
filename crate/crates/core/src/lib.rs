//! Classification of string C-group representations of finite permutation
//! groups, up to isomorphism and duality.
//!
//! The permutation machinery (stabilizer chains, orbits, stabilizers) is
//! self-contained. On top of it sit conjugacy-class services, the string
//! C-group checks, the rank-3 and higher-rank searches, and an exhaustive
//! oracle for small groups.

pub mod analysis;
pub mod atlas;
pub mod chain;
pub mod dedup;
pub mod error;
pub mod fixture;
pub mod group;
pub mod oracle;
pub mod orbit;
pub mod perm;
pub mod rank3;
pub mod rank_high;
pub mod sggi;

pub use analysis::{GroupAnalysis, Limits};
pub use atlas::{run_classify, run_oracle, CatalogEntry, ClassifyOptions, RankSelection, Report};
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::{Perm, Point};
pub use sggi::{GeneratorTuple, SchlafliType};
