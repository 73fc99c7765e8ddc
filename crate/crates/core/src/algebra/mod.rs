//! Independent oracle for sector algebras: structure constants, relation
//! checks on matrix modules, the Jacobson radical via the trace form,
//! intertwiner spaces and the idempotents of `Λ`.

pub mod analysis;
pub mod idempotents;
pub mod modules;
pub mod relations;
pub mod structure;

pub use analysis::{analyze, completeness_check, CompletenessReport, OracleSummary};
pub use idempotents::idempotent_check;
pub use modules::{hom_dim, hom_dim_split, hom_space, is_irreducible};
pub use relations::{verify_relations, RelationReport};
pub use structure::StructureAlgebra;
