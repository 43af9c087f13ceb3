//! Exact arithmetic for generalized continuants, periodic continued
//! fractions and the second-order recurrences they induce.

pub mod audit;
pub mod cfrac;
pub mod continuant;
pub mod divisibility;
pub mod error;
pub mod exec;
pub mod identity;
pub mod modular;
pub mod precision;
pub mod quadratic;
pub mod recurrence;
pub mod sample;
pub mod serde_int;
pub mod series;
pub mod system;

pub use cfrac::{expand_sqrt, pell_fundamental, pell_solutions, PellSolution, SqrtExpansion};
pub use continuant::{continuant_determinant, continuant_matrix, continuant_pair, ContinuantTable};
pub use error::{Error, Result};
pub use exec::Execution;
pub use identity::{verify_identity, Identity, IdentityParams, IdentityReport};
pub use precision::PrecisionContext;
pub use quadratic::QuadraticNumber;
pub use recurrence::{reduce, ReducedRecurrence};
pub use series::{SeriesInput, SeriesReport, Stop, TelescopingFamily, ZetaKind};
pub use system::PeriodicSystem;
