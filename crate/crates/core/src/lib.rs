pub mod abelian_char;
pub mod bounds;
pub mod budget;
pub mod error;
pub mod finfield;
pub mod graph;
pub mod matrix_ring;
pub mod oracle;
mod serde_util;
pub mod spectrum;
pub mod sumgraph;
pub mod totalgraph;

pub use abelian_char::{AbelianGroup, CharValue, Character, MatrixCharacter};
pub use bounds::{AlphaMode, BoundReport, ChiMode};
pub use budget::Budgets;
pub use error::{Error, Result};
pub use finfield::{CyclotomicInteger, Field, FieldElement};
pub use graph::{Diameter, Graph};
pub use matrix_ring::{CountReport, MatrixFq};
pub use oracle::{OracleOptions, OracleResult, VerifyConfig, VerifyReport};
pub use serde_util::ratio_string;
pub use spectrum::{Eigenvalue, Method, SpectralValue, SpectrumReport};
pub use sumgraph::SumGraph;
pub use totalgraph::{Parity, RegularGraph, TotalGraphSpec};
