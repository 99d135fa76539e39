//! Rank-metric codes with rank-locality from reductions of the Carlitz module.

pub mod carlitz;
pub mod code;
pub mod dirichlet;
pub mod error;
pub mod field;
pub mod format;
pub mod poly;
pub mod repro;
pub mod twisted;

pub use code::{build_code, CodeInstance, CodeParams, Codeword, Message};
pub use error::{Error, Result};
pub use field::{BaseField, FieldTower, Fq, Fqm, MatrixFq};
pub use poly::{PolyRing, RationalFunction, UniPoly, Valuation};
pub use twisted::{LinearizedPoly, TwistedPoly};
