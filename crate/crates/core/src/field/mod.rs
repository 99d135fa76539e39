//! Arithmetic in the tower `F_p ⊂ F_q ⊂ F_{q^m}`.

mod base;
mod matrix;
mod tower;

pub use base::{prime_power, BaseField, Fq};
pub(crate) use matrix::column_echelon;
pub use matrix::MatrixFq;
pub use tower::{FieldTower, Fqm};
