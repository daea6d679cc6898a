//! Exact computations with module algebras over Taft Hopf algebras.

pub mod algebra;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod hmodule;
pub mod identities;
pub mod json;
pub mod linalg;
pub mod modular;
pub mod qcomb;
pub mod taft;

pub use cyclotomic::{CycNum, CyclotomicField};
pub use error::{Error, Result};
pub use field::{Field, PrimeField};
pub use linalg::{CMatrix, Echelon, Matrix};
