//! Exact arithmetic for Carlitz-module special functions over
//! `F_q[θ]` and its completion at infinity.

pub mod carlitz;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod laurent;
pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod tate;

pub use error::{Error, Result};
pub use field::{make_field, FieldSpec, GfElem};
pub use laurent::RamLaurent;
pub use poly::{GFPoly, Var};
pub use ratfunc::RatFunc;
pub use scalar::{Scalar, UPoly};
pub use tate::{EvalSpec, TateElem};
