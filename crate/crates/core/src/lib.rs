//! Exact computations with finite subgroups of PGL₃ over cyclotomic fields.

pub mod arith;
pub mod classify;
pub mod cyclo;
pub mod descent;
pub mod error;
pub mod groups;
pub mod hessian;
pub mod input;
pub mod linalg;
pub mod parse;
pub mod projgeom;
pub mod rational;
pub mod torsor;
pub mod verify;

pub use error::{Error, Result};
