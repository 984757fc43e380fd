//! Exact computer algebra for the universal Askey-Wilson algebra at a primitive
//! d-th root of unity: cyclotomic arithmetic, PBW normal forms, q-Racah
//! sequences, and construction and analysis of finite-dimensional modules.

pub mod chebyshev;
pub mod cyclotomic;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod modp;
pub mod modulegen;
pub mod ncalgebra;
pub mod qracah;
pub mod repkit;
pub mod report;
pub mod samples;
pub mod text;
pub mod verify;

pub use cyclotomic::{make_field, Cyc, Field, FieldExt};
pub use error::{Error, Result};
