//! Exact computation of orbifold E-polynomials of torus quotients
//! `(A ⊗ Λ)/W`, where `Λ` is the coweight lattice of a reductive group and
//! `W` its Weyl group, together with the machinery to compare a datum with
//! its Langlands dual.

pub mod error;
pub mod epoly;
pub mod lattice;
pub mod orbifold;
pub mod root_data;
pub mod sln;
pub mod weyl;

pub use error::{Error, Result};
