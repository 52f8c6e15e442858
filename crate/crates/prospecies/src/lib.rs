//! Exact computations with pro-species: quivers decorated with finite
//! dimensional algebras at the vertices and bimodules on the arrows.
//!
//! The crate builds tensor algebras and preprojective algebras, their
//! representations, reflection functors, the separation functor and
//! quiver-with-relations presentations, all over exact fields.

pub mod algebra;
pub mod dsl;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod modules;
pub mod preprojective;
pub mod presentation;
pub mod prospecies;
pub mod quiver;
pub mod reflection;
pub mod separated;

pub use error::{Error, Result};
pub use exactla::{Field, Matrix, Scalar};
