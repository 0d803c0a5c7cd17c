//! Exact computations for totally ramified abelian covers of smooth
//! projective varieties.

pub mod base;
pub mod config;
pub mod construction;
pub mod cover;
pub mod deformations;
pub mod emitter;
pub mod error;
pub mod groebner;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod rational;
pub mod resolution;

pub use error::{Error, Result};
