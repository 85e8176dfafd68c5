//! Intersection-type theories for the untyped λ-calculus.

pub mod assign;
pub mod classify;
pub mod enumerate;
pub mod filter;
pub mod laws;
pub mod subtype;
pub mod syntax;
pub mod theory;
