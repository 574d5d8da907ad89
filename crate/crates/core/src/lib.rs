//! Exact computation in the generalized loop Schrödinger–Virasoro algebra
//! `W(Gamma, s) = gsv[Gamma, s] ⊗ F[t, t^-1]`: brackets, derivations,
//! automorphisms and second cohomology, checked on finite windows.

pub mod algebra;
pub mod automorphisms;
pub mod cli;
pub mod cohomology;
pub mod config;
pub mod derivations;
pub mod error;
pub mod linalg;
pub mod operator;
pub mod parse;
pub mod scalars;

pub use error::{Error, Result};
pub use operator::Operator;
