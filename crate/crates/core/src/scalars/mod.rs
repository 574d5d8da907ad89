//! Exact scalar fields, Laurent polynomials and the index groups `Gamma`,
//! `Gamma_1 = s + Gamma` and `T`.

mod group;
mod laurent;
mod lattice;
mod scalar;

pub use group::{GroupData, IndexSet};
pub(crate) use group::coordinate_box;
pub use laurent::LaurentPoly;
pub use lattice::Lattice;
pub use scalar::{Field, Scalar};

pub(crate) mod text;
