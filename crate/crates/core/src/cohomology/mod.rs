//! Second cohomology with trivial coefficients: 2-cocycles, coboundaries,
//! the classes `φ_k`, reduction of a cocycle to normal form and the
//! universal central extension.

mod cocycle;
mod extension;
mod reduce;

pub use cocycle::{cocycle_defect, cocycle_sweep, phi_k_value, Cocycle, LinearFunctional};
pub use extension::{central_extend, CentralExtension, ExtendedElement};
pub use reduce::{reduce, Reduction, ResidualEntry, ResidualReport};

#[cfg(test)]
mod tests;
