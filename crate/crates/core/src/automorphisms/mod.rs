//! Automorphisms: the generator families, words in them, the group law on
//! the diagonal part, factorization into normal form and the isomorphism test.

mod factor;
mod generators;
mod iso;
mod shear;
mod word;

pub use factor::{apply_inner, factor, FactoredAutomorphism};
pub use generators::{ad_cubed, exp_ad, AutoGen, Character, HomToInt, MShearData};
pub use iso::{is_isomorphism_ratio, iso_test};
pub use shear::{fit_canonical, is_canonical_solution, shear_constraint_solutions};
pub use word::{automorphism_defect, automorphism_sweep, conjugate_shear, AutomorphismWord, ParameterTuple};

#[cfg(test)]
mod tests;
