//! Derivations: the canonical families, inner derivations, degree splitting
//! and the decomposition of an arbitrary derivation into canonical parts.

mod decompose;
mod families;
mod gspace;

pub use decompose::{
    canonical_decompose_degree0, decompose, degree_decompose, hom_quotient_witness, inner_from_witness,
    reduce_nonzero_degree, CanonicalDerivation,
};
pub use families::{
    derivation_defect, make_ad, make_d_b, make_d_g, make_d_phi, make_d_rho, GFunction, HomToLaurent,
};
pub use gspace::{affine_fit, g_constraint_solutions};

use rayon::prelude::*;

use crate::algebra::{bracket, Element, Window, Witness};
use crate::operator::Operator;
use crate::scalars::{GroupData, Scalar};

/// Derivation defect on every ordered window pair; returns the failures.
pub fn derivation_sweep(d: &Operator, group: &GroupData, window: &Window) -> Vec<Witness> {
    let keys = window.keys(group);
    let images: Vec<Element> = keys.par_iter().map(|k| d.on_key(k)).collect();
    let mut out: Vec<Witness> = (0..keys.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let (keys, images) = (&keys, &images);
            (0..keys.len()).filter_map(move |b| {
                let x = Element::basis(keys[a].clone());
                let y = Element::basis(keys[b].clone());
                let mut defect = d.apply(&bracket(&x, &y));
                defect.add_scaled(&bracket(&images[a], &y), &Scalar::from_int(-1));
                defect.add_scaled(&bracket(&x, &images[b]), &Scalar::from_int(-1));
                (!defect.is_zero())
                    .then(|| Witness { keys: vec![keys[a].clone(), keys[b].clone()], value: defect.to_string() })
            })
        })
        .collect();
    out.sort_by(|a, b| a.keys.cmp(&b.keys));
    out
}
