use crate::scalars::{coordinate_box, GroupData, IndexSet, Scalar};

/// Search radius for candidate ratios when `Gamma` has rank 2.
const SEARCH_HEIGHT: i64 = 4;

/// Whether `x ↦ a x` maps `Gamma(h)` onto `Gamma(g)` and `s(h) + Gamma(h)` onto `s(g) + Gamma(g)`.
pub fn is_isomorphism_ratio(g: &GroupData, h: &GroupData, a: &Scalar) -> bool {
    let Some(a_inv) = a.inv() else { return false };
    let forward = h.gamma_lattice().basis().iter().all(|x| g.member(&(a * x), IndexSet::Gamma));
    let backward = g.gamma_lattice().basis().iter().all(|x| h.member(&(&a_inv * x), IndexSet::Gamma));
    forward && backward && g.member(&(a * h.s()), IndexSet::Gamma1)
}

/// A scalar `a` with `a Gamma' = Gamma` and `a Gamma'_1 = Gamma_1`, where `g = (Gamma, s)` and
/// `h = (Gamma', s')`; such an `a` exists exactly when the two algebras are isomorphic.
pub fn iso_test(g: &GroupData, h: &GroupData) -> Option<Scalar> {
    let rank = g.gamma_lattice().rank();
    if rank != h.gamma_lattice().rank() {
        return None;
    }
    let target = g.gamma_lattice();
    let b1 = &h.gamma_lattice().basis()[0];
    let b1_inv = b1.inv()?;
    let mut candidates: Vec<Scalar> = if rank == 1 {
        let x = &target.basis()[0] * &b1_inv;
        vec![x.clone(), -x]
    } else {
        coordinate_box(rank, SEARCH_HEIGHT)
            .into_iter()
            .map(|c| &target.combine(&c.into_iter().map(Into::into).collect::<Vec<_>>()) * &b1_inv)
            .filter(|x| !x.is_zero())
            .collect()
    };
    // prefer small positive ratios
    candidates.sort_by_key(|x| (x.signum() < 0, x.abs()));
    candidates.into_iter().find(|a| is_isomorphism_ratio(g, h, a))
}
