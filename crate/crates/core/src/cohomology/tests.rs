use std::collections::BTreeMap;

use super::*;
use crate::algebra::{BasisKey, Element, Window};
use crate::scalars::{GroupData, Scalar};

fn s(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}
fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}
fn z() -> GroupData {
    GroupData::integers_half()
}
fn l(g: i64, i: i64) -> BasisKey {
    BasisKey::l(int(g), i)
}
fn e(k: BasisKey) -> Element {
    Element::basis(k)
}

#[test]
fn phi_k_examples() {
    let p0 = Cocycle::phi_k(0);
    assert_eq!(p0.on_keys(&l(2, 1), &l(-2, -1)), s(1, 2));
    assert_eq!(p0.on_keys(&l(-2, -1), &l(2, 1)), s(-1, 2));
    assert!(Cocycle::phi_k(3).on_keys(&l(1, 0), &l(-1, 3)).is_zero());
    assert!(p0.on_keys(&l(2, 1), &l(-2, 0)).is_zero());
}

#[test]
fn coboundary_examples() {
    let f = Cocycle::coboundary(LinearFunctional::table([(l(0, 0), int(1))]));
    assert_eq!(f.on_keys(&l(1, 2), &l(-1, -2)), int(-2));
    let zero = Cocycle::coboundary(LinearFunctional::zero());
    assert!(zero.on_keys(&l(1, 2), &l(-1, -2)).is_zero());
    let g = Cocycle::coboundary(LinearFunctional::table([(BasisKey::m(int(0), 0), int(1))]));
    assert_eq!(g.on_keys(&BasisKey::y(s(1, 2), 0), &BasisKey::y(s(-1, 2), 0)), int(-1));
}

#[test]
fn defect_examples() {
    let p0 = Cocycle::phi_k(0);
    assert!(cocycle_defect(&p0, &e(l(1, 0)), &e(l(2, 0)), &e(l(-3, 0))).is_zero());
    let f = Cocycle::coboundary(LinearFunctional::table([(l(0, 1), int(3)), (BasisKey::m(int(1), 0), int(-1))]));
    assert!(cocycle_defect(&f, &e(l(1, 0)), &e(l(-1, 1)), &e(BasisKey::m(int(1), -1))).is_zero());
}

/// The table of a structured cocycle on the window.
fn tabulate(psi: &Cocycle, w: Window) -> Vec<(BasisKey, BasisKey, Scalar)> {
    let keys = w.keys(&z());
    let mut out = Vec::new();
    for (i, x) in keys.iter().enumerate() {
        for y in &keys[i + 1..] {
            let v = psi.on_keys(x, y);
            if !v.is_zero() {
                out.push((x.clone(), y.clone(), v));
            }
        }
    }
    out
}

#[test]
fn corrupted_table_is_caught() {
    let w = Window::new(4, 1);
    let rows = tabulate(&Cocycle::phi_k(0), w);
    let good = Cocycle::table(w, rows.clone()).unwrap();
    assert!(cocycle_sweep(&good, &z(), &w).is_empty());
    let mut bad = rows;
    let idx = bad.iter().position(|(x, _, _)| x == &l(-2, 0)).unwrap();
    bad[idx].2 = -bad[idx].2.clone();
    let bad = Cocycle::table(w, bad).unwrap();
    assert!(!cocycle_sweep(&bad, &z(), &w).is_empty());
    assert!(matches!(reduce(&bad, &z(), &w), Err(crate::Error::NotACocycle { .. })));
}

#[test]
fn table_rejects_asymmetric_entries() {
    let w = Window::default();
    let r = Cocycle::table(w, [(l(1, 0), l(-1, 0), int(1)), (l(-1, 0), l(1, 0), int(1))]);
    assert!(r.is_err());
    assert!(Cocycle::table(w, [(l(1, 0), l(1, 0), int(1))]).is_err());
}

fn random_f() -> LinearFunctional {
    LinearFunctional::table([
        (l(0, 0), s(2, 3)),
        (l(0, 2), int(-1)),
        (l(1, -1), int(5)),
        (BasisKey::m(int(0), 1), int(7)),
        (BasisKey::m(int(-1), 0), s(1, 4)),
        (BasisKey::y(s(1, 2), 3), int(2)),
    ])
}

#[test]
fn reduce_examples() {
    let g = z();
    let w = Window::default();
    let phi = Cocycle::structured(BTreeMap::from([(0, int(3))]), random_f());
    let r = reduce(&phi, &g, &w).unwrap();
    assert_eq!(r.classes, BTreeMap::from([(0, int(3))]));
    assert!(r.passes(), "{:?}", r.residual);

    let r = reduce(&Cocycle::coboundary(random_f()), &g, &w).unwrap();
    assert!(r.classes.is_empty() && r.passes());

    let phi = Cocycle::structured(BTreeMap::from([(2, int(1)), (-1, int(-1))]), LinearFunctional::zero());
    let r = reduce(&phi, &g, &w).unwrap();
    assert_eq!(r.classes, BTreeMap::from([(2, int(1)), (-1, int(-1))]));
    assert!(r.passes());
    assert_eq!(r.pivot, int(2));
    assert_eq!(r.cross_check.as_ref().map(|c| c.0.clone()), Some(int(3)));
}

#[test]
fn reduce_table() {
    let g = z();
    let w = Window::new(6, 1);
    let phi = Cocycle::structured(BTreeMap::from([(1, s(-1, 2))]), random_f());
    let table = Cocycle::table(w, tabulate(&phi, w)).unwrap();
    let r = reduce(&table, &g, &w).unwrap();
    assert_eq!(r.classes, BTreeMap::from([(1, s(-1, 2))]));
    assert!(r.passes(), "{:?}", r.residual);
    assert!(r.residual.skipped > 0);

    let small = Window::new(3, 1);
    let table = Cocycle::table(small, tabulate(&phi, small)).unwrap();
    assert!(matches!(reduce(&table, &g, &small), Err(crate::Error::WindowTooSmall(_))));
}

#[test]
fn non_cocycle_residual_is_reported() {
    // antisymmetric but not a cocycle: a lone L-M pairing
    let g = z();
    let w = Window::new(6, 1);
    let t = Cocycle::table(w, [(l(1, 0), BasisKey::m(int(-1), 0), int(1))]).unwrap();
    assert!(reduce(&t, &g, &w).is_err());
}

#[test]
fn general_s_normalization() {
    // Gamma = 2Z, s = 1: the pivot denominator differs from α³ - α, classes still come out exact
    let g = GroupData::new(crate::scalars::Field::Rational, vec![int(2)], int(1)).unwrap();
    let w = Window::default();
    let phi = Cocycle::structured(BTreeMap::from([(0, int(2)), (-3, s(1, 5))]), random_f());
    let r = reduce(&phi, &g, &w).unwrap();
    assert_eq!(r.classes, BTreeMap::from([(0, int(2)), (-3, s(1, 5))]));
    assert_eq!(r.pivot, int(4));
    assert!(r.passes(), "{:?}", r.residual);
}

#[test]
fn extension_examples() {
    let g = z();
    let ext = CentralExtension::Universal;
    let x = ExtendedElement::from_base(e(l(2, 1)));
    let y = ExtendedElement::from_base(e(l(-2, -1)));
    let b = ext.bracket(&x, &y);
    assert_eq!(b.to_string(), "-4*L(0,0) + 1/2*C(0)");
    assert_eq!(b, ExtendedElement::parse(&g, "-4*L(0,0) + 1/2*C(0)").unwrap());
    let b = ext.bracket(&ExtendedElement::from_base(e(l(1, 0))), &ExtendedElement::from_base(e(l(2, 0))));
    assert_eq!(b.to_string(), "L(3,0)");
    let m = ExtendedElement::from_base(e(BasisKey::m(int(1), 0)));
    assert!(ext.bracket(&m, &ExtendedElement::central_basis(5)).is_zero());
    let weighted = central_extend(BTreeMap::from([(0, int(2))]));
    assert_eq!(weighted.bracket(&x, &y).to_string(), "-4*L(0,0) + C(0)");
}

#[test]
fn extension_jacobi_small_window() {
    let w = Window::new(2, 1);
    assert!(CentralExtension::Universal.jacobi_sweep(&z(), &w).is_empty());
    assert!(central_extend(BTreeMap::from([(1, int(3))])).jacobi_sweep(&z(), &w).is_empty());
}

#[test]
fn phi_k_sweeps_small_window() {
    let w = Window::new(4, 1);
    for k in -1..=1 {
        assert!(cocycle_sweep(&Cocycle::phi_k(k), &z(), &w).is_empty());
    }
    assert!(cocycle_sweep(&Cocycle::coboundary(random_f()), &z(), &w).is_empty());
}
