use std::collections::BTreeMap;

use super::*;
use crate::algebra::{BasisKey, Element, Window};
use crate::scalars::{Field, GroupData, Scalar};

fn s(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}
fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}
fn z() -> GroupData {
    GroupData::integers_half()
}
fn l(g: Scalar, i: i64) -> Element {
    Element::basis(BasisKey::l(g, i))
}
fn m(g: Scalar, i: i64) -> Element {
    Element::basis(BasisKey::m(g, i))
}
fn y(g: Scalar, i: i64) -> Element {
    Element::basis(BasisKey::y(g, i))
}
fn word(gens: Vec<AutoGen>) -> AutomorphismWord {
    AutomorphismWord::new(&z(), gens).unwrap()
}
fn shear(entries: &[(i64, i64, i64)]) -> MShearData {
    MShearData::canonical(entries.iter().map(|&(d, u, v)| (d, (int(u), int(v)))))
}

#[test]
fn generator_examples() {
    assert_eq!(word(vec![AutoGen::Scale(int(-1))]).apply(&l(int(2), 3)), -l(int(-2), 3));
    assert_eq!(word(vec![AutoGen::LoopScale(int(3))]).apply(&y(s(1, 2), -2)), y(s(1, 2), -2).scale(&s(1, 9)));
    let inner = word(vec![AutoGen::Inner(m(int(1), 0))]);
    assert_eq!(inner.apply(&l(int(2), 5)), l(int(2), 5) - m(int(3), 5));
    assert_eq!(inner.apply(&y(s(1, 2), 1)), y(s(1, 2), 1));
    assert_eq!(inner.apply(&m(int(-1), 1)), m(int(-1), 1));
    let tw = word(vec![AutoGen::CharTwist { chi: Character::new(vec![int(2)]), r: int(3) }]);
    assert_eq!(tw.apply(&y(s(1, 2), 0)), y(s(1, 2), 0).scale(&int(6)));
    let sh = word(vec![AutoGen::MShear(shear(&[(1, 0, 1)]))]);
    assert_eq!(sh.apply(&l(int(2), 0)), l(int(2), 0) + m(int(2), 1));
}

#[test]
fn invalid_generators_rejected() {
    let g = z();
    assert!(AutomorphismWord::new(&g, vec![AutoGen::Scale(int(2))]).is_err());
    assert!(AutomorphismWord::new(&g, vec![AutoGen::Inner(l(int(1), 0))]).is_err());
    assert!(AutomorphismWord::new(&g, vec![AutoGen::ZFlip(2)]).is_err());
    assert!(AutomorphismWord::new(&g, vec![AutoGen::LoopScale(int(0))]).is_err());
}

#[test]
fn defect_examples() {
    let g = z();
    let w = Window::new(2, 1);
    assert!(automorphism_sweep(&AutomorphismWord::identity(&g).operator(), &g, &w).is_empty());
    let sc = word(vec![AutoGen::Scale(int(-1))]);
    assert!(sc.defect(&l(int(1), 0), &l(int(2), 0)).is_zero());
    // a twist that is not a character: L_1 scaled by 2 but L_2 left alone
    let bad = crate::operator::Operator::new(|k| {
        if k.kind == crate::algebra::Kind::L && k.gamma == Scalar::one() {
            Element::term(int(2), k.clone())
        } else {
            Element::basis(k.clone())
        }
    });
    assert!(!automorphism_sweep(&bad, &g, &w).is_empty());
}

#[test]
fn composition_examples() {
    let g = z();
    let keys = Window::default().keys(&g);
    let sc = word(vec![AutoGen::Scale(int(-1))]);
    assert!(sc.compose(&sc).operator().agrees_on(&AutomorphismWord::identity(&g).operator(), &keys));
    let (e, c) = (shear(&[(1, 0, 1), (-2, 1, 0)]), shear(&[(1, 2, -1), (0, 0, 3)]));
    let both = word(vec![AutoGen::MShear(c.clone()), AutoGen::MShear(e.clone())]);
    let sum = word(vec![AutoGen::MShear(e.add(&c).unwrap())]);
    assert!(both.operator().agrees_on(&sum.operator(), &keys));
    let w = word(vec![
        AutoGen::Inner(y(s(1, 2), 1)),
        AutoGen::CharTwist { chi: Character::new(vec![s(-2, 3)]), r: int(5) },
        AutoGen::LoopShift(HomToInt::new(vec![1])),
    ]);
    let id = w.compose(&w.inverse());
    assert!(id.operator().agrees_on(&AutomorphismWord::identity(&g).operator(), &keys));
}

#[test]
fn parameter_fold_matches_action() {
    let g = z();
    let keys = Window::default().keys(&g);
    let p1 = ParameterTuple {
        a: int(-1),
        phi: HomToInt::new(vec![2]),
        chi: Character::new(vec![s(3, 2)]),
        r: int(-2),
        eps: -1,
        b: int(3),
    };
    let p2 = ParameterTuple {
        a: int(-1),
        phi: HomToInt::new(vec![-1]),
        chi: Character::new(vec![int(5)]),
        r: s(1, 3),
        eps: -1,
        b: s(-1, 2),
    };
    let folded = p1.fold(&p2, &g).word(&g).unwrap();
    let composed = p1.word(&g).unwrap().compose(&p2.word(&g).unwrap());
    assert!(folded.operator().agrees_on(&composed.operator(), &keys));
}

#[test]
fn conjugation_identity() {
    let g = z();
    let keys = Window::default().keys(&g);
    let p = ParameterTuple {
        a: int(-1),
        phi: HomToInt::new(vec![1]),
        chi: Character::new(vec![int(2)]),
        r: int(3),
        eps: -1,
        b: s(1, 2),
    };
    let e = shear(&[(1, 1, 2), (-1, 0, -1)]);
    let pw = p.word(&g).unwrap();
    let lhs = pw.inverse().compose(&word(vec![AutoGen::MShear(e.clone())])).compose(&pw);
    let d = conjugate_shear(&g, &p, &e);
    let rhs = word(vec![AutoGen::MShear(d)]);
    assert!(lhs.operator().agrees_on(&rhs.operator(), &keys));
}

#[test]
fn factor_examples() {
    let g = z();
    let w = Window::default();
    let sigma = word(vec![AutoGen::MShear(shear(&[(1, 0, 1)])), AutoGen::LoopScale(int(2)), AutoGen::Scale(int(-1))]);
    let f = factor(&sigma.operator(), &g, &w).unwrap();
    assert_eq!(f.params.a, int(-1));
    assert_eq!(f.params.b, int(2));
    // the normal form ends in the inverse shear
    assert_eq!(f.e, shear(&[(1, 0, -1)]));
    assert!(f.recompose(&g).unwrap().operator().agrees_on(&sigma.operator(), &w.keys(&g)));
    assert!(f.inner.is_empty());
    assert!(f.params.chi.is_trivial() && f.params.phi.is_zero() && f.params.eps == 1 && f.params.r.is_one());

    let sigma = word(vec![AutoGen::Inner(y(s(1, 2), 0))]);
    let f = factor(&sigma.operator(), &g, &w).unwrap();
    assert_eq!(f.params, ParameterTuple::identity(&g));
    assert!(!f.inner.is_empty());
    assert!(f.recompose(&g).unwrap().operator().agrees_on(&sigma.operator(), &w.keys(&g)));

    let f = factor(&AutomorphismWord::identity(&g).operator(), &g, &w).unwrap();
    assert_eq!(f.params, ParameterTuple::identity(&g));
    assert!(f.inner.is_empty() && f.e.is_zero());
}

#[test]
fn factor_mixed_word() {
    let g = z();
    let w = Window::default();
    let sigma = word(vec![
        AutoGen::Inner(y(s(-1, 2), 1) + m(int(1), 0).scale(&int(3))),
        AutoGen::MShear(shear(&[(2, 1, -1)])),
        AutoGen::CharTwist { chi: Character::new(vec![s(-1, 3)]), r: int(-2) },
        AutoGen::ZFlip(-1),
        AutoGen::Inner(y(s(3, 2), -1).scale(&s(1, 2)) + y(s(1, 2), 0)),
        AutoGen::LoopShift(HomToInt::new(vec![-1])),
        AutoGen::LoopScale(s(2, 3)),
        AutoGen::Scale(int(-1)),
    ]);
    let f = factor(&sigma.operator(), &g, &w).unwrap();
    assert_eq!(f.params.r, int(2));
    assert!(f.recompose(&g).unwrap().operator().agrees_on(&sigma.operator(), &w.keys(&g)));
}

#[test]
fn inner_is_nilpotent() {
    let x = y(s(1, 2), 0) + m(int(-1), 2) + y(s(-3, 2), 1).scale(&int(4));
    for k in Window::default().keys(&z()) {
        assert!(ad_cubed(&x, &Element::basis(k)).is_zero());
    }
}

#[test]
fn iso_examples() {
    let g = z();
    let h = GroupData::new(Field::Rational, vec![int(2)], int(1)).unwrap();
    assert_eq!(iso_test(&g, &h), Some(s(1, 2)));
    assert_eq!(iso_test(&g, &g), Some(int(1)));
    let r2 = GroupData::new(Field::Quadratic(2), vec![int(1), Scalar::sqrt_of(2)], s(1, 2)).unwrap();
    assert_eq!(iso_test(&g, &r2), None);
    assert!(iso_test(&r2, &r2).is_some());
}

#[test]
fn shear_oracle_is_canonical() {
    let alphas: Vec<Scalar> = (-2..=2).map(int).collect();
    let loops: Vec<i64> = (-2..=2).collect();
    let sols = shear_constraint_solutions(&alphas, &loops);
    assert_eq!(sols.len(), 2);
    assert!(sols.iter().all(|v| is_canonical_solution(&alphas, &loops, v)));
}

#[test]
fn shear_tables() {
    let e = shear(&[(1, 1, 2)]);
    let dom: Vec<(Scalar, i64)> = (-1..=1).flat_map(|a| (-1..=1).map(move |i| (int(a), i))).collect();
    let MShearData::Table(t) = e.to_table(&dom) else { panic!() };
    assert!(MShearData::table(t.clone()).is_ok());
    assert_eq!(fit_canonical(&t), Some(e));
    let mut broken = t;
    broken.get_mut(&(int(1), 0)).unwrap().insert(1, int(7));
    assert!(MShearData::table(broken).is_err());
    let _ = BTreeMap::<i64, i64>::new();
}
