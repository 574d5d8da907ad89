//! The algebra itself: basis keys, sparse elements, the bracket, the
//! `T`-grading, the center and the maximal ideal `M ⊕ Y`.

mod element;
mod key;
mod window;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use element::{bracket, Element};
pub use key::{bracket_keys, BasisKey, Kind};
pub use window::Window;

use crate::scalars::{GroupData, Scalar};

/// Split into `ad L_{0,0}`-eigencomponents.
pub fn grade(x: &Element) -> BTreeMap<Scalar, Element> {
    let mut out: BTreeMap<Scalar, Element> = BTreeMap::new();
    for (k, c) in x.terms() {
        out.entry(k.gamma.clone()).or_default().add_term(k.clone(), c);
    }
    out
}

/// The center is spanned by the `M_{0,i}`.
pub fn is_central(x: &Element) -> bool {
    x.keys().all(|k| k.kind == Kind::M && k.gamma.is_zero())
}

pub fn in_maximal_ideal(x: &Element) -> bool {
    x.keys().all(|k| k.kind != Kind::L)
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
pub fn jacobi_defect(x: &Element, y: &Element, z: &Element) -> Element {
    let mut out = bracket(x, &bracket(y, z));
    out.add_scaled(&bracket(y, &bracket(z, x)), &Scalar::one());
    out.add_scaled(&bracket(z, &bracket(x, y)), &Scalar::one());
    out
}

/// A failing instance found by a window sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub keys: Vec<BasisKey>,
    pub value: String,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ks: Vec<String> = self.keys.iter().map(|k| k.to_string()).collect();
        write!(f, "({}) -> {}", ks.join(", "), self.value)
    }
}

/// Checks `[a,b] + [b,a] = 0` on all window pairs.
pub fn antisymmetry_sweep(group: &GroupData, window: &Window) -> Vec<Witness> {
    let keys = window.keys(group);
    keys.par_iter()
        .flat_map_iter(|a| {
            keys.iter().filter_map(move |b| {
                let (x, y) = (Element::basis(a.clone()), Element::basis(b.clone()));
                let s = &bracket(&x, &y) + &bracket(&y, &x);
                (!s.is_zero()).then(|| Witness { keys: vec![a.clone(), b.clone()], value: s.to_string() })
            })
        })
        .collect()
}

/// Jacobi defect on every unordered window triple (with repetition); by
/// antisymmetry and cyclic symmetry of the defect this covers all ordered triples.
pub fn jacobi_sweep(group: &GroupData, window: &Window) -> Vec<Witness> {
    let keys: Vec<Element> = window.keys(group).into_iter().map(Element::basis).collect();
    let n = keys.len();
    let mut found: Vec<Witness> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let keys = &keys;
            (i..n).flat_map(move |j| {
                (j..n).filter_map(move |k| {
                    let d = jacobi_defect(&keys[i], &keys[j], &keys[k]);
                    (!d.is_zero()).then(|| Witness {
                        keys: [i, j, k].iter().map(|&m| keys[m].keys().next().unwrap().clone()).collect(),
                        value: d.to_string(),
                    })
                })
            })
        })
        .collect();
    found.sort_by(|a, b| a.keys.cmp(&b.keys));
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
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

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&l(s(1, 1), 0), &l(s(2, 1), 3)), l(s(3, 1), 3));
        assert!(bracket(&l(s(1, 1), 0), &y(s(1, 2), 2)).is_zero());
        assert_eq!(bracket(&y(s(1, 2), 0), &y(s(3, 2), 1)), m(s(2, 1), 1));
        assert_eq!(bracket(&l(s(2, 1), 1), &m(s(3, 1), -1)), m(s(5, 1), 0).scale(&s(3, 1)));
        assert!(bracket(&m(s(1, 1), 0), &y(s(1, 2), 0)).is_zero());
        assert!(bracket(&m(s(1, 1), 0), &m(s(-1, 1), 4)).is_zero());
    }

    #[test]
    fn grading_examples() {
        let g = grade(&y(s(3, 2), 5));
        assert_eq!(g.len(), 1);
        assert_eq!(g[&s(3, 2)], y(s(3, 2), 5));
        assert_eq!(grade(&l(s(0, 1), 7))[&s(0, 1)], l(s(0, 1), 7));
        let g = grade(&(&l(s(1, 1), 0) + &m(s(2, 1), 3)));
        assert_eq!(g[&s(1, 1)], l(s(1, 1), 0));
        assert_eq!(g[&s(2, 1)], m(s(2, 1), 3));
        for (w, part) in g {
            assert_eq!(bracket(&l(s(0, 1), 0), &part), part.scale(&w));
        }
    }

    #[test]
    fn center_and_ideal() {
        assert!(is_central(&m(s(0, 1), 7)));
        assert!(!is_central(&l(s(0, 1), 0)));
        assert!(is_central(&Element::zero()));
        assert!(in_maximal_ideal(&(&m(s(1, 1), 2) + &y(s(1, 2), 0))));
        assert!(!in_maximal_ideal(&l(s(0, 1), 0)));
        assert!(in_maximal_ideal(&Element::zero()));
    }

    #[test]
    fn jacobi_examples() {
        assert!(jacobi_defect(&l(s(1, 1), 0), &l(s(2, 1), 0), &l(s(-3, 1), 1)).is_zero());
        assert!(jacobi_defect(&l(s(1, 1), 0), &y(s(1, 2), 0), &y(s(-1, 2), 0)).is_zero());
        assert!(jacobi_defect(&m(s(1, 1), 0), &m(s(2, 1), 0), &y(s(1, 2), 0)).is_zero());
    }

    #[test]
    fn small_window_sweeps_are_clean() {
        let g = GroupData::integers_half();
        let w = Window::new(2, 1);
        assert!(antisymmetry_sweep(&g, &w).is_empty());
        assert!(jacobi_sweep(&g, &w).is_empty());
    }

    #[test]
    fn window_contents() {
        let g = GroupData::integers_half();
        let w = Window::new(3, 3);
        // L and M at -1, 0, 1; Y at +-1/2, +-3/2; 7 loop degrees each
        assert_eq!(w.keys(&g).len(), (3 + 3 + 4) * 7);
        assert!(w.on_boundary(&g, &BasisKey::y(s(3, 2), 0)));
        assert!(!w.on_boundary(&g, &BasisKey::l(s(1, 1), 0)));
        assert!(!w.contains(&g, &BasisKey::l(s(2, 1), 0)));
    }
}
