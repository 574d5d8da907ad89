use std::collections::BTreeMap;

use crate::algebra::{bracket, BasisKey, Element, Kind};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalars::{GroupData, IndexSet, LaurentPoly, Scalar};

/// A group homomorphism `T -> F[t, t^-1]`, stored by its values on the `T`-basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomToLaurent {
    pub images: Vec<LaurentPoly>,
}

impl HomToLaurent {
    pub fn new(images: Vec<LaurentPoly>) -> Self {
        HomToLaurent { images }
    }

    pub fn zero(group: &GroupData) -> Self {
        HomToLaurent { images: vec![LaurentPoly::zero(); group.t_rank()] }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(LaurentPoly::is_zero)
    }

    /// `gamma ↦ gamma * p(t)`.
    pub fn scaled_identity(group: &GroupData, p: &LaurentPoly) -> Self {
        HomToLaurent { images: group.t_basis().iter().map(|b| p.scale(b)).collect() }
    }

    /// The homomorphism with prescribed values on `Gamma`, using `f_gamma = f_{2 gamma} / 2`
    /// for basis elements outside `Gamma`.
    pub fn from_gamma_values<F: Fn(&Scalar) -> LaurentPoly>(group: &GroupData, f: F) -> Self {
        let half = Scalar::ratio(1, 2);
        let images = group
            .t_basis()
            .iter()
            .map(|b| if group.member(b, IndexSet::Gamma) { f(b) } else { f(&(b + b)).scale(&half) })
            .collect();
        HomToLaurent { images }
    }

    pub fn eval(&self, group: &GroupData, gamma: &Scalar) -> LaurentPoly {
        let coords = group.t_coordinates(gamma).unwrap_or_else(|| panic!("{gamma} is not in T"));
        let mut out = LaurentPoly::zero();
        for (c, p) in coords.into_iter().zip(&self.images) {
            out = &out + &p.scale(&Scalar::from_bigint(c));
        }
        out
    }
}

/// An element of `g(Gamma)`: Laurent-valued `g` with `(β-α) g_{α+β} = β g_β - α g_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GFunction {
    /// `g_α = u α + v`.
    Affine { u: LaurentPoly, v: LaurentPoly },
    /// Explicit values; zero outside the table.
    Table(BTreeMap<Scalar, LaurentPoly>),
}

impl Default for GFunction {
    fn default() -> Self {
        GFunction::Affine { u: LaurentPoly::zero(), v: LaurentPoly::zero() }
    }
}

impl GFunction {
    pub fn affine(u: LaurentPoly, v: LaurentPoly) -> Self {
        GFunction::Affine { u, v }
    }

    /// A table, accepted only if it satisfies the defining relation on its domain.
    pub fn table(values: BTreeMap<Scalar, LaurentPoly>) -> Result<Self> {
        let g = GFunction::Table(values);
        if let GFunction::Table(t) = &g {
            let dom: Vec<Scalar> = t.keys().cloned().collect();
            if let Some((a, b)) = g.violation(&dom) {
                return Err(Error::Inconsistent {
                    what: "g table".into(),
                    witness: format!("alpha = {a}, beta = {b}"),
                });
            }
        }
        Ok(g)
    }

    pub fn at(&self, alpha: &Scalar) -> LaurentPoly {
        match self {
            GFunction::Affine { u, v } => &u.scale(alpha) + v,
            GFunction::Table(t) => t.get(alpha).cloned().unwrap_or_default(),
        }
    }

    pub fn is_zero_on(&self, domain: &[Scalar]) -> bool {
        domain.iter().all(|a| self.at(a).is_zero())
    }

    /// First pair `(α, β)` from `domain` with `α + β` in `domain` breaking the relation.
    pub fn violation(&self, domain: &[Scalar]) -> Option<(Scalar, Scalar)> {
        for a in domain {
            for b in domain {
                let ab = a + b;
                if !domain.contains(&ab) {
                    continue;
                }
                let lhs = self.at(&ab).scale(&(b - a));
                let rhs = &self.at(b).scale(b) - &self.at(a).scale(a);
                if lhs != rhs {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }
}

/// `X_{μ,i} ↦ X_μ ⊗ φ(μ) t^i`.
pub fn make_d_phi(group: &GroupData, phi: &HomToLaurent) -> Operator {
    let (group, phi) = (group.clone(), phi.clone());
    Operator::new(move |k| Element::from_laurent(k, &phi.eval(&group, &k.gamma))).with_degree(Scalar::zero())
}

/// `L_{α,i} ↦ M_α ⊗ g_α t^i`, zero on `M` and `Y`.
pub fn make_d_g(g: &GFunction) -> Operator {
    let g = g.clone();
    Operator::new(move |k| match k.kind {
        Kind::L => Element::from_laurent(&BasisKey::m(k.gamma.clone(), k.loop_degree), &g.at(&k.gamma)),
        _ => Element::zero(),
    })
    .with_degree(Scalar::zero())
}

/// `M ↦ b M`, `Y ↦ b Y / 2`, zero on `L`.
pub fn make_d_b(b: &LaurentPoly) -> Operator {
    let (b, half_b) = (b.clone(), b.scale(&Scalar::ratio(1, 2)));
    Operator::new(move |k| match k.kind {
        Kind::L => Element::zero(),
        Kind::M => Element::from_laurent(k, &b),
        Kind::Y => Element::from_laurent(k, &half_b),
    })
    .with_degree(Scalar::zero())
}

/// `X_{μ,i} ↦ X_μ ⊗ rho(t) d/dt t^i`.
pub fn make_d_rho(rho: &LaurentPoly) -> Operator {
    let rho = rho.clone();
    Operator::new(move |k| {
        if k.loop_degree == 0 {
            return Element::zero();
        }
        let p = rho.scale(&Scalar::from_int(k.loop_degree)).shift(-1);
        Element::from_laurent(k, &p)
    })
    .with_degree(Scalar::zero())
}

/// `x ↦ [z, x]`; homogeneous `z` gives a declared degree.
pub fn make_ad(z: &Element) -> Operator {
    let weights: Vec<&Scalar> = z.keys().map(|k| &k.gamma).collect();
    let degree = match weights.split_first() {
        Some((w, rest)) if rest.iter().all(|x| x == w) => Some((*w).clone()),
        _ => None,
    };
    let z = z.clone();
    let op = Operator::new(move |k| bracket(&z, &Element::basis(k.clone())));
    match degree {
        Some(d) => op.with_degree(d),
        None => op,
    }
}

/// `D([x,y]) - [D(x),y] - [x,D(y)]`.
pub fn derivation_defect(d: &Operator, x: &Element, y: &Element) -> Element {
    let mut out = d.apply(&bracket(x, y));
    out.add_scaled(&bracket(&d.apply(x), y), &Scalar::from_int(-1));
    out.add_scaled(&bracket(x, &d.apply(y)), &Scalar::from_int(-1));
    out
}
