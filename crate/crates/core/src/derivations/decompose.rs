use std::collections::BTreeMap;

use rayon::prelude::*;

use super::families::{make_ad, make_d_b, make_d_g, make_d_phi, make_d_rho, GFunction, HomToLaurent};
use crate::algebra::{BasisKey, Element, Kind, Window};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalars::{GroupData, LaurentPoly, Scalar};

/// `D = D^rho + D_f + D_g + D_b + ad(inner)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CanonicalDerivation {
    /// Coefficient of `d/dt`.
    pub rho: LaurentPoly,
    pub f: HomToLaurent,
    pub g: GFunction,
    pub b: LaurentPoly,
    pub inner: Element,
}

impl CanonicalDerivation {
    pub fn to_operator(&self, group: &GroupData) -> Operator {
        let mut op = make_d_rho(&self.rho)
            .add(&make_d_phi(group, &self.f))
            .add(&make_d_g(&self.g))
            .add(&make_d_b(&self.b));
        if !self.inner.is_zero() {
            op = op.add(&make_ad(&self.inner)).without_degree();
        }
        op
    }
}

/// Split `D` by degree: the weight-`(μ+γ)` part of `D(x)` for `x` of weight `μ` goes to `D_γ`.
pub fn degree_decompose(d: &Operator, group: &GroupData, window: &Window) -> BTreeMap<Scalar, Operator> {
    let keys = window.keys(group);
    let shifts: std::collections::BTreeSet<Scalar> = keys
        .par_iter()
        .flat_map_iter(|k| d.on_key(k).keys().map(|o| &o.gamma - &k.gamma).collect::<Vec<_>>())
        .collect();
    shifts
        .into_iter()
        .map(|gamma| {
            let (d, g) = (d.clone(), gamma.clone());
            let part = Operator::new(move |k| {
                let target = &k.gamma + &g;
                d.on_key(k).filter(|o| o.gamma == target)
            })
            .with_degree(gamma.clone());
            (gamma, part)
        })
        .collect()
}

/// For `D` of declared degree `γ ≠ 0`, the element `z = -D(L_{0,0})/γ` with `D = ad z`.
pub fn reduce_nonzero_degree(d: &Operator, group: &GroupData, window: &Window) -> Result<Element> {
    let gamma = d.degree().filter(|g| !g.is_zero()).ok_or(Error::DegreeZeroOrUndeclared)?;
    let inv = gamma.inv().expect("nonzero degree");
    let z = d.on_key(&BasisKey::l(Scalar::zero(), 0)).scale(&-inv);
    if let Some((k, diff)) = make_ad(&z).first_difference(d, &window.keys(group)) {
        return Err(Error::NotPureDegree { witness: format!("{k} (difference {diff})") });
    }
    Ok(z)
}

fn shape_check(d: &Operator, keys: &[BasisKey]) -> Result<()> {
    let bad = keys.par_iter().find_map_first(|k| {
        let img = d.on_key(k);
        let ok = img.keys().all(|o| {
            o.gamma == k.gamma
                && match k.kind {
                    Kind::L => o.kind != Kind::Y,
                    Kind::M => o.kind == Kind::M,
                    Kind::Y => o.kind == Kind::Y,
                }
        });
        (!ok).then(|| (k.clone(), img))
    });
    match bad {
        Some((k, img)) => Err(Error::Shape { witness: k.to_string(), detail: format!("image {img}") }),
        None => Ok(()),
    }
}

fn fit_g(values: &BTreeMap<Scalar, LaurentPoly>) -> GFunction {
    let v = values.get(&Scalar::zero()).cloned().unwrap_or_default();
    let pivot = values.keys().filter(|a| a.is_positive()).min().cloned();
    let u = match &pivot {
        Some(a) => (&values[a] - &v).scale(&a.inv().expect("nonzero")),
        None => LaurentPoly::zero(),
    };
    let affine = GFunction::affine(u, v);
    if values.iter().all(|(a, g)| &affine.at(a) == g) {
        affine
    } else {
        GFunction::Table(values.clone())
    }
}

/// Recover `(rho, f, g, b)` from a degree-zero derivation, checking the result on the window.
pub fn canonical_decompose_degree0(d: &Operator, group: &GroupData, window: &Window) -> Result<CanonicalDerivation> {
    let keys = window.keys(group);
    shape_check(d, &keys)?;
    let zero = Scalar::zero();

    let f01 = d.on_key(&BasisKey::l(zero.clone(), 1)).laurent_at(Kind::L, &zero, 1);
    let rho = f01.shift(1);
    let d_rest = d.sub(&make_d_rho(&rho));

    let f_at = |alpha: &Scalar| d_rest.on_key(&BasisKey::l(alpha.clone(), 0)).laurent_at(Kind::L, alpha, 0);
    let f = HomToLaurent::from_gamma_values(group, f_at);
    let gammas = window.gamma_values(group);
    for alpha in &gammas {
        let read = f_at(alpha);
        let expected = f.eval(group, alpha);
        if read != expected {
            return Err(Error::Inconsistent {
                what: "f".into(),
                witness: format!("L({alpha},0): read {read}, homomorphism gives {expected}"),
            });
        }
    }

    let g_values: BTreeMap<Scalar, LaurentPoly> = gammas
        .iter()
        .map(|a| (a.clone(), d.on_key(&BasisKey::l(a.clone(), 0)).laurent_at(Kind::M, a, 0)))
        .collect();
    let g = fit_g(&g_values);

    let b = d_rest.on_key(&BasisKey::m(zero.clone(), 0)).laurent_at(Kind::M, &zero, 0);

    let out = CanonicalDerivation { rho, f, g, b, inner: Element::zero() };
    if let Some((k, diff)) = out.to_operator(group).first_difference(d, &keys) {
        return Err(Error::Inconsistent {
            what: "decomposition".into(),
            witness: format!("{k} (difference {diff})"),
        });
    }
    Ok(out)
}

/// Full decomposition: nonzero-degree parts become `ad(inner)`, the degree-zero part is
/// split into the canonical families.
pub fn decompose(d: &Operator, group: &GroupData, window: &Window) -> Result<CanonicalDerivation> {
    let mut parts = degree_decompose(d, group, window);
    let d0 = parts.remove(&Scalar::zero()).unwrap_or_else(|| Operator::zero().with_degree(Scalar::zero()));
    let mut inner = Element::zero();
    for part in parts.values() {
        inner = inner + reduce_nonzero_degree(part, group, window)?;
    }
    let mut out = canonical_decompose_degree0(&d0, group, window)?;
    out.inner = inner;
    if let Some((k, diff)) = out.to_operator(group).first_difference(d, &window.keys(group)) {
        return Err(Error::Inconsistent { what: "decomposition".into(), witness: format!("{k} (difference {diff})") });
    }
    Ok(out)
}

/// If `φ(γ) = γ f(t)` on the `T`-basis, the coefficients of `f`, so that
/// `D_φ = Σ_j a_j ad(L_{0,j})`.
pub fn hom_quotient_witness(group: &GroupData, phi: &HomToLaurent) -> Option<BTreeMap<i64, Scalar>> {
    let basis = group.t_basis();
    let f = phi.images[0].scale(&basis[0].inv()?);
    let fits = basis.iter().zip(&phi.images).all(|(b, p)| &f.scale(b) == p);
    fits.then(|| f.terms().map(|(e, c)| (e, c.clone())).collect())
}

/// `Σ_j a_j ad(L_{0,j})`.
pub fn inner_from_witness(coeffs: &BTreeMap<i64, Scalar>) -> Operator {
    let z = Element::from_terms(coeffs.iter().map(|(j, a)| (BasisKey::l(Scalar::zero(), *j), a.clone())));
    make_ad(&z)
}
