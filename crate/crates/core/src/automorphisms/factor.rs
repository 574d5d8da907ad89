use std::collections::BTreeMap;

use super::generators::{exp_ad, AutoGen, Character, HomToInt, MShearData};
use super::word::{AutomorphismWord, ParameterTuple};
use super::shear::fit_canonical;
use crate::algebra::{BasisKey, Element, Kind, Window};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalars::{GroupData, IndexSet, Scalar};

/// `σ = σ_a ∘ φ ∘ σ^χ ∘ ε ∘ τ_b ∘ τ' ∘ ψ_e⁻¹` with `τ'` a product of inner automorphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredAutomorphism {
    pub params: ParameterTuple,
    pub e: MShearData,
    /// Inner factors `x` of `exp(ad x)`, in application order.
    pub inner: Vec<Element>,
}

impl FactoredAutomorphism {
    /// Generators in application order.
    pub fn generators(&self) -> Vec<AutoGen> {
        let mut gens = Vec::new();
        if !self.e.is_zero() {
            gens.push(AutoGen::MShear(self.e.neg()));
        }
        gens.extend(self.inner.iter().cloned().map(AutoGen::Inner));
        gens.extend(self.params.generators());
        gens
    }

    pub fn recompose(&self, group: &GroupData) -> Result<AutomorphismWord> {
        AutomorphismWord::new(group, self.generators())
    }

    /// `μ(γ, i) = b^i χ(γ)`.
    pub fn mu(&self, group: &GroupData, gamma: &Scalar, i: i64) -> Scalar {
        &self.params.b.pow(i) * &self.params.chi.eval(group, gamma)
    }

    /// The loop exponent `ε i + φ(γ)`.
    pub fn loop_exponent(&self, group: &GroupData, gamma: &Scalar, i: i64) -> i64 {
        self.params.eps * i + self.params.phi.eval(group, gamma)
    }
}

fn step(step: &'static str, witness: impl ToString, detail: impl ToString) -> Error {
    Error::FactorStep { step, witness: witness.to_string(), detail: detail.to_string() }
}

/// The single term of `x` of the given kind, if that part is one term.
fn leading(x: &Element, kind: Kind) -> Option<(BasisKey, Scalar)> {
    let part = x.part(kind);
    let mut it = part.terms();
    match (it.next(), it.next()) {
        (Some((k, c)), None) => Some((k.clone(), c.clone())),
        _ => None,
    }
}

/// Factor an automorphism into its normal form and check the recomposition on the window.
pub fn factor(sigma: &Operator, group: &GroupData, window: &Window) -> Result<FactoredAutomorphism> {
    if window.gamma_height < 2 {
        return Err(Error::WindowTooSmall("factorization needs gamma_height >= 2".into()));
    }
    let zero = Scalar::zero();
    let l00 = BasisKey::l(zero.clone(), 0);

    let img = sigma.on_key(&l00);
    let (k, a) = leading(&img, Kind::L).ok_or_else(|| step("scale", &l00, format!("image {img}")))?;
    if k != l00 {
        return Err(step("scale", &l00, format!("leading term {k}")));
    }
    if !group.validate_scaling(&a)? {
        return Err(step("scale", &l00, format!("{a} does not preserve Gamma and T")));
    }
    let a_inv = a.inv().expect("nonzero");

    let m00 = BasisKey::m(zero.clone(), 0);
    let img = sigma.on_key(&m00);
    let c = match leading(&img, Kind::M) {
        Some((k, x)) if k == m00 && img.len() == 1 => &x * &a_inv,
        _ => return Err(step("center", &m00, format!("image {img}"))),
    };
    let r = c.sqrt_in(group.field()).ok_or_else(|| step("center", &m00, format!("{c} has no square root in the field")))?;

    let l01 = BasisKey::l(zero.clone(), 1);
    let img = sigma.on_key(&l01);
    let (k, x) = leading(&img, Kind::L).ok_or_else(|| step("loop", &l01, format!("image {img}")))?;
    if !k.gamma.is_zero() || k.loop_degree.abs() != 1 {
        return Err(step("loop", &l01, format!("leading term {k}")));
    }
    let eps = k.loop_degree;
    let b = &x * &a_inv;

    let mut phi = Vec::new();
    let mut chi = Vec::new();
    for beta in group.t_basis() {
        let (key, factor) = if group.member(beta, IndexSet::Gamma) {
            (BasisKey::l(beta.clone(), 0), a.clone())
        } else {
            (BasisKey::y(beta.clone(), 0), &a * &r)
        };
        let img = sigma.on_key(&key);
        let (k, x) = leading(&img, key.kind).ok_or_else(|| step("basis", &key, format!("image {img}")))?;
        if k.gamma != beta * &a_inv {
            return Err(step("basis", &key, format!("leading term {k}")));
        }
        phi.push(k.loop_degree);
        chi.push(&x / &factor);
    }
    let params = ParameterTuple { a, phi: HomToInt::new(phi), chi: Character::new(chi), r, eps, b };

    let undo = params.word(group)?.inverse();
    let tau = sigma.then(&undo.operator());

    let keys = window.keys(group);
    for k in &keys {
        let img = tau.on_key(k);
        let ok = match k.kind {
            Kind::L => img.part(Kind::L) == Element::basis(k.clone()),
            Kind::M => img == Element::basis(k.clone()),
            Kind::Y => img.part(Kind::L).is_zero() && img.part(Kind::Y) == Element::basis(k.clone()),
        };
        if !ok {
            return Err(step("tau", k, format!("image {img}")));
        }
    }

    let inner = inner_factors(group, &tau.on_key(&l00));
    let inner_word = AutomorphismWord::new(group, inner.iter().cloned().map(AutoGen::Inner).collect())?;

    let mut e_rows: BTreeMap<(Scalar, i64), BTreeMap<i64, Scalar>> = BTreeMap::new();
    for k in &keys {
        let diff = inner_word.on_key(k) - tau.on_key(k);
        match k.kind {
            Kind::L => {
                if diff.keys().any(|o| o.kind != Kind::M || o.gamma != k.gamma) {
                    return Err(step("shear", k, format!("difference {diff}")));
                }
                e_rows.insert(
                    (k.gamma.clone(), k.loop_degree),
                    diff.terms().map(|(o, c)| (o.loop_degree, c.clone())).collect(),
                );
            }
            _ => {
                if !diff.is_zero() {
                    return Err(step("inner", k, format!("difference {diff}")));
                }
            }
        }
    }
    let e = fit_canonical(&e_rows).unwrap_or(MShearData::Table(e_rows));

    let out = FactoredAutomorphism { params, e, inner };
    let word = out.recompose(group)?;
    for k in &keys {
        let residual = word.on_key(k) - sigma.on_key(k);
        if !residual.is_zero() {
            return Err(Error::Recomposition { witness: k.to_string(), residual: residual.to_string() });
        }
    }
    Ok(out)
}

/// The three inner factors read from `τ(L_{0,0}) = L_{0,0} + Σ (a_{α,j} M_{α,j} + b_{α,j} Y_{α+s,j})`,
/// in application order, zero factors dropped.
fn inner_factors(group: &GroupData, tau_l00: &Element) -> Vec<Element> {
    let s = group.s();
    let ys: Vec<(Scalar, i64, Scalar)> = tau_l00
        .terms()
        .filter(|(k, _)| k.kind == Kind::Y)
        .map(|(k, c)| (&k.gamma - s, k.loop_degree, c.clone()))
        .collect();

    let x1 = Element::from_terms(
        ys.iter().map(|(alpha, j, b)| (BasisKey::y(alpha + s, *j), -(b / &(alpha + s)))),
    );
    let x2 = Element::from_terms(
        tau_l00
            .terms()
            .filter(|(k, _)| k.kind == Kind::M && !k.gamma.is_zero())
            .map(|(k, c)| (k.clone(), -(c / &k.gamma))),
    );
    let two_s = s + s;
    let mut x3 = Element::zero();
    for (alpha, i, bi) in &ys {
        for (beta, j, bj) in &ys {
            let total = &(alpha + beta) + &two_s;
            if alpha == beta || total.is_zero() {
                continue;
            }
            let num = -(&(bi * bj) * &(beta - alpha));
            let den = &(&Scalar::from_int(2) * &(alpha + s)) * &total;
            x3.add_term(BasisKey::m(total.clone(), i + j), &(&num / &den));
        }
    }
    [x1, x2, x3].into_iter().filter(|x| !x.is_zero()).collect()
}

/// Apply `exp(ad x)` for each factor in turn.
pub fn apply_inner(factors: &[Element], y: &Element) -> Element {
    factors.iter().fold(y.clone(), |acc, x| exp_ad(x, &acc))
}
