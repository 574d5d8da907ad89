use std::collections::BTreeMap;

use rayon::prelude::*;

use super::generators::{AutoGen, Character, HomToInt, MShearData};
use crate::algebra::{bracket, BasisKey, Element, Window, Witness};
use crate::error::Result;
use crate::operator::Operator;
use crate::scalars::{GroupData, Scalar};

/// A product of generators, applied left to right: the first generator acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct AutomorphismWord {
    group: GroupData,
    gens: Vec<AutoGen>,
}

impl AutomorphismWord {
    pub fn new(group: &GroupData, gens: Vec<AutoGen>) -> Result<Self> {
        for g in &gens {
            g.validate(group)?;
        }
        Ok(AutomorphismWord { group: group.clone(), gens })
    }

    pub fn identity(group: &GroupData) -> Self {
        AutomorphismWord { group: group.clone(), gens: Vec::new() }
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    pub fn generators(&self) -> &[AutoGen] {
        &self.gens
    }

    pub fn on_key(&self, key: &BasisKey) -> Element {
        let mut x = Element::basis(key.clone());
        for g in &self.gens {
            x = x.map_linear(|k| g.on_key(&self.group, k));
        }
        x
    }

    pub fn apply(&self, x: &Element) -> Element {
        x.map_linear(|k| self.on_key(k))
    }

    pub fn operator(&self) -> Operator {
        let w = self.clone();
        Operator::new(move |k| w.on_key(k))
    }

    pub fn inverse(&self) -> Self {
        AutomorphismWord { group: self.group.clone(), gens: self.gens.iter().rev().map(AutoGen::inverse).collect() }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &AutomorphismWord) -> Self {
        let mut gens = other.gens.clone();
        gens.extend(self.gens.iter().cloned());
        AutomorphismWord { group: self.group.clone(), gens }
    }

    /// `σ([x,y]) - [σx, σy]`.
    pub fn defect(&self, x: &Element, y: &Element) -> Element {
        self.apply(&bracket(x, y)) - bracket(&self.apply(x), &self.apply(y))
    }
}

/// `σ([x,y]) - [σx, σy]` for an arbitrary linear map.
pub fn automorphism_defect(sigma: &Operator, x: &Element, y: &Element) -> Element {
    sigma.apply(&bracket(x, y)) - bracket(&sigma.apply(x), &sigma.apply(y))
}

/// Homomorphism check on every ordered window pair.
pub fn automorphism_sweep(sigma: &Operator, group: &GroupData, window: &Window) -> Vec<Witness> {
    let keys = window.keys(group);
    let images: Vec<Element> = keys.par_iter().map(|k| sigma.on_key(k)).collect();
    let mut out: Vec<Witness> = (0..keys.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let (keys, images) = (&keys, &images);
            (0..keys.len()).filter_map(move |b| {
                let lhs = sigma.apply(&bracket(&Element::basis(keys[a].clone()), &Element::basis(keys[b].clone())));
                let d = lhs - bracket(&images[a], &images[b]);
                (!d.is_zero()).then(|| Witness { keys: vec![keys[a].clone(), keys[b].clone()], value: d.to_string() })
            })
        })
        .collect();
    out.sort_by(|a, b| a.keys.cmp(&b.keys));
    out
}

/// The diagonal part `σ_a ∘ φ ∘ σ^χ ∘ ε ∘ τ_b` of an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterTuple {
    pub a: Scalar,
    pub phi: HomToInt,
    pub chi: Character,
    pub r: Scalar,
    pub eps: i64,
    pub b: Scalar,
}

impl ParameterTuple {
    pub fn identity(group: &GroupData) -> Self {
        ParameterTuple {
            a: Scalar::one(),
            phi: HomToInt::zero(group),
            chi: Character::trivial(group),
            r: Scalar::one(),
            eps: 1,
            b: Scalar::one(),
        }
    }

    pub fn c(&self) -> Scalar {
        &self.r * &self.r
    }

    /// Generators in application order.
    pub fn generators(&self) -> Vec<AutoGen> {
        vec![
            AutoGen::LoopScale(self.b.clone()),
            AutoGen::ZFlip(self.eps),
            AutoGen::CharTwist { chi: self.chi.clone(), r: self.r.clone() },
            AutoGen::LoopShift(self.phi.clone()),
            AutoGen::Scale(self.a.clone()),
        ]
    }

    pub fn word(&self, group: &GroupData) -> Result<AutomorphismWord> {
        AutomorphismWord::new(group, self.generators())
    }

    /// Parameters of `self ∘ other`.
    pub fn fold(&self, other: &ParameterTuple, group: &GroupData) -> ParameterTuple {
        let a2_inv = other.a.inv().expect("nonzero scale");
        let basis = group.t_basis();
        let phi = basis
            .iter()
            .map(|g| self.phi.eval(group, &(g * &a2_inv)) + self.eps * other.phi.eval(group, g))
            .collect();
        let chi = basis
            .iter()
            .map(|g| {
                let x = &other.chi.eval(group, g) * &self.chi.eval(group, &(g * &a2_inv));
                &x * &self.b.pow(other.phi.eval(group, g))
            })
            .collect();
        ParameterTuple {
            a: &self.a * &other.a,
            phi: HomToInt::new(phi),
            chi: Character::new(chi),
            r: &self.r * &other.r,
            eps: self.eps * other.eps,
            b: &self.b.pow(other.eps) * &other.b,
        }
    }
}

/// The shear `d` with `P⁻¹ ∘ ψ_e ∘ P = ψ_d`, where
/// `d^k_{α,i} = c⁻¹ b^{i-k} e^{εk+φ(α)}_{α/a, εi+φ(α)}`.
pub fn conjugate_shear(group: &GroupData, p: &ParameterTuple, e: &MShearData) -> MShearData {
    let c_inv = p.c().inv().expect("nonzero c");
    let a_inv = p.a.inv().expect("nonzero a");
    match e {
        MShearData::Canonical(m) => MShearData::canonical(m.iter().map(|(d, (u, v))| {
            let dd = p.eps * d;
            let f = &c_inv * &p.b.pow(-dd);
            (dd, (&(&f * u) * &a_inv, &f * v))
        })),
        MShearData::Table(t) => {
            let mut out: BTreeMap<(Scalar, i64), BTreeMap<i64, Scalar>> = BTreeMap::new();
            for ((alpha_a, big_i), row) in t {
                let alpha = alpha_a * &p.a;
                let shift = p.phi.eval(group, &alpha);
                let i = p.eps * (big_i - shift);
                let slot = out.entry((alpha.clone(), i)).or_default();
                for (big_k, x) in row {
                    let k = p.eps * (big_k - shift);
                    slot.insert(k, &(&c_inv * &p.b.pow(i - k)) * x);
                }
            }
            MShearData::Table(out)
        }
    }
}
