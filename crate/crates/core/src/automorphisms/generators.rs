use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::algebra::{bracket, in_maximal_ideal, BasisKey, Element, Kind};
use crate::error::{Error, Result};
use crate::scalars::{GroupData, Scalar};

/// A homomorphism `T -> Z` given on the `T`-basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomToInt {
    pub images: Vec<i64>,
}

impl HomToInt {
    pub fn new(images: Vec<i64>) -> Self {
        HomToInt { images }
    }

    pub fn zero(group: &GroupData) -> Self {
        HomToInt { images: vec![0; group.t_rank()] }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|x| *x == 0)
    }

    pub fn eval(&self, group: &GroupData, gamma: &Scalar) -> i64 {
        let coords = group.t_coordinates(gamma).unwrap_or_else(|| panic!("{gamma} is not in T"));
        coords
            .iter()
            .zip(&self.images)
            .map(|(c, x)| c.to_i64().expect("coordinate fits in i64") * x)
            .sum()
    }

    pub fn neg(&self) -> Self {
        HomToInt { images: self.images.iter().map(|x| -x).collect() }
    }
}

/// A character `T -> F^*` given on the `T`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub images: Vec<Scalar>,
}

impl Character {
    pub fn new(images: Vec<Scalar>) -> Self {
        Character { images }
    }

    pub fn trivial(group: &GroupData) -> Self {
        Character { images: vec![Scalar::one(); group.t_rank()] }
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(Scalar::is_one)
    }

    pub fn eval(&self, group: &GroupData, gamma: &Scalar) -> Scalar {
        let coords = group.t_coordinates(gamma).unwrap_or_else(|| panic!("{gamma} is not in T"));
        coords
            .iter()
            .zip(&self.images)
            .map(|(c, x)| x.pow(c.to_i64().expect("coordinate fits in i64")))
            .fold(Scalar::one(), |a, b| &a * &b)
    }

    pub fn inverse(&self) -> Self {
        Character { images: self.images.iter().map(|x| x.inv().expect("nonzero character value")).collect() }
    }
}

/// Shear data `e^k_{α,i}` for `L_{α,i} ↦ L_{α,i} + Σ_k e^k_{α,i} M_{α,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MShearData {
    /// `e^k_{α,i} = u_{k-i} α + v_{k-i}`, keyed by `d = k - i`.
    Canonical(BTreeMap<i64, (Scalar, Scalar)>),
    /// Explicit `(α, i) ↦ {k ↦ e^k_{α,i}}` on the listed `(α, i)`; zero elsewhere.
    Table(BTreeMap<(Scalar, i64), BTreeMap<i64, Scalar>>),
}

impl Default for MShearData {
    fn default() -> Self {
        MShearData::Canonical(BTreeMap::new())
    }
}

impl MShearData {
    pub fn canonical<I: IntoIterator<Item = (i64, (Scalar, Scalar))>>(entries: I) -> Self {
        let mut map = BTreeMap::new();
        for (d, (u, v)) in entries {
            if !(u.is_zero() && v.is_zero()) {
                map.insert(d, (u, v));
            }
        }
        MShearData::Canonical(map)
    }

    /// A table, accepted only if it satisfies the defining constraint of `E` on its domain.
    pub fn table(entries: BTreeMap<(Scalar, i64), BTreeMap<i64, Scalar>>) -> Result<Self> {
        let mut entries = entries;
        for row in entries.values_mut() {
            row.retain(|_, c| !c.is_zero());
        }
        let data = MShearData::Table(entries);
        if let Some(w) = data.table_violation() {
            return Err(Error::InvalidGenerator(format!("shear table breaks the constraint at {w}")));
        }
        Ok(data)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MShearData::Canonical(m) => m.is_empty(),
            MShearData::Table(t) => t.values().all(BTreeMap::is_empty),
        }
    }

    pub fn coeff(&self, alpha: &Scalar, i: i64, k: i64) -> Scalar {
        match self {
            MShearData::Canonical(m) => {
                m.get(&(k - i)).map(|(u, v)| &(u * alpha) + v).unwrap_or_default()
            }
            MShearData::Table(t) => {
                t.get(&(alpha.clone(), i)).and_then(|row| row.get(&k)).cloned().unwrap_or_default()
            }
        }
    }

    /// The nonzero `(k, e^k_{α,i})`.
    pub fn image(&self, alpha: &Scalar, i: i64) -> Vec<(i64, Scalar)> {
        match self {
            MShearData::Canonical(m) => m
                .iter()
                .map(|(d, (u, v))| (i + d, &(u * alpha) + v))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            MShearData::Table(t) => t
                .get(&(alpha.clone(), i))
                .map(|row| row.iter().map(|(k, c)| (*k, c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        match self {
            MShearData::Canonical(m) => {
                MShearData::canonical(m.iter().map(|(d, (u, v))| (*d, (u * c, v * c))))
            }
            MShearData::Table(_) if c.is_zero() => MShearData::Table(BTreeMap::new()),
            MShearData::Table(t) => MShearData::Table(
                t.iter().map(|(key, row)| (key.clone(), row.iter().map(|(k, x)| (*k, x * c)).collect())).collect(),
            ),
        }
    }

    /// Componentwise sum of two shears of the same representation.
    pub fn add(&self, other: &MShearData) -> Option<MShearData> {
        match (self, other) {
            (MShearData::Canonical(a), MShearData::Canonical(b)) => {
                let mut out = a.clone();
                for (d, (u, v)) in b {
                    let e = out.entry(*d).or_insert((Scalar::zero(), Scalar::zero()));
                    e.0 += u;
                    e.1 += v;
                }
                Some(MShearData::canonical(out))
            }
            (MShearData::Table(a), MShearData::Table(b)) => {
                let mut out = a.clone();
                for (key, row) in b {
                    let slot = out.entry(key.clone()).or_default();
                    for (k, c) in row {
                        *slot.entry(*k).or_default() += c;
                    }
                    slot.retain(|_, c| !c.is_zero());
                }
                Some(MShearData::Table(out))
            }
            _ => None,
        }
    }

    /// Restrict to a finite set of `(α, i)`, giving a table.
    pub fn to_table(&self, domain: &[(Scalar, i64)]) -> MShearData {
        let mut out = BTreeMap::new();
        for (a, i) in domain {
            out.insert((a.clone(), *i), self.image(a, *i).into_iter().collect());
        }
        MShearData::Table(out)
    }

    fn table_violation(&self) -> Option<String> {
        let MShearData::Table(t) = self else { return None };
        let dom: Vec<&(Scalar, i64)> = t.keys().collect();
        let ks: std::collections::BTreeSet<i64> = t.values().flat_map(|r| r.keys().copied()).collect();
        for (a, i) in &dom {
            for (b, j) in &dom {
                if !t.contains_key(&(a + b, i + j)) {
                    continue;
                }
                for k in ks.iter().flat_map(|k| [*k, k + i, k + j]) {
                    let lhs = &(b - a) * &self.coeff(&(a + b), i + j, k);
                    let rhs = &(b * &self.coeff(b, *j, k - i)) - &(a * &self.coeff(a, *i, k - j));
                    if lhs != rhs {
                        return Some(format!("alpha = {a}, beta = {b}, i = {i}, j = {j}, k = {k}"));
                    }
                }
            }
        }
        None
    }
}

/// One generator of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoGen {
    /// `X_{γ,i} ↦ a X_{γ/a,i}`.
    Scale(Scalar),
    /// `X_{γ,i} ↦ X_{γ,i+φ(γ)}`.
    LoopShift(HomToInt),
    /// `L ↦ χ L`, `M ↦ r²χ M`, `Y ↦ rχ Y`.
    CharTwist { chi: Character, r: Scalar },
    /// `X_{γ,i} ↦ X_{γ,εi}`.
    ZFlip(i64),
    /// `X_{γ,i} ↦ b^i X_{γ,i}`.
    LoopScale(Scalar),
    MShear(MShearData),
    /// `exp(ad x)`.
    Inner(Element),
}

impl AutoGen {
    pub fn name(&self) -> &'static str {
        match self {
            AutoGen::Scale(_) => "scale",
            AutoGen::LoopShift(_) => "loop_shift",
            AutoGen::CharTwist { .. } => "char_twist",
            AutoGen::ZFlip(_) => "z_flip",
            AutoGen::LoopScale(_) => "loop_scale",
            AutoGen::MShear(_) => "m_shear",
            AutoGen::Inner(_) => "inner",
        }
    }

    pub fn validate(&self, group: &GroupData) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenerator(msg));
        match self {
            AutoGen::Scale(a) => {
                if !group.validate_scaling(a)? {
                    return bad(format!("scale factor {a} does not preserve Gamma and T"));
                }
            }
            AutoGen::LoopShift(phi) => {
                if phi.images.len() != group.t_rank() {
                    return bad(format!("loop shift needs {} basis images", group.t_rank()));
                }
            }
            AutoGen::CharTwist { chi, r } => {
                if chi.images.len() != group.t_rank() {
                    return bad(format!("character needs {} basis images", group.t_rank()));
                }
                if r.is_zero() || chi.images.iter().any(Scalar::is_zero) {
                    return bad("character twist values must be nonzero".into());
                }
                if !group.field().contains(r) || chi.images.iter().any(|x| !group.field().contains(x)) {
                    return bad("character twist values must lie in the field".into());
                }
            }
            AutoGen::ZFlip(e) => {
                if *e != 1 && *e != -1 {
                    return bad(format!("flip sign must be 1 or -1, got {e}"));
                }
            }
            AutoGen::LoopScale(b) => {
                if b.is_zero() || !group.field().contains(b) {
                    return bad(format!("loop scale {b} must be a nonzero field element"));
                }
            }
            AutoGen::MShear(_) => {}
            AutoGen::Inner(x) => {
                if !in_maximal_ideal(x) {
                    return bad(format!("inner generator {x} is not in the maximal ideal"));
                }
            }
        }
        Ok(())
    }

    pub fn on_key(&self, group: &GroupData, key: &BasisKey) -> Element {
        match self {
            AutoGen::Scale(a) => {
                let g = &key.gamma / a;
                Element::term(a.clone(), key.with_gamma(g))
            }
            AutoGen::LoopShift(phi) => {
                Element::basis(key.with_loop(key.loop_degree + phi.eval(group, &key.gamma)))
            }
            AutoGen::CharTwist { chi, r } => {
                let x = chi.eval(group, &key.gamma);
                let c = match key.kind {
                    Kind::L => x,
                    Kind::M => &(&x * r) * r,
                    Kind::Y => &x * r,
                };
                Element::term(c, key.clone())
            }
            AutoGen::ZFlip(e) => Element::basis(key.with_loop(e * key.loop_degree)),
            AutoGen::LoopScale(b) => Element::term(b.pow(key.loop_degree), key.clone()),
            AutoGen::MShear(e) => {
                let mut out = Element::basis(key.clone());
                if key.kind == Kind::L {
                    for (k, c) in e.image(&key.gamma, key.loop_degree) {
                        out.add_term(BasisKey::m(key.gamma.clone(), k), &c);
                    }
                }
                out
            }
            AutoGen::Inner(x) => exp_ad(x, &Element::basis(key.clone())),
        }
    }

    pub fn inverse(&self) -> AutoGen {
        match self {
            AutoGen::Scale(a) => AutoGen::Scale(a.inv().expect("nonzero scale")),
            AutoGen::LoopShift(phi) => AutoGen::LoopShift(phi.neg()),
            AutoGen::CharTwist { chi, r } => {
                AutoGen::CharTwist { chi: chi.inverse(), r: r.inv().expect("nonzero r") }
            }
            AutoGen::ZFlip(e) => AutoGen::ZFlip(*e),
            AutoGen::LoopScale(b) => AutoGen::LoopScale(b.inv().expect("nonzero loop scale")),
            AutoGen::MShear(e) => AutoGen::MShear(e.neg()),
            AutoGen::Inner(x) => AutoGen::Inner(-x),
        }
    }
}

/// `y + [x,y] + [x,[x,y]]/2`, exact when `(ad x)^3 = 0`.
pub fn exp_ad(x: &Element, y: &Element) -> Element {
    let once = bracket(x, y);
    let twice = bracket(x, &once);
    let mut out = y.clone();
    out.add_scaled(&once, &Scalar::one());
    out.add_scaled(&twice, &Scalar::ratio(1, 2));
    out
}

/// `(ad x)^3 y`.
pub fn ad_cubed(x: &Element, y: &Element) -> Element {
    bracket(x, &bracket(x, &bracket(x, y)))
}
