use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::algebra::{bracket, Element, Kind, Window};
use crate::error::Result;
use crate::parse::parse_extended;
use crate::scalars::text::{coeff_text, split_sign};
use crate::scalars::{GroupData, Scalar};

/// An element of `W ⊕ (C ⊗ F[t, t^-1])`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExtendedElement {
    pub base: Element,
    /// Coefficients of `C_k`, zeros pruned.
    pub central: BTreeMap<i64, Scalar>,
}

impl ExtendedElement {
    pub fn new(base: Element, central: BTreeMap<i64, Scalar>) -> Self {
        let central = central.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ExtendedElement { base, central }
    }

    pub fn from_base(base: Element) -> Self {
        ExtendedElement { base, central: BTreeMap::new() }
    }

    pub fn central_basis(k: i64) -> Self {
        ExtendedElement { base: Element::zero(), central: BTreeMap::from([(k, Scalar::one())]) }
    }

    pub fn parse(group: &GroupData, text: &str) -> Result<Self> {
        let (base, central) = parse_extended(group, text)?;
        Ok(ExtendedElement::new(base, central))
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.central.is_empty()
    }

    pub fn add(&self, other: &ExtendedElement) -> ExtendedElement {
        let mut central = self.central.clone();
        for (k, c) in &other.central {
            *central.entry(*k).or_default() += c;
        }
        ExtendedElement::new(&self.base + &other.base, central)
    }
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.central.is_empty() {
            return write!(f, "{}", self.base);
        }
        let mut first = self.base.is_zero();
        if !first {
            write!(f, "{}", self.base)?;
        }
        for (k, c) in &self.central {
            let (neg, mag) = split_sign(c);
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if let Some(ct) = coeff_text(&mag) {
                write!(f, "{ct}*")?;
            }
            write!(f, "C({k})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtendedElement({self})")
    }
}

/// Weights on the central generators: `[L_{α,i}, L_{-α,j}]` gains
/// `w(i+j) (α³ - α)/12 C_{i+j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralExtension {
    /// `w ≡ 1`.
    Universal,
    Classes(BTreeMap<i64, Scalar>),
}

/// The extension attached to the given class coefficients.
pub fn central_extend(classes: BTreeMap<i64, Scalar>) -> CentralExtension {
    CentralExtension::Classes(classes.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

impl CentralExtension {
    pub fn weight(&self, k: i64) -> Scalar {
        match self {
            CentralExtension::Universal => Scalar::one(),
            CentralExtension::Classes(m) => m.get(&k).cloned().unwrap_or_default(),
        }
    }

    /// Central part of `[x, y]` for base elements.
    fn central_part(&self, x: &Element, y: &Element) -> BTreeMap<i64, Scalar> {
        let twelve = Scalar::from_int(12);
        let mut out: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (a, ca) in x.terms().filter(|(k, _)| k.kind == Kind::L) {
            for (b, cb) in y.terms().filter(|(k, _)| k.kind == Kind::L) {
                if !(&a.gamma + &b.gamma).is_zero() {
                    continue;
                }
                let k = a.loop_degree + b.loop_degree;
                let w = self.weight(k);
                if w.is_zero() {
                    continue;
                }
                let al = &a.gamma;
                let v = &(&(&(al * al) * al) - al) / &twelve;
                *out.entry(k).or_default() += &(&(&w * &v) * &(ca * cb));
            }
        }
        out
    }

    /// The bracket of the extension; the `C_k` are central.
    pub fn bracket(&self, x: &ExtendedElement, y: &ExtendedElement) -> ExtendedElement {
        ExtendedElement::new(bracket(&x.base, &y.base), self.central_part(&x.base, &y.base))
    }

    pub fn jacobi_defect(&self, x: &ExtendedElement, y: &ExtendedElement, z: &ExtendedElement) -> ExtendedElement {
        self.bracket(x, &self.bracket(y, z))
            .add(&self.bracket(y, &self.bracket(z, x)))
            .add(&self.bracket(z, &self.bracket(x, y)))
    }

    /// Jacobi on every unordered triple of window keys together with `C_k`
    /// for `|k| <= loop_bound`; returns the failing triples with their defects.
    pub fn jacobi_sweep(&self, group: &GroupData, window: &Window) -> Vec<String> {
        let b = i64::from(window.loop_bound);
        let mut elems: Vec<(String, ExtendedElement)> = window
            .keys(group)
            .into_iter()
            .map(|k| (k.to_string(), ExtendedElement::from_base(Element::basis(k))))
            .collect();
        elems.extend((-b..=b).map(|k| (format!("C({k})"), ExtendedElement::central_basis(k))));
        let n = elems.len();
        let mut out: Vec<String> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let elems = &elems;
                (i..n).flat_map(move |j| {
                    (j..n).filter_map(move |k| {
                        let d = self.jacobi_defect(&elems[i].1, &elems[j].1, &elems[k].1);
                        (!d.is_zero()).then(|| format!("({}, {}, {}) -> {d}", elems[i].0, elems[j].0, elems[k].0))
                    })
                })
            })
            .collect();
        out.sort();
        out
    }
}
