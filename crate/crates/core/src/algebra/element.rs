use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::key::{bracket_keys, BasisKey, Kind};
use crate::scalars::text::{coeff_text, split_sign};
use crate::scalars::{LaurentPoly, Scalar};

/// A finite linear combination of basis vectors with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<BasisKey, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(key: BasisKey) -> Self {
        Element::term(Scalar::one(), key)
    }

    pub fn term(c: Scalar, key: BasisKey) -> Self {
        let mut e = Element::zero();
        e.add_term(key, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisKey, Scalar)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (k, c) in terms {
            e.add_term(k, &c);
        }
        e
    }

    /// `X_gamma ⊗ (p(t) t^i)`, i.e. `sum_k c_k X_{gamma, i+k}`.
    pub fn from_laurent(key: &BasisKey, p: &LaurentPoly) -> Self {
        Element::from_terms(p.terms().map(|(k, c)| (key.with_loop(key.loop_degree + k), c.clone())))
    }

    pub fn add_term(&mut self, key: BasisKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BasisKey> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }

    /// Terms whose key satisfies `pred`.
    pub fn filter<F: Fn(&BasisKey) -> bool>(&self, pred: F) -> Element {
        Element { terms: self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }

    pub fn part(&self, kind: Kind) -> Element {
        self.filter(|k| k.kind == kind)
    }

    /// Laurent data of the `kind`-part at group index `gamma`, relative to loop degree `base`:
    /// `sum_k c_k X_{gamma, base + k}` becomes `sum_k c_k t^k`.
    pub fn laurent_at(&self, kind: Kind, gamma: &Scalar, base: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.kind == kind && &k.gamma == gamma)
                .map(|(k, c)| (k.loop_degree - base, c.clone())),
        )
    }

    /// Apply a linear map given on basis vectors.
    pub fn map_linear<F: Fn(&BasisKey) -> Element>(&self, f: F) -> Element {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

/// The Lie bracket, extended bilinearly from the defining relations.
pub fn bracket(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if let Some((c, key)) = bracket_keys(a, b) {
                out.add_term(key, &(&c * &(ca * cb)));
            }
        }
    }
    out
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl std::iter::Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Element {
        iter.fold(Element::zero(), |acc, x| acc + x)
    }
}

/// Canonical text, e.g. `L(2,5) - M(3,5)` or `1/9*Y(1/2,-2)`; zero prints as `0`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if let Some(ct) = coeff_text(&mag) {
                write!(f, "{ct}*")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}
