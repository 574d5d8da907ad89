//! Linear maps given by their action on basis vectors.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{BasisKey, Element};
use crate::scalars::Scalar;

type Action = dyn Fn(&BasisKey) -> Element + Send + Sync;

/// A linear map of the algebra, determined by the images of basis keys,
/// optionally tagged with a degree for the `T`-grading.
#[derive(Clone)]
pub struct Operator {
    action: Arc<Action>,
    degree: Option<Scalar>,
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.degree {
            Some(d) => write!(f, "Operator(degree {d})"),
            None => f.write_str("Operator"),
        }
    }
}

impl Operator {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(&BasisKey) -> Element + Send + Sync + 'static,
    {
        Operator { action: Arc::new(f), degree: None }
    }

    pub fn with_degree(mut self, degree: Scalar) -> Self {
        self.degree = Some(degree);
        self
    }

    pub fn without_degree(mut self) -> Self {
        self.degree = None;
        self
    }

    pub fn zero() -> Self {
        Operator::new(|_| Element::zero())
    }

    pub fn identity() -> Self {
        Operator::new(|k| Element::basis(k.clone())).with_degree(Scalar::zero())
    }

    pub fn degree(&self) -> Option<&Scalar> {
        self.degree.as_ref()
    }

    pub fn on_key(&self, key: &BasisKey) -> Element {
        (self.action)(key)
    }

    pub fn apply(&self, x: &Element) -> Element {
        x.map_linear(|k| self.on_key(k))
    }

    pub fn add(&self, other: &Operator) -> Operator {
        let (a, b) = (self.clone(), other.clone());
        let degree = if self.degree == other.degree { self.degree.clone() } else { None };
        Operator { action: Arc::new(move |k| a.on_key(k) + b.on_key(k)), degree }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Operator {
        let (a, c) = (self.clone(), c.clone());
        Operator { action: Arc::new(move |k| a.on_key(k).scale(&c)), degree: self.degree.clone() }
    }

    /// `next ∘ self`: apply `self` first.
    pub fn then(&self, next: &Operator) -> Operator {
        let (a, b) = (self.clone(), next.clone());
        let degree = match (&self.degree, &next.degree) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        Operator { action: Arc::new(move |k| b.apply(&a.on_key(k))), degree }
    }

    /// First key (in the given order) where the two operators differ.
    pub fn first_difference(&self, other: &Operator, keys: &[BasisKey]) -> Option<(BasisKey, Element)> {
        keys.par_iter()
            .find_map_first(|k| {
                let d = self.on_key(k) - other.on_key(k);
                (!d.is_zero()).then(|| (k.clone(), d))
            })
    }

    pub fn agrees_on(&self, other: &Operator, keys: &[BasisKey]) -> bool {
        self.first_difference(other, keys).is_none()
    }

    /// Sum of a family of operators; the empty sum is the zero map.
    pub fn sum<'a, I: IntoIterator<Item = &'a Operator>>(ops: I) -> Operator {
        ops.into_iter().fold(None, |acc: Option<Operator>, op| Some(match acc {
            None => op.clone(),
            Some(a) => a.add(op),
        }))
        .unwrap_or_else(Operator::zero)
    }
}
