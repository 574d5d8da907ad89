use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{bracket_keys, BasisKey, Element, Kind, Window, Witness};
use crate::error::{Error, Result};
use crate::scalars::{GroupData, Scalar};

/// A linear map `W -> F`, given on basis keys.
#[derive(Clone)]
pub enum LinearFunctional {
    /// Zero off the listed keys.
    Table(BTreeMap<BasisKey, Scalar>),
    Fn(Arc<dyn Fn(&BasisKey) -> Scalar + Send + Sync>),
}

impl LinearFunctional {
    pub fn zero() -> Self {
        LinearFunctional::Table(BTreeMap::new())
    }

    pub fn table<I: IntoIterator<Item = (BasisKey, Scalar)>>(entries: I) -> Self {
        LinearFunctional::Table(entries.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(&BasisKey) -> Scalar + Send + Sync + 'static,
    {
        LinearFunctional::Fn(Arc::new(f))
    }

    pub fn on_key(&self, key: &BasisKey) -> Scalar {
        match self {
            LinearFunctional::Table(t) => t.get(key).cloned().unwrap_or_default(),
            LinearFunctional::Fn(f) => f(key),
        }
    }

    pub fn eval(&self, x: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in x.terms() {
            let v = self.on_key(k);
            if !v.is_zero() {
                acc += &(c * &v);
            }
        }
        acc
    }

    /// Nonzero values on the given keys.
    pub fn restrict(&self, keys: &[BasisKey]) -> BTreeMap<BasisKey, Scalar> {
        keys.iter()
            .filter_map(|k| {
                let v = self.on_key(k);
                (!v.is_zero()).then(|| (k.clone(), v))
            })
            .collect()
    }
}

impl fmt::Debug for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearFunctional::Table(t) => f.debug_tuple("Table").field(t).finish(),
            LinearFunctional::Fn(_) => f.write_str("Fn(..)"),
        }
    }
}

/// `φ_k(L_{α,i}, L_{β,j}) = δ_{α+β,0} δ_{i+j,k} (α³ - α)/12`, zero on other pairs.
pub fn phi_k_value(k: i64, x: &BasisKey, y: &BasisKey) -> Scalar {
    if x.kind != Kind::L || y.kind != Kind::L || x.loop_degree + y.loop_degree != k {
        return Scalar::zero();
    }
    if !(&x.gamma + &y.gamma).is_zero() {
        return Scalar::zero();
    }
    let a = &x.gamma;
    &(&(&(a * a) * a) - a) / &Scalar::from_int(12)
}

/// An alternating bilinear form on `W`.
#[derive(Clone, Debug)]
pub enum Cocycle {
    /// `Σ c_k φ_k + ψ_f`.
    Structured { classes: BTreeMap<i64, Scalar>, f: LinearFunctional },
    /// Explicit values on pairs of window keys, zero elsewhere. Only the
    /// orientation `x < y` is stored.
    Table { window: Window, entries: BTreeMap<(BasisKey, BasisKey), Scalar> },
}

impl Cocycle {
    pub fn phi_k(k: i64) -> Self {
        Cocycle::Structured { classes: BTreeMap::from([(k, Scalar::one())]), f: LinearFunctional::zero() }
    }

    pub fn coboundary(f: LinearFunctional) -> Self {
        Cocycle::Structured { classes: BTreeMap::new(), f }
    }

    pub fn structured(classes: BTreeMap<i64, Scalar>, f: LinearFunctional) -> Self {
        let classes = classes.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Cocycle::Structured { classes, f }
    }

    /// Build a table from entries in either orientation. Both orientations of a
    /// pair must agree up to sign and diagonal entries must vanish.
    pub fn table<I>(window: Window, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisKey, BasisKey, Scalar)>,
    {
        let mut out: BTreeMap<(BasisKey, BasisKey), Scalar> = BTreeMap::new();
        for (x, y, c) in entries {
            if x == y {
                if !c.is_zero() {
                    return Err(Error::NotACocycle { witness: format!("({x}, {x})"), detail: "antisymmetry".into() });
                }
                continue;
            }
            let (key, c) = if x < y { ((x, y), c) } else { ((y, x), -c) };
            if let Some(old) = out.get(&key) {
                if old != &c {
                    return Err(Error::NotACocycle {
                        witness: format!("({}, {})", key.0, key.1),
                        detail: "antisymmetry".into(),
                    });
                }
            }
            out.insert(key, c);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Cocycle::Table { window, entries: out })
    }

    /// Whether values involving this key are known.
    pub fn defined_at(&self, group: &GroupData, key: &BasisKey) -> bool {
        match self {
            Cocycle::Structured { .. } => true,
            Cocycle::Table { window, .. } => window.contains(group, key),
        }
    }

    pub fn on_keys(&self, x: &BasisKey, y: &BasisKey) -> Scalar {
        match self {
            Cocycle::Structured { classes, f } => {
                let mut v = Scalar::zero();
                for (k, c) in classes {
                    let p = phi_k_value(*k, x, y);
                    if !p.is_zero() {
                        v += &(c * &p);
                    }
                }
                if let Some((c, key)) = bracket_keys(x, y) {
                    v += &(&c * &f.on_key(&key));
                }
                v
            }
            Cocycle::Table { entries, .. } => {
                if x < y {
                    entries.get(&(x.clone(), y.clone())).cloned().unwrap_or_default()
                } else {
                    entries.get(&(y.clone(), x.clone())).map(|c| -c).unwrap_or_default()
                }
            }
        }
    }

    pub fn eval(&self, x: &Element, y: &Element) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let v = self.on_keys(a, b);
                if !v.is_zero() {
                    acc += &(&(ca * cb) * &v);
                }
            }
        }
        acc
    }

    /// Subtract `Σ c_k φ_k + ψ_f` (used to form residuals).
    pub(crate) fn residual_at(
        &self,
        x: &BasisKey,
        y: &BasisKey,
        classes: &BTreeMap<i64, Scalar>,
        f: &LinearFunctional,
    ) -> Scalar {
        let mut v = self.on_keys(x, y);
        for (k, c) in classes {
            let p = phi_k_value(*k, x, y);
            if !p.is_zero() {
                v -= &(c * &p);
            }
        }
        if let Some((c, key)) = bracket_keys(x, y) {
            v -= &(&c * &f.on_key(&key));
        }
        v
    }
}

/// `ψ(x,[y,z]) + ψ(y,[z,x]) + ψ(z,[x,y])`.
pub fn cocycle_defect(psi: &Cocycle, x: &Element, y: &Element, z: &Element) -> Scalar {
    use crate::algebra::bracket;
    let mut acc = psi.eval(x, &bracket(y, z));
    acc += &psi.eval(y, &bracket(z, x));
    acc += &psi.eval(z, &bracket(x, y));
    acc
}

fn key_defect(psi: &Cocycle, keys: [&BasisKey; 3]) -> Scalar {
    let [x, y, z] = keys;
    let mut acc = Scalar::zero();
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        if let Some((coef, k)) = bracket_keys(b, c) {
            let v = psi.on_keys(a, &k);
            if !v.is_zero() {
                acc += &(&coef * &v);
            }
        }
    }
    acc
}

/// Triples whose brackets stay where the form is known.
fn evaluable(psi: &Cocycle, group: &GroupData, keys: [&BasisKey; 3]) -> bool {
    let [x, y, z] = keys;
    [(y, z), (z, x), (x, y)]
        .iter()
        .all(|(a, b)| bracket_keys(a, b).is_none_or(|(_, k)| psi.defined_at(group, &k)))
}

/// Antisymmetry on window pairs, then the cocycle identity on every unordered
/// window triple (the defect of an alternating form is alternating). For a
/// table, triples whose brackets leave its window are skipped.
pub fn cocycle_sweep(psi: &Cocycle, group: &GroupData, window: &Window) -> Vec<Witness> {
    let keys = window.keys(group);
    let n = keys.len();
    let mut out: Vec<Witness> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let keys = &keys;
            (i..n).filter_map(move |j| {
                let s = &psi.on_keys(&keys[i], &keys[j]) + &psi.on_keys(&keys[j], &keys[i]);
                (!s.is_zero())
                    .then(|| Witness { keys: vec![keys[i].clone(), keys[j].clone()], value: format!("antisymmetry {s}") })
            })
        })
        .collect();
    if !out.is_empty() {
        out.sort_by(|a, b| a.keys.cmp(&b.keys));
        return out;
    }
    let mut out: Vec<Witness> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let keys = &keys;
            (i..n).flat_map(move |j| {
                (j..n).filter_map(move |k| {
                    let t = [&keys[i], &keys[j], &keys[k]];
                    if !evaluable(psi, group, t) {
                        return None;
                    }
                    let d = key_defect(psi, t);
                    (!d.is_zero()).then(|| Witness { keys: t.iter().map(|k| (*k).clone()).collect(), value: d.to_string() })
                })
            })
        })
        .collect();
    out.sort_by(|a, b| a.keys.cmp(&b.keys));
    out
}
