use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::cocycle::{cocycle_sweep, Cocycle, LinearFunctional};
use crate::algebra::{bracket_keys, BasisKey, Kind, Window};
use crate::error::{Error, Result};
use crate::scalars::{GroupData, Scalar};

/// One nonzero entry of `φ - ψ_f - Σ c_k φ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualEntry {
    pub x: BasisKey,
    pub y: BasisKey,
    pub value: Scalar,
    /// Either key sits on the window edge: a truncation suspect rather than a
    /// genuine violation.
    pub on_boundary: bool,
}

impl ResidualEntry {
    /// Component label such as `L-M`, kinds in basis order.
    pub fn component(&self) -> String {
        let (a, b) = if self.x.kind <= self.y.kind { (self.x.kind, self.y.kind) } else { (self.y.kind, self.x.kind) };
        format!("{}-{}", a.symbol(), b.symbol())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResidualReport {
    pub entries: Vec<ResidualEntry>,
    /// Pairs whose bracket leaves the domain of a table cocycle.
    pub skipped: usize,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn interior(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter().filter(|e| !e.on_boundary)
    }

    /// Nonzero entries per component; after the coboundary is removed every
    /// component other than `L-L` must vanish identically.
    pub fn by_component(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.component()).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub f: LinearFunctional,
    pub classes: BTreeMap<i64, Scalar>,
    pub pivot: Scalar,
    /// Second pivot and the loop degrees where its coefficients disagree.
    pub cross_check: Option<(Scalar, Vec<i64>)>,
    pub residual: ResidualReport,
}

impl Reduction {
    pub fn passes(&self) -> bool {
        self.residual.is_zero() && self.cross_check.as_ref().is_none_or(|(_, bad)| bad.is_empty())
    }
}

/// The normalizing functional: `f` read off `φ` against `L_{0,0}` and `L_{2s,0}`.
fn normalizer(phi: &Cocycle, s: &Scalar) -> impl Fn(&BasisKey) -> Scalar + Send + Sync + Clone + 'static {
    let phi = phi.clone();
    let s = s.clone();
    move |key: &BasisKey| {
        let zero = Scalar::zero();
        let two_s = &s + &s;
        match key.kind {
            Kind::L | Kind::M if key.gamma.is_zero() => {
                let partner = BasisKey::new(key.kind, -&two_s, key.loop_degree);
                let v = phi.on_keys(&BasisKey::l(two_s.clone(), 0), &partner);
                // [L_{2s,0}, L_{-2s,i}] = -4s L_{0,i}, [L_{2s,0}, M_{-2s,i}] = -2s M_{0,i}
                let den = if key.kind == Kind::L { &Scalar::from_int(-4) * &s } else { -&two_s };
                &v / &den
            }
            _ => &phi.on_keys(&BasisKey::l(zero, 0), key) / &key.gamma,
        }
    }
}

/// `Σ_k c_k ν_k` normalization: with `φ(L_{2s,0}, L_{-2s,·})` forced to zero the
/// Witt part reads `c (α³ - 4s²α)/12`.
fn extract(
    phi: &Cocycle,
    f: &(impl Fn(&BasisKey) -> Scalar + ?Sized),
    s: &Scalar,
    pivot: &Scalar,
    loops: &[i64],
) -> BTreeMap<i64, Scalar> {
    let a = pivot;
    let den = &(&(&(a * a) * a) - &(&(&Scalar::from_int(4) * &(s * s)) * a)) / &Scalar::from_int(12);
    loops
        .iter()
        .filter_map(|&k| {
            let x = BasisKey::l(a.clone(), 0);
            let y = BasisKey::l(-a, k);
            let mut v = phi.on_keys(&x, &y);
            if let Some((c, key)) = bracket_keys(&x, &y) {
                v -= &(&c * &f(&key));
            }
            let c = &v / &den;
            (!c.is_zero()).then_some((k, c))
        })
        .collect()
}

fn admissible(s: &Scalar, a: &Scalar) -> bool {
    let two_s = s + s;
    !a.is_zero() && a != &two_s && a != &-&two_s
}

/// Reduce `φ` to `Σ c_k φ_k + ψ_f` and report the residual on every window pair.
pub fn reduce(phi: &Cocycle, group: &GroupData, window: &Window) -> Result<Reduction> {
    let s = group.s().clone();
    let is_table = matches!(phi, Cocycle::Table { .. });
    if is_table {
        if let Some(w) = cocycle_sweep(phi, group, window).into_iter().next() {
            let witness = w.keys.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", ");
            return Err(Error::NotACocycle { witness: format!("({witness})"), detail: format!("defect {}", w.value) });
        }
    }

    let candidates = group.positive_gamma_elements(i64::from(window.gamma_height).max(4) + 2);
    let mut pivots = candidates.into_iter().filter(|a| admissible(&s, a)).filter(|a| {
        !is_table || phi.defined_at(group, &BasisKey::l(a.clone(), 0))
    });
    let pivot = pivots.next().ok_or_else(|| {
        Error::WindowTooSmall("no admissible pivot L(α,0) with α ∉ {0, ±2s} inside the window".into())
    })?;
    let second = pivots.next();

    let base_f = normalizer(phi, &s);
    let b = i64::from(window.loop_bound);
    let reach = if is_table { b } else { 2 * b };
    let loops: Vec<i64> = (-reach..=reach).collect();
    let classes = extract(phi, &base_f, &s, &pivot, &loops);
    let cross_check = second.map(|p| {
        let other = extract(phi, &base_f, &s, &p, &loops);
        let bad = loops.iter().copied().filter(|k| classes.get(k) != other.get(k)).collect();
        (p, bad)
    });

    // ν_k = φ_k - ψ_{h_k} with h_k(L_{0,k}) = (1 - 4s²)/24, so fold that into f.
    let shift = &(&Scalar::from_int(4) * &(&s * &s) - &Scalar::one()) / &Scalar::from_int(24);
    let adjust: BTreeMap<i64, Scalar> = classes.iter().map(|(k, c)| (*k, c * &shift)).collect();
    let f_final = {
        let base_f = base_f.clone();
        let adjust = Arc::new(adjust);
        move |key: &BasisKey| {
            let mut v = base_f(key);
            if key.kind == Kind::L && key.gamma.is_zero() {
                if let Some(a) = adjust.get(&key.loop_degree) {
                    v += a;
                }
            }
            v
        }
    };

    let keys = window.keys(group);
    let f = if is_table {
        LinearFunctional::table(keys.iter().map(|k| (k.clone(), f_final(k))))
    } else {
        LinearFunctional::from_fn(f_final)
    };

    let n = keys.len();
    let results: Vec<Option<ResidualEntry>> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (keys, f, classes) = (&keys, &f, &classes);
            (i + 1..n).map(move |j| {
                let (x, y) = (&keys[i], &keys[j]);
                if let Some((_, k)) = bracket_keys(x, y) {
                    if !phi.defined_at(group, &k) {
                        return None;
                    }
                }
                let v = phi.residual_at(x, y, classes, f);
                Some(ResidualEntry {
                    x: x.clone(),
                    y: y.clone(),
                    on_boundary: window.on_boundary(group, x) || window.on_boundary(group, y),
                    value: v,
                })
            })
        })
        .collect();
    let mut residual = ResidualReport::default();
    for r in results {
        match r {
            None => residual.skipped += 1,
            Some(e) if !e.value.is_zero() => residual.entries.push(e),
            Some(_) => {}
        }
    }
    Ok(Reduction { f, classes, pivot, cross_check, residual })
}
