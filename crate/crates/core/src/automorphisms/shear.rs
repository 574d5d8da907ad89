use std::collections::{BTreeMap, BTreeSet};

use super::generators::MShearData;
use crate::linalg::RowReducer;
use crate::scalars::Scalar;

type Rows = BTreeMap<(Scalar, i64), BTreeMap<i64, Scalar>>;

/// `(u, v)` with `x = u α + v` for every `(α, x)`.
fn affine_through(points: &[(Scalar, Scalar)]) -> Option<(Scalar, Scalar)> {
    let (a1, x1) = points.first()?;
    let (u, v) = match points.iter().find(|(a, _)| a != a1) {
        Some((a2, x2)) => {
            let u = &(x2 - x1) / &(a2 - a1);
            let v = x1 - &(&u * a1);
            (u, v)
        }
        None => (Scalar::zero(), x1.clone()),
    };
    points.iter().all(|(a, x)| &(&u * a) + &v == *x).then_some((u, v))
}

/// Express a shear table as `e^k_{α,i} = u_{k-i} α + v_{k-i}` if it has that form on its domain.
pub fn fit_canonical(rows: &Rows) -> Option<MShearData> {
    let ds: BTreeSet<i64> = rows.iter().flat_map(|((_, i), row)| row.keys().map(move |k| k - i)).collect();
    let mut out = BTreeMap::new();
    for d in ds {
        let mut per_alpha: BTreeMap<&Scalar, Scalar> = BTreeMap::new();
        for ((alpha, i), row) in rows {
            let x = row.get(&(i + d)).cloned().unwrap_or_default();
            match per_alpha.get(alpha) {
                Some(y) if *y != x => return None,
                Some(_) => {}
                None => {
                    per_alpha.insert(alpha, x);
                }
            }
        }
        let points: Vec<(Scalar, Scalar)> = per_alpha.into_iter().map(|(a, x)| (a.clone(), x)).collect();
        out.insert(d, affine_through(&points)?);
    }
    Some(MShearData::canonical(out))
}

/// Solutions `E(α, i)` of `(β-α) E(α+β, i+j) = β E(β, j) - α E(α, i)`: the shear constraint
/// for one value of `d = k - i - j`, over the given group values and loop degrees. Vectors are
/// indexed `alpha_index * loops.len() + loop_index`.
pub fn shear_constraint_solutions(alphas: &[Scalar], loops: &[i64]) -> Vec<Vec<Scalar>> {
    let nl = loops.len();
    let idx = |a: &Scalar, i: i64| {
        let ia = alphas.iter().position(|x| x == a)?;
        let il = loops.iter().position(|x| *x == i)?;
        Some(ia * nl + il)
    };
    let mut red = RowReducer::new(alphas.len() * nl);
    for a in alphas {
        for b in alphas {
            for &i in loops {
                for &j in loops {
                    let Some(lhs) = idx(&(a + b), i + j) else { continue };
                    let mut row = vec![Scalar::zero(); alphas.len() * nl];
                    row[lhs] += &(b - a);
                    row[idx(b, j).expect("in range")] -= b;
                    row[idx(a, i).expect("in range")] += a;
                    red.push(row);
                }
            }
        }
    }
    red.nullspace()
}

/// Whether a solution vector of [`shear_constraint_solutions`] is loop-independent and affine in `α`.
pub fn is_canonical_solution(alphas: &[Scalar], loops: &[i64], v: &[Scalar]) -> bool {
    let nl = loops.len();
    let mut points = Vec::new();
    for (ia, a) in alphas.iter().enumerate() {
        let x = &v[ia * nl];
        if v[ia * nl..(ia + 1) * nl].iter().any(|y| y != x) {
            return false;
        }
        points.push((a.clone(), x.clone()));
    }
    affine_through(&points).is_some()
}
