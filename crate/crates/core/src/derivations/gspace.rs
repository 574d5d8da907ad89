use crate::linalg::RowReducer;
use crate::scalars::Scalar;

/// Scalar solutions of `(β-α) g_{α+β} = β g_β - α g_α` over a finite set of
/// group values (instances with `α, β, α+β` all in `domain`). Returns a basis
/// of the solution space as value vectors aligned with `domain`.
pub fn g_constraint_solutions(domain: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = domain.len();
    let index = |x: &Scalar| domain.iter().position(|y| y == x);
    let mut red = RowReducer::new(n);
    for (ia, a) in domain.iter().enumerate() {
        for (ib, b) in domain.iter().enumerate() {
            let Some(iab) = index(&(a + b)) else { continue };
            let mut row = vec![Scalar::zero(); n];
            row[iab] += &(b - a);
            row[ib] -= b;
            row[ia] += a;
            red.push(row);
        }
    }
    red.nullspace()
}

/// `(u, v)` with `values[k] = u * domain[k] + v`, if the values are affine.
pub fn affine_fit(domain: &[Scalar], values: &[Scalar]) -> Option<(Scalar, Scalar)> {
    let zero = domain.iter().position(Scalar::is_zero)?;
    let v = values[zero].clone();
    let (k, a) = domain.iter().enumerate().find(|(_, a)| !a.is_zero())?;
    let u = &(&values[k] - &v) / a;
    domain.iter().zip(values).all(|(a, x)| &(&u * a) + &v == *x).then_some((u, v))
}
