//! Shared pieces of the exact text format.

use super::Scalar;

/// Pull the sign out of a coefficient when that gives an unambiguous term.
/// Mixed quadratic scalars like `1-sqrt2` keep their sign inside.
pub(crate) fn split_sign(c: &Scalar) -> (bool, Scalar) {
    let pure = c.is_rational() || c.rational_part() == &num_rational::BigRational::from_integer(0.into());
    if pure && c.signum() < 0 {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// Text of a multiplicative coefficient, `None` for 1.
pub(crate) fn coeff_text(c: &Scalar) -> Option<String> {
    if c.is_one() {
        None
    } else {
        Some(atom_text(c))
    }
}

/// A scalar as a standalone term: mixed quadratic values get parentheses.
pub(crate) fn atom_text(c: &Scalar) -> String {
    if !c.is_rational() && !num_traits::Zero::is_zero(c.rational_part()) {
        format!("({c})")
    } else {
        c.to_string()
    }
}
