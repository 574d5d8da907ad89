//! Exact scalars in `Q` or a real quadratic field `Q(sqrt d)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The scalar field backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// `Q(sqrt d)` for a squarefree `d > 1`.
    Quadratic(u32),
}

impl Field {
    pub fn quadratic(d: u32) -> Result<Field> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::Config(format!("{d} is not a squarefree integer > 1")));
        }
        Ok(Field::Quadratic(d))
    }

    pub fn radicand(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Quadratic(d) => d,
        }
    }

    /// Dimension over `Q`.
    pub fn degree(self) -> usize {
        match self {
            Field::Rational => 1,
            Field::Quadratic(_) => 2,
        }
    }

    pub fn contains(self, x: &Scalar) -> bool {
        x.radicand == 0 || x.radicand == self.radicand()
    }
}

fn is_squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `rational + irrational * sqrt(radicand)`.
///
/// The radicand is 0 exactly when the irrational part vanishes, so equal
/// numbers have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: BigRational,
    irrational: BigRational,
    radicand: u32,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar { rational: r, irrational: BigRational::zero(), radicand: 0 }
    }

    /// `p + q sqrt d`. `d` must be a squarefree integer > 1 when `q != 0`.
    pub fn quadratic(p: BigRational, q: BigRational, d: u32) -> Self {
        if q.is_zero() {
            return Scalar::from_rational(p);
        }
        debug_assert!(d >= 2 && is_squarefree(d));
        Scalar { rational: p, irrational: q, radicand: d }
    }

    /// `sqrt d` itself.
    pub fn sqrt_of(d: u32) -> Self {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irrational
    }

    pub fn radicand(&self) -> u32 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.irrational.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irrational.is_zero()
    }

    /// The integer value, if this scalar is an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.rational.is_integer()).then(|| self.rational.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Sign of the real embedding with `sqrt d > 0`.
    pub fn signum(&self) -> i32 {
        let sp = sign(&self.rational);
        let sq = sign(&self.irrational);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &self.rational * &self.rational;
        let q2d = &self.irrational * &self.irrational * BigRational::from_integer(self.radicand.into());
        if p2 > q2d {
            sp
        } else {
            sq
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `p - q sqrt d`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { rational: self.rational.clone(), irrational: -&self.irrational, radicand: self.radicand }
    }

    /// Field norm to `Q`.
    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(self.radicand.into());
        &self.rational * &self.rational - &self.irrational * &self.irrational * d
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Scalar::quadratic(&c.rational / &n, &c.irrational / &n, self.radicand))
    }

    pub fn pow(&self, exp: i64) -> Scalar {
        let base = if exp < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// An exact square root inside `field`, choosing the positive one.
    pub fn sqrt_in(&self, field: Field) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let root = match (self.is_rational(), field) {
            (true, _) => {
                if let Some(r) = rational_sqrt(&self.rational) {
                    Some(Scalar::from_rational(r))
                } else if let Field::Quadratic(d) = field {
                    // y sqrt d with d y^2 = p
                    let y2 = &self.rational / BigRational::from_integer(d.into());
                    rational_sqrt(&y2).map(|y| Scalar::quadratic(BigRational::zero(), y, d))
                } else {
                    None
                }
            }
            (false, Field::Rational) => None,
            (false, Field::Quadratic(d)) => {
                // (x + y sqrt d)^2 = p + q sqrt d with x, y != 0:
                // x^2 = (p +- sqrt(N)) / 2 where N = p^2 - d q^2.
                let n = rational_sqrt(&self.norm())?;
                let two = BigRational::from_integer(2.into());
                [(&self.rational + &n) / &two, (&self.rational - &n) / &two].into_iter().find_map(|x2| {
                    let x = rational_sqrt(&x2)?;
                    if x.is_zero() {
                        return None;
                    }
                    let y = &self.irrational / (&two * &x);
                    let cand = Scalar::quadratic(x, y, d);
                    (&cand * &cand == *self).then_some(cand)
                })
            }
        }?;
        Some(if root.signum() < 0 { -root } else { root })
    }

    fn combine_radicand(&self, other: &Scalar) -> u32 {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => d,
            (a, b) => {
                assert_eq!(a, b, "scalars from different quadratic fields");
                a
            }
        }
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = bigint_sqrt(r.numer())?;
    let d = bigint_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.radicand == other.radicand || self.radicand == 0 || other.radicand == 0 {
            (self - other).signum().cmp(&0)
        } else {
            // Different fields never meet in one computation; keep Ord total anyway.
            self.radicand.cmp(&other.radicand)
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.combine_radicand(rhs);
        Scalar::quadratic(&self.rational + &rhs.rational, &self.irrational + &rhs.irrational, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.combine_radicand(rhs);
        Scalar::quadratic(&self.rational - &rhs.rational, &self.irrational - &rhs.irrational, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_rational() && rhs.is_rational() {
            return Scalar::from_rational(&self.rational * &rhs.rational);
        }
        let d = self.combine_radicand(rhs);
        let dq = BigRational::from_integer(d.into());
        let p = &self.rational * &rhs.rational + &self.irrational * &rhs.irrational * dq;
        let q = &self.rational * &rhs.irrational + &self.irrational * &rhs.rational;
        Scalar::quadratic(p, q, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rational: -&self.rational, irrational: -&self.irrational, radicand: self.radicand }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical exact text: `3/2`, `-sqrt2`, `1+2*sqrt2`, `-1/2-3/2*sqrt5`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irrational.is_zero() {
            return f.write_str(&fmt_rational(&self.rational));
        }
        let q = &self.irrational;
        let mut out = String::new();
        if !self.rational.is_zero() {
            out.push_str(&fmt_rational(&self.rational));
            if q.is_positive() {
                out.push('+');
            }
        }
        if q.is_negative() {
            out.push('-');
        }
        let qa = q.abs();
        if !qa.is_one() {
            out.push_str(&fmt_rational(&qa));
            out.push('*');
        }
        out.push_str("sqrt");
        out.push_str(&self.radicand.to_string());
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Helper for integer gcd on big integers used by the lattice code.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2(p: i64, q: i64) -> Scalar {
        Scalar::quadratic(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()), 2)
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::ratio(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::ratio(-4, 2).to_string(), "-2");
        assert_eq!(q2(1, 2).to_string(), "1+2*sqrt2");
        assert_eq!(q2(0, -1).to_string(), "-sqrt2");
        assert_eq!(q2(1, -1).to_string(), "1-sqrt2");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn quadratic_inverse_and_norm() {
        let u = q2(1, 1);
        let inv = u.inv().unwrap();
        assert_eq!(inv, q2(-1, 1));
        assert_eq!(&u * &inv, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn sign_of_real_embedding() {
        assert_eq!(q2(1, -1).signum(), -1);
        assert_eq!(q2(-1, 1).signum(), 1);
        assert_eq!(q2(3, -2).signum(), 1);
        assert!(q2(1, 0) < q2(0, 1));
    }

    #[test]
    fn square_roots() {
        assert_eq!(Scalar::from_int(9).sqrt_in(Field::Rational), Some(Scalar::from_int(3)));
        assert_eq!(Scalar::from_int(2).sqrt_in(Field::Rational), None);
        assert_eq!(Scalar::from_int(2).sqrt_in(Field::Quadratic(2)), Some(q2(0, 1)));
        let s = q2(3, 2); // (1+sqrt2)^2
        assert_eq!(s.sqrt_in(Field::Quadratic(2)), Some(q2(1, 1)));
        assert_eq!(Scalar::from_int(-1).sqrt_in(Field::Quadratic(2)), None);
    }

    #[test]
    fn powers() {
        assert_eq!(Scalar::from_int(3).pow(-2), Scalar::ratio(1, 9));
        assert_eq!(q2(1, 1).pow(2), q2(3, 2));
        assert_eq!(Scalar::from_int(5).pow(0), Scalar::one());
    }

    #[test]
    fn squarefree_check() {
        assert!(Field::quadratic(2).is_ok());
        assert!(Field::quadratic(8).is_err());
        assert!(Field::quadratic(1).is_err());
    }
}
