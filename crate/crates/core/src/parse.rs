//! Text grammar for scalars, Laurent polynomials and elements.
//!
//! ```text
//! element := '0' | sign? term (sign term)*
//! term    := (coeff '*')? atom
//! atom    := ('L'|'M'|'Y') '(' scalar ',' int ')' | 'C' '(' int ')'
//! coeff   := '(' scalar ')' | part
//! scalar  := sign? part (sign part)*
//! part    := uint ('/' uint)? ('*' 'sqrt' uint)? | 'sqrt' uint
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{BasisKey, Element, Kind};
use crate::error::{Error, Result};
use crate::scalars::{GroupData, LaurentPoly, Scalar};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(s)
    }

    fn error<T>(&mut self, expected: &str) -> Result<T> {
        let found = match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        Err(Error::Parse { position: self.pos, expected: expected.to_string(), found })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.error("digit");
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = self.uint()?;
        let n = if neg { -n } else { n };
        i64::try_from(n).map_err(|_| Error::Parse {
            position: start,
            expected: "64-bit integer".into(),
            found: "out-of-range integer".into(),
        })
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat('+') {
            Some(false)
        } else if self.eat('-') {
            Some(true)
        } else {
            None
        }
    }

    fn sqrt(&mut self) -> Result<Scalar> {
        let start = self.pos;
        self.skip_ws();
        self.pos += "sqrt".len();
        let d = self.uint()?;
        let d = u32::try_from(&d).ok().filter(|d| *d >= 2 && crate::scalars::Field::quadratic(*d).is_ok());
        match d {
            Some(d) => Ok(Scalar::sqrt_of(d)),
            None => Err(Error::Parse {
                position: start,
                expected: "sqrt of a squarefree integer > 1".into(),
                found: "other radicand".into(),
            }),
        }
    }

    /// `uint ('/' uint)? ('*' 'sqrt' uint)? | 'sqrt' uint`.
    fn part(&mut self) -> Result<Scalar> {
        if self.starts_with("sqrt") {
            return self.sqrt();
        }
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return self.error("number");
        }
        let num = self.uint()?;
        let r = if self.eat('/') {
            let at = self.pos;
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::Parse { position: at, expected: "nonzero denominator".into(), found: "'0'".into() });
            }
            BigRational::new(num, den)
        } else {
            BigRational::from_integer(num)
        };
        let mut value = Scalar::from_rational(r);
        let save = self.pos;
        if self.eat('*') {
            if self.starts_with("sqrt") {
                value = &value * &self.sqrt()?;
            } else {
                self.pos = save;
            }
        }
        Ok(value)
    }

    fn scalar(&mut self) -> Result<Scalar> {
        if self.eat('(') {
            let v = self.scalar()?;
            self.expect(')')?;
            return Ok(v);
        }
        let neg = self.sign() == Some(true);
        let first = self.part()?;
        let mut total = if neg { -first } else { first };
        loop {
            let save = self.pos;
            match self.sign() {
                None => break,
                Some(neg) => {
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) && !self.starts_with("sqrt") {
                        self.pos = save;
                        break;
                    }
                    let p = self.part()?;
                    total = if neg { &total - &p } else { &total + &p };
                }
            }
        }
        Ok(total)
    }

    fn coeff(&mut self) -> Result<Scalar> {
        if self.eat('(') {
            let v = self.scalar()?;
            self.expect(')')?;
            Ok(v)
        } else {
            self.part()
        }
    }
}

enum Atom {
    Key(BasisKey),
    Central(i64),
}

fn atom(cur: &mut Cursor<'_>, group: &GroupData, allow_central: bool) -> Result<Atom> {
    let kind = match cur.peek() {
        Some('L') => Kind::L,
        Some('M') => Kind::M,
        Some('Y') => Kind::Y,
        Some('C') if allow_central => {
            cur.pos += 1;
            cur.expect('(')?;
            let k = cur.int()?;
            cur.expect(')')?;
            return Ok(Atom::Central(k));
        }
        _ => return cur.error(if allow_central { "'L', 'M', 'Y' or 'C'" } else { "'L', 'M' or 'Y'" }),
    };
    cur.pos += 1;
    cur.expect('(')?;
    let gamma = cur.scalar()?;
    cur.expect(',')?;
    let i = cur.int()?;
    cur.expect(')')?;
    Ok(Atom::Key(BasisKey::checked(group, kind, gamma, i)?))
}

fn term(cur: &mut Cursor<'_>, group: &GroupData, allow_central: bool) -> Result<(Scalar, Atom)> {
    let starts_coeff = cur.peek().is_some_and(|c| c.is_ascii_digit() || c == '(') || cur.starts_with("sqrt");
    if starts_coeff {
        let c = cur.coeff()?;
        cur.expect('*')?;
        Ok((c, atom(cur, group, allow_central)?))
    } else {
        Ok((Scalar::one(), atom(cur, group, allow_central)?))
    }
}

fn terms(text: &str, group: &GroupData, allow_central: bool) -> Result<Vec<(Scalar, Atom)>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.starts_with("0") {
        let save = cur.pos;
        cur.pos += 1;
        if cur.at_end() {
            return Ok(out);
        }
        cur.pos = save;
    }
    let mut neg = cur.sign() == Some(true);
    loop {
        let (c, a) = term(&mut cur, group, allow_central)?;
        out.push((if neg { -c } else { c }, a));
        match cur.sign() {
            Some(n) => neg = n,
            None => break,
        }
    }
    cur.finish()?;
    Ok(out)
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let mut cur = Cursor::new(text);
    let v = cur.scalar()?;
    cur.finish()?;
    Ok(v)
}

pub fn parse_int(text: &str) -> Result<i64> {
    let mut cur = Cursor::new(text);
    let v = cur.int()?;
    cur.finish()?;
    Ok(v)
}

/// Polynomials in `t`, e.g. `2*t^2 - t + 1 + 3*t^-1`.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    let mut cur = Cursor::new(text);
    let mut out = LaurentPoly::zero();
    let mut neg = cur.sign() == Some(true);
    loop {
        let starts_coeff = cur.peek().is_some_and(|c| c.is_ascii_digit() || c == '(') || cur.starts_with("sqrt");
        let (c, has_t) = if starts_coeff {
            let c = cur.coeff()?;
            let save = cur.pos;
            if cur.eat('*') {
                if cur.peek() == Some('t') {
                    (c, true)
                } else {
                    cur.pos = save;
                    return cur.error("'t'");
                }
            } else {
                (c, false)
            }
        } else if cur.peek() == Some('t') {
            (Scalar::one(), true)
        } else {
            return cur.error("number or 't'");
        };
        let exp = if has_t {
            cur.expect('t')?;
            if cur.eat('^') {
                if cur.eat('(') {
                    let e = cur.int()?;
                    cur.expect(')')?;
                    e
                } else {
                    cur.int()?
                }
            } else {
                1
            }
        } else {
            0
        };
        out.add_term(exp, &(if neg { -c } else { c }));
        match cur.sign() {
            Some(n) => neg = n,
            None => break,
        }
    }
    cur.finish()?;
    Ok(out)
}

/// A basis key such as `Y(1/2,-3)`, validated against the group.
pub fn parse_key(group: &GroupData, text: &str) -> Result<BasisKey> {
    let mut cur = Cursor::new(text);
    match atom(&mut cur, group, false)? {
        Atom::Key(k) => {
            cur.finish()?;
            Ok(k)
        }
        Atom::Central(_) => unreachable!("central atoms are not accepted here"),
    }
}

pub fn parse_element(group: &GroupData, text: &str) -> Result<Element> {
    let mut out = Element::zero();
    for (c, a) in terms(text, group, false)? {
        if let Atom::Key(k) = a {
            out.add_term(k, &c);
        }
    }
    Ok(out)
}

/// An element of the central extension: base part plus `C(k)` coefficients.
pub fn parse_extended(group: &GroupData, text: &str) -> Result<(Element, BTreeMap<i64, Scalar>)> {
    let mut base = Element::zero();
    let mut central: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (c, a) in terms(text, group, true)? {
        match a {
            Atom::Key(k) => base.add_term(k, &c),
            Atom::Central(k) => {
                let slot = central.entry(k).or_default();
                *slot += &c;
            }
        }
    }
    central.retain(|_, c| !c.is_zero());
    Ok((base, central))
}
