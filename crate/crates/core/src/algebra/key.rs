use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{GroupData, IndexSet, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    L,
    M,
    Y,
}

impl Kind {
    pub fn symbol(self) -> char {
        match self {
            Kind::L => 'L',
            Kind::M => 'M',
            Kind::Y => 'Y',
        }
    }

    /// Index set the group value of this kind must lie in.
    pub fn index_set(self) -> IndexSet {
        match self {
            Kind::L | Kind::M => IndexSet::Gamma,
            Kind::Y => IndexSet::Gamma1,
        }
    }
}

/// `X_{gamma, i} = X_gamma ⊗ t^i`. Y keys carry the absolute index in `Gamma_1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisKey {
    pub kind: Kind,
    pub gamma: Scalar,
    pub loop_degree: i64,
}

impl BasisKey {
    /// Unchecked constructor; see [`BasisKey::checked`].
    pub fn new(kind: Kind, gamma: Scalar, loop_degree: i64) -> Self {
        BasisKey { kind, gamma, loop_degree }
    }

    /// A key whose group index is validated against `group`.
    pub fn checked(group: &GroupData, kind: Kind, gamma: Scalar, loop_degree: i64) -> Result<Self> {
        let set = kind.index_set();
        if !group.member(&gamma, set) {
            return Err(Error::Membership {
                kind: kind.symbol(),
                gamma: gamma.to_string(),
                set: match set {
                    IndexSet::Gamma => "Γ",
                    IndexSet::Gamma1 => "Γ₁",
                    IndexSet::T => "T",
                },
            });
        }
        Ok(BasisKey { kind, gamma, loop_degree })
    }

    pub fn l(gamma: Scalar, i: i64) -> Self {
        BasisKey::new(Kind::L, gamma, i)
    }

    pub fn m(gamma: Scalar, i: i64) -> Self {
        BasisKey::new(Kind::M, gamma, i)
    }

    pub fn y(gamma: Scalar, i: i64) -> Self {
        BasisKey::new(Kind::Y, gamma, i)
    }

    /// `ad L_{0,0}`-eigenvalue.
    pub fn weight(&self) -> &Scalar {
        &self.gamma
    }

    pub fn with_loop(&self, loop_degree: i64) -> Self {
        BasisKey { kind: self.kind, gamma: self.gamma.clone(), loop_degree }
    }

    pub fn with_gamma(&self, gamma: Scalar) -> Self {
        BasisKey { kind: self.kind, gamma, loop_degree: self.loop_degree }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind.symbol(), self.gamma, self.loop_degree)
    }
}

impl fmt::Debug for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Bracket of two basis vectors: a single term or zero.
pub fn bracket_keys(a: &BasisKey, b: &BasisKey) -> Option<(Scalar, BasisKey)> {
    let i = a.loop_degree + b.loop_degree;
    let (alpha, beta) = (&a.gamma, &b.gamma);
    let half = Scalar::ratio(1, 2);
    let (coeff, kind) = match (a.kind, b.kind) {
        (Kind::L, Kind::L) => (beta - alpha, Kind::L),
        (Kind::L, Kind::M) => (beta.clone(), Kind::M),
        (Kind::M, Kind::L) => (-alpha, Kind::M),
        // [L_a, Y_g] = (g - a/2) Y_{a+g}
        (Kind::L, Kind::Y) => (beta - &(alpha * &half), Kind::Y),
        (Kind::Y, Kind::L) => (&(beta * &half) - alpha, Kind::Y),
        // [Y_{a+s}, Y_{b+s}] = (b - a) M_{a+b+2s}
        (Kind::Y, Kind::Y) => (beta - alpha, Kind::M),
        (Kind::M, Kind::M) | (Kind::M, Kind::Y) | (Kind::Y, Kind::M) => return None,
    };
    if coeff.is_zero() {
        return None;
    }
    Some((coeff, BasisKey::new(kind, alpha + beta, i)))
}
