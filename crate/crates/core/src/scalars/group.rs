use num_bigint::BigInt;

use super::{Field, Lattice, Scalar};
use crate::error::{Error, Result};

/// Which of the index sets `Gamma`, `Gamma_1 = s + Gamma`, `T = Gamma ∪ Gamma_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Gamma,
    Gamma1,
    T,
}

/// The group data `(Gamma, s)` of the algebra.
#[derive(Clone, Debug)]
pub struct GroupData {
    field: Field,
    generators: Vec<Scalar>,
    s: Scalar,
    gamma: Lattice,
    t: Lattice,
}

impl PartialEq for GroupData {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.s == other.s && self.gamma == other.gamma
    }
}

impl GroupData {
    pub fn new(field: Field, generators: Vec<Scalar>, s: Scalar) -> Result<GroupData> {
        if generators.is_empty() {
            return Err(Error::InvalidGroup("Gamma needs at least one generator".into()));
        }
        for x in generators.iter().chain(std::iter::once(&s)) {
            if !field.contains(x) {
                return Err(Error::InvalidGroup(format!("{x} is not in the configured field")));
            }
        }
        let gamma = Lattice::generated_by(field, &generators);
        if gamma.rank() == 0 {
            return Err(Error::InvalidGroup("Gamma is the zero group".into()));
        }
        if gamma.contains(&s) {
            return Err(Error::InvalidGroup(format!("s = {s} lies in Gamma")));
        }
        if !gamma.contains(&(&s + &s)) {
            return Err(Error::InvalidGroup(format!("2s = {} is not in Gamma", &s + &s)));
        }
        let mut t_gens = generators.clone();
        t_gens.push(s.clone());
        let t = Lattice::generated_by(field, &t_gens);
        Ok(GroupData { field, generators, s, gamma, t })
    }

    /// `Gamma = Z`, `s = 1/2` over `Q`.
    pub fn integers_half() -> GroupData {
        GroupData::new(Field::Rational, vec![Scalar::one()], Scalar::ratio(1, 2)).expect("valid default group")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Scalar] {
        &self.generators
    }

    pub fn s(&self) -> &Scalar {
        &self.s
    }

    pub fn gamma_lattice(&self) -> &Lattice {
        &self.gamma
    }

    pub fn t_lattice(&self) -> &Lattice {
        &self.t
    }

    /// The chosen `Z`-basis of `T`.
    pub fn t_basis(&self) -> &[Scalar] {
        self.t.basis()
    }

    pub fn t_rank(&self) -> usize {
        self.t.rank()
    }

    pub fn member(&self, x: &Scalar, set: IndexSet) -> bool {
        match set {
            IndexSet::Gamma => self.gamma.contains(x),
            IndexSet::Gamma1 => self.gamma.contains(&(x - &self.s)),
            IndexSet::T => self.t.contains(x),
        }
    }

    /// Integer coordinates of `x` over the `T`-basis.
    pub fn t_coordinates(&self, x: &Scalar) -> Option<Vec<BigInt>> {
        self.t.coordinates(x)
    }

    /// Whether `a` lies in `A = { a : aGamma = Gamma, aT = T }`.
    pub fn validate_scaling(&self, a: &Scalar) -> Result<bool> {
        let inv = a.inv().ok_or(Error::ZeroScaling)?;
        if !self.field.contains(a) {
            return Ok(false);
        }
        let maps_onto = |lat: &Lattice| {
            lat.basis().iter().all(|b| lat.contains(&(a * b)) && lat.contains(&(&inv * b)))
        };
        Ok(maps_onto(&self.gamma) && maps_onto(&self.t))
    }

    /// Positive elements of `Gamma` ordered by coordinate height, then value.
    pub fn positive_gamma_elements(&self, max_height: i64) -> Vec<Scalar> {
        let mut out = Vec::new();
        for h in 1..=max_height {
            let mut layer: Vec<Scalar> = coordinate_box(self.gamma.rank(), h)
                .into_iter()
                .filter(|c| c.iter().map(|x| x.abs()).max() == Some(h))
                .map(|c| self.gamma.combine(&c.into_iter().map(BigInt::from).collect::<Vec<_>>()))
                .filter(|x| x.is_positive())
                .collect();
            layer.sort();
            out.extend(layer);
        }
        out
    }
}

/// All integer vectors of length `rank` with entries in `[-h, h]`.
pub(crate) fn coordinate_box(rank: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-h..=h).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn sqrt2_group() -> GroupData {
        GroupData::new(Field::Quadratic(2), vec![Scalar::one(), Scalar::sqrt_of(2)], Scalar::ratio(1, 2)).unwrap()
    }

    fn q2(p: i64, q: i64) -> Scalar {
        Scalar::quadratic(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()), 2)
    }

    #[test]
    fn membership_examples() {
        let g = GroupData::integers_half();
        assert!(g.member(&Scalar::from_int(3), IndexSet::Gamma));
        assert!(!g.member(&Scalar::ratio(1, 2), IndexSet::Gamma));
        assert!(g.member(&Scalar::ratio(1, 2), IndexSet::Gamma1));
        assert!(g.member(&Scalar::ratio(-7, 2), IndexSet::T));
        assert!(!g.member(&Scalar::ratio(1, 3), IndexSet::T));
        assert!(sqrt2_group().member(&q2(3, 2), IndexSet::Gamma));
    }

    #[test]
    fn cyclic_t_is_half_lattice() {
        let g = GroupData::new(Field::Rational, vec![Scalar::from_int(3)], Scalar::ratio(3, 2)).unwrap();
        assert_eq!(g.t_basis(), &[Scalar::ratio(3, 2)]);
    }

    #[test]
    fn construction_rejects_bad_s() {
        assert!(GroupData::new(Field::Rational, vec![Scalar::one()], Scalar::from_int(2)).is_err());
        assert!(GroupData::new(Field::Rational, vec![Scalar::one()], Scalar::ratio(1, 3)).is_err());
        assert!(GroupData::new(Field::Rational, vec![], Scalar::ratio(1, 2)).is_err());
    }

    #[test]
    fn scaling_examples() {
        let g = GroupData::integers_half();
        assert!(g.validate_scaling(&Scalar::from_int(-1)).unwrap());
        assert!(!g.validate_scaling(&Scalar::from_int(2)).unwrap());
        assert!(g.validate_scaling(&Scalar::zero()).is_err());
        let h = sqrt2_group();
        // (1+sqrt2)/2 is not in T = Z/2 + sqrt2 Z, but its square works
        assert!(!h.validate_scaling(&q2(1, 1)).unwrap());
        assert!(h.validate_scaling(&q2(3, 2)).unwrap());
        assert!(!h.validate_scaling(&q2(1, 2)).unwrap());
        let shifted = GroupData::new(
            Field::Quadratic(2),
            vec![Scalar::one(), Scalar::sqrt_of(2)],
            Scalar::quadratic(BigRational::from_integer(0.into()), BigRational::new(1.into(), 2.into()), 2),
        )
        .unwrap();
        assert!(shifted.validate_scaling(&q2(1, 1)).unwrap());
    }

    #[test]
    fn positive_elements_start_small() {
        let g = GroupData::integers_half();
        let p = g.positive_gamma_elements(3);
        assert_eq!(p, vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(3)]);
    }
}
