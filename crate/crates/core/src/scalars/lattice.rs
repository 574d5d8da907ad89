//! Finitely generated subgroups of `Q` or `Q(sqrt d)`, viewed as integer
//! lattices of rank at most 2 after clearing denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::ext_gcd;
use super::{Field, Scalar};

/// A `Z`-lattice in the field, stored as an integer row echelon basis of
/// `scale * coords`, where coords are `(rational, irrational)` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    field: Field,
    scale: BigInt,
    /// Integer rows in echelon form; `pivots[r]` is the leading column of row r.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    basis: Vec<Scalar>,
}

fn components(field: Field, x: &Scalar) -> Vec<BigRational> {
    match field {
        Field::Rational => vec![x.rational_part().clone()],
        Field::Quadratic(_) => vec![x.rational_part().clone(), x.irrational_part().clone()],
    }
}

impl Lattice {
    /// The subgroup generated by `gens`.
    pub fn generated_by(field: Field, gens: &[Scalar]) -> Lattice {
        let dim = field.degree();
        let mut scale = BigInt::one();
        for g in gens {
            for c in components(field, g) {
                scale = scale.lcm(c.denom());
            }
        }
        let mut rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                components(field, g)
                    .into_iter()
                    .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();

        let mut echelon = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            // gcd-combine every remaining row into one pivot row for this column
            let mut pivot: Option<Vec<BigInt>> = None;
            let mut rest = Vec::new();
            for row in rows.drain(..) {
                if row[col].is_zero() {
                    rest.push(row);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(row),
                    Some(p) => {
                        let (g, x, y) = ext_gcd(&p[col], &row[col]);
                        let combined: Vec<BigInt> = (0..dim).map(|k| &x * &p[k] + &y * &row[k]).collect();
                        let pa = &p[col] / &g;
                        let ra = &row[col] / &g;
                        // row' = pa*row - ra*p has zero in this column
                        let reduced: Vec<BigInt> = (0..dim).map(|k| &pa * &row[k] - &ra * &p[k]).collect();
                        rest.push(reduced);
                        pivot = Some(combined);
                    }
                }
            }
            rows = rest.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
            if let Some(mut p) = pivot {
                if p[col].is_negative() {
                    p.iter_mut().for_each(|c| *c = -c.clone());
                }
                echelon.push(p);
                pivots.push(col);
            }
        }
        // reduce entries above pivots so the basis is canonical
        for r in (0..echelon.len()).rev() {
            let col = pivots[r];
            for above in 0..r {
                let q = echelon[above][col].div_floor(&echelon[r][col]);
                if !q.is_zero() {
                    let pivot_row = echelon[r].clone();
                    for (a, p) in echelon[above].iter_mut().zip(&pivot_row) {
                        *a = &*a - &q * p;
                    }
                }
            }
        }

        let basis = echelon
            .iter()
            .map(|row| {
                let comps: Vec<BigRational> =
                    row.iter().map(|c| BigRational::new(c.clone(), scale.clone())).collect();
                match field {
                    Field::Rational => Scalar::from_rational(comps[0].clone()),
                    Field::Quadratic(d) => Scalar::quadratic(comps[0].clone(), comps[1].clone(), d),
                }
            })
            .collect();
        Lattice { field, scale, rows: echelon, pivots, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Scalar] {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Integer coordinates of `x` over [`Lattice::basis`], if `x` lies in the lattice.
    pub fn coordinates(&self, x: &Scalar) -> Option<Vec<BigInt>> {
        if !self.field.contains(x) {
            return None;
        }
        let scaled: Vec<BigRational> = components(self.field, x)
            .into_iter()
            .map(|c| c * BigRational::from_integer(self.scale.clone()))
            .collect();
        if scaled.iter().any(|c| !c.is_integer()) {
            return None;
        }
        let mut v: Vec<BigInt> = scaled.into_iter().map(|c| c.to_integer()).collect();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let (q, r) = v[col].div_rem(&row[col]);
            if !r.is_zero() {
                return None;
            }
            for k in 0..v.len() {
                v[k] = &v[k] - &q * &row[k];
            }
            coords.push(q);
        }
        v.iter().all(|c| c.is_zero()).then_some(coords)
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.coordinates(x).is_some()
    }

    /// `sum coords[j] * basis[j]`.
    pub fn combine(&self, coords: &[BigInt]) -> Scalar {
        coords
            .iter()
            .zip(&self.basis)
            .map(|(c, b)| b * &Scalar::from_bigint(c.clone()))
            .sum()
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2(p: i64, q: i64) -> Scalar {
        Scalar::quadratic(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()), 2)
    }

    #[test]
    fn cyclic_lattice_basis() {
        let l = Lattice::generated_by(Field::Rational, &[Scalar::from_int(4), Scalar::from_int(6)]);
        assert_eq!(l.basis(), &[Scalar::from_int(2)]);
        assert!(l.contains(&Scalar::from_int(-8)));
        assert!(!l.contains(&Scalar::from_int(3)));
        assert!(!l.contains(&Scalar::ratio(1, 2)));
    }

    #[test]
    fn half_integers() {
        let l = Lattice::generated_by(Field::Rational, &[Scalar::one(), Scalar::ratio(1, 2)]);
        assert_eq!(l.basis(), &[Scalar::ratio(1, 2)]);
        assert_eq!(l.coordinates(&Scalar::ratio(3, 2)), Some(vec![BigInt::from(3)]));
    }

    #[test]
    fn rank_two_solve() {
        let l = Lattice::generated_by(Field::Quadratic(2), &[Scalar::one(), Scalar::sqrt_of(2)]);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.coordinates(&q2(3, 2)), Some(vec![BigInt::from(3), BigInt::from(2)]));
        assert!(!l.contains(&Scalar::ratio(1, 2)));
        let t = Lattice::generated_by(Field::Quadratic(2), &[Scalar::one(), Scalar::sqrt_of(2), Scalar::ratio(1, 2)]);
        assert_eq!(t.basis(), &[Scalar::ratio(1, 2), Scalar::sqrt_of(2)]);
    }

    #[test]
    fn combine_inverts_coordinates() {
        let l = Lattice::generated_by(Field::Quadratic(2), &[q2(1, 1), q2(0, 2), Scalar::from_int(3)]);
        let x = q2(5, -4);
        if let Some(c) = l.coordinates(&x) {
            assert_eq!(l.combine(&c), x);
        }
        let y = &l.basis()[0] * &Scalar::from_int(3) - &l.basis()[l.rank() - 1];
        assert_eq!(l.combine(&l.coordinates(&y).unwrap()), y);
    }
}
