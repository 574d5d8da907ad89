//! Exact Gaussian elimination over the scalar field.

use crate::scalars::Scalar;

/// A row space kept in reduced row echelon form, built one row at a time.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ncols: usize,
    /// `(pivot column, row)` with the pivot entry equal to 1.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, row: &mut [Scalar]) {
        for (p, r) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn push(&mut self, mut row: Vec<Scalar>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("nonzero pivot");
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    /// Whether `row` lies in the row space.
    pub fn spans(&self, row: &[Scalar]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(Scalar::is_zero)
    }

    /// Whether `v` satisfies every equation `row · v = 0`.
    pub fn annihilates(&self, v: &[Scalar]) -> bool {
        self.rows.iter().all(|(_, r)| r.iter().zip(v).map(|(a, b)| a * b).sum::<Scalar>().is_zero())
    }

    /// A basis of `{ v : row · v = 0 for all rows }`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ncols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.ncols];
                v[free] = Scalar::one();
                for (p, r) in &self.rows {
                    v[*p] = -&r[free];
                }
                v
            })
            .collect()
    }
}

/// Solve `A x = b` for one solution, if any.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.first().map_or(0, Vec::len);
    let mut red = RowReducer::new(n + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut r = row.clone();
        r.push(rhs.clone());
        red.push(r);
    }
    if red.rows.iter().any(|(p, _)| *p == n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (p, r) in &red.rows {
        x[*p] = r[n].clone();
    }
    Some(x)
}
