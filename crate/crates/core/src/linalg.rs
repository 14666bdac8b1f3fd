//! Dense linear algebra over a [`Field`]: reduced echelon forms, ranks,
//! kernels and intersections of row spaces.

use crate::field::Field;

/// Row space kept in reduced row echelon form, pivots ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    ncols: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Echelon<E> {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<F: Field<Elem = E>>(f: &F, ncols: usize, rows: impl IntoIterator<Item = Vec<E>>) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(f, r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.rows
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, mut v: Vec<E>) -> Vec<E> {
        debug_assert_eq!(v.len(), self.ncols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (k, x) in row.iter().enumerate().skip(p) {
                if !f.is_zero(x) {
                    v[k] = f.sub(&v[k], &f.mul(&c, x));
                }
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v.to_vec()).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v` to the span. Returns `true` when the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: Vec<E>) -> bool {
        let mut v = self.reduce(f, v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).unwrap();
        for x in v.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (k, x) in v.iter().enumerate().skip(p) {
                if !f.is_zero(x) {
                    row[k] = f.sub(&row[k], &f.mul(&c, x));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

pub fn rank<F: Field>(f: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> usize {
    Echelon::from_rows(f, ncols, rows.iter().cloned()).dim()
}

/// Basis of `{x : r . x = 0 for all rows r}`.
pub fn nullspace<F: Field>(f: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let e = Echelon::from_rows(f, ncols, rows.iter().cloned());
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![f.zero(); ncols];
            x[fc] = f.one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                x[p] = f.neg(&row[fc]);
            }
            x
        })
        .collect()
}

pub fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

/// `dim(span(a) + span(b))`.
pub fn sum_dim<F: Field>(f: &F, ncols: usize, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> usize {
    Echelon::from_rows(f, ncols, a.iter().chain(b).cloned()).dim()
}

/// `dim(span(a) ∩ span(b))`.
pub fn intersection_dim<F: Field>(f: &F, ncols: usize, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> usize {
    rank(f, ncols, a) + rank(f, ncols, b) - sum_dim(f, ncols, a, b)
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersection<F: Field>(f: &F, ncols: usize, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let a = Echelon::from_rows(f, ncols, a.iter().cloned()).into_rows();
    let b = Echelon::from_rows(f, ncols, b.iter().cloned()).into_rows();
    // Solve sum x_i a_i = sum y_j b_j; the kernel of [a; -b]^T gives the pairs.
    let m = a.len() + b.len();
    let cols: Vec<Vec<F::Elem>> = (0..ncols)
        .map(|k| a.iter().map(|r| r[k].clone()).chain(b.iter().map(|r| f.neg(&r[k]))).collect())
        .collect();
    let ker = nullspace(f, m, &cols);
    let out = ker.iter().map(|x| {
        let mut v = vec![f.zero(); ncols];
        for (xi, row) in x.iter().zip(&a) {
            if f.is_zero(xi) {
                continue;
            }
            for k in 0..ncols {
                v[k] = f.add(&v[k], &f.mul(xi, &row[k]));
            }
        }
        v
    });
    Echelon::from_rows(f, ncols, out).into_rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    fn rows_strategy() -> impl Strategy<Value = Vec<Vec<u64>>> {
        (1usize..6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u64..7, n), 0..6))
    }

    proptest! {
        #[test]
        fn nullspace_is_annihilated(rows in rows_strategy()) {
            let f = PrimeField::new(7).unwrap();
            let n = rows.first().map_or(1, |r| r.len());
            let ker = nullspace(&f, n, &rows);
            prop_assert_eq!(ker.len() + rank(&f, n, &rows), n);
            for x in &ker {
                for r in &rows {
                    prop_assert_eq!(dot(&f, r, x), 0);
                }
            }
        }

        #[test]
        fn intersection_dimension_formula(rows in rows_strategy(), split in 0usize..6) {
            let f = PrimeField::new(7).unwrap();
            let n = rows.first().map_or(1, |r| r.len());
            let k = split.min(rows.len());
            let (a, b) = rows.split_at(k);
            let int = intersection(&f, n, a, b);
            prop_assert_eq!(int.len(), intersection_dim(&f, n, a, b));
            let ea = Echelon::from_rows(&f, n, a.iter().cloned());
            let eb = Echelon::from_rows(&f, n, b.iter().cloned());
            for v in &int {
                prop_assert!(ea.contains(&f, v) && eb.contains(&f, v));
            }
        }
    }

    #[test]
    fn echelon_is_reduced() {
        let f = PrimeField::new(11).unwrap();
        let e = Echelon::from_rows(&f, 3, vec![vec![0, 2, 4], vec![1, 1, 1], vec![1, 3, 5]]);
        assert_eq!(e.dim(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(e.rows()[0][1], 0);
        assert_eq!(e.rows()[1], vec![0, 1, 2]);
    }
}
