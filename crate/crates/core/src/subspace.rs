//! Subspaces of the truncated series ring, held as reduced echelon bases.
//!
//! Coordinates are ordered by branch, then exponent, so the pivot of a basis
//! element is its first nonzero coefficient in that order.

use crate::field::Field;
use crate::linalg::Echelon;
use crate::series::{SeriesError, TruncatedSeries, ValuationVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSubspace<E> {
    branches: usize,
    truncation: usize,
    basis: Echelon<E>,
}

impl<E: Clone> SeriesSubspace<E> {
    pub fn zero(branches: usize, truncation: usize) -> Self {
        Self { branches, truncation, basis: Echelon::new(branches * truncation) }
    }

    /// Span of `vectors`, reduced.
    pub fn span<F: Field<Elem = E>>(
        f: &F,
        branches: usize,
        truncation: usize,
        vectors: impl IntoIterator<Item = TruncatedSeries<E>>,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(branches, truncation);
        for v in vectors {
            s.insert(f, v)?;
        }
        Ok(s)
    }

    pub fn branches(&self) -> usize {
        self.branches
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> Vec<TruncatedSeries<E>> {
        self.basis.rows().iter().map(|r| TruncatedSeries::from_flat(self.branches, self.truncation, r.clone())).collect()
    }

    pub fn echelon(&self) -> &Echelon<E> {
        &self.basis
    }

    fn check(&self, v: &TruncatedSeries<E>) -> Result<(), SeriesError> {
        if v.branches() != self.branches || v.truncation() != self.truncation {
            return Err(SeriesError::AmbientMismatch(self.branches, self.truncation, v.branches(), v.truncation()));
        }
        Ok(())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: TruncatedSeries<E>) -> Result<bool, SeriesError> {
        self.check(&v)?;
        Ok(self.basis.insert(f, v.into_coeffs()))
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &TruncatedSeries<E>) -> Result<bool, SeriesError> {
        self.check(v)?;
        Ok(self.basis.contains(f, v.coeffs()))
    }

    /// `dim S/(R + t^α S)` where `t^α S` kills coefficients `k >= α_i` on
    /// branch `i`. Requires `α_i <= N`.
    pub fn quotient_dim<F: Field<Elem = E>>(&self, f: &F, alpha: &[usize]) -> usize {
        assert_eq!(alpha.len(), self.branches);
        let n = self.truncation;
        let cols: Vec<usize> =
            (0..self.branches).flat_map(|i| (0..alpha[i].min(n)).map(move |k| i * n + k)).collect();
        let total = cols.len();
        let restricted = self.basis.rows().iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect::<Vec<_>>());
        total - Echelon::from_rows(f, total, restricted).dim()
    }

    /// An element whose constant term is nonzero on every branch, if any.
    pub fn find_unit<F: Field<Elem = E>>(&self, f: &F) -> Option<TruncatedSeries<E>> {
        let r = self.branches;
        let n = self.truncation;
        if n == 0 {
            return None;
        }
        let mut acc = vec![f.zero(); r * n];
        // Greedy: each candidate coefficient is ruled out by at most one branch,
        // so r + 1 distinct scalars always leave a valid choice.
        if f.size().is_some_and(|q| q <= r as u64) {
            return None;
        }
        for row in self.basis.rows() {
            let choice = (0..=r as i64).map(|c| f.from_i64(c)).find(|c| {
                (0..r).all(|i| {
                    let a = &acc[i * n];
                    let b = &row[i * n];
                    if f.is_zero(a) && f.is_zero(b) {
                        return true;
                    }
                    !f.is_zero(&f.add(a, &f.mul(c, b)))
                })
            })?;
            for (x, y) in acc.iter_mut().zip(row) {
                *x = f.add(x, &f.mul(&choice, y));
            }
        }
        (0..r).all(|i| !f.is_zero(&acc[i * n])).then(|| TruncatedSeries::from_flat(r, n, acc))
    }

    /// Whether some element has valuation exactly `v` (with `∞` meaning the
    /// branch vanishes to the truncation order).
    pub fn contains_valuation<F: Field<Elem = E>>(&self, f: &F, v: &ValuationVector) -> bool {
        let n = self.truncation;
        assert_eq!(v.0.len(), self.branches);
        // Elements with all coefficients below v_i zero form a subspace;
        // it must not be contained in any hyperplane "coefficient at v_i = 0".
        let killed: Vec<usize> = (0..self.branches)
            .flat_map(|i| {
                let upto = v.0[i].map_or(n, |k| k.min(n));
                (0..upto).map(move |k| i * n + k)
            })
            .collect();
        if v.0.iter().any(|k| k.is_some_and(|k| k >= n)) {
            return false;
        }
        let sub = self.kernel_of_coordinates(f, &killed);
        let leads: Vec<usize> =
            (0..self.branches).filter_map(|i| v.0[i].map(|k| i * n + k)).collect();
        if leads.iter().any(|&c| sub.iter().all(|s| f.is_zero(&s[c]))) {
            return false;
        }
        f.size().map_or(true, |q| q > leads.len() as u64)
    }

    /// Basis of the elements whose coordinates in `cols` vanish.
    fn kernel_of_coordinates<F: Field<Elem = E>>(&self, f: &F, cols: &[usize]) -> Vec<Vec<E>> {
        let rows = self.basis.rows();
        let m = rows.len();
        // Coefficient vectors x with sum x_j rows[j][c] = 0 for c in cols.
        let eqs: Vec<Vec<E>> = cols.iter().map(|&c| rows.iter().map(|r| r[c].clone()).collect()).collect();
        let ker = crate::linalg::nullspace(f, m, &eqs);
        ker.into_iter()
            .map(|x| {
                let mut v = vec![f.zero(); self.branches * self.truncation];
                for (xj, r) in x.iter().zip(rows) {
                    if f.is_zero(xj) {
                        continue;
                    }
                    for (k, rk) in r.iter().enumerate() {
                        v[k] = f.add(&v[k], &f.mul(xj, rk));
                    }
                }
                v
            })
            .collect()
    }

    /// Image under a reordering of branches (see
    /// [`TruncatedSeries::permute_branches`]).
    pub fn permute_branches<F: Field<Elem = E>>(&self, f: &F, perm: &[usize]) -> Self {
        let vs = self.basis().into_iter().map(|v| v.permute_branches(perm));
        Self::span(f, self.branches, self.truncation, vs).expect("same ambient")
    }

    /// Image under reduction to a lower truncation order.
    pub fn truncate<F: Field<Elem = E>>(&self, f: &F, truncation: usize) -> Self {
        let vs = self.basis().into_iter().map(|v| v.truncate(truncation));
        Self::span(f, self.branches, truncation, vs).expect("same ambient")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn t(f: &PrimeField, r: usize, n: usize, terms: &[(usize, usize)]) -> TruncatedSeries<u64> {
        let mut s = TruncatedSeries::zero(f, r, n);
        for &(b, e) in terms {
            s = s.add(f, &TruncatedSeries::monomial(f, r, n, b, e, 1)).unwrap();
        }
        s
    }

    #[test]
    fn quotient_dim_of_cusp_semigroup() {
        let f = PrimeField::new(101).unwrap();
        let n = 8;
        let gens = [vec![(0, 0)], vec![(0, 2)], vec![(0, 3)], vec![(0, 4)], vec![(0, 5)], vec![(0, 6)], vec![(0, 7)]];
        let r = SeriesSubspace::span(&f, 1, n, gens.iter().map(|g| t(&f, 1, n, g))).unwrap();
        // gaps of <2,3> below a: {1}
        assert_eq!(r.quotient_dim(&f, &[0]), 0);
        assert_eq!(r.quotient_dim(&f, &[1]), 0);
        assert_eq!(r.quotient_dim(&f, &[2]), 1);
        assert_eq!(r.quotient_dim(&f, &[8]), 1);
    }

    #[test]
    fn units_and_valuations() {
        let f = PrimeField::new(101).unwrap();
        let n = 5;
        // span{(1,0), (0,1)} contains a unit; span{(1,0)} does not.
        let e1 = t(&f, 2, n, &[(0, 0)]);
        let e2 = t(&f, 2, n, &[(1, 0)]);
        let both = SeriesSubspace::span(&f, 2, n, [e1.clone(), e2]).unwrap();
        assert!(both.find_unit(&f).is_some());
        let one = SeriesSubspace::span(&f, 2, n, [e1]).unwrap();
        assert!(one.find_unit(&f).is_none());
        assert!(one.contains_valuation(&f, &ValuationVector(vec![Some(0), None])));
        assert!(!one.contains_valuation(&f, &ValuationVector(vec![Some(0), Some(0)])));
        let x = t(&f, 2, n, &[(0, 1), (1, 1)]);
        let s = SeriesSubspace::span(&f, 2, n, [x]).unwrap();
        assert!(s.contains_valuation(&f, &ValuationVector(vec![Some(1), Some(1)])));
        assert!(!s.contains_valuation(&f, &ValuationVector(vec![Some(1), None])));
    }
}
