//! Truncated multi-branch power series, elements of
//! `K[t_1]/(t_1^N) × ... × K[t_r]/(t_r^N)`.

use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("ambient mismatch: ({0} branches, truncation {1}) vs ({2} branches, truncation {3})")]
    AmbientMismatch(usize, usize, usize, usize),
    #[error("series has no inverse: branch {0} has zero constant term")]
    NotAUnit(usize),
    #[error("branch {branch} has {len} coefficients, more than the truncation {truncation}")]
    TooLong { branch: usize, len: usize, truncation: usize },
    #[error("expected {expected} branches, got {got}")]
    BranchCount { expected: usize, got: usize },
}

/// Per-branch valuations; `None` is `∞` (the branch vanishes up to the
/// truncation order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationVector(pub Vec<Option<usize>>);

impl fmt::Display for ValuationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match v {
                Some(k) => write!(f, "{k}")?,
                None => write!(f, "∞")?,
            }
        }
        write!(f, ")")
    }
}

/// Element of `∏ K[t_i]/(t_i^N)`; coefficients stored branch-major so that
/// index `i * N + k` holds the coefficient of `t_i^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries<E> {
    branches: usize,
    truncation: usize,
    coeffs: Vec<E>,
}

impl<E: Clone> TruncatedSeries<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, branches: usize, truncation: usize) -> Self {
        Self { branches, truncation, coeffs: vec![f.zero(); branches * truncation] }
    }

    /// The unit `(1, ..., 1)`.
    pub fn one<F: Field<Elem = E>>(f: &F, branches: usize, truncation: usize) -> Self {
        let mut s = Self::zero(f, branches, truncation);
        if truncation > 0 {
            for i in 0..branches {
                s.coeffs[i * truncation] = f.one();
            }
        }
        s
    }

    /// `c t_branch^exp`, or zero when `exp >= truncation`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, branches: usize, truncation: usize, branch: usize, exp: usize, c: E) -> Self {
        let mut s = Self::zero(f, branches, truncation);
        if exp < truncation {
            s.coeffs[branch * truncation + exp] = c;
        }
        s
    }

    /// Builds a series from per-branch coefficient lists (ascending
    /// exponents, shorter lists padded with zeros).
    pub fn from_branches<F: Field<Elem = E>>(
        f: &F,
        truncation: usize,
        branches: Vec<Vec<E>>,
    ) -> Result<Self, SeriesError> {
        let r = branches.len();
        let mut s = Self::zero(f, r, truncation);
        for (i, b) in branches.into_iter().enumerate() {
            if b.len() > truncation {
                return Err(SeriesError::TooLong { branch: i, len: b.len(), truncation });
            }
            for (k, c) in b.into_iter().enumerate() {
                s.coeffs[i * truncation + k] = c;
            }
        }
        Ok(s)
    }

    /// Same as [`from_branches`](Self::from_branches) but drops terms at or
    /// beyond the truncation order.
    pub fn from_branches_truncating<F: Field<Elem = E>>(f: &F, truncation: usize, branches: Vec<Vec<E>>) -> Self {
        let r = branches.len();
        let mut s = Self::zero(f, r, truncation);
        for (i, b) in branches.into_iter().enumerate() {
            for (k, c) in b.into_iter().take(truncation).enumerate() {
                s.coeffs[i * truncation + k] = c;
            }
        }
        s
    }

    pub fn from_flat(branches: usize, truncation: usize, coeffs: Vec<E>) -> Self {
        assert_eq!(coeffs.len(), branches * truncation);
        Self { branches, truncation, coeffs }
    }

    pub fn branches(&self) -> usize {
        self.branches
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, branch: usize, exp: usize) -> &E {
        &self.coeffs[branch * self.truncation + exp]
    }

    pub fn branch(&self, branch: usize) -> &[E] {
        &self.coeffs[branch * self.truncation..(branch + 1) * self.truncation]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    fn check_ambient(&self, other: &Self) -> Result<(), SeriesError> {
        if self.branches != other.branches || self.truncation != other.truncation {
            return Err(SeriesError::AmbientMismatch(self.branches, self.truncation, other.branches, other.truncation));
        }
        Ok(())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, SeriesError> {
        self.check_ambient(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.add(a, b)).collect();
        Ok(Self { coeffs, ..*self })
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, SeriesError> {
        self.check_ambient(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Self { coeffs, ..*self })
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(), ..*self }
    }

    /// Branchwise product, truncated.
    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self, SeriesError> {
        self.check_ambient(other)?;
        let n = self.truncation;
        let mut out = Self::zero(f, self.branches, n);
        for i in 0..self.branches {
            let a = self.branch(i);
            let b = other.branch(i);
            let Some(va) = a.iter().position(|x| !f.is_zero(x)) else { continue };
            let Some(vb) = b.iter().position(|x| !f.is_zero(x)) else { continue };
            for j in va..n {
                if f.is_zero(&a[j]) {
                    continue;
                }
                for k in vb..n - j {
                    if !f.is_zero(&b[k]) {
                        let idx = i * n + j + k;
                        out.coeffs[idx] = f.add(&out.coeffs[idx], &f.mul(&a[j], &b[k]));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: usize) -> Self {
        let mut acc = Self::one(f, self.branches, self.truncation);
        for _ in 0..e {
            acc = acc.mul(f, self).expect("same ambient");
        }
        acc
    }

    /// Multiplicative inverse; every branch needs a nonzero constant term.
    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Result<Self, SeriesError> {
        let n = self.truncation;
        let mut out = Self::zero(f, self.branches, n);
        for i in 0..self.branches {
            let a = self.branch(i);
            if n == 0 {
                continue;
            }
            let a0 = f.inv(&a[0]).ok_or(SeriesError::NotAUnit(i))?;
            let mut b = vec![f.zero(); n];
            b[0] = a0.clone();
            for k in 1..n {
                let mut s = f.zero();
                for j in 1..=k {
                    s = f.add(&s, &f.mul(&a[j], &b[k - j]));
                }
                b[k] = f.neg(&f.mul(&s, &a0));
            }
            out.coeffs[i * n..(i + 1) * n].clone_from_slice(&b);
        }
        Ok(out)
    }

    pub fn div<F: Field<Elem = E>>(&self, f: &F, unit: &Self) -> Result<Self, SeriesError> {
        self.mul(f, &unit.inverse(f)?)
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    pub fn valuation<F: Field<Elem = E>>(&self, f: &F) -> ValuationVector {
        ValuationVector((0..self.branches).map(|i| self.branch(i).iter().position(|c| !f.is_zero(c))).collect())
    }

    /// Same series with branches reordered: output branch `j` is input
    /// branch `perm[j]`.
    pub fn permute_branches(&self, perm: &[usize]) -> Self {
        let n = self.truncation;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &p in perm {
            coeffs.extend_from_slice(&self.coeffs[p * n..(p + 1) * n]);
        }
        Self { coeffs, ..*self }
    }

    /// Reduction to a lower truncation order.
    pub fn truncate(&self, truncation: usize) -> Self {
        assert!(truncation <= self.truncation);
        let mut coeffs = Vec::with_capacity(self.branches * truncation);
        for i in 0..self.branches {
            coeffs.extend_from_slice(&self.branch(i)[..truncation]);
        }
        Self { branches: self.branches, truncation, coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use proptest::prelude::*;

    const P: u64 = 10007;

    fn series(r: usize, n: usize) -> impl Strategy<Value = TruncatedSeries<u64>> {
        prop::collection::vec(0u64..P, r * n).prop_map(move |c| TruncatedSeries::from_flat(r, n, c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in series(2, 6), b in series(2, 6), c in series(2, 6)) {
            let f = PrimeField::new(P).unwrap();
            prop_assert_eq!(a.mul(&f, &b).unwrap(), b.mul(&f, &a).unwrap());
            let lhs = a.mul(&f, &b.add(&f, &c).unwrap()).unwrap();
            let rhs = a.mul(&f, &b).unwrap().add(&f, &a.mul(&f, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let ab_c = a.mul(&f, &b).unwrap().mul(&f, &c).unwrap();
            let a_bc = a.mul(&f, &b.mul(&f, &c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn valuation_is_additive(a in series(3, 5), b in series(3, 5)) {
            let f = PrimeField::new(P).unwrap();
            let va = a.valuation(&f).0;
            let vb = b.valuation(&f).0;
            let vab = a.mul(&f, &b).unwrap().valuation(&f).0;
            for i in 0..3 {
                let expect = match (va[i], vb[i]) {
                    (Some(x), Some(y)) if x + y < 5 => Some(x + y),
                    _ => None,
                };
                prop_assert_eq!(vab[i], expect);
            }
        }

        #[test]
        fn inverse_is_inverse(a in series(2, 7)) {
            let f = PrimeField::new(P).unwrap();
            prop_assume!(a.coeff(0, 0) != &0 && a.coeff(1, 0) != &0);
            let inv = a.inverse(&f).unwrap();
            prop_assert_eq!(a.mul(&f, &inv).unwrap(), TruncatedSeries::one(&f, 2, 7));
        }
    }

    #[test]
    fn mismatched_ambients_are_rejected() {
        let f = PrimeField::new(P).unwrap();
        let a = TruncatedSeries::one(&f, 1, 4);
        let b = TruncatedSeries::one(&f, 2, 4);
        assert!(matches!(a.add(&f, &b), Err(SeriesError::AmbientMismatch(..))));
    }

    #[test]
    fn valuation_display() {
        assert_eq!(ValuationVector(vec![Some(2), None]).to_string(), "(2,∞)");
    }
}
