//! Curves with their osculating flags.
//!
//! `W` is the space of sections and `V = W^*`. A point `P` and an order `i`
//! give the osculating subspace `V^i(P)`, the annihilator of the sections
//! vanishing to order `i` at `P`. It is spanned by the Taylor functionals
//! `φ_j(P): s ↦ [t^j] s` for `j < i`.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldError};
use crate::linalg::Echelon;
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("degree must be at least 1")]
    DegreeTooSmall,
    #[error("osculation order {order} exceeds dim V = {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("point {0} is not on this curve model")]
    UnknownPoint(String),
    #[error("points of a multifiltration must be distinct; {0} repeats")]
    RepeatedPoint(String),
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("cannot parse point {0:?}; expected \"(a:b)\"")]
    ParsePoint(String),
    #[error("(0:0) is not a point")]
    ZeroPoint,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A curve with a distinguished basis of sections.
pub trait Curve<F: Field> {
    type Point: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn field(&self) -> &F;
    fn degree(&self) -> usize;
    fn genus(&self) -> usize;
    /// `dim V = dim W`.
    fn dim(&self) -> usize;
    /// Coordinates of `φ_j(P)` in the basis dual to the section basis.
    fn jet_functional(&self, p: &Self::Point, j: usize) -> Result<Vec<F::Elem>, CurveError>;
}

/// A point of `P^1`, normalized to `(a:1)` or `(1:0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint<E> {
    Affine(E),
    Infinity,
}

impl<E: Clone> CurvePoint<E> {
    pub fn from_homogeneous<F: Field<Elem = E>>(f: &F, a: &E, b: &E) -> Result<Self, CurveError> {
        if f.is_zero(b) {
            if f.is_zero(a) {
                return Err(CurveError::ZeroPoint);
            }
            return Ok(Self::Infinity);
        }
        Ok(Self::Affine(f.div(a, b)))
    }

    /// Parses `"(a:b)"`, `"a"` or `"inf"`.
    pub fn parse<F: Field<Elem = E>>(f: &F, s: &str) -> Result<Self, CurveError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Self::Infinity);
        }
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')'));
        match inner {
            Some(inner) => {
                let (a, b) = inner.split_once(':').ok_or_else(|| CurveError::ParsePoint(s.to_string()))?;
                Self::from_homogeneous(f, &f.parse(a)?, &f.parse(b)?)
            }
            None => Ok(Self::Affine(f.parse(t)?)),
        }
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        match self {
            Self::Affine(a) => format!("({}:1)", f.format(a)),
            Self::Infinity => "(1:0)".to_string(),
        }
    }
}

impl<E: fmt::Debug> fmt::Display for CurvePoint<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Affine(a) => write!(f, "({a:?}:1)"),
            Self::Infinity => write!(f, "(1:0)"),
        }
    }
}

/// `P^1` embedded by all degree-`d` forms. Sections are ordered
/// `x^d, x^{d-1} y, ..., y^d`; the local parameter is `x/y - a` at `(a:1)`
/// and `y/x` at `(1:0)`.
#[derive(Clone, Debug)]
pub struct RationalNormalCurve<F: Field> {
    field: F,
    d: usize,
    binom: Vec<Vec<F::Elem>>,
}

impl<F: Field> RationalNormalCurve<F> {
    pub fn new(field: F, d: usize) -> Result<Self, CurveError> {
        if d == 0 {
            return Err(CurveError::DegreeTooSmall);
        }
        let mut binom = vec![vec![field.zero(); d + 1]; d + 1];
        for n in 0..=d {
            binom[n][0] = field.one();
            for k in 1..=n {
                binom[n][k] = field.add(&binom[n - 1][k - 1], &binom[n - 1].get(k).cloned().unwrap_or_else(|| field.zero()));
            }
        }
        Ok(Self { field, d, binom })
    }

    /// `ν(P) = (a^{d-k} b^k)_k`.
    pub fn embed(&self, p: &CurvePoint<F::Elem>) -> Vec<F::Elem> {
        self.jet_functional(p, 0).expect("order 0")
    }

    /// Value `F(a, 1)` or `F(1, 0)` of a form under the normalization of
    /// the point.
    pub fn evaluate(&self, form: &[F::Elem], p: &CurvePoint<F::Elem>) -> F::Elem {
        crate::linalg::dot(&self.field, form, &self.embed(p))
    }

    /// Dehomogenization `f(b) = F(b, 1)` as an ascending polynomial.
    pub fn affine_polynomial(&self, form: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        crate::poly::trim(f, (0..=self.d).map(|m| form[self.d - m].clone()).collect())
    }
}

impl<F: Field> Curve<F> for RationalNormalCurve<F> {
    type Point = CurvePoint<F::Elem>;

    fn field(&self) -> &F {
        &self.field
    }
    fn degree(&self) -> usize {
        self.d
    }
    fn genus(&self) -> usize {
        0
    }
    fn dim(&self) -> usize {
        self.d + 1
    }

    fn jet_functional(&self, p: &CurvePoint<F::Elem>, j: usize) -> Result<Vec<F::Elem>, CurveError> {
        let f = &self.field;
        let d = self.d;
        Ok(match p {
            // [t^j] of (a + t)^{d-k} = C(d-k, j) a^{d-k-j}
            CurvePoint::Affine(a) => (0..=d)
                .map(|k| if j > d - k { f.zero() } else { f.mul(&self.binom[d - k][j], &f.pow(a, (d - k - j) as u64)) })
                .collect(),
            CurvePoint::Infinity => (0..=d).map(|k| if k == j { f.one() } else { f.zero() }).collect(),
        })
    }
}

/// A curve described only by local expansions of a section basis at
/// finitely many labelled points. `tables[p][k][j]` is the coefficient of
/// `t^j` in the expansion of section `k` at point `p`.
#[derive(Clone, Debug)]
pub struct ExpansionCurve<F: Field> {
    field: F,
    degree: usize,
    genus: usize,
    dim: usize,
    labels: Vec<String>,
    tables: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> ExpansionCurve<F> {
    pub fn new(
        field: F,
        degree: usize,
        genus: usize,
        dim: usize,
        points: Vec<(String, Vec<Vec<F::Elem>>)>,
    ) -> Result<Self, CurveError> {
        if degree == 0 {
            return Err(CurveError::DegreeTooSmall);
        }
        let mut labels = Vec::new();
        let mut tables = Vec::new();
        for (label, table) in points {
            if labels.contains(&label) {
                return Err(CurveError::RepeatedPoint(label));
            }
            if table.len() != dim {
                return Err(CurveError::Shape { expected: dim, got: table.len() });
            }
            labels.push(label);
            tables.push(table);
        }
        Ok(Self { field, degree, genus, dim, labels, tables })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl<F: Field> Curve<F> for ExpansionCurve<F> {
    type Point = String;

    fn field(&self) -> &F {
        &self.field
    }
    fn degree(&self) -> usize {
        self.degree
    }
    fn genus(&self) -> usize {
        self.genus
    }
    fn dim(&self) -> usize {
        self.dim
    }

    fn jet_functional(&self, p: &String, j: usize) -> Result<Vec<F::Elem>, CurveError> {
        let idx = self.labels.iter().position(|l| l == p).ok_or_else(|| CurveError::UnknownPoint(p.clone()))?;
        Ok(self.tables[idx].iter().map(|row| row.get(j).cloned().unwrap_or_else(|| self.field.zero())).collect())
    }
}

/// Rows spanning `V^i(P)`, reduced.
pub fn osc_subspace<F: Field, X: Curve<F>>(x: &X, p: &X::Point, i: usize) -> Result<Vec<Vec<F::Elem>>, CurveError> {
    if i > x.dim() {
        return Err(CurveError::OrderTooLarge { order: i, max: x.dim() });
    }
    let mut e = Echelon::new(x.dim());
    for j in 0..i {
        e.insert(x.field(), x.jet_functional(p, j)?);
    }
    Ok(e.into_rows())
}

/// The multifiltration `α ↦ F^α = Σ_j V^{α_j}(P_j)` over distinct points.
#[derive(Clone, Debug)]
pub struct Multifiltration<'a, F: Field, X: Curve<F>> {
    curve: &'a X,
    points: Vec<X::Point>,
    _field: std::marker::PhantomData<F>,
}

impl<'a, F: Field, X: Curve<F>> Multifiltration<'a, F, X> {
    pub fn new(curve: &'a X, points: Vec<X::Point>) -> Result<Self, CurveError> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(CurveError::RepeatedPoint(p.to_string()));
            }
        }
        Ok(Self { curve, points, _field: std::marker::PhantomData })
    }

    pub fn points(&self) -> &[X::Point] {
        &self.points
    }

    pub fn subspace(&self, alpha: &[usize]) -> Result<Vec<Vec<F::Elem>>, CurveError> {
        if alpha.len() != self.points.len() {
            return Err(CurveError::Shape { expected: self.points.len(), got: alpha.len() });
        }
        let f = self.curve.field();
        let mut e = Echelon::new(self.curve.dim());
        for (p, &a) in self.points.iter().zip(alpha) {
            if a > self.curve.dim() {
                return Err(CurveError::OrderTooLarge { order: a, max: self.curve.dim() });
            }
            for j in 0..a {
                e.insert(f, self.curve.jet_functional(p, j)?);
            }
        }
        Ok(e.into_rows())
    }

    pub fn dim(&self, alpha: &[usize]) -> Result<usize, CurveError> {
        Ok(self.subspace(alpha)?.len())
    }
}

/// Expansion of a section (coordinates in the section basis) at `p`, to
/// order `n`.
pub fn local_expansion<F: Field, X: Curve<F>>(
    x: &X,
    section: &[F::Elem],
    p: &X::Point,
    n: usize,
) -> Result<TruncatedSeries<F::Elem>, CurveError> {
    if section.len() != x.dim() {
        return Err(CurveError::Shape { expected: x.dim(), got: section.len() });
    }
    let f = x.field();
    let mut coeffs = Vec::with_capacity(n);
    for j in 0..n {
        coeffs.push(crate::linalg::dot(f, &x.jet_functional(p, j)?, section));
    }
    Ok(TruncatedSeries::from_flat(1, n, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use crate::poly;

    #[test]
    fn expansion_matches_substitution() {
        // F = x^3 + 2 x y^2 - y^3 at (2:1): F(2 + t, 1)
        let q = RationalField;
        let x = RationalNormalCurve::new(q, 3).unwrap();
        let form: Vec<_> = [1, 0, 2, -1].iter().map(|&c| q.from_i64(c)).collect();
        let p = CurvePoint::Affine(q.from_i64(2));
        let s = local_expansion(&x, &form, &p, 5).unwrap();
        // (2+t)^3 + 2(2+t) - 1 = 11 + 14 t + 6 t^2 + t^3
        let expect: Vec<_> = [11, 14, 6, 1, 0].iter().map(|&c| q.from_i64(c)).collect();
        assert_eq!(s.coeffs(), &expect[..]);
        let fa = x.affine_polynomial(&form);
        assert_eq!(poly::eval(&q, &fa, &q.from_i64(2)), q.from_i64(11));
        // at infinity: F(1, t) = 1 + 2 t^2 - t^3
        let s = local_expansion(&x, &form, &CurvePoint::Infinity, 4).unwrap();
        let expect: Vec<_> = [1, 0, 2, -1].iter().map(|&c| q.from_i64(c)).collect();
        assert_eq!(s.coeffs(), &expect[..]);
    }

    #[test]
    fn osculating_dimensions() {
        let f = PrimeField::new(10007).unwrap();
        let x = RationalNormalCurve::new(f, 6).unwrap();
        let pts = vec![CurvePoint::Affine(3), CurvePoint::Infinity, CurvePoint::Affine(0)];
        let m = Multifiltration::new(&x, pts).unwrap();
        assert_eq!(m.dim(&[2, 3, 2]).unwrap(), 7);
        assert_eq!(m.dim(&[3, 3, 3]).unwrap(), 7);
        assert_eq!(m.dim(&[1, 0, 4]).unwrap(), 5);
        assert!(osc_subspace(&x, &CurvePoint::Infinity, 8).is_err());
    }

    #[test]
    fn point_parsing() {
        let q = RationalField;
        assert_eq!(CurvePoint::parse(&q, "(1:0)").unwrap(), CurvePoint::Infinity);
        assert_eq!(CurvePoint::parse(&q, "(3:6)").unwrap(), CurvePoint::Affine(q.parse("1/2").unwrap()));
        assert!(CurvePoint::parse(&q, "(0:0)").is_err());
        assert_eq!(CurvePoint::<num_rational::BigRational>::Infinity.format(&q), "(1:0)");
    }
}
