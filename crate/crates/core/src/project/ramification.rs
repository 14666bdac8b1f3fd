//! Basepoints and ramification of the projection of a rational normal curve.
//!
//! A pair of distinct points `a, b` has the same image iff every
//! `D_ij(a, b) = (f_i(a) f_j(b) - f_j(a) f_i(b)) / (a - b)` vanishes, and a
//! point is tangent to the center iff `D_ij(a, a) = 0` for all `i, j`. We
//! take random antisymmetric combinations `G = f(a)^T K f(b) / (a - b)`,
//! eliminate `b` by resultants evaluated at many values of `a`, and
//! interpolate. Candidates are confirmed one by one through their fibers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ProjectError, ProjectionCenter};
use crate::curve::{osc_subspace, Curve, CurvePoint, RationalNormalCurve};
use crate::field::{Field, PrimeField};
use crate::linalg::{self, Echelon};
use crate::poly;

/// Outcome of the basepoint test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasepointVerdict<E> {
    Free,
    /// Basepoints found in the base field.
    Basepoints(Vec<CurvePoint<E>>),
    /// None in the base field, but the forms share a factor without roots
    /// there.
    Indeterminate { residual_degree: usize },
}

/// Whether `P(L)` meets the curve.
pub fn check_center<F: Field>(
    center: &ProjectionCenter<F>,
    curve: &RationalNormalCurve<F>,
) -> Result<BasepointVerdict<F::Elem>, ProjectError> {
    let f = curve.field();
    center.check_curve(curve)?;
    let forms = center.linear_system();
    let mut g: Vec<F::Elem> = Vec::new();
    for form in &forms {
        g = poly::gcd(f, &g, &curve.affine_polynomial(form));
    }
    let mut points = Vec::new();
    let mut residual = 0;
    if g.len() > 1 {
        let rs = f.roots(&g);
        residual = rs.residual_degree;
        points.extend(rs.roots.into_iter().map(CurvePoint::Affine));
    }
    // Every form vanishes at (1:0) iff its x^d coefficient is zero.
    if forms.iter().all(|form| f.is_zero(&form[0])) {
        points.push(CurvePoint::Infinity);
    }
    Ok(if !points.is_empty() {
        BasepointVerdict::Basepoints(points)
    } else if residual > 0 {
        BasepointVerdict::Indeterminate { residual_degree: residual }
    } else {
        BasepointVerdict::Free
    })
}

/// Basepoints by scanning every point of `P^1(F_p)`.
pub fn basepoints_by_scan(
    center: &ProjectionCenter<PrimeField>,
    curve: &RationalNormalCurve<PrimeField>,
) -> Vec<CurvePoint<u64>> {
    let p = curve.field().modulus();
    let l = Echelon::from_rows(curve.field(), center.ambient_dim(), center.rows().iter().cloned());
    std::iter::once(CurvePoint::Infinity)
        .chain((0..p).map(CurvePoint::Affine))
        .filter(|pt| l.contains(curve.field(), &curve.embed(pt)))
        .collect()
}

/// The points with the same image as `p`, other than `p`, and whether the
/// center is tangent at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber<E> {
    pub point: CurvePoint<E>,
    pub partners: Vec<CurvePoint<E>>,
    pub tangent: bool,
}

impl<E> Fiber<E> {
    pub fn is_ramified(&self) -> bool {
        self.tangent || !self.partners.is_empty()
    }
}

pub fn fiber<F: Field>(
    center: &ProjectionCenter<F>,
    curve: &RationalNormalCurve<F>,
    p: &CurvePoint<F::Elem>,
) -> Result<Fiber<F::Elem>, ProjectError> {
    let f = curve.field();
    let forms = center.linear_system();
    let c: Vec<F::Elem> = forms.iter().map(|form| curve.evaluate(form, p)).collect();
    let Some(k) = c.iter().position(|x| !f.is_zero(x)) else {
        return Err(ProjectError::Basepoints(vec![p.format(f)]));
    };
    let affine: Vec<Vec<F::Elem>> = forms.iter().map(|form| curve.affine_polynomial(form)).collect();
    let mut g: Vec<F::Elem> = Vec::new();
    for (i, fi) in affine.iter().enumerate() {
        if i == k {
            continue;
        }
        let h = poly::sub(f, &poly::scale(f, fi, &c[k]), &poly::scale(f, &affine[k], &c[i]));
        g = poly::gcd(f, &g, &h);
    }
    if g.is_empty() {
        return Err(ProjectError::NonBirational);
    }
    let mut partners = Vec::new();
    if g.len() > 1 {
        let rs = f.roots(&g);
        if rs.residual_degree > 0 {
            return Err(ProjectError::PartnersOverExtension { point: p.format(f), residual_degree: rs.residual_degree });
        }
        for a in rs.roots {
            let q = CurvePoint::Affine(a);
            if &q != p {
                partners.push(q);
            }
        }
    }
    if *p != CurvePoint::Infinity {
        let at_inf: Vec<F::Elem> = forms.iter().map(|form| form[0].clone()).collect();
        // (1:0) maps to the same point iff the value vectors are proportional.
        if linalg::rank(f, c.len(), &[c.clone(), at_inf]) == 1 {
            partners.push(CurvePoint::Infinity);
        }
    }
    let v2 = osc_subspace(curve, p, 2)?;
    let tangent = linalg::intersection_dim(f, center.ambient_dim(), center.rows(), &v2) > 0;
    Ok(Fiber { point: p.clone(), partners, tangent })
}

/// Number of resultants whose gcd cuts out the ramification abscissae.
const RESULTANTS: usize = 3;
const ELIMINATION_ATTEMPTS: u64 = 5;

/// Roots mod `q` of the elimination polynomial, plus the number of roots
/// over the algebraic closure of `F_q` that are not in `F_q`.
fn eliminate(q: &PrimeField, forms: &[Vec<u64>], d: usize, seed: u64) -> Result<(Vec<u64>, usize), ProjectError> {
    let m = forms.len();
    let da = d - 1;
    let deg_bound = 2 * da * da;
    if q.modulus() <= deg_bound as u64 + 1 {
        return Err(ProjectError::FieldTooSmall { needed: deg_bound as u64 + 2, modulus: q.modulus() });
    }
    if da == 0 {
        return Ok((Vec::new(), 0));
    }
    let xs: Vec<u64> = (0..=deg_bound as u64).collect();
    for attempt in 0..ELIMINATION_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(attempt + 1)));
        let ks: Vec<Vec<Vec<u64>>> = (0..RESULTANTS)
            .map(|_| {
                let mut k = vec![vec![0u64; m]; m];
                for i in 0..m {
                    for j in i + 1..m {
                        let v = q.random(&mut rng);
                        k[i][j] = v;
                        k[j][i] = q.neg(&v);
                    }
                }
                k
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..RESULTANTS).flat_map(|i| (i + 1..RESULTANTS).map(move |j| (i, j))).collect();
        let mut values = vec![Vec::with_capacity(xs.len()); pairs.len()];
        for a in &xs {
            let fa: Vec<u64> = forms.iter().map(|p| poly::eval(q, p, a)).collect();
            let gs: Vec<Vec<u64>> = ks
                .iter()
                .map(|k| {
                    let w: Vec<u64> = (0..m).map(|j| (0..m).fold(0, |acc, i| q.add(&acc, &q.mul(&k[i][j], &fa[i])))).collect();
                    let mut num: Vec<u64> = Vec::new();
                    for (wj, pj) in w.iter().zip(forms) {
                        num = poly::add(q, &num, &poly::scale(q, pj, wj));
                    }
                    // num(b) / (a - b)
                    let (quot, rem) = poly::divrem(q, &num, &[q.neg(a), 1]);
                    debug_assert!(rem.is_empty());
                    poly::scale(q, &quot, &q.neg(&1))
                })
                .collect();
            for (slot, &(i, j)) in values.iter_mut().zip(&pairs) {
                slot.push(poly::resultant(q, &gs[i], &gs[j], da, da));
            }
        }
        let res: Vec<Vec<u64>> = values.iter().map(|ys| poly::interpolate(q, &xs, ys)).collect();
        if res.iter().any(|r| r.is_empty()) {
            continue;
        }
        let mut a = Vec::new();
        for r in &res {
            a = poly::gcd(q, &a, r);
        }
        let rs = poly::prime_field_roots(q, &a);
        return Ok((rs.roots, rs.residual_degree));
    }
    Err(ProjectError::NonBirational)
}

/// Points of the curve where the projection fails to be an immersion or
/// fails to be injective, grouped into fibers.
pub fn find_ramification<F: Field>(
    center: &ProjectionCenter<F>,
    curve: &RationalNormalCurve<F>,
    seed: u64,
) -> Result<Vec<Vec<CurvePoint<F::Elem>>>, ProjectError> {
    let f = curve.field();
    center.check_curve(curve)?;
    let d = curve.degree();
    let qf = PrimeField::new(f.elimination_modulus()).map_err(|_| ProjectError::FieldTooSmall {
        needed: 3,
        modulus: f.elimination_modulus(),
    })?;
    let forms = center.linear_system();
    let reduced: Option<Vec<Vec<u64>>> = forms
        .iter()
        .map(|form| {
            let a = curve.affine_polynomial(form);
            a.iter().map(|c| f.reduce(c)).collect::<Option<Vec<u64>>>().map(|v| poly::trim(&qf, v))
        })
        .collect();
    let reduced = reduced.ok_or(ProjectError::BadReduction)?;
    let exact_field = f.size() == Some(qf.modulus());
    let small = (2 * (d - 1) * (d - 1)) as u64 + 1;
    let (roots, residual) = if exact_field && qf.modulus() <= small {
        // Too few points to interpolate; every point is a candidate.
        ((0..qf.modulus()).collect(), 0)
    } else {
        eliminate(&qf, &reduced, d, seed)?
    };
    if exact_field && residual > 0 {
        return Err(ProjectError::RamificationOverExtension { residual_degree: residual });
    }
    let mut unexplained = residual;
    let mut candidates: Vec<CurvePoint<F::Elem>> = vec![CurvePoint::Infinity];
    for r in roots {
        match f.lift(r) {
            Some(a) => candidates.push(CurvePoint::Affine(a)),
            None => unexplained += 1,
        }
    }
    let mut fibers = Vec::new();
    for p in &candidates {
        let fb = fiber(center, curve, p)?;
        if fb.is_ramified() {
            fibers.push(fb);
        } else if !exact_field && *p != CurvePoint::Infinity {
            unexplained += 1;
        }
    }
    if unexplained > 0 {
        return Err(ProjectError::IrrationalRamification { unexplained });
    }
    // Fibers are classes of an equivalence relation; merge overlapping ones.
    let mut clusters: Vec<Vec<CurvePoint<F::Elem>>> = Vec::new();
    for fb in fibers {
        let mut set = vec![fb.point.clone()];
        set.extend(fb.partners);
        let (hit, mut rest): (Vec<_>, Vec<_>) = clusters.into_iter().partition(|c| c.iter().any(|x| set.contains(x)));
        for c in hit {
            set.extend(c);
        }
        set.sort();
        set.dedup();
        rest.push(set);
        clusters = rest;
    }
    clusters.sort();
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::project::ProjectionCenter;

    #[test]
    fn basepoints_match_scan() {
        let f = PrimeField::new(11).unwrap();
        let x = RationalNormalCurve::new(f, 4).unwrap();
        // L through ν(2:1) and a random vector
        let p = CurvePoint::Affine(2);
        let rows = vec![x.embed(&p), vec![1, 3, 0, 7, 5]];
        let c = ProjectionCenter::from_rows(f, 5, rows).unwrap();
        let scan = basepoints_by_scan(&c, &x);
        assert!(scan.contains(&p));
        match check_center(&c, &x).unwrap() {
            BasepointVerdict::Basepoints(found) => {
                let mut a = found.clone();
                a.sort();
                let mut b = scan.clone();
                b.sort();
                assert_eq!(a, b);
            }
            other => panic!("{other:?}"),
        }
    }
}
