//! Linear projections `X -> P(V/L)` of a curve: center validation,
//! ramification clusters, and per-cluster gap functions, degrees and types.
//!
//! Sections live in `W`, the center `L` in `V = W^*`, and `M = L^⊥ ⊂ W` is
//! the linear system of the projection. At a cluster `P_1, ..., P_r` the
//! local linear system is `R' = (1/s) M` expanded on each branch, for some
//! `s ∈ M` not vanishing at any `P_j`.

mod ramification;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use ramification::{basepoints_by_scan, check_center, fiber, find_ramification, BasepointVerdict, Fiber};

use crate::classify::{
    classify_ring, classify_vector_space, resolve_with_algebra, ClassifyError, SingularityType,
};
use crate::curve::{local_expansion, Curve, CurveError, Multifiltration, RationalNormalCurve};
use crate::field::Field;
use crate::gapfn::{multi_indices_up_to, stabilized_closure, GapError, GapFunction, GapKind, TruncationPolicy};
use crate::linalg::{self, Echelon};
use crate::series::{SeriesError, TruncatedSeries};
use crate::subspace::SeriesSubspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Gap(#[from] GapError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid center: {0}")]
    InvalidCenter(String),
    #[error("center meets the curve at {0:?}")]
    Basepoints(Vec<String>),
    #[error("forms of the linear system share a factor of degree {residual_degree} without roots in the base field; basepoints may exist over an extension")]
    BasepointsOverExtension { residual_degree: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("projection is not birational onto its image, or meets infinitely many secants")]
    NonBirational,
    #[error("ramification points over an extension of the base field (residual degree {residual_degree})")]
    RamificationOverExtension { residual_degree: usize },
    #[error("{unexplained} ramification candidate(s) are not rational; rerun over F_p or give the clusters explicitly")]
    IrrationalRamification { unexplained: usize },
    #[error("points sharing the image of {point} are defined over an extension (residual degree {residual_degree})")]
    PartnersOverExtension { point: String, residual_degree: usize },
    #[error("elimination needs a field with more than {needed} elements, got {modulus}")]
    FieldTooSmall { needed: u64, modulus: u64 },
    #[error("coefficients do not reduce modulo the elimination prime")]
    BadReduction,
    #[error("points {0} and {1} are not joined by a secant meeting the center")]
    NotASecantCluster(String, String),
    #[error("points {0} and {1} lie in different clusters but their secant meets the center")]
    ClustersNotSeparated(String, String),
    #[error("λ' mismatch at α = {alpha:?}: series side {series}, flag side {flag}")]
    DualPathMismatch { alpha: Vec<usize>, series: usize, flag: usize },
    #[error("the gap function of the local linear system at {0} is not standard")]
    NotStandard(String),
    #[error("type from λ' ({vector_space}) disagrees with the closed algebra ({ring})")]
    ClassificationMismatch { vector_space: String, ring: String },
    #[error("no section of the linear system is nonvanishing at every point of {0}")]
    NoNonvanishingSection(String),
}

/// `L ⊂ V`, stored as reduced echelon rows.
#[derive(Clone, Debug)]
pub struct ProjectionCenter<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> ProjectionCenter<F> {
    /// `L` spanned by `rows`, which must be independent and nonempty.
    pub fn from_rows(field: F, dim: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, ProjectError> {
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(ProjectError::InvalidCenter(format!("row of length {} in a space of dimension {dim}", r.len())));
        }
        let count = rows.len();
        let e = Echelon::from_rows(&field, dim, rows);
        if e.dim() != count {
            return Err(ProjectError::InvalidCenter(format!("{count} rows span only a {}-dimensional space", e.dim())));
        }
        Self::from_echelon(field, e)
    }

    /// `L` spanned by possibly dependent vectors, e.g. points of `P(L)`.
    pub fn from_points(field: F, dim: usize, points: Vec<Vec<F::Elem>>) -> Result<Self, ProjectError> {
        if let Some(r) = points.iter().find(|r| r.len() != dim) {
            return Err(ProjectError::InvalidCenter(format!("point with {} coordinates in a space of dimension {dim}", r.len())));
        }
        let e = Echelon::from_rows(&field, dim, points);
        Self::from_echelon(field, e)
    }

    /// `L = M^⊥` for the linear system spanned by `forms`.
    pub fn from_linear_system(field: F, dim: usize, forms: Vec<Vec<F::Elem>>) -> Result<Self, ProjectError> {
        if let Some(r) = forms.iter().find(|r| r.len() != dim) {
            return Err(ProjectError::InvalidCenter(format!("form with {} coefficients, expected {dim}", r.len())));
        }
        let rows = linalg::nullspace(&field, dim, &forms);
        let e = Echelon::from_rows(&field, dim, rows);
        Self::from_echelon(field, e)
    }

    fn from_echelon(field: F, e: Echelon<F::Elem>) -> Result<Self, ProjectError> {
        let dim = e.ncols();
        if e.dim() == 0 {
            return Err(ProjectError::InvalidCenter("L = 0".into()));
        }
        if e.dim() + 2 > dim {
            return Err(ProjectError::InvalidCenter(format!("ℓ = {} leaves no curve in P^{}", e.dim(), dim as i64 - e.dim() as i64 - 1)));
        }
        Ok(Self { field, dim, rows: e.into_rows() })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    /// `ℓ = dim L`.
    pub fn ell(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the target projective space.
    pub fn n(&self) -> usize {
        self.dim - self.ell() - 1
    }

    /// A basis of `M = L^⊥`, reduced.
    pub fn linear_system(&self) -> Vec<Vec<F::Elem>> {
        let ns = linalg::nullspace(&self.field, self.dim, &self.rows);
        Echelon::from_rows(&self.field, self.dim, ns).into_rows()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        v.len() == self.dim && Echelon::from_rows(&self.field, self.dim, self.rows.iter().cloned()).contains(&self.field, v)
    }

    fn check_curve<X: Curve<F>>(&self, curve: &X) -> Result<(), ProjectError> {
        if curve.dim() != self.dim {
            return Err(ProjectError::InvalidCenter(format!("center lives in dimension {}, curve in {}", self.dim, curve.dim())));
        }
        Ok(())
    }
}

/// The hypotheses under which the genus bound and the classification hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hypotheses {
    pub d: usize,
    pub n: usize,
    pub ell: usize,
    pub genus: usize,
    /// `2ℓ < d - 2g`.
    pub two_ell_lt_d: bool,
    /// `ℓ <= 3`, needed for every cluster to have `δ <= 3`.
    pub ell_le_3: bool,
    pub n_gt_2: bool,
}

impl Hypotheses {
    pub fn of<F: Field, X: Curve<F>>(center: &ProjectionCenter<F>, curve: &X) -> Self {
        let (d, ell, g) = (curve.degree(), center.ell(), curve.genus());
        let n = center.n();
        Hypotheses {
            d,
            n,
            ell,
            genus: g,
            two_ell_lt_d: 2 * ell + 2 * g < d,
            ell_le_3: ell <= 3,
            n_gt_2: n > 2,
        }
    }

    pub fn all(&self) -> bool {
        self.two_ell_lt_d && self.ell_le_3 && self.n_gt_2
    }

    fn gate(&self) -> Result<(), ProjectError> {
        if !self.two_ell_lt_d {
            return Err(ProjectError::HypothesisViolation(format!(
                "2ℓ < d - 2g fails: ℓ = {}, d = {}, g = {}",
                self.ell, self.d, self.genus
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Refuse centers with `2ℓ >= d - 2g`. `ℓ <= 3` is only reported.
    pub enforce_hypotheses: bool,
    pub truncation_cap: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { enforce_hypotheses: true, truncation_cap: TruncationPolicy::DEFAULT_CAP, seed: 0 }
    }
}

/// One singular (or queried) point of the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterReport<P> {
    pub points: Vec<P>,
    pub delta: usize,
    /// `None` when `δ > 3`.
    pub singularity: Option<SingularityType>,
    /// Result of the λ' table before resolving ambiguous pairs.
    pub vs_type: Option<SingularityType>,
    /// λ'(α) for `|α| <= 2δ + 2`, lexicographic.
    pub lambda_prime: Vec<(Vec<usize>, usize)>,
    /// Number of `α` on which both computations of λ' were compared.
    pub dual_path_checked: usize,
    pub truncation: usize,
}

impl<P> ClusterReport<P> {
    pub fn branches(&self) -> usize {
        self.points.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundVerdict {
    pub delta_total: usize,
    pub ell: usize,
    pub within_ell: bool,
    /// `Σδ <= d - n`, only meaningful for rational curves.
    pub within_d_minus_n: Option<bool>,
}

impl BoundVerdict {
    pub fn pass(&self) -> bool {
        self.within_ell && self.within_d_minus_n.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionReport<P> {
    pub field: String,
    pub hypotheses: Hypotheses,
    pub basepoint_free: bool,
    pub birational: bool,
    pub clusters: Vec<ClusterReport<P>>,
}

impl<P> ProjectionReport<P> {
    pub fn delta_total(&self) -> usize {
        self.clusters.iter().map(|c| c.delta).sum()
    }

    /// Arithmetic genus `g + Σδ` of the image.
    pub fn arithmetic_genus(&self) -> usize {
        self.hypotheses.genus + self.delta_total()
    }
}

/// `Σδ <= ℓ`, and `Σδ <= d - n` when the curve is rational.
pub fn verify_genus_bound<P>(report: &ProjectionReport<P>) -> BoundVerdict {
    let h = &report.hypotheses;
    let total = report.delta_total();
    BoundVerdict {
        delta_total: total,
        ell: h.ell,
        within_ell: total <= h.ell,
        within_d_minus_n: (h.genus == 0).then(|| total + h.n <= h.d),
    }
}

const SECTION_RETRIES: usize = 64;

/// A section of `M` nonvanishing at every point.
pub fn nonvanishing_section<F: Field, X: Curve<F>>(
    curve: &X,
    forms: &[Vec<F::Elem>],
    points: &[X::Point],
    seed: u64,
) -> Result<Vec<F::Elem>, ProjectError> {
    let f = curve.field();
    let values: Vec<Vec<F::Elem>> = points.iter().map(|p| curve.jet_functional(p, 0)).collect::<Result<_, _>>()?;
    let good = |s: &[F::Elem]| values.iter().all(|v| !f.is_zero(&linalg::dot(f, v, s)));
    if let Some(s) = forms.iter().find(|s| good(s)) {
        return Ok(s.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SECTION_RETRIES {
        let mut s = vec![f.zero(); curve.dim()];
        for form in forms {
            let c = f.random(&mut rng);
            for (x, y) in s.iter_mut().zip(form) {
                *x = f.add(x, &f.mul(&c, y));
            }
        }
        if good(&s) {
            return Ok(s);
        }
    }
    Err(ProjectError::NoNonvanishingSection(format_points(points)))
}

fn format_points<P: std::fmt::Display>(points: &[P]) -> String {
    let v: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// `R' = (1/s) M` on the branches at `points`, truncated at order `n`.
pub fn cluster_series_space<F: Field, X: Curve<F>>(
    curve: &X,
    forms: &[Vec<F::Elem>],
    s: &[F::Elem],
    points: &[X::Point],
    n: usize,
) -> Result<SeriesSubspace<F::Elem>, ProjectError> {
    let f = curve.field();
    let r = points.len();
    let inverses: Vec<TruncatedSeries<F::Elem>> =
        points.iter().map(|p| local_expansion(curve, s, p, n)?.inverse(f).map_err(ProjectError::from)).collect::<Result<_, _>>()?;
    let mut space = SeriesSubspace::zero(r, n);
    for form in forms {
        let mut coeffs = Vec::with_capacity(r * n);
        for (p, inv) in points.iter().zip(&inverses) {
            coeffs.extend(local_expansion(curve, form, p, n)?.mul(f, inv)?.into_coeffs());
        }
        space.insert(f, TruncatedSeries::from_flat(r, n, coeffs))?;
    }
    Ok(space)
}

/// Checks that `points` are distinct, avoid `P(L)` and form whole secant
/// clusters.
fn validate_clusters<F: Field, X: Curve<F>>(
    center: &ProjectionCenter<F>,
    curve: &X,
    clusters: &[Vec<X::Point>],
) -> Result<(), ProjectError> {
    let f = curve.field();
    let all: Vec<(usize, &X::Point)> = clusters.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |p| (i, p))).collect();
    for (k, (_, p)) in all.iter().enumerate() {
        if all[..k].iter().any(|(_, q)| q == p) {
            return Err(CurveError::RepeatedPoint(p.to_string()).into());
        }
        if center.contains(&curve.jet_functional(p, 0)?) {
            return Err(ProjectError::Basepoints(vec![p.to_string()]));
        }
    }
    for (k, (ci, p)) in all.iter().enumerate() {
        for (cj, q) in &all[..k] {
            let mf = Multifiltration::new(curve, vec![(*q).clone(), (*p).clone()])?;
            let secant = mf.subspace(&[1, 1])?;
            let meets = linalg::intersection_dim(f, center.dim, &center.rows, &secant) > 0;
            if ci == cj && !meets {
                return Err(ProjectError::NotASecantCluster(q.to_string(), p.to_string()));
            }
            if ci != cj && meets {
                return Err(ProjectError::ClustersNotSeparated(q.to_string(), p.to_string()));
            }
        }
    }
    Ok(())
}

/// Analyzes the given clusters, which are validated but not searched for.
pub fn analyze_at_points<F: Field, X: Curve<F>>(
    center: &ProjectionCenter<F>,
    curve: &X,
    clusters: &[Vec<X::Point>],
    opts: &AnalyzeOptions,
) -> Result<Vec<ClusterReport<X::Point>>, ProjectError> {
    center.check_curve(curve)?;
    validate_clusters(center, curve, clusters)?;
    clusters.iter().enumerate().map(|(i, c)| analyze_cluster(center, curve, c, opts, i as u64)).collect()
}

fn analyze_cluster<F: Field, X: Curve<F>>(
    center: &ProjectionCenter<F>,
    curve: &X,
    points: &[X::Point],
    opts: &AnalyzeOptions,
    index: u64,
) -> Result<ClusterReport<X::Point>, ProjectError> {
    let f = curve.field();
    let r = points.len();
    let d = curve.degree();
    let forms = center.linear_system();
    let s = nonvanishing_section(curve, &forms, points, opts.seed ^ index)?;
    // λ' must be exact for |α| <= d + 1, so start beyond that.
    let policy = TruncationPolicy::for_ell(center.ell(), d + 2, opts.truncation_cap);
    let st = stabilized_closure(f, policy, |n| {
        cluster_series_space(curve, &forms, &s, points, n).map_err(|e| match e {
            ProjectError::Gap(g) => g,
            ProjectError::Series(s) => GapError::Series(s),
            other => panic!("local expansion failed after validation: {other}"),
        })
    })?;
    let lambda = GapFunction::new(f.clone(), st.space.clone(), GapKind::VectorSpace);

    // λ'(α) = |α| - dim F^α + dim(L ∩ F^α); the middle terms cancel while
    // the flags are in general position.
    let mf = Multifiltration::new(curve, points.to_vec())?;
    let bound = (d + 1).saturating_sub(2 * curve.genus());
    let mut checked = 0;
    for alpha in multi_indices_up_to(r, bound) {
        let fa = mf.subspace(&alpha)?;
        let flag = linalg::intersection_dim(f, center.dim, &center.rows, &fa);
        let flag_side = alpha.iter().sum::<usize>() + flag - fa.len();
        let series = lambda.eval(&alpha)?;
        if series != flag_side {
            return Err(ProjectError::DualPathMismatch { alpha, series, flag: flag_side });
        }
        checked += 1;
    }

    if !lambda.is_standard()? {
        return Err(ProjectError::NotStandard(format_points(points)));
    }
    let delta = st.delta;
    let (singularity, vs_type) = if delta == 0 {
        (Some(SingularityType::Smooth), Some(SingularityType::Smooth))
    } else if delta <= 3 {
        let vs = classify_vector_space(&lambda)?;
        let resolved = match vs {
            SingularityType::Ambiguous(pair) => resolve_with_algebra(&st.algebra, pair)?,
            t => t,
        };
        let ring = classify_ring(&st.algebra)?;
        if ring != resolved {
            return Err(ProjectError::ClassificationMismatch { vector_space: resolved.to_string(), ring: ring.to_string() });
        }
        (Some(resolved), Some(vs))
    } else {
        (None, None)
    };
    let sample_bound = (2 * delta + 2).min(st.truncation);
    let lambda_prime =
        multi_indices_up_to(r, sample_bound).into_iter().map(|a| lambda.eval(&a).map(|v| (a, v))).collect::<Result<_, _>>()?;
    Ok(ClusterReport {
        points: points.to_vec(),
        delta,
        singularity,
        vs_type,
        lambda_prime,
        dual_path_checked: checked,
        truncation: st.truncation,
    })
}

/// The full pipeline for a projection of the rational normal curve.
pub fn analyze<F: Field>(
    center: &ProjectionCenter<F>,
    curve: &RationalNormalCurve<F>,
    opts: &AnalyzeOptions,
) -> Result<ProjectionReport<crate::curve::CurvePoint<F::Elem>>, ProjectError> {
    center.check_curve(curve)?;
    let hypotheses = Hypotheses::of(center, curve);
    if opts.enforce_hypotheses {
        hypotheses.gate()?;
    }
    match check_center(center, curve)? {
        BasepointVerdict::Free => {}
        BasepointVerdict::Basepoints(ps) => {
            return Err(ProjectError::Basepoints(ps.iter().map(|p| p.format(curve.field())).collect()))
        }
        BasepointVerdict::Indeterminate { residual_degree } => {
            return Err(ProjectError::BasepointsOverExtension { residual_degree })
        }
    }
    let clusters = find_ramification(center, curve, opts.seed)?;
    let reports = analyze_at_points(center, curve, &clusters, opts)?;
    Ok(ProjectionReport {
        field: curve.field().name(),
        hypotheses,
        basepoint_free: true,
        birational: true,
        clusters: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::SingularityCase;
    use crate::curve::CurvePoint;
    use crate::field::{PrimeField, RationalField};

    fn monomial_forms<F: Field>(f: &F, d: usize, exps_of_x: &[usize]) -> Vec<Vec<F::Elem>> {
        // x^e y^{d-e} is basis vector d - e
        exps_of_x
            .iter()
            .map(|&e| (0..=d).map(|k| if k == d - e { f.one() } else { f.zero() }).collect())
            .collect()
    }

    #[test]
    fn center_constructors_agree() {
        let f = PrimeField::new(10007).unwrap();
        let forms = monomial_forms(&f, 5, &[5, 2, 1, 0]);
        let c = ProjectionCenter::from_linear_system(f, 6, forms.clone()).unwrap();
        assert_eq!(c.ell(), 2);
        assert_eq!(c.n(), 3);
        let m = c.linear_system();
        assert_eq!(linalg::sum_dim(&f, 6, &m, &forms), 4);
        let again = ProjectionCenter::from_rows(f, 6, c.rows().to_vec()).unwrap();
        assert_eq!(again.rows(), c.rows());
        assert!(ProjectionCenter::from_rows(f, 6, vec![vec![1, 0, 0, 0, 0, 0], vec![2, 0, 0, 0, 0, 0]]).is_err());
    }

    #[test]
    fn rhamphoid_quintic_cusp_over_q() {
        let q = RationalField;
        let x = RationalNormalCurve::new(q, 5).unwrap();
        let forms = monomial_forms(&q, 5, &[5, 2, 1, 0]);
        let c = ProjectionCenter::from_linear_system(q, 6, forms).unwrap();
        let rep = analyze(&c, &x, &AnalyzeOptions::default()).unwrap();
        assert_eq!(rep.clusters.len(), 1);
        let cl = &rep.clusters[0];
        assert_eq!(cl.points, vec![CurvePoint::Infinity]);
        assert_eq!(cl.delta, 2);
        assert_eq!(cl.singularity, Some(SingularityType::Case(SingularityCase::T2_1a)));
        assert!(verify_genus_bound(&rep).pass());
    }

    #[test]
    fn generic_centers_are_smooth() {
        let f = PrimeField::new(10007).unwrap();
        let x = RationalNormalCurve::new(f, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rows: Vec<Vec<u64>> = (0..3).map(|_| (0..9).map(|_| f.random(&mut rng)).collect()).collect();
        let c = ProjectionCenter::from_rows(f, 9, rows).unwrap();
        let rep = analyze(&c, &x, &AnalyzeOptions::default()).unwrap();
        assert!(rep.clusters.is_empty(), "{:?}", rep.clusters);
        assert_eq!(rep.delta_total(), 0);
    }

    #[test]
    fn hypothesis_gate() {
        let f = PrimeField::new(10007).unwrap();
        let x = RationalNormalCurve::new(f, 5).unwrap();
        let rows = vec![vec![1, 0, 0, 0, 0, 3], vec![0, 1, 0, 0, 2, 0], vec![0, 0, 1, 5, 0, 0]];
        let c = ProjectionCenter::from_rows(f, 6, rows).unwrap();
        assert!(matches!(analyze(&c, &x, &AnalyzeOptions::default()), Err(ProjectError::HypothesisViolation(_))));
    }

    #[test]
    fn manual_clusters_are_validated() {
        let f = PrimeField::new(10007).unwrap();
        let x = RationalNormalCurve::new(f, 5).unwrap();
        let forms = monomial_forms(&f, 5, &[5, 2, 1, 0]);
        let c = ProjectionCenter::from_linear_system(f, 6, forms).unwrap();
        let bad = vec![vec![CurvePoint::Affine(0), CurvePoint::Affine(1)]];
        assert!(matches!(
            analyze_at_points(&c, &x, &bad, &AnalyzeOptions::default()),
            Err(ProjectError::NotASecantCluster(..))
        ));
        let smooth = analyze_at_points(&c, &x, &[vec![CurvePoint::Affine(1)]], &AnalyzeOptions::default()).unwrap();
        assert_eq!(smooth[0].delta, 0);
        assert_eq!(smooth[0].singularity, Some(SingularityType::Smooth));
    }
}
