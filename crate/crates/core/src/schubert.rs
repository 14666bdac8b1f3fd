//! Schubert strata of projection centers with a prescribed singularity at
//! prescribed points, and sampling from them.
//!
//! The closed part of the λ' conditions of a type is a set of incidence
//! conditions `dim(L ∩ F^α) >= v` whose α form a chain, so they are the
//! Schubert conditions of a flag built from the multifiltration. A cell
//! index `a_1 < ... < a_ℓ` records that `L` has a basis `v_k ∈ F_{a_k}`
//! (`F_j` the `j`-dimensional flag space); the partition is
//! `λ_k = n + 1 + k - a_k`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classify::{SingularityCase, SingularityType};
use crate::curve::{local_expansion, Curve, CurveError, CurvePoint, Multifiltration, RationalNormalCurve};
use crate::field::Field;
use crate::linalg::{self, Echelon};
use crate::project::{analyze, nonvanishing_section, AnalyzeOptions, ProjectError, ProjectionCenter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchubertError {
    #[error(transparent)]
    Project(#[from] ProjectError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("type {case} needs {expected} points, got {got}")]
    PointCount { case: SingularityCase, expected: usize, got: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("infeasible configuration: Σδ = {delta_total} exceeds ℓ = {ell}")]
    Infeasible { delta_total: usize, ell: usize },
    #[error("sampling needs a field with at least 101 elements, got {0}")]
    FieldTooSmall(u64),
    #[error("every one of {draws} draws landed outside the open stratum")]
    Boundary { draws: usize },
    #[error("degenerate sample: {0}")]
    Degenerate(String),
}

/// `dim(L ∩ F^α) >= at_least`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Condition {
    pub alpha: Vec<usize>,
    pub at_least: usize,
}

/// Extra closed condition separating a type from the other member of its
/// ambiguous pair; the open part is imposed by [`sample_center`].
fn refinement(case: SingularityCase) -> Option<Condition> {
    match case {
        SingularityCase::T3_1d => Some(Condition { alpha: vec![6], at_least: 3 }),
        SingularityCase::T3_2f => Some(Condition { alpha: vec![3, 3], at_least: 3 }),
        _ => None,
    }
}

/// The closed conditions that are not implied by others, sorted along the
/// chain. With `refined`, the extra condition of 3.1.d or 3.2.f is included.
pub fn closed_conditions(case: SingularityCase, refined: bool) -> Vec<Condition> {
    let r = case.branches();
    let mut all: Vec<Condition> = case
        .vs_conditions()
        .iter()
        .filter(|(_, v)| *v > 0)
        .map(|(a, v)| Condition { alpha: a.to_vec(), at_least: *v })
        .collect();
    if r > 1 {
        all.push(Condition { alpha: vec![1; r], at_least: r - 1 });
    }
    if refined {
        all.extend(refinement(case));
    }
    let implied = |c: &Condition, by: &Condition| {
        c != by && by.at_least >= c.at_least && by.alpha.iter().zip(&c.alpha).all(|(b, a)| b <= a)
    };
    let mut out: Vec<Condition> = Vec::new();
    for c in &all {
        if !all.iter().any(|b| implied(c, b)) && !out.contains(c) {
            out.push(c.clone());
        }
    }
    out.sort_by_key(|c| (c.at_least, c.alpha.iter().sum::<usize>()));
    out
}

/// Multi-indices `α^(1) < ... < α^(m)` with `|α^(j)| = j` passing through
/// every condition; the flag is `F_j = F^{α^(j)}`. Between conditions the
/// smallest eligible coordinate is raised first.
pub fn flag_chain(conditions: &[Condition]) -> Vec<Vec<usize>> {
    let Some(first) = conditions.first() else { return Vec::new() };
    let mut cur = vec![0; first.alpha.len()];
    let mut chain = Vec::new();
    for c in conditions {
        assert!(cur.iter().zip(&c.alpha).all(|(x, y)| x <= y), "conditions do not form a chain");
        while cur != c.alpha {
            let i = (0..cur.len()).filter(|&i| cur[i] < c.alpha[i]).min_by_key(|&i| (cur[i], i)).expect("eligible");
            cur[i] += 1;
            chain.push(cur.clone());
        }
    }
    chain
}

/// Cell indices `a_1 < ... < a_ℓ` (1-based) of the Schubert variety.
pub fn cell_indices(conditions: &[Condition], ell: usize, n: usize) -> Vec<usize> {
    (1..=ell)
        .map(|k| {
            conditions
                .iter()
                .filter(|c| c.at_least >= k)
                .map(|c| c.alpha.iter().sum::<usize>() - (c.at_least - k))
                .fold(n + 1 + k, usize::min)
        })
        .collect()
}

/// `λ_k = n + 1 + k - a_k`, zero parts dropped.
pub fn partition_of_cell(cell: &[usize], n: usize) -> Vec<usize> {
    cell.iter().enumerate().map(|(i, &a)| n + 2 + i - a).filter(|&p| p > 0).collect()
}

/// The partition listed for the type, evaluated at `n`.
pub fn table_partition(case: SingularityCase, n: usize) -> Vec<usize> {
    case.partition_offsets().iter().map(|o| n - o).collect()
}

/// The listed codimension `a n - b` of the family where the points vary.
pub fn table_codim(case: SingularityCase, n: usize) -> usize {
    let (a, b) = case.codim_formula();
    a * n - b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertSpec<E> {
    pub case: SingularityType,
    pub points: Vec<CurvePoint<E>>,
    pub d: usize,
    pub n: usize,
    pub ell: usize,
    /// Closed conditions defining the Schubert variety.
    pub conditions: Vec<Condition>,
    pub partition: Vec<usize>,
    /// Conditions and cell used for sampling; they differ from the above
    /// only for 3.1.d and 3.2.f.
    pub sampling_conditions: Vec<Condition>,
    pub chain: Vec<Vec<usize>>,
    pub cell: Vec<usize>,
}

impl<E> SchubertSpec<E> {
    pub fn concrete(&self) -> SingularityCase {
        match self.case {
            SingularityType::Case(c) => c,
            _ => unreachable!("specs are built for concrete types"),
        }
    }

    /// Codimension of the Schubert variety for fixed points.
    pub fn schubert_codim(&self) -> usize {
        self.partition.iter().sum()
    }

    /// Codimension once the points vary.
    pub fn family_codim(&self) -> usize {
        self.schubert_codim() - self.points.len()
    }

    /// Number of basis vectors of `L` pinned by the conditions.
    fn pinned(&self) -> usize {
        self.sampling_conditions.iter().map(|c| c.at_least).max().unwrap_or(0)
    }
}

/// The Schubert variety of centers producing `case` with fiber `points`.
pub fn stratum_spec<F: Field>(
    case: SingularityCase,
    points: Vec<CurvePoint<F::Elem>>,
    curve: &RationalNormalCurve<F>,
    ell: usize,
) -> Result<SchubertSpec<F::Elem>, SchubertError> {
    let r = case.branches();
    if points.len() != r {
        return Err(SchubertError::PointCount { case, expected: r, got: points.len() });
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(CurveError::RepeatedPoint(p.format(curve.field())).into());
        }
    }
    let d = curve.degree();
    if ell == 0 || ell + 2 > d + 1 {
        return Err(SchubertError::Hypothesis(format!("ℓ = {ell} out of range for d = {d}")));
    }
    let n = d - ell;
    if n <= 2 || ell > 3 || 2 * ell >= d {
        return Err(SchubertError::Hypothesis(format!("need n > 2, ℓ <= 3 and 2ℓ < d; got d = {d}, n = {n}, ℓ = {ell}")));
    }
    if case.delta() > ell {
        return Err(SchubertError::Infeasible { delta_total: case.delta(), ell });
    }
    let conditions = closed_conditions(case, false);
    let partition = partition_of_cell(&cell_indices(&conditions, ell, n), n);
    let sampling_conditions = closed_conditions(case, true);
    let chain = flag_chain(&sampling_conditions);
    let cell = cell_indices(&sampling_conditions, ell, n);
    Ok(SchubertSpec {
        case: SingularityType::Case(case),
        points,
        d,
        n,
        ell,
        conditions,
        partition,
        sampling_conditions,
        chain,
        cell,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigurationCodim {
    pub delta_total: usize,
    pub ell: usize,
    /// Sum of the Schubert codimensions for fixed points.
    pub schubert_codim: usize,
    /// Codimension of the family with all points varying.
    pub family_codim: usize,
    /// `dim G(ℓ, V) - family_codim`.
    pub family_dim: usize,
}

pub fn configuration_codim(cases: &[SingularityCase], d: usize, n: usize) -> Result<ConfigurationCodim, SchubertError> {
    if n >= d {
        return Err(SchubertError::Hypothesis(format!("need n < d, got d = {d}, n = {n}")));
    }
    let ell = d - n;
    let delta_total: usize = cases.iter().map(|c| c.delta()).sum();
    if delta_total > ell {
        return Err(SchubertError::Infeasible { delta_total, ell });
    }
    let schubert_codim: usize = cases.iter().map(|&c| table_partition(c, n).iter().sum::<usize>()).sum();
    let family_codim = schubert_codim - cases.iter().map(|c| c.branches()).sum::<usize>();
    Ok(ConfigurationCodim { delta_total, ell, schubert_codim, family_codim, family_dim: ell * (n + 1) - family_codim })
}

/// `count` distinct points, `(1:0)` included now and then.
pub fn random_points<F: Field, R: Rng + ?Sized>(f: &F, count: usize, rng: &mut R) -> Vec<CurvePoint<F::Elem>> {
    let mut out: Vec<CurvePoint<F::Elem>> = Vec::with_capacity(count);
    while out.len() < count {
        let p = if rng.gen_ratio(1, 6) { CurvePoint::Infinity } else { CurvePoint::Affine(f.random(rng)) };
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

const MAX_DRAWS: usize = 25;

#[derive(Clone, Debug)]
pub struct Sample<F: Field> {
    pub center: ProjectionCenter<F>,
    /// Draws spent, the accepted one included.
    pub draws: usize,
}

/// A center in the open stratum of `spec`.
pub fn sample_center<F: Field>(
    spec: &SchubertSpec<F::Elem>,
    curve: &RationalNormalCurve<F>,
    seed: u64,
) -> Result<Sample<F>, SchubertError> {
    sample_configuration(std::slice::from_ref(spec), curve, seed)
}

/// A center in the intersection of the open strata of `specs`, which must
/// share `d` and `ℓ` and use disjoint points.
pub fn sample_configuration<F: Field>(
    specs: &[SchubertSpec<F::Elem>],
    curve: &RationalNormalCurve<F>,
    seed: u64,
) -> Result<Sample<F>, SchubertError> {
    let f = curve.field();
    if let Some(q) = f.size() {
        if q < 101 {
            return Err(SchubertError::FieldTooSmall(q));
        }
    }
    let Some(first) = specs.first() else {
        return Err(SchubertError::Hypothesis("empty configuration".into()));
    };
    let (d, ell) = (first.d, first.ell);
    if specs.iter().any(|s| s.d != d || s.ell != ell || s.d != curve.degree()) {
        return Err(SchubertError::Hypothesis("specs disagree on d or ℓ".into()));
    }
    let pinned: usize = specs.iter().map(|s| s.pinned()).sum();
    if pinned > ell {
        let delta_total = specs.iter().map(|s| s.concrete().delta()).sum();
        return Err(SchubertError::Infeasible { delta_total, ell });
    }
    let refined: Vec<&SchubertSpec<F::Elem>> = specs.iter().filter(|s| refinement(s.concrete()).is_some()).collect();
    if !refined.is_empty() && specs.len() > 1 {
        return Err(SchubertError::Hypothesis("3.1.d and 3.2.f are sampled alone".into()));
    }
    let dim = d + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for draw in 1..=MAX_DRAWS {
        let mut rows = Vec::with_capacity(ell);
        for spec in specs {
            let basis = adapted_basis(spec, curve)?;
            for k in 0..spec.pinned() {
                let a = spec.cell[k];
                let mut v = basis[a - 1].clone();
                for u in &basis[..a - 1] {
                    let c = f.random(&mut rng);
                    for (x, y) in v.iter_mut().zip(u) {
                        *x = f.add(x, &f.mul(&c, y));
                    }
                }
                rows.push(v);
            }
        }
        while rows.len() < ell {
            rows.push((0..dim).map(|_| f.random(&mut rng)).collect());
        }
        let Ok(mut center) = ProjectionCenter::from_rows(f.clone(), dim, rows) else { continue };
        if let Some(spec) = refined.first() {
            match correct(&center, curve, spec, rng.next_u64()) {
                Ok(c) => center = c,
                Err(SchubertError::Degenerate(_)) | Err(SchubertError::Project(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if specs.iter().all(|s| in_open_stratum(&center, curve, s).unwrap_or(false)) {
            return Ok(Sample { center, draws: draw });
        }
    }
    Err(SchubertError::Boundary { draws: MAX_DRAWS })
}

/// `u_1, ..., u_m` with `F_j = span(u_1..u_j)` along the chain.
fn adapted_basis<F: Field>(
    spec: &SchubertSpec<F::Elem>,
    curve: &RationalNormalCurve<F>,
) -> Result<Vec<Vec<F::Elem>>, SchubertError> {
    let mut cur = vec![0; spec.points.len()];
    let mut out = Vec::with_capacity(spec.chain.len());
    for alpha in &spec.chain {
        let i = (0..cur.len()).find(|&i| alpha[i] != cur[i]).expect("chain steps by one");
        out.push(curve.jet_functional(&spec.points[i], cur[i])?);
        cur[i] += 1;
    }
    Ok(out)
}

/// Flag-side check of every λ' condition of the type, standardness, and the
/// exact dimensions of the sampling conditions.
pub fn in_open_stratum<F: Field>(
    center: &ProjectionCenter<F>,
    curve: &RationalNormalCurve<F>,
    spec: &SchubertSpec<F::Elem>,
) -> Result<bool, SchubertError> {
    let f = curve.field();
    let r = spec.points.len();
    let mf = Multifiltration::new(curve, spec.points.clone())?;
    let lambda = |alpha: &[usize]| -> Result<usize, SchubertError> {
        Ok(linalg::intersection_dim(f, center.ambient_dim(), center.rows(), &mf.subspace(alpha)?))
    };
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        if lambda(&e)? != 0 {
            return Ok(false);
        }
    }
    if lambda(&vec![1; r])? != r - 1 {
        return Ok(false);
    }
    for (alpha, v) in spec.concrete().vs_conditions() {
        if lambda(alpha)? != *v {
            return Ok(false);
        }
    }
    for c in &spec.sampling_conditions {
        if lambda(&c.alpha)? != c.at_least {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Linear form `(x coefficient, y coefficient)` vanishing at `p`.
fn vanishing_linear_form<F: Field>(f: &F, p: &CurvePoint<F::Elem>) -> [F::Elem; 2] {
    match p {
        CurvePoint::Affine(a) => [f.one(), f.neg(a)],
        CurvePoint::Infinity => [f.zero(), f.one()],
    }
}

/// Product of linear forms as a degree-`d` form in the basis
/// `x^d, x^{d-1} y, ..., y^d`.
fn product_form<F: Field>(f: &F, factors: &[[F::Elem; 2]]) -> Vec<F::Elem> {
    let mut out = vec![f.one()];
    for [a, b] in factors {
        let mut next = vec![f.zero(); out.len() + 1];
        for (k, c) in out.iter().enumerate() {
            next[k] = f.add(&next[k], &f.mul(c, a));
            next[k + 1] = f.add(&next[k + 1], &f.mul(c, b));
        }
        out = next;
    }
    out
}

/// Jets of `form / s` at each point, to order `n`, flattened branch-major.
fn jets<F: Field>(
    curve: &RationalNormalCurve<F>,
    form: &[F::Elem],
    s_inv: &[crate::series::TruncatedSeries<F::Elem>],
    points: &[CurvePoint<F::Elem>],
    n: usize,
) -> Result<Vec<F::Elem>, SchubertError> {
    let f = curve.field();
    let mut out = Vec::with_capacity(points.len() * n);
    for (p, inv) in points.iter().zip(s_inv) {
        let e = local_expansion(curve, form, p, n)?.mul(f, inv).map_err(ProjectError::from)?;
        out.extend(e.into_coeffs());
    }
    Ok(out)
}

/// Imposes the open condition separating 3.1.d from 2.1.b (resp. 3.2.f from
/// 2.2.a) on a center from the refined cell, by moving one form of `M`.
///
/// 3.1.d: with `f = t^2 + a t^3 + ...` and `g = t^4 + e t^5 + ...` in
/// `(1/s) M`, the algebra avoids valuation 5 iff `e = 2a`.
/// 3.2.f: with `x = (t_1 + ..., c t_2 + ...)` and `z` of valuation
/// `>= (2, 2)` with `t^2` coefficients `(1, z_2)`, the contact has order
/// three iff `z_2 = c^2`.
fn correct<F: Field>(
    center: &ProjectionCenter<F>,
    curve: &RationalNormalCurve<F>,
    spec: &SchubertSpec<F::Elem>,
    seed: u64,
) -> Result<ProjectionCenter<F>, SchubertError> {
    let (center, _) = correction_step(center, curve, spec, seed, true)?;
    let (_, residual) = correction_step(&center, curve, spec, seed, false)?;
    if !curve.field().is_zero(&residual) {
        return Err(SchubertError::Degenerate(format!("correction left {}", curve.field().format(&residual))));
    }
    Ok(center)
}

fn correction_step<F: Field>(
    center: &ProjectionCenter<F>,
    curve: &RationalNormalCurve<F>,
    spec: &SchubertSpec<F::Elem>,
    seed: u64,
    apply: bool,
) -> Result<(ProjectionCenter<F>, F::Elem), SchubertError> {
    let f = curve.field();
    let d = curve.degree();
    let points = &spec.points;
    let n = d + 2;
    let forms = center.linear_system();
    let s = nonvanishing_section(curve, &forms, points, seed)?;
    let s_inv = points
        .iter()
        .map(|p| local_expansion(curve, &s, p, n)?.inverse(f).map_err(|e| SchubertError::Project(e.into())))
        .collect::<Result<Vec<_>, _>>()?;
    // Column order puts the coordinates that matter first; form
    // coefficients ride along after the jets.
    let order: Vec<usize> = match spec.concrete() {
        SingularityCase::T3_1d => (0..n).collect(),
        SingularityCase::T3_2f => {
            let mut o = vec![0, 1, n, n + 1, 2, n + 2];
            o.extend(3..n);
            o.extend(n + 3..2 * n);
            o
        }
        other => unreachable!("no correction for {other}"),
    };
    let width = order.len();
    let rows = forms
        .iter()
        .map(|form| {
            let j = jets(curve, form, &s_inv, points, n)?;
            let mut row: Vec<F::Elem> = order.iter().map(|&c| j[c].clone()).collect();
            row.extend(form.iter().cloned());
            Ok(row)
        })
        .collect::<Result<Vec<_>, SchubertError>>()?;
    let ech = Echelon::from_rows(f, width + d + 1, rows);
    let pivot_row = |col: usize| ech.pivots().iter().position(|&p| p == col);
    let degenerate = |what: &str| SchubertError::Degenerate(what.to_string());
    let (target, kappa, w) = match spec.concrete() {
        SingularityCase::T3_1d => {
            let fi = pivot_row(2).ok_or_else(|| degenerate("no element of valuation 2"))?;
            let gi = pivot_row(4).ok_or_else(|| degenerate("no element of valuation 4"))?;
            let a = ech.rows()[fi][3].clone();
            let e = ech.rows()[gi][5].clone();
            let kappa = f.sub(&f.add(&a, &a), &e);
            let other = match &points[0] {
                CurvePoint::Infinity => CurvePoint::Affine(f.zero()),
                CurvePoint::Affine(_) => CurvePoint::Infinity,
            };
            let mut factors = vec![vanishing_linear_form(f, &points[0]); 5];
            factors.extend(std::iter::repeat(vanishing_linear_form(f, &other)).take(d - 5));
            (gi, kappa, (product_form(f, &factors), 0usize, 5usize))
        }
        _ => {
            if pivot_row(2).is_some() || pivot_row(3).is_some() {
                return Err(degenerate("second branch not tangent to the first"));
            }
            let xi = pivot_row(1).ok_or_else(|| degenerate("no element of valuation (1,1)"))?;
            let zi = pivot_row(4).ok_or_else(|| degenerate("no element of valuation (2,2)"))?;
            let c = ech.rows()[xi][3].clone();
            let z2 = ech.rows()[zi][5].clone();
            let kappa = f.sub(&f.mul(&c, &c), &z2);
            let mut factors = vec![vanishing_linear_form(f, &points[0]); d - 2];
            factors.extend(std::iter::repeat(vanishing_linear_form(f, &points[1])).take(2));
            (zi, kappa, (product_form(f, &factors), 1, 2))
        }
    };
    if !apply {
        return Ok((center.clone(), kappa));
    }
    let (w, branch, order_w) = w;
    let wj = local_expansion(curve, &w, &points[branch], n)?.mul(f, &s_inv[branch]).map_err(ProjectError::from)?;
    let lead = f.inv(wj.coeff(0, order_w)).ok_or_else(|| degenerate("correction form has the wrong order"))?;
    let scale = f.mul(&kappa, &lead);
    let new_forms: Vec<Vec<F::Elem>> = ech
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut form = row[width..].to_vec();
            if i == target {
                for (x, y) in form.iter_mut().zip(&w) {
                    *x = f.add(x, &f.mul(&scale, y));
                }
            }
            form
        })
        .collect();
    let corrected = ProjectionCenter::from_linear_system(f.clone(), d + 1, new_forms)?;
    if corrected.ell() != center.ell() {
        return Err(degenerate("correction changed dim L"));
    }
    Ok((corrected, kappa))
}

/// Outcome of sampling a type and analyzing the samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundTrip {
    pub accepted: usize,
    /// Draws discarded by the sampler or after analysis.
    pub rejected: usize,
    pub draws: usize,
    pub failures: Vec<String>,
}

const ATTEMPTS_PER_SAMPLE: usize = 10;

/// Draws `samples` centers for `case` at degree `d` and target `P^n`, each
/// at fresh random points, and checks that analysis finds exactly that
/// cluster with exactly that type. Samples with extra ramification are
/// rejected and redrawn; a wrong type at the right points is a failure.
pub fn round_trip<F: Field>(
    field: F,
    case: SingularityCase,
    d: usize,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<RoundTrip, SchubertError> {
    let curve = RationalNormalCurve::new(field, d)?;
    let f = curve.field();
    let ell = d.checked_sub(n).ok_or_else(|| SchubertError::Hypothesis("n > d".into()))?;
    let mut out = RoundTrip::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (case as u64).wrapping_mul(0x2545_f491_4f6c_dd1d));
    for _ in 0..samples {
        let mut done = false;
        for _ in 0..ATTEMPTS_PER_SAMPLE {
            let points = random_points(f, case.branches(), &mut rng);
            let spec = stratum_spec(case, points.clone(), &curve, ell)?;
            let sample = match sample_center(&spec, &curve, rng.next_u64()) {
                Ok(s) => s,
                Err(SchubertError::Boundary { draws }) => {
                    out.draws += draws;
                    out.rejected += draws;
                    continue;
                }
                Err(e) => return Err(e),
            };
            out.draws += sample.draws;
            out.rejected += sample.draws - 1;
            let opts = AnalyzeOptions { seed: rng.next_u64(), ..AnalyzeOptions::default() };
            let mut expected = points.clone();
            expected.sort();
            match analyze(&sample.center, &curve, &opts) {
                Ok(rep) if rep.clusters.len() == 1 && rep.clusters[0].points == expected => {
                    let got = rep.clusters[0].singularity;
                    if got == Some(SingularityType::Case(case)) {
                        out.accepted += 1;
                    } else {
                        out.failures.push(format!(
                            "{case} at {:?}: analysis gave {}",
                            expected.iter().map(|p| p.format(f)).collect::<Vec<_>>(),
                            got.map_or("unclassified".to_string(), |t| t.to_string())
                        ));
                    }
                    done = true;
                }
                Ok(_)
                | Err(ProjectError::RamificationOverExtension { .. })
                | Err(ProjectError::IrrationalRamification { .. })
                | Err(ProjectError::PartnersOverExtension { .. })
                | Err(ProjectError::Basepoints(_))
                | Err(ProjectError::BasepointsOverExtension { .. }) => out.rejected += 1,
                Err(e) => {
                    out.failures.push(format!("{case}: {e}"));
                    done = true;
                }
            }
            if done {
                break;
            }
        }
        if !done {
            out.failures.push(format!("{case}: no usable sample in {ATTEMPTS_PER_SAMPLE} attempts"));
        }
    }
    Ok(out)
}
