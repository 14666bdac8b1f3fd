//! Gap functions `λ(α) = dim S/(R + t^α S)` of subspaces and subalgebras of
//! the truncated series ring, with memoized evaluation.

use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::field::Field;
use crate::series::{SeriesError, TruncatedSeries};
use crate::subspace::SeriesSubspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GapError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("multi-index {alpha:?} exceeds truncation order {truncation}")]
    TruncationExceeded { alpha: Vec<usize>, truncation: usize },
    #[error("multi-index has {got} entries, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("subspace contains no unit of the series ring")]
    NoUnit,
    #[error("operation needs an algebra-closed gap function")]
    NotAnAlgebra,
    #[error("degree not stabilized at truncation {truncation} (conductor bound {conductor:?})")]
    NotStabilized { truncation: usize, conductor: Option<usize> },
    #[error("infinite or undecided codimension at truncation cap {cap}")]
    StabilizationCap { cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapKind {
    VectorSpace,
    AlgebraClosed,
}

pub struct GapFunction<F: Field> {
    field: F,
    backend: SeriesSubspace<F::Elem>,
    kind: GapKind,
    memo: Mutex<HashMap<Vec<usize>, usize>>,
}

impl<F: Field> Clone for GapFunction<F> {
    fn clone(&self) -> Self {
        let memo = self.memo.lock().unwrap().clone();
        Self { field: self.field.clone(), backend: self.backend.clone(), kind: self.kind, memo: Mutex::new(memo) }
    }
}

impl<F: Field> std::fmt::Debug for GapFunction<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GapFunction")
            .field("kind", &self.kind)
            .field("branches", &self.backend.branches())
            .field("truncation", &self.backend.truncation())
            .field("dim", &self.backend.dim())
            .finish()
    }
}

impl<F: Field> GapFunction<F> {
    /// Gap function of `backend`. The kind is trusted: use
    /// [`close_algebra`] first when claiming `AlgebraClosed`.
    pub fn new(field: F, backend: SeriesSubspace<F::Elem>, kind: GapKind) -> Self {
        Self { field, backend, kind, memo: Mutex::new(HashMap::new()) }
    }

    /// Gap function of the algebra generated by `backend`.
    pub fn of_closure(field: F, backend: &SeriesSubspace<F::Elem>) -> Result<Self, GapError> {
        let closed = close_algebra(&field, backend)?;
        Ok(Self::new(field, closed, GapKind::AlgebraClosed))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn backend(&self) -> &SeriesSubspace<F::Elem> {
        &self.backend
    }

    pub fn kind(&self) -> GapKind {
        self.kind
    }

    pub fn arity(&self) -> usize {
        self.backend.branches()
    }

    pub fn truncation(&self) -> usize {
        self.backend.truncation()
    }

    pub fn eval(&self, alpha: &[usize]) -> Result<usize, GapError> {
        if alpha.len() != self.arity() {
            return Err(GapError::Arity { expected: self.arity(), got: alpha.len() });
        }
        if alpha.iter().any(|&a| a > self.truncation()) {
            return Err(GapError::TruncationExceeded { alpha: alpha.to_vec(), truncation: self.truncation() });
        }
        if let Some(&v) = self.memo.lock().unwrap().get(alpha) {
            return Ok(v);
        }
        let v = self.backend.quotient_dim(&self.field, alpha);
        self.memo.lock().unwrap().insert(alpha.to_vec(), v);
        Ok(v)
    }

    /// `λ(α) = λ(α + e_i)`, i.e. `α + e_i` is marked by the semigroup.
    pub fn marked_in_semigroup(&self, alpha: &[usize], i: usize) -> Result<bool, GapError> {
        let mut beta = alpha.to_vec();
        beta[i] += 1;
        Ok(self.eval(alpha)? == self.eval(&beta)?)
    }

    /// `λ(e_i) = 0` for all `i` and `λ(1, ..., 1) = r - 1`.
    pub fn is_standard(&self) -> Result<bool, GapError> {
        let r = self.arity();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            if self.eval(&e)? != 0 {
                return Ok(false);
            }
        }
        Ok(self.eval(&vec![1; r])? == r - 1)
    }

    /// `δ = dim S/R` for an algebra-closed gap function.
    ///
    /// Computed from the conductor: if `R_N` contains every `t_i^k` with
    /// `K <= k < N` and `2K <= N`, then `t^K S ⊂ R` and
    /// `δ = rN - dim R_N`. Smaller `N` yields `NotStabilized`.
    pub fn degree(&self) -> Result<usize, GapError> {
        if self.kind != GapKind::AlgebraClosed {
            return Err(GapError::NotAnAlgebra);
        }
        let f = &self.field;
        let r = self.arity();
        let n = self.truncation();
        let mut conductor = 0;
        for i in 0..r {
            let mut k = n;
            while k > 0 {
                let e = TruncatedSeries::monomial(f, r, n, i, k - 1, f.one());
                if !self.backend.contains(f, &e)? {
                    break;
                }
                k -= 1;
            }
            conductor = conductor.max(k);
        }
        if 2 * conductor > n {
            let c = (conductor < n).then_some(conductor);
            return Err(GapError::NotStabilized { truncation: n, conductor: c });
        }
        let delta = r * n - self.backend.dim();
        // Flatness at the corner: λ is constant on [K, N]^r.
        debug_assert_eq!(self.eval(&vec![conductor; r]).ok(), Some(delta));
        debug_assert_eq!(self.eval(&vec![n; r]).ok(), Some(delta));
        Ok(delta)
    }

    /// Checks the implication: if `λ(α) <= γ` for all `|α| <= 2γ + 2`, then
    /// `δ <= γ`. Returns whether the implication holds.
    pub fn key_lemma_holds(&self, gamma: usize) -> Result<bool, GapError> {
        if self.kind != GapKind::AlgebraClosed {
            return Err(GapError::NotAnAlgebra);
        }
        let bound = 2 * gamma + 2;
        if bound > self.truncation() {
            return Err(GapError::TruncationExceeded { alpha: vec![bound], truncation: self.truncation() });
        }
        let mut hypothesis = true;
        for alpha in multi_indices_up_to(self.arity(), bound) {
            if self.eval(&alpha)? > gamma {
                hypothesis = false;
                break;
            }
        }
        Ok(!hypothesis || self.degree()? <= gamma)
    }

    pub fn semigroup(&self) -> SemigroupView<'_, F> {
        SemigroupView { gap: self }
    }
}

/// Semigroup read off from the gap function of an algebra.
pub struct SemigroupView<'a, F: Field> {
    gap: &'a GapFunction<F>,
}

impl<F: Field> SemigroupView<'_, F> {
    /// Whether `α + e_i` is marked, i.e. some element has valuation `>= α`
    /// with equality on branch `i`.
    pub fn marked(&self, alpha: &[usize], i: usize) -> Result<bool, GapError> {
        self.gap.marked_in_semigroup(alpha, i)
    }

    /// Finite valuations present on a single-branch algebra, below `bound`.
    pub fn elements_below(&self, bound: usize) -> Result<Vec<usize>, GapError> {
        assert_eq!(self.gap.arity(), 1, "elements_below needs one branch");
        let mut out = Vec::new();
        for k in 0..bound.min(self.gap.truncation()) {
            if self.gap.marked_in_semigroup(&[k], 0)? {
                out.push(k);
            }
        }
        Ok(out)
    }
}

/// All `α ∈ Z_{>=0}^r` with `|α| <= bound`, in lexicographic order.
pub fn multi_indices_up_to(r: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; r];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// All `α ∈ Z_{>=1}^r` with `|α| <= bound`, in lexicographic order.
pub fn positive_multi_indices_up_to(r: usize, bound: usize) -> Vec<Vec<usize>> {
    if bound < r {
        return Vec::new();
    }
    multi_indices_up_to(r, bound - r).into_iter().map(|a| a.into_iter().map(|x| x + 1).collect()).collect()
}

/// The subalgebra generated by `space`, which must contain a unit.
///
/// Products are taken against a basis of `space` until the span stops
/// growing; the result is exact at the truncation order.
pub fn close_algebra<F: Field>(f: &F, space: &SeriesSubspace<F::Elem>) -> Result<SeriesSubspace<F::Elem>, GapError> {
    space.find_unit(f).ok_or(GapError::NoUnit)?;
    let gens = space.basis();
    let mut out = space.clone();
    // A unit satisfies its minimal polynomial, whose constant term is
    // nonzero, so 1 already lies in the generated algebra.
    let one = TruncatedSeries::one(f, space.branches(), space.truncation());
    let mut queue: Vec<TruncatedSeries<F::Elem>> = gens.clone();
    if out.insert(f, one.clone())? {
        queue.push(one);
    }
    while let Some(v) = queue.pop() {
        for g in &gens {
            let p = v.mul(f, g)?;
            if out.insert(f, p.clone())? {
                queue.push(p);
            }
        }
    }
    Ok(out)
}

/// How far to push the truncation order before giving up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub start: usize,
    pub cap: usize,
}

impl TruncationPolicy {
    pub const DEFAULT_CAP: usize = 64;

    /// Start at `max(2ℓ + 4, min_start)`, doubling up to `cap`.
    pub fn for_ell(ell: usize, min_start: usize, cap: usize) -> Self {
        Self { start: (2 * ell + 4).max(min_start).min(cap.max(1)), cap }
    }

    pub fn orders(&self) -> Vec<usize> {
        let mut v = Vec::new();
        let mut n = self.start.max(1);
        loop {
            v.push(n.min(self.cap));
            if n >= self.cap {
                break;
            }
            n *= 2;
        }
        v.dedup();
        v
    }
}

/// Closure of a family of subspaces built at increasing truncation orders,
/// stopping at the first order where the degree stabilizes.
pub struct StabilizedAlgebra<F: Field> {
    pub space: SeriesSubspace<F::Elem>,
    pub algebra: GapFunction<F>,
    pub delta: usize,
    pub truncation: usize,
}

pub fn stabilized_closure<F: Field>(
    f: &F,
    policy: TruncationPolicy,
    mut build: impl FnMut(usize) -> Result<SeriesSubspace<F::Elem>, GapError>,
) -> Result<StabilizedAlgebra<F>, GapError> {
    for n in policy.orders() {
        let space = build(n)?;
        let algebra = GapFunction::of_closure(f.clone(), &space)?;
        match algebra.degree() {
            Ok(delta) => return Ok(StabilizedAlgebra { space, algebra, delta, truncation: n }),
            Err(GapError::NotStabilized { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GapError::StabilizationCap { cap: policy.cap })
}

/// Outcome of [`fuzz_key_lemma`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeyLemmaFuzz {
    /// Algebras tested.
    pub algebras: usize,
    /// Candidates drawn, including those rejected for large `δ`.
    pub attempts: usize,
    /// `(algebra, γ)` pairs checked.
    pub checks: usize,
    /// Count of algebras by `(branches, δ)`.
    pub histogram: Vec<((usize, usize), usize)>,
    pub violations: Vec<String>,
}

/// Random unit-containing subalgebra with at most `max_branches` branches:
/// the closure of a few series whose components have random constant terms
/// and random low valuations.
pub fn random_subalgebra<F: Field, R: rand::Rng + ?Sized>(
    f: &F,
    max_branches: usize,
    max_valuation: usize,
    truncation: usize,
    rng: &mut R,
) -> Result<GapFunction<F>, GapError> {
    let r = rng.gen_range(1..=max_branches.max(1));
    let count = rng.gen_range(1..=3);
    let mut gens = Vec::with_capacity(count + 1);
    gens.push(TruncatedSeries::one(f, r, truncation));
    for _ in 0..count {
        let mut coeffs = vec![f.zero(); r * truncation];
        for i in 0..r {
            if r > 1 && rng.gen_bool(0.5) {
                coeffs[i * truncation] = f.random(rng);
            }
            let v = rng.gen_range(1..=max_valuation.max(1));
            for e in v..truncation {
                if e == v {
                    coeffs[i * truncation + e] = f.random_nonzero(rng);
                } else if rng.gen_bool(0.5) {
                    coeffs[i * truncation + e] = f.random(rng);
                }
            }
        }
        gens.push(TruncatedSeries::from_flat(r, truncation, coeffs));
    }
    let space = SeriesSubspace::span(f, r, truncation, gens)?;
    GapFunction::of_closure(f.clone(), &space)
}

/// Checks the key lemma on `count` random subalgebras with at most
/// `max_branches` branches and `δ <= max_delta`, for every `γ <= δ + 1`.
pub fn fuzz_key_lemma<F: Field>(
    f: &F,
    count: usize,
    max_branches: usize,
    max_delta: usize,
    seed: u64,
) -> Result<KeyLemmaFuzz, GapError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // conductor <= 2δ, and the hypothesis reaches |α| = 2(δ + 1) + 2
    let truncation = 2 * max_delta + 6;
    let mut out = KeyLemmaFuzz::default();
    let mut hist: HashMap<(usize, usize), usize> = HashMap::new();
    while out.algebras < count {
        out.attempts += 1;
        if out.attempts > 1000 * count.max(1) {
            out.violations.push(format!("only {} of {count} algebras found", out.algebras));
            break;
        }
        let g = random_subalgebra(f, max_branches, max_delta / 2 + 2, truncation, &mut rng)?;
        let delta = match g.degree() {
            Ok(d) if d <= max_delta => d,
            Ok(_) | Err(GapError::NotStabilized { .. }) => continue,
            Err(e) => return Err(e),
        };
        out.algebras += 1;
        *hist.entry((g.arity(), delta)).or_default() += 1;
        for gamma in 0..=delta + 1 {
            out.checks += 1;
            if !g.key_lemma_holds(gamma)? {
                out.violations.push(format!("r = {}, δ = {delta}, γ = {gamma}", g.arity()));
            }
        }
    }
    out.histogram = hist.into_iter().collect();
    out.histogram.sort();
    Ok(out)
}
