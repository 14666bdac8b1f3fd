//! The 21 singularity types with `δ <= 3`: reference gap functions,
//! canonical fingerprints, local models, and classification of algebras
//! and of linear systems.

mod expr;
pub(crate) mod tables;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::gapfn::{positive_multi_indices_up_to, stabilized_closure, GapError, GapFunction, GapKind, TruncationPolicy};
use crate::series::{TruncatedSeries, ValuationVector};
use crate::subspace::SeriesSubspace;

pub use expr::{parse as parse_relation, Expr};
use tables::{CaseData, CASES, VS_ROWS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Gap(#[from] GapError),
    #[error("gap function is not standard")]
    NotStandard,
    #[error("linear system contains no unit")]
    NoUnit,
    #[error("expected a gap function of kind {0:?}")]
    WrongKind(GapKind),
    #[error("{0} branches; classification covers at most 4")]
    TooManyBranches(usize),
    #[error("degree {0} is outside the classified range 0..=3")]
    DeltaOutOfRange(usize),
    #[error("no type with degree {delta} and {branches} branches matches")]
    NoMatch { delta: usize, branches: usize },
    #[error("closure has type {found}, outside the pair {pair}")]
    AmbiguityUnresolved { pair: AmbiguousPair, found: String },
    #[error("unknown singularity type {0:?}")]
    UnknownLabel(String),
    #[error("relation {relation:?} of type {case} fails: {reason}")]
    Relation { case: SingularityCase, relation: String, reason: String },
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityCase {
    T1_1,
    T1_2,
    T2_1a,
    T2_1b,
    T2_2a,
    T2_2b,
    T2_3,
    T3_1a,
    T3_1b,
    T3_1c,
    T3_1d,
    T3_2a,
    T3_2b,
    T3_2c,
    T3_2d,
    T3_2e,
    T3_2f,
    T3_3a,
    T3_3b,
    T3_3c,
    T3_4,
}

impl SingularityCase {
    pub const ALL: [SingularityCase; 21] = [
        Self::T1_1,
        Self::T1_2,
        Self::T2_1a,
        Self::T2_1b,
        Self::T2_2a,
        Self::T2_2b,
        Self::T2_3,
        Self::T3_1a,
        Self::T3_1b,
        Self::T3_1c,
        Self::T3_1d,
        Self::T3_2a,
        Self::T3_2b,
        Self::T3_2c,
        Self::T3_2d,
        Self::T3_2e,
        Self::T3_2f,
        Self::T3_3a,
        Self::T3_3b,
        Self::T3_3c,
        Self::T3_4,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::T1_1 => "1.1",
            Self::T1_2 => "1.2",
            Self::T2_1a => "2.1.a",
            Self::T2_1b => "2.1.b",
            Self::T2_2a => "2.2.a",
            Self::T2_2b => "2.2.b",
            Self::T2_3 => "2.3",
            Self::T3_1a => "3.1.a",
            Self::T3_1b => "3.1.b",
            Self::T3_1c => "3.1.c",
            Self::T3_1d => "3.1.d",
            Self::T3_2a => "3.2.a",
            Self::T3_2b => "3.2.b",
            Self::T3_2c => "3.2.c",
            Self::T3_2d => "3.2.d",
            Self::T3_2e => "3.2.e",
            Self::T3_2f => "3.2.f",
            Self::T3_3a => "3.3.a",
            Self::T3_3b => "3.3.b",
            Self::T3_3c => "3.3.c",
            Self::T3_4 => "3.4",
        }
    }

    /// Parses a case label; `3.3.d` is accepted for the quadruple point.
    pub fn from_label(s: &str) -> Result<Self, ClassifyError> {
        let t = s.trim();
        if t == "3.3.d" {
            return Ok(Self::T3_4);
        }
        Self::ALL.into_iter().find(|c| c.label() == t).ok_or_else(|| ClassifyError::UnknownLabel(s.to_string()))
    }

    pub(crate) fn data(self) -> &'static CaseData {
        let d = &CASES[self as usize];
        debug_assert_eq!(d.case, self);
        d
    }

    pub fn delta(self) -> usize {
        self.data().delta
    }

    pub fn branches(self) -> usize {
        self.data().branches
    }

    pub fn name(self) -> &'static str {
        self.data().name
    }

    /// Value of the reference gap function at `α ∈ N^r`.
    pub fn reference_gap(self, alpha: &[usize]) -> usize {
        let d = self.data();
        assert_eq!(alpha.len(), d.branches);
        d.highlighted
            .iter()
            .filter(|(beta, _)| beta.iter().zip(alpha).all(|(b, a)| b <= a))
            .map(|&(_, v)| v)
            .max()
            .unwrap_or(0)
    }

    pub fn reference_fingerprint(self) -> Fingerprint {
        let d = self.data();
        Fingerprint::canonical(d.delta, d.branches, |a| self.reference_gap(a))
    }

    /// Valuations listed for the local model, permutations expanded.
    pub fn semigroup_elements(self) -> Vec<ValuationVector> {
        let d = self.data();
        let mut out: Vec<ValuationVector> = Vec::new();
        for e in d.semigroup {
            let perms = if d.symmetric { permutations(d.branches) } else { vec![(0..d.branches).collect()] };
            for p in perms {
                let v = ValuationVector(p.iter().map(|&i| e[i]).collect());
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Schubert partition parts as offsets below `n`.
    pub fn partition_offsets(self) -> &'static [usize] {
        self.data().partition
    }

    /// The pair this type shares its λ' row with, if any.
    pub fn ambiguous_pair(self) -> Option<AmbiguousPair> {
        [AmbiguousPair::RhamphoidOr27Cusp, AmbiguousPair::TacnodeOrThirdOrderNode]
            .into_iter()
            .find(|p| p.members().contains(&self))
    }

    /// Conditions `λ'(α) = v` on the gap function of a linear system
    /// producing this type (up to the ambiguous pair).
    pub fn vs_conditions(self) -> &'static [(&'static [usize], usize)] {
        let target = match self.ambiguous_pair() {
            Some(p) => SingularityType::Ambiguous(p),
            None => SingularityType::Case(self),
        };
        VS_ROWS.iter().find(|row| row.result == target).expect("every type has a row").conditions
    }

    /// Codimension of the family with the points varying, `a n - b`.
    pub fn codim_formula(self) -> (usize, usize) {
        self.data().codim
    }

    /// The local model with its generators at truncation order `n`.
    pub fn local_model<F: Field>(self, f: &F, n: usize) -> LocalModel<F::Elem> {
        let d = self.data();
        let generators = d
            .generators
            .iter()
            .map(|(name, terms)| {
                let mut s = TruncatedSeries::zero(f, d.branches, n);
                for &(b, e, c) in terms.iter() {
                    let m = TruncatedSeries::monomial(f, d.branches, n, b, e, f.from_i64(c));
                    s = s.add(f, &m).expect("same ambient");
                }
                (name.to_string(), s)
            })
            .collect();
        LocalModel {
            case: self,
            branches: d.branches,
            truncation: n,
            generators,
            relations: d.relations.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for SingularityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Pairs of types that the gap function of a linear system cannot tell apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbiguousPair {
    /// 2.1.b or 3.1.d
    RhamphoidOr27Cusp,
    /// 2.2.a or 3.2.f
    TacnodeOrThirdOrderNode,
}

impl AmbiguousPair {
    pub fn members(self) -> [SingularityCase; 2] {
        match self {
            Self::RhamphoidOr27Cusp => [SingularityCase::T2_1b, SingularityCase::T3_1d],
            Self::TacnodeOrThirdOrderNode => [SingularityCase::T2_2a, SingularityCase::T3_2f],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::RhamphoidOr27Cusp => "2.1.b|3.1.d",
            Self::TacnodeOrThirdOrderNode => "2.2.a|3.2.f",
        }
    }
}

impl fmt::Display for AmbiguousPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityType {
    Smooth,
    Case(SingularityCase),
    Ambiguous(AmbiguousPair),
}

impl SingularityType {
    pub fn label(self) -> &'static str {
        match self {
            Self::Smooth => "smooth",
            Self::Case(c) => c.label(),
            Self::Ambiguous(p) => p.label(),
        }
    }

    pub fn from_label(s: &str) -> Result<Self, ClassifyError> {
        let t = s.trim();
        if t == "smooth" {
            return Ok(Self::Smooth);
        }
        for p in [AmbiguousPair::RhamphoidOr27Cusp, AmbiguousPair::TacnodeOrThirdOrderNode] {
            if p.label() == t {
                return Ok(Self::Ambiguous(p));
            }
        }
        SingularityCase::from_label(t).map(Self::Case)
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Every concrete type with `δ <= 3`.
pub fn enumerate_types() -> Vec<SingularityCase> {
    SingularityCase::ALL.to_vec()
}

/// Values of a gap function on `α ∈ N^r`, `|α| <= 2δ`, canonicalized by
/// taking the lexicographically least value vector over all branch
/// permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub delta: usize,
    pub branches: usize,
    pub values: Vec<usize>,
}

impl Fingerprint {
    pub fn canonical(delta: usize, branches: usize, mut gap: impl FnMut(&[usize]) -> usize) -> Self {
        let grid = positive_multi_indices_up_to(branches, 2 * delta);
        let mut table: HashMap<Vec<usize>, usize> = HashMap::new();
        for a in &grid {
            table.insert(a.clone(), gap(a));
        }
        let values = permutations(branches)
            .into_iter()
            .map(|p| {
                grid.iter()
                    .map(|a| {
                        let pa: Vec<usize> = p.iter().map(|&i| a[i]).collect();
                        table[&pa]
                    })
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default();
        Self { delta, branches, values }
    }

    pub fn of_gap_function<F: Field>(gap: &GapFunction<F>, delta: usize) -> Result<Self, ClassifyError> {
        let mut err = None;
        let fp = Self::canonical(delta, gap.arity(), |a| match gap.eval(a) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                0
            }
        });
        match err {
            Some(e) => Err(e.into()),
            None => Ok(fp),
        }
    }
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

/// Generators of a local model and the relations they satisfy.
#[derive(Clone, Debug)]
pub struct LocalModel<E> {
    pub case: SingularityCase,
    pub branches: usize,
    pub truncation: usize,
    pub generators: Vec<(String, TruncatedSeries<E>)>,
    pub relations: Vec<String>,
}

impl<E: Clone + PartialEq> LocalModel<E> {
    /// Span of the unit and the generators.
    pub fn space<F: Field<Elem = E>>(&self, f: &F) -> SeriesSubspace<E> {
        let one = TruncatedSeries::one(f, self.branches, self.truncation);
        SeriesSubspace::span(f, self.branches, self.truncation, std::iter::once(one).chain(self.generators.iter().map(|(_, g)| g.clone())))
            .expect("same ambient")
    }

    /// Substitutes the generators into every relation.
    pub fn verify_relations<F: Field<Elem = E>>(&self, f: &F) -> Result<(), ClassifyError> {
        let vars: HashMap<String, TruncatedSeries<E>> = self.generators.iter().cloned().collect();
        for rel in &self.relations {
            let fail = |reason: String| ClassifyError::Relation { case: self.case, relation: rel.clone(), reason };
            let e = expr::parse(rel).map_err(fail)?;
            let v = e.eval(f, &vars, self.branches, self.truncation).map_err(fail)?;
            if !v.is_zero(f) {
                return Err(fail("does not vanish".to_string()));
            }
        }
        Ok(())
    }
}

/// Type of a standard algebra-closed gap function with `δ <= 3`.
pub fn classify_ring<F: Field>(gap: &GapFunction<F>) -> Result<SingularityType, ClassifyError> {
    if gap.kind() != GapKind::AlgebraClosed {
        return Err(ClassifyError::WrongKind(GapKind::AlgebraClosed));
    }
    if !gap.is_standard()? {
        return Err(ClassifyError::NotStandard);
    }
    let delta = gap.degree()?;
    if delta == 0 {
        return Ok(SingularityType::Smooth);
    }
    if delta > 3 {
        return Err(ClassifyError::DeltaOutOfRange(delta));
    }
    let r = gap.arity();
    let fp = Fingerprint::of_gap_function(gap, delta)?;
    SingularityCase::ALL
        .into_iter()
        .filter(|c| c.delta() == delta && c.branches() == r)
        .find(|c| c.reference_fingerprint() == fp)
        .map(SingularityType::Case)
        .ok_or(ClassifyError::NoMatch { delta, branches: r })
}

/// Type of the algebra generated by a linear system, read off the gap
/// function `λ'` of the system itself. The two ambiguous pairs are returned
/// as such; see [`resolve_ambiguity`].
pub fn classify_vector_space<F: Field>(gap: &GapFunction<F>) -> Result<SingularityType, ClassifyError> {
    if gap.kind() != GapKind::VectorSpace {
        return Err(ClassifyError::WrongKind(GapKind::VectorSpace));
    }
    let r = gap.arity();
    if r > 4 {
        return Err(ClassifyError::TooManyBranches(r));
    }
    if gap.backend().find_unit(gap.field()).is_none() {
        return Err(ClassifyError::NoUnit);
    }
    if !gap.is_standard()? {
        return Err(ClassifyError::NotStandard);
    }
    if r == 1 && gap.eval(&[2])? == 0 {
        return Ok(SingularityType::Smooth);
    }
    let perms = permutations(r);
    for row in VS_ROWS.iter().filter(|row| row.branches == r) {
        for p in &perms {
            let mut ok = true;
            for (alpha, v) in row.conditions {
                let pa: Vec<usize> = p.iter().map(|&i| alpha[i]).collect();
                if gap.eval(&pa)? != *v {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(row.result);
            }
        }
    }
    Err(ClassifyError::NoMatch { delta: gap.eval(&vec![gap.truncation(); r])?, branches: r })
}

/// Decides an ambiguous pair from an already closed algebra.
pub fn resolve_with_algebra<F: Field>(
    algebra: &GapFunction<F>,
    pair: AmbiguousPair,
) -> Result<SingularityType, ClassifyError> {
    let t = classify_ring(algebra)?;
    match t {
        SingularityType::Case(c) if pair.members().contains(&c) => Ok(t),
        other => Err(ClassifyError::AmbiguityUnresolved { pair, found: other.to_string() }),
    }
}

/// Decides an ambiguous pair by closing the linear system into an algebra.
pub fn resolve_ambiguity<F: Field>(
    f: &F,
    space: &SeriesSubspace<F::Elem>,
    pair: AmbiguousPair,
) -> Result<SingularityType, ClassifyError> {
    let algebra = GapFunction::of_closure(f.clone(), space)?;
    resolve_with_algebra(&algebra, pair)
}

/// Closes a local model at increasing truncation and classifies it.
pub fn classify_local_model<F: Field>(
    f: &F,
    case: SingularityCase,
    policy: TruncationPolicy,
) -> Result<SingularityType, ClassifyError> {
    let st = stabilized_closure(f, policy, |n| Ok(case.local_model(f, n).space(f)))?;
    classify_ring(&st.algebra)
}
