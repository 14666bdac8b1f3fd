//! Command implementations. Reports are `serde_json::Value`s, whose maps
//! keep keys sorted.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use curvegap::classify::{
    classify_ring, enumerate_types, parse_relation, ClassifyError, Fingerprint, SingularityCase, SingularityType,
};
use curvegap::curve::{CurvePoint, RationalNormalCurve};
use curvegap::field::{Field, FieldSpec, PrimeField, RationalField};
use curvegap::gapfn::{fuzz_key_lemma, stabilized_closure, TruncationPolicy};
use curvegap::project::{
    analyze, verify_genus_bound, AnalyzeOptions, BoundVerdict, ClusterReport, ProjectionCenter, ProjectionReport,
};
use curvegap::schubert::{
    configuration_codim, random_points, sample_configuration, stratum_spec, table_codim, table_partition,
    SchubertSpec,
};
use curvegap::series::TruncatedSeries;
use curvegap::subspace::SeriesSubspace;

use crate::error::CliError;
use crate::job::{self, CenterInput, Command, Generator, Job, Scalar};

pub fn run(job: &Job) -> Result<Value, CliError> {
    let body = match job.field {
        FieldSpec::Rational => run_in(RationalField, job)?,
        FieldSpec::Prime(p) => run_in(PrimeField::new(p)?, job)?,
    };
    Ok(json!({
        "schema_version": job::SCHEMA_VERSION,
        "command": job.command.name(),
        "field": job.field.to_string(),
        "seed": job.seed,
        "truncation_cap": job.truncation_cap,
        "params": job.params,
        "result": body,
    }))
}

fn run_in<F: Field>(f: F, job: &Job) -> Result<Value, CliError> {
    match job.command {
        Command::ClassifySeries => classify_series(&f, job),
        Command::AnalyzeProjection => analyze_projection(f, job),
        Command::SampleStratum => sample_stratum(f, job),
        Command::VerifyBounds => verify_bounds(f, job),
        Command::EnumerateTypes => enumerate(&f, job),
        Command::FuzzKeyLemma => {
            let p: job::FuzzKeyLemma = job.params()?;
            if p.max_branches == 0 || p.max_branches > 4 {
                return Err(CliError::validation("max_branches must be in 1..=4"));
            }
            let out = fuzz_key_lemma(&f, p.count, p.max_branches, p.max_delta, job.seed)?;
            let hist: Vec<Value> = out
                .histogram
                .iter()
                .map(|((r, d), n)| json!({"branches": r, "delta": d, "count": n}))
                .collect();
            Ok(json!({
                "algebras": out.algebras,
                "attempts": out.attempts,
                "checks": out.checks,
                "histogram": hist,
                "violations": out.violations,
                "holds": out.violations.is_empty(),
            }))
        }
    }
}

/// Field elements: integers over `F_p`, `"p/q"` strings over `Q`.
pub fn elem<F: Field>(f: &F, e: &F::Elem) -> Value {
    let s = f.format(e);
    match f.size() {
        Some(_) => s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s)),
        None => Value::String(s),
    }
}

fn scalar<F: Field>(f: &F, s: &Scalar) -> Result<F::Elem, CliError> {
    Ok(match s {
        Scalar::Int(v) => f.from_i64(*v),
        Scalar::Text(t) => f.parse(t)?,
    })
}

fn matrix<F: Field>(f: &F, rows: &[Vec<Scalar>], width: usize) -> Result<Vec<Vec<F::Elem>>, CliError> {
    rows.iter()
        .map(|r| {
            if r.len() != width {
                return Err(CliError::validation(format!("row of length {} in dimension {width}", r.len())));
            }
            r.iter().map(|s| scalar(f, s)).collect()
        })
        .collect()
}

fn rows_json<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(|e| elem(f, e)).collect())).collect())
}

fn type_json(t: Option<SingularityType>) -> Value {
    t.map_or(Value::Null, |t| Value::String(t.label().to_string()))
}

fn series_space<F: Field>(f: &F, p: &job::ClassifySeries, n: usize) -> Result<SeriesSubspace<F::Elem>, CliError> {
    let r = p.branches;
    let t = TruncatedSeries::monomial(f, 1, n, 0, 1, f.one());
    let vars = HashMap::from([("t".to_string(), t)]);
    let mut gens = Vec::new();
    if p.include_unit {
        gens.push(TruncatedSeries::one(f, r, n));
    }
    for g in &p.generators {
        let parts: Vec<&str> = match g {
            Generator::One(s) => vec![s.as_str()],
            Generator::Branches(v) => v.iter().map(String::as_str).collect(),
        };
        if parts.len() != r {
            return Err(CliError::validation(format!("generator has {} components, expected {r}", parts.len())));
        }
        let mut branches = Vec::with_capacity(r);
        for s in parts {
            let e = parse_relation(s).map_err(CliError::validation)?;
            let v = e.eval(f, &vars, 1, n).map_err(CliError::validation)?;
            branches.push(v.into_coeffs());
        }
        gens.push(TruncatedSeries::from_branches_truncating(f, n, branches));
    }
    Ok(SeriesSubspace::span(f, r, n, gens).map_err(|e| CliError::validation(e.to_string()))?)
}

fn classify_series<F: Field>(f: &F, job: &Job) -> Result<Value, CliError> {
    let p: job::ClassifySeries = job.params()?;
    if p.branches == 0 {
        return Err(CliError::validation("branches must be positive"));
    }
    let start = p.truncation.unwrap_or(12);
    let policy = TruncationPolicy::for_ell(0, start, job.truncation_cap);
    // Input errors do not depend on the truncation order, so surface them here.
    series_space(f, &p, policy.start)?;
    let st = stabilized_closure(f, policy, |n| Ok(series_space(f, &p, n).expect("validated above")))?;
    let (ty, note) = match classify_ring(&st.algebra) {
        Ok(t) => (Some(t), Value::Null),
        Err(e @ (ClassifyError::DeltaOutOfRange(_) | ClassifyError::TooManyBranches(_))) => {
            (None, Value::String(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = json!({
        "branches": p.branches,
        "delta": st.delta,
        "truncation": st.truncation,
        "type": type_json(ty),
        "name": ty.and_then(|t| match t { SingularityType::Case(c) => Some(c.name()), _ => None }),
        "note": note,
    });
    if st.delta <= 3 && p.branches <= 4 {
        let fp = Fingerprint::of_gap_function(&st.algebra, st.delta)?;
        out["fingerprint"] = json!(fp.values);
    }
    if p.branches == 1 {
        let bound = (2 * st.delta + 2).min(st.truncation);
        out["semigroup"] = json!(st.algebra.semigroup().elements_below(bound)?);
    }
    Ok(out)
}

fn center_of<F: Field>(f: &F, d: usize, c: &CenterInput) -> Result<ProjectionCenter<F>, CliError> {
    let dim = d + 1;
    Ok(match c {
        CenterInput::Rows(r) => ProjectionCenter::from_rows(f.clone(), dim, matrix(f, r, dim)?)?,
        CenterInput::Points(r) => ProjectionCenter::from_points(f.clone(), dim, matrix(f, r, dim)?)?,
        CenterInput::Forms(r) => ProjectionCenter::from_linear_system(f.clone(), dim, matrix(f, r, dim)?)?,
    })
}

fn cluster_json<F: Field>(f: &F, c: &ClusterReport<CurvePoint<F::Elem>>) -> Value {
    let lp: Vec<Value> = c.lambda_prime.iter().map(|(a, v)| json!({"alpha": a, "value": v})).collect();
    json!({
        "points": c.points.iter().map(|p| p.format(f)).collect::<Vec<_>>(),
        "branches": c.branches(),
        "delta": c.delta,
        "type": type_json(c.singularity),
        "vs_type": type_json(c.vs_type),
        "lambda_prime": lp,
        "dual_path_checked": c.dual_path_checked,
        "truncation": c.truncation,
    })
}

fn bound_json(b: &BoundVerdict) -> Value {
    json!({
        "delta_total": b.delta_total,
        "ell": b.ell,
        "within_ell": b.within_ell,
        "within_d_minus_n": b.within_d_minus_n,
        "pass": b.pass(),
    })
}

fn report_json<F: Field>(f: &F, center: &ProjectionCenter<F>, r: &ProjectionReport<CurvePoint<F::Elem>>) -> Value {
    let h = &r.hypotheses;
    json!({
        "center": {"rows": rows_json(f, center.rows()), "linear_system": rows_json(f, &center.linear_system())},
        "hypotheses": {
            "d": h.d, "n": h.n, "ell": h.ell, "genus": h.genus,
            "two_ell_lt_d": h.two_ell_lt_d, "ell_le_3": h.ell_le_3, "n_gt_2": h.n_gt_2, "all": h.all(),
        },
        "basepoint_free": r.basepoint_free,
        "birational": r.birational,
        "clusters": r.clusters.iter().map(|c| cluster_json(f, c)).collect::<Vec<_>>(),
        "delta_total": r.delta_total(),
        "arithmetic_genus": r.arithmetic_genus(),
        "bound": bound_json(&verify_genus_bound(r)),
    })
}

fn analyze_projection<F: Field>(f: F, job: &Job) -> Result<Value, CliError> {
    let p: job::AnalyzeProjection = job.params()?;
    let curve = RationalNormalCurve::new(f.clone(), p.d)?;
    let center = center_of(&f, p.d, &p.center)?;
    let opts =
        AnalyzeOptions { enforce_hypotheses: p.enforce_hypotheses, truncation_cap: job.truncation_cap, seed: job.seed };
    let rep = analyze(&center, &curve, &opts)?;
    Ok(report_json(&f, &center, &rep))
}

fn verify_bounds<F: Field>(f: F, job: &Job) -> Result<Value, CliError> {
    let p: job::AnalyzeProjection = job.params()?;
    let curve = RationalNormalCurve::new(f.clone(), p.d)?;
    let center = center_of(&f, p.d, &p.center)?;
    let opts =
        AnalyzeOptions { enforce_hypotheses: p.enforce_hypotheses, truncation_cap: job.truncation_cap, seed: job.seed };
    let rep = analyze(&center, &curve, &opts)?;
    let deltas: Vec<Value> = rep
        .clusters
        .iter()
        .map(|c| json!({"points": c.points.iter().map(|p| p.format(&f)).collect::<Vec<_>>(), "delta": c.delta}))
        .collect();
    let mut out = bound_json(&verify_genus_bound(&rep));
    out["clusters"] = Value::Array(deltas);
    Ok(out)
}

fn spec_json<F: Field>(f: &F, s: &SchubertSpec<F::Elem>) -> Value {
    let conds = |c: &[curvegap::schubert::Condition]| -> Vec<Value> {
        c.iter().map(|c| json!({"alpha": c.alpha, "at_least": c.at_least})).collect()
    };
    json!({
        "type": s.case.label(),
        "points": s.points.iter().map(|p| p.format(f)).collect::<Vec<_>>(),
        "conditions": conds(&s.conditions),
        "sampling_conditions": conds(&s.sampling_conditions),
        "partition": s.partition,
        "cell": s.cell,
        "flag": s.chain,
        "schubert_codim": s.schubert_codim(),
        "family_codim": s.family_codim(),
    })
}

fn sample_stratum<F: Field>(f: F, job: &Job) -> Result<Value, CliError> {
    let p: job::SampleStratum = job.params()?;
    let cases = p
        .types
        .iter()
        .map(|t| SingularityCase::from_label(t))
        .collect::<Result<Vec<_>, _>>()?;
    if p.n >= p.d {
        return Err(CliError::validation(format!("need n < d, got d = {}, n = {}", p.d, p.n)));
    }
    let codim = configuration_codim(&cases, p.d, p.n)?;
    let curve = RationalNormalCurve::new(f.clone(), p.d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let point_lists: Vec<Vec<CurvePoint<F::Elem>>> = match &p.points {
        Some(lists) => {
            if lists.len() != cases.len() {
                return Err(CliError::validation(format!("{} point lists for {} types", lists.len(), cases.len())));
            }
            lists
                .iter()
                .map(|l| l.iter().map(|s| CurvePoint::parse(&f, s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()?
        }
        None => {
            let total: usize = cases.iter().map(|c| c.branches()).sum();
            let mut all = random_points(&f, total, &mut rng);
            cases.iter().map(|c| all.drain(..c.branches()).collect()).collect()
        }
    };
    let mut seen = Vec::new();
    for p in point_lists.iter().flatten() {
        if seen.contains(p) {
            return Err(CliError::validation(format!("point {} used twice", p.format(&f))));
        }
        seen.push(p.clone());
    }
    let specs = cases
        .iter()
        .zip(point_lists)
        .map(|(&c, pts)| stratum_spec(c, pts, &curve, p.d - p.n))
        .collect::<Result<Vec<_>, _>>()?;
    let sample = sample_configuration(&specs, &curve, rand::Rng::gen(&mut rng))?;
    let center = &sample.center;
    let mut out = json!({
        "d": p.d,
        "n": p.n,
        "specs": specs.iter().map(|s| spec_json(&f, s)).collect::<Vec<_>>(),
        "schubert_codim": codim.schubert_codim,
        "family_codim": codim.family_codim,
        "family_dim": codim.family_dim,
        "draws": sample.draws,
        "center": {"rows": rows_json(&f, center.rows())},
        "linear_system": rows_json(&f, &center.linear_system()),
    });
    if p.verify {
        let opts = AnalyzeOptions { truncation_cap: job.truncation_cap, seed: job.seed, ..AnalyzeOptions::default() };
        out["analysis"] = match analyze(center, &curve, &opts) {
            Ok(rep) => report_json(&f, center, &rep),
            Err(e) => {
                let e = CliError::from(e);
                json!({"error": {"kind": e.kind, "message": e.message}})
            }
        };
    }
    Ok(out)
}

fn enumerate<F: Field>(f: &F, job: &Job) -> Result<Value, CliError> {
    let p: job::EnumerateTypes = job.params()?;
    let types: Vec<Value> = enumerate_types()
        .into_iter()
        .map(|c| {
            let (a, b) = c.codim_formula();
            let vs: Vec<Value> = c.vs_conditions().iter().map(|(a, v)| json!({"alpha": a, "value": v})).collect();
            let model = c.local_model(f, 8);
            let mut e = json!({
                "type": c.label(),
                "name": c.name(),
                "delta": c.delta(),
                "branches": c.branches(),
                "codim_formula": format!("{a}n-{b}"),
                "partition_offsets": c.partition_offsets(),
                "lambda_prime": vs,
                "fingerprint": c.reference_fingerprint().values,
                "generators": model.generators.iter().map(|(g, _)| g.clone()).collect::<Vec<_>>(),
                "relations": model.relations,
            });
            if let Some(n) = p.n.filter(|&n| c.partition_offsets().iter().all(|&o| o <= n)) {
                e["partition"] = json!(table_partition(c, n));
                e["codim"] = json!(table_codim(c, n));
            }
            e
        })
        .collect();
    Ok(json!({"count": types.len(), "types": types}))
}
