//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curvegap::classify::{
    classify_local_model, enumerate_types, Fingerprint, SingularityCase, SingularityType,
};
use curvegap::curve::{Curve, CurvePoint, Multifiltration, RationalNormalCurve};
use curvegap::field::{Field, PrimeField, RationalField};
use curvegap::gapfn::{fuzz_key_lemma, stabilized_closure, TruncationPolicy};
use curvegap::project::{
    analyze, verify_genus_bound, AnalyzeOptions, Hypotheses, ProjectError, ProjectionCenter, ProjectionReport,
};
use curvegap::schubert::{
    cell_indices, closed_conditions, partition_of_cell, random_points, round_trip, sample_center, stratum_spec,
    table_codim, table_partition,
};

type Outcome = Result<String, String>;

const P: u64 = 10007;

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

/// Center whose linear system is spanned by the given forms, each a list of
/// `(k, c)`: `c x^{d-k} y^k`.
fn center_of<F: Field>(f: &F, d: usize, forms: &[&[(usize, i64)]]) -> ProjectionCenter<F> {
    let forms = forms
        .iter()
        .map(|terms| {
            let mut v = vec![f.zero(); d + 1];
            for &(k, c) in terms.iter() {
                v[k] = f.add(&v[k], &f.from_i64(c));
            }
            v
        })
        .collect();
    ProjectionCenter::from_linear_system(f.clone(), d + 1, forms).unwrap()
}

fn monomial_center<F: Field>(f: &F, d: usize, ks: &[usize]) -> ProjectionCenter<F> {
    let forms: Vec<Vec<(usize, i64)>> = ks.iter().map(|&k| vec![(k, 1)]).collect();
    let refs: Vec<&[(usize, i64)]> = forms.iter().map(|v| v.as_slice()).collect();
    center_of(f, d, &refs)
}

fn single_cluster<F: Field>(
    rep: &ProjectionReport<CurvePoint<F::Elem>>,
    f: &F,
) -> Result<(Vec<String>, usize, Option<SingularityType>), String> {
    if rep.clusters.len() != 1 {
        return Err(format!("{} clusters", rep.clusters.len()));
    }
    let c = &rep.clusters[0];
    Ok((c.points.iter().map(|p| p.format(f)).collect(), c.delta, c.singularity))
}

fn sweep<F: Field>(f: &F) -> Result<usize, String> {
    let mut cases = 0;
    for d in 4..=10usize {
        for n in 3..d {
            if d >= 2 * n {
                continue;
            }
            let ell = d - n;
            let curve = RationalNormalCurve::new(f.clone(), d).unwrap();
            let ks: Vec<usize> = std::iter::once(0).chain(d - n + 1..=d).collect();
            let center = monomial_center(f, d, &ks);
            let rep = analyze(&center, &curve, &AnalyzeOptions::default()).map_err(|e| format!("(d, n) = ({d}, {n}): {e}"))?;
            let (pts, delta, _) = single_cluster(&rep, f).map_err(|e| format!("(d, n) = ({d}, {n}): {e}"))?;
            if pts != vec!["(1:0)".to_string()] || delta != ell {
                return Err(format!("(d, n) = ({d}, {n}): cluster {pts:?} with δ = {delta}, want (1:0) with δ = {ell}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let cases = sweep(&fp())?;
    let tp = t.elapsed();
    let t = Instant::now();
    sweep(&RationalField)?;
    let tq = t.elapsed();
    // The same monomials with x and y exchanged put the point at (0:1).
    let f = fp();
    for (d, n) in [(5, 3), (7, 4), (10, 6)] {
        let curve = RationalNormalCurve::new(f, d).unwrap();
        let ks: Vec<usize> = std::iter::once(d).chain(0..n).collect();
        let rep = analyze(&monomial_center(&f, d, &ks), &curve, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
        let (pts, delta, _) = single_cluster(&rep, &f)?;
        if pts != vec!["(0:1)".to_string()] || delta != d - n {
            return Err(format!("exchanged ({d}, {n}): {pts:?}, δ = {delta}"));
        }
    }
    if tp >= Duration::from_secs(10) || tq >= Duration::from_secs(60) {
        return Err(format!("too slow: F_p {tp:.2?}, Q {tq:.2?}"));
    }
    Ok(format!("{cases} (d, n) pairs, δ = d - n at (1:0); F_{P} {tp:.2?}, Q {tq:.2?}"))
}

/// Per cluster: whether it is exactly `(1:0)`, and `δ`.
fn at_infinity<E: PartialEq>(
    rep: Result<ProjectionReport<CurvePoint<E>>, ProjectError>,
) -> Result<Vec<(bool, usize)>, ProjectError> {
    Ok(rep?.clusters.iter().map(|c| (c.points == [CurvePoint::Infinity], c.delta)).collect())
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    for n in 3..=5usize {
        let d = 2 * n;
        for field_is_q in [false, true] {
            let run = |rep: Result<Vec<(bool, usize)>, ProjectError>, h: Hypotheses, label: &str| -> Result<(), String> {
                if h.two_ell_lt_d {
                    return Err(format!("n = {n} ({label}): gate does not flag 2ℓ < d"));
                }
                let deltas = rep.map_err(|e| format!("n = {n} ({label}): {e}"))?;
                if deltas != vec![(true, n + 1)] {
                    return Err(format!("n = {n} ({label}): clusters {deltas:?}, want one point with δ = {}", n + 1));
                }
                Ok(())
            };
            let ks: Vec<usize> = std::iter::once(0).chain(n + 1..=d).collect();
            let opts = AnalyzeOptions { enforce_hypotheses: false, ..AnalyzeOptions::default() };
            if field_is_q {
                let f = RationalField;
                let curve = RationalNormalCurve::new(f.clone(), d).unwrap();
                let c = monomial_center(&f, d, &ks);
                let gated = analyze(&c, &curve, &AnalyzeOptions::default());
                if !matches!(gated, Err(ProjectError::HypothesisViolation(_))) {
                    return Err(format!("n = {n}: enforced gate did not refuse"));
                }
                run(at_infinity(analyze(&c, &curve, &opts)), Hypotheses::of(&c, &curve), "Q")?;
            } else {
                let f = fp();
                let curve = RationalNormalCurve::new(f, d).unwrap();
                let c = monomial_center(&f, d, &ks);
                run(at_infinity(analyze(&c, &curve, &opts)), Hypotheses::of(&c, &curve), "F_p")?;
            }
        }
        parts.push(format!("n = {n}: δ = {}", n + 1));
    }
    Ok(format!("{}; 2ℓ < d flagged", parts.join(", ")))
}

fn criterion_3() -> Outcome {
    let check = |forms: &[&[(usize, i64)]], want: SingularityCase, q: bool| -> Result<(), String> {
        let got = if q {
            let f = RationalField;
            let curve = RationalNormalCurve::new(f.clone(), 5).unwrap();
            let rep = analyze(&center_of(&f, 5, forms), &curve, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
            single_cluster(&rep, &f)?
        } else {
            let f = fp();
            let curve = RationalNormalCurve::new(f, 5).unwrap();
            let rep = analyze(&center_of(&f, 5, forms), &curve, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
            single_cluster(&rep, &f)?
        };
        if got.1 != want.delta() || got.2 != Some(SingularityType::Case(want)) {
            return Err(format!("{forms:?}: got {got:?}, want {want}"));
        }
        Ok(())
    };
    // x^5, x^2y^3, xy^4, y^5 and x^5 + x^3y^2, x^2y^3, xy^4, y^5
    let cusp_a: [&[(usize, i64)]; 4] = [&[(0, 1)], &[(3, 1)], &[(4, 1)], &[(5, 1)]];
    let cusp_b: [&[(usize, i64)]; 4] = [&[(0, 1), (2, 1)], &[(3, 1)], &[(4, 1)], &[(5, 1)]];
    for q in [false, true] {
        check(&cusp_a, SingularityCase::T2_1a, q)?;
        check(&cusp_b, SingularityCase::T2_1a, q)?;
    }
    // x^5 + c xy^4 - y^5, x^2y^3, x^3y^2, x^4y
    let cs = [1i64, 2, 3, 7, 5000, -1];
    for &c in &cs {
        let first = [(0usize, 1i64), (4, c), (5, -1)];
        let forms: [&[(usize, i64)]; 4] = [&first, &[(3, 1)], &[(2, 1)], &[(1, 1)]];
        check(&forms, SingularityCase::T2_2b, false)?;
    }
    Ok(format!("two parametrizations give 2.1.a over F_{P} and Q; 2.2.b for c in {cs:?}"))
}

fn criterion_4() -> Outcome {
    let f = fp();
    let types = enumerate_types();
    if types.len() != 21 {
        return Err(format!("{} types", types.len()));
    }
    let mut prints = HashSet::new();
    for &c in &types {
        let got = classify_local_model(&f, c, TruncationPolicy::for_ell(3, 12, 64)).map_err(|e| format!("{c}: {e}"))?;
        if got != SingularityType::Case(c) {
            return Err(format!("{c} classified as {got}"));
        }
        let st = stabilized_closure(&f, TruncationPolicy::for_ell(3, 12, 64), |n| Ok(c.local_model(&f, n).space(&f)))
            .map_err(|e| e.to_string())?;
        let fpr = Fingerprint::of_gap_function(&st.algebra, st.delta).map_err(|e| e.to_string())?;
        if fpr != c.reference_fingerprint() {
            return Err(format!("{c}: fingerprint differs from reference"));
        }
        prints.insert(fpr);
    }
    if prints.len() != 21 {
        return Err(format!("{} distinct fingerprints", prints.len()));
    }
    Ok("21 types round-trip through classify_ring; 21 distinct fingerprints".into())
}

/// Centers for criteria 5 and 6: Schubert samples of random types and
/// centers forced through osculating spaces at random points.
struct Corpus {
    analyzed: usize,
    clusters: usize,
    dual_checks: usize,
    skipped: Vec<String>,
    bound_failures: Vec<String>,
    dual_failures: Vec<String>,
    max_delta: usize,
}

fn corpus() -> Corpus {
    let f = fp();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = Corpus {
        analyzed: 0,
        clusters: 0,
        dual_checks: 0,
        skipped: Vec::new(),
        bound_failures: Vec::new(),
        dual_failures: Vec::new(),
        max_delta: 0,
    };
    let mut attempt = 0;
    while out.analyzed < 120 && attempt < 400 {
        attempt += 1;
        let schubert = attempt % 2 == 0;
        let (center, curve, label) = if schubert {
            let case = SingularityCase::ALL[rng.gen_range(0..21)];
            let ell = rng.gen_range(case.delta().max(1)..=3);
            let d = rng.gen_range(2 * ell + 1..=10).max(ell + 3);
            let curve = RationalNormalCurve::new(f, d).unwrap();
            let pts = random_points(&f, case.branches(), &mut rng);
            let Ok(spec) = stratum_spec(case, pts, &curve, ell) else { continue };
            match sample_center(&spec, &curve, rng.gen()) {
                Ok(s) => (s.center, curve, format!("{case} at (d, ℓ) = ({d}, {ell})")),
                Err(e) => {
                    out.skipped.push(format!("{case}: {e}"));
                    continue;
                }
            }
        } else {
            let ell = rng.gen_range(1..=3usize);
            let d = rng.gen_range(2 * ell + 1..=10).max(ell + 3);
            let curve = RationalNormalCurve::new(f, d).unwrap();
            let pts = random_points(&f, rng.gen_range(1..=ell.min(2)), &mut rng);
            let mut rows = Vec::new();
            for p in &pts {
                let order = rng.gen_range(2..=4usize);
                let mut v = vec![0u64; d + 1];
                for j in 0..order {
                    let jet = curve.jet_functional(p, j).unwrap();
                    let c = f.random(&mut rng);
                    for (x, y) in v.iter_mut().zip(&jet) {
                        *x = f.add(x, &f.mul(&c, y));
                    }
                }
                rows.push(v);
            }
            while rows.len() < ell {
                rows.push((0..=d).map(|_| f.random(&mut rng)).collect());
            }
            let Ok(c) = ProjectionCenter::from_rows(f, d + 1, rows) else { continue };
            (c, curve, format!("forced at (d, ℓ) = ({d}, {ell})"))
        };
        let opts = AnalyzeOptions { seed: rng.gen(), ..AnalyzeOptions::default() };
        match analyze(&center, &curve, &opts) {
            Ok(rep) => {
                out.analyzed += 1;
                for c in &rep.clusters {
                    out.clusters += 1;
                    out.dual_checks += c.dual_path_checked;
                    out.max_delta = out.max_delta.max(c.delta);
                    if c.dual_path_checked == 0 {
                        out.dual_failures.push(format!("{label}: no dual-path check"));
                    }
                }
                let v = verify_genus_bound(&rep);
                if !v.pass() {
                    out.bound_failures.push(format!("{label}: Σδ = {} > ℓ = {}", v.delta_total, v.ell));
                }
            }
            Err(e @ ProjectError::DualPathMismatch { .. }) => out.dual_failures.push(format!("{label}: {e}")),
            Err(
                e @ (ProjectError::RamificationOverExtension { .. }
                | ProjectError::IrrationalRamification { .. }
                | ProjectError::PartnersOverExtension { .. }
                | ProjectError::Basepoints(_)
                | ProjectError::BasepointsOverExtension { .. }
                | ProjectError::NonBirational),
            ) => out.skipped.push(format!("{label}: {e}")),
            Err(e) => out.dual_failures.push(format!("{label}: {e}")),
        }
    }
    out
}

fn criterion_5(c: &Corpus) -> Outcome {
    if !c.dual_failures.is_empty() {
        return Err(format!("{:?}", c.dual_failures));
    }
    if c.analyzed < 100 {
        return Err(format!("only {} centers analyzed", c.analyzed));
    }
    Ok(format!(
        "{} centers, {} clusters (δ up to {}), {} λ' values equal on both sides; {} draws skipped: {}",
        c.analyzed,
        c.clusters,
        c.max_delta,
        c.dual_checks,
        c.skipped.len(),
        skipped_summary(&c.skipped)
    ))
}

fn skipped_summary(s: &[String]) -> String {
    let mut kinds: Vec<(String, usize)> = Vec::new();
    for msg in s {
        let key = msg.split(": ").nth(1).unwrap_or(msg).split([' ', '(']).take(3).collect::<Vec<_>>().join(" ");
        match kinds.iter_mut().find(|(k, _)| *k == key) {
            Some((_, n)) => *n += 1,
            None => kinds.push((key, 1)),
        }
    }
    if kinds.is_empty() {
        return "none".into();
    }
    kinds.iter().map(|(k, n)| format!("{n}× \"{k}…\"")).collect::<Vec<_>>().join(", ")
}

fn criterion_6(c: &Corpus) -> Outcome {
    if !c.bound_failures.is_empty() {
        return Err(format!("{:?}", c.bound_failures));
    }
    if c.analyzed < 100 {
        return Err(format!("only {} centers analyzed", c.analyzed));
    }
    Ok(format!("Σδ <= ℓ on all {} centers", c.analyzed))
}

fn criterion_7() -> Outcome {
    let out = fuzz_key_lemma(&fp(), 250, 3, 4, 7).map_err(|e| e.to_string())?;
    if !out.violations.is_empty() {
        return Err(format!("{:?}", out.violations));
    }
    let by_delta: Vec<String> = (0..=4)
        .map(|d| format!("δ={d}: {}", out.histogram.iter().filter(|((_, x), _)| *x == d).map(|(_, n)| n).sum::<usize>()))
        .collect();
    Ok(format!("{} algebras ({}), {} (algebra, γ) checks", out.algebras, by_delta.join(", "), out.checks))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let f = fp();
    for n in 4..=6 {
        for c in SingularityCase::ALL {
            let cell = cell_indices(&closed_conditions(c, false), 3, n);
            let lambda = partition_of_cell(&cell, n);
            if lambda != table_partition(c, n) || lambda.iter().sum::<usize>() - c.branches() != table_codim(c, n) {
                return Err(format!("{c} at n = {n}: partition {lambda:?}"));
            }
        }
    }
    let mut runs: Vec<(SingularityCase, usize, usize)> = SingularityCase::ALL.iter().map(|&c| (c, 8, 5)).collect();
    runs.extend(SingularityCase::ALL.iter().filter(|c| c.delta() <= 2).map(|&c| (c, 5, 3)));
    let (mut accepted, mut rejected, mut draws) = (0, 0, 0);
    let mut failures = Vec::new();
    for (i, &(c, d, n)) in runs.iter().enumerate() {
        let rt = round_trip(f, c, d, n, 20, 1000 + i as u64).map_err(|e| format!("{c} at ({d}, {n}): {e}"))?;
        accepted += rt.accepted;
        rejected += rt.rejected;
        draws += rt.draws;
        failures.extend(rt.failures);
    }
    let elapsed = t.elapsed();
    if !failures.is_empty() {
        return Err(format!("{} failures: {:?}", failures.len(), failures));
    }
    if 10 * rejected > draws {
        return Err(format!("rejections {rejected} of {draws} draws"));
    }
    if elapsed >= Duration::from_secs(300) {
        return Err(format!("too slow: {elapsed:.2?}"));
    }
    Ok(format!(
        "{} runs, {accepted} samples classified as intended; {rejected} rejections in {draws} draws; partitions match for n = 4, 5, 6; {elapsed:.2?}",
        runs.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let q = RationalField;
    let f = fp();
    let mut checked = 0;
    for i in 0..50 {
        let d = rng.gen_range(2..=10usize);
        let r = rng.gen_range(1..=4usize.min(d + 1));
        let total = rng.gen_range(0..=d + 1);
        let mut alpha = vec![0; r];
        for _ in 0..total {
            alpha[rng.gen_range(0..r)] += 1;
        }
        let dim = if i % 2 == 0 {
            let curve = RationalNormalCurve::new(q.clone(), d).unwrap();
            let pts = random_points(&q, r, &mut rng);
            Multifiltration::new(&curve, pts).and_then(|m| m.dim(&alpha))
        } else {
            let curve = RationalNormalCurve::new(f, d).unwrap();
            let pts = random_points(&f, r, &mut rng);
            Multifiltration::new(&curve, pts).and_then(|m| m.dim(&alpha))
        }
        .map_err(|e| e.to_string())?;
        if dim != total {
            return Err(format!("d = {d}, α = {alpha:?}: dim {dim}"));
        }
        checked += 1;
    }
    Ok(format!("{checked} configurations, dim F^α = |α|"))
}

fn main() {
    let corpus = corpus();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 sharp-bound family", criterion_1()),
        ("2 hypothesis sharpness", criterion_2()),
        ("3 quintic goldens", criterion_3()),
        ("4 classification completeness", criterion_4()),
        ("5 dual path", criterion_5(&corpus)),
        ("6 genus bound", criterion_6(&corpus)),
        ("7 key lemma fuzz", criterion_7()),
        ("8 schubert round trip", criterion_8()),
        ("9 multifiltration dimension", criterion_9()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
