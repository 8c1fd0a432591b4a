use cherednik::arrangement::{check_oracle, conjectured_j_generators, ideal_i, ideal_t, ArrangementError, ArrangementIdeal};
use cherednik::certify::{certify_irreducible, Certificate};
use cherednik::degeneration::verify_degeneration;
use cherednik::dunkl::{CherednikParams, DunklEngine, DunklError};
use cherednik::group::GroupSpec;
use cherednik::hilbert::{closed_hilbert_wreath, remark_series};
use cherednik::koszul::{columns, matrix_koszul_check, PolyMatrix};
use cherednik::lmodule::{compute_l_specialized, compute_l_symbolic, LModule};
use cherednik::param::ParamField;
use cherednik::poly::parse_poly;
use cherednik::rep::{builtin_rep, GradedRep};
use cherednik::resolution::{graded_betti, BettiTable, Presentation};
use cherednik::series::TPoly;
use cherednik::transition::{closed_transition, transition_matrix, TransitionError, TransitionMatrix};
use cherednik::{Field, Fq, GaloisField, VermaVector};
use serde_json::{json, Value};

use crate::cache::{Artifact, Cache};
use crate::config::{GroupArgs, IdealJob, IdealKind, Job, LmodJob, Mode};
use crate::error::CliError;

/// Serves `job` from the cache unless `fresh`, otherwise computes and stores it.
pub fn execute(job: &Job, cache: &Cache, fresh: bool) -> Result<Artifact, CliError> {
    if !fresh {
        if let Some(hit) = cache.load(job) {
            return Ok(hit);
        }
    }
    let artifact = compute(job)?;
    cache.store(job, &artifact)?;
    Ok(artifact)
}

pub fn compute(job: &Job) -> Result<Artifact, CliError> {
    match job {
        Job::Lmod(l) => lmod(l),
        Job::Dunkl {
            group,
            p,
            tau,
            hbar,
            seed,
            vector,
        } => dunkl(*group, *p, tau, *hbar, *seed, vector),
        Job::Arr(a) => arrangement(a),
        Job::BettiIdeal(a) => betti_ideal(a),
        Job::BettiL { lmod, dmax } => betti_l(lmod, *dmax),
        Job::Transition { m, p, dmax, seed } => transition(*m, *p, *dmax, *seed),
        Job::Degen { group, tau, p, seeds } => degeneration(*group, tau, *p, seeds),
        Job::Koszul {
            p,
            budget,
            seeds,
            matrices,
        } => koszul(*p, *budget, seeds, matrices),
    }
}

fn ok(result: Value) -> Result<Artifact, CliError> {
    Ok(Artifact { result, mismatch: None })
}

fn group_spec(g: GroupArgs) -> Result<GroupSpec, CliError> {
    GroupSpec::new(g.m, g.r, g.n).map_err(CliError::validation)
}

fn generic_field(p: u64, m: u32) -> Result<GaloisField, CliError> {
    GaloisField::for_generic(p, m).map_err(CliError::validation)
}

fn prime_field(p: u64) -> Result<GaloisField, CliError> {
    GaloisField::prime(p).map_err(CliError::validation)
}

/// Group and field for `G(m,r,n)` over `F_p`, with `τ` checked by name.
fn validated(g: GroupArgs, p: u64, tau: &str, hbar: u8) -> Result<(GaloisField, GroupSpec), CliError> {
    if hbar > 1 {
        return Err(CliError::invalid(format!("hbar must be 0 or 1, got {hbar}")));
    }
    let group = group_spec(g)?;
    let f = generic_field(p, g.m)?;
    let embedded = group.in_field(f.root_order()).map_err(CliError::validation)?;
    builtin_rep(&f, &embedded, tau).map_err(CliError::validation)?;
    Ok((f, group))
}

fn group_json(g: GroupArgs) -> Value {
    json!({ "m": g.m, "r": g.r, "n": g.n })
}

fn lambda_of(tau: &str, n: usize) -> Option<Vec<usize>> {
    if tau == "trivial" {
        return Some(vec![n]);
    }
    let parts = tau.strip_prefix("pullback:").unwrap_or(tau).strip_prefix("specht:")?;
    parts.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// Closed-form series of `L` where one is proved: trivial `τ` with `ħ = 0`
/// and `p ∤ m^n n!/r`, and pulled-back Specht modules of `G(m,1,n)` with
/// `p ∤ m^n n!`.
pub fn oracle_for(job: &LmodJob) -> Option<(&'static str, TPoly)> {
    let GroupArgs { m, r, n } = job.group;
    let p = job.p;
    let factorial: u128 = (1..=n as u128).product();
    let order = (m as u128).pow(n as u32) * factorial;
    if r == 1 && !order.is_multiple_of(p as u128) {
        let lambda = lambda_of(&job.tau, n)?;
        if lambda.iter().sum::<usize>() == n {
            return Some(("wreath", closed_hilbert_wreath(&lambda, m, n, job.hbar, p).trimmed()));
        }
    }
    if job.tau == "trivial" && job.hbar == 0 && !(order / r as u128).is_multiple_of(p as u128) {
        return Some(("invariant-degrees", remark_series(m, r, n).trimmed()));
    }
    None
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "passed": c.passed(),
        "socleTop": c.socle_top,
        "socleIrred": c.socle_irred,
        "betaNonzero": c.beta_nonzero,
    })
}

fn lmod(job: &LmodJob) -> Result<Artifact, CliError> {
    let (f, group) = validated(job.group, job.p, &job.tau, job.hbar)?;
    let (dims, status, cert) = match job.mode {
        Mode::Specialized => {
            let run =
                compute_l_specialized(&f, &group, &job.tau, job.hbar, &job.seeds, job.cap).map_err(CliError::computation)?;
            let engine = DunklEngine::new(&run.field, &run.group, &run.rep, &run.params);
            let cert = certify_irreducible(&engine, &run.rep, &run.module, &run.module).map_err(CliError::computation)?;
            (run.module.dims(), run.module.status, cert)
        }
        Mode::Symbolic => {
            let (pf, module) = compute_l_symbolic(&f, &group, &job.tau, job.hbar, job.cap).map_err(CliError::computation)?;
            let embedded = group.in_field(f.root_order()).map_err(CliError::validation)?;
            let rep = builtin_rep(&pf, &embedded, &job.tau).map_err(CliError::computation)?;
            let params = CherednikParams::symbolic(&pf, &embedded, job.hbar).map_err(CliError::computation)?;
            let cert = symbolic_certificate(&pf, &embedded, &rep, &params, &module)?;
            (module.dims(), module.status, cert)
        }
    };
    let hilbert: TPoly = dims.iter().map(|&d| d as i64).collect();
    let oracle = oracle_for(job);
    let matches = oracle.as_ref().map(|(_, s)| *s == hilbert);
    let result = json!({
        "group": group_json(job.group),
        "p": job.p,
        "tau": job.tau,
        "hbar": job.hbar,
        "mode": job.mode,
        "seeds": job.seeds,
        "status": status,
        "hilbert": hilbert,
        "topDegree": dims.len().checked_sub(1),
        "totalDim": dims.iter().sum::<usize>(),
        "certified": certificate_json(&cert),
        "oracle": oracle.as_ref().map(|(source, s)| json!({ "source": source, "series": s })),
        "match": matches,
    });
    let mismatch = (matches == Some(false)).then(|| {
        format!(
            "computed series {hilbert:?} differs from the {} oracle {:?}",
            oracle.as_ref().map(|o| o.0).unwrap_or_default(),
            oracle.as_ref().map(|o| &o.1).unwrap_or(&Vec::new())
        )
    });
    Ok(Artifact { result, mismatch })
}

fn symbolic_certificate(
    pf: &ParamField,
    group: &GroupSpec,
    rep: &GradedRep<<ParamField as Field>::Elem>,
    params: &CherednikParams<<ParamField as Field>::Elem>,
    module: &LModule<<ParamField as Field>::Elem>,
) -> Result<Certificate, CliError> {
    let engine = DunklEngine::new(pf, group, rep, params);
    certify_irreducible(&engine, rep, module, module).map_err(CliError::computation)
}

fn dunkl(g: GroupArgs, p: u64, tau: &str, hbar: u8, seed: u64, vector: &[String]) -> Result<Artifact, CliError> {
    let (f, group) = validated(g, p, tau, hbar)?;
    let group = group.in_field(f.root_order()).map_err(CliError::validation)?;
    let rep = builtin_rep(&f, &group, tau).map_err(CliError::validation)?;
    if vector.len() != rep.dim {
        return Err(CliError::invalid(format!(
            "{tau} has dimension {}, but {} components were given",
            rep.dim,
            vector.len()
        )));
    }
    let components = vector
        .iter()
        .map(|s| parse_poly(&f, s, g.n).map_err(CliError::validation))
        .collect::<Result<Vec<_>, _>>()?;
    let v = VermaVector::from_components(components);
    let params = CherednikParams::specialized(&f, &group, hbar, seed).map_err(CliError::computation)?;
    let engine = DunklEngine::new(&f, &group, &rep, &params);
    let images = engine.apply_all(&v).map_err(|e| match e {
        DunklError::NonHomogeneous => CliError::validation(e),
        _ => CliError::computation(e),
    })?;
    let parameters: serde_json::Map<String, Value> = params
        .values
        .iter()
        .map(|(c, a)| (c.name(), Value::String(f.format_elem(a))))
        .collect();
    ok(json!({
        "group": group_json(g),
        "p": p,
        "tau": tau,
        "hbar": hbar,
        "seed": seed,
        "parameters": parameters,
        "input": component_strings(&f, &v),
        "images": images.iter().map(|w| component_strings(&f, w)).collect::<Vec<_>>(),
    }))
}

fn component_strings(f: &GaloisField, v: &VermaVector<Fq>) -> Vec<String> {
    v.components.iter().map(|c| c.format(f)).collect()
}

fn arrangement_error(e: ArrangementError) -> CliError {
    match e {
        ArrangementError::Dunkl(_) => CliError::computation(e),
        _ => CliError::validation(e),
    }
}

fn build_ideal(a: &IdealJob) -> Result<(GaloisField, ArrangementIdeal<Fq>), CliError> {
    match a.kind {
        IdealKind::I => {
            let f = prime_field(a.p)?;
            let ideal = ideal_i(&f, a.i, a.m, a.n).map_err(arrangement_error)?;
            Ok((f, ideal))
        }
        IdealKind::T => {
            let f = prime_field(a.p)?;
            let ideal = ideal_t(&f, a.i, a.n).map_err(arrangement_error)?;
            Ok((f, ideal))
        }
        IdealKind::J => {
            let f = GaloisField::minimal(a.p, a.m).map_err(CliError::validation)?;
            let ideal = conjectured_j_generators(&f, a.m, a.m, a.n, a.p, "trivial").map_err(arrangement_error)?;
            Ok((f, ideal))
        }
    }
}

fn ideal_json(a: &IdealJob) -> Value {
    json!({ "kind": a.kind, "i": a.i, "m": a.m, "n": a.n, "p": a.p, "dmax": a.dmax })
}

fn arrangement(a: &IdealJob) -> Result<Artifact, CliError> {
    let (f, ideal) = build_ideal(a)?;
    let check = check_oracle(&f, &ideal, a.dmax);
    let result = json!({
        "ideal": ideal_json(a),
        "generators": ideal.generators.iter().map(|g| g.format(&f)).collect::<Vec<_>>(),
        "conjectural": ideal.conjectural.iter().map(|g| g.format(&f)).collect::<Vec<_>>(),
        "oracle": check.oracle,
        "computed": check.computed.coeffs,
        "topDegree": ideal.top_degree,
        "socleDim": ideal.socle_dim,
        "match": check.matches,
    });
    let mismatch = (!check.matches).then(|| "quotient Hilbert function differs from the closed form".to_string());
    Ok(Artifact { result, mismatch })
}

fn betti_json(table: &BettiTable) -> Value {
    json!({
        "completeness": table.completeness,
        "ranks": table.ranks(),
        "betti": table.raw_map(),
        "table": table.to_string(),
    })
}

fn betti_ideal(a: &IdealJob) -> Result<Artifact, CliError> {
    let (f, ideal) = build_ideal(a)?;
    let table = graded_betti(&f, &Presentation::ideal(a.n, ideal.generators), a.dmax).map_err(CliError::computation)?;
    ok(json!({ "ideal": ideal_json(a), "resolution": betti_json(&table) }))
}

fn module_betti<F: Field>(f: &F, module: &LModule<F::Elem>, n: usize, dmax: Option<u32>) -> Result<BettiTable, CliError> {
    let gens = module.minimal_generators(f).map_err(CliError::computation)?;
    let top = module.top_degree().unwrap_or(0);
    let cols = gens.into_iter().map(|v| v.components).collect();
    let pres = Presentation::columns(n, module.dim_tau(), cols);
    graded_betti(f, &pres, dmax.unwrap_or(top + n as u32)).map_err(CliError::computation)
}

fn betti_l(job: &LmodJob, dmax: Option<u32>) -> Result<Artifact, CliError> {
    let (f, group) = validated(job.group, job.p, &job.tau, job.hbar)?;
    let n = job.group.n;
    let (dims, table) = match job.mode {
        Mode::Specialized => {
            let run =
                compute_l_specialized(&f, &group, &job.tau, job.hbar, &job.seeds, job.cap).map_err(CliError::computation)?;
            (run.module.dims(), module_betti(&run.field, &run.module, n, dmax)?)
        }
        Mode::Symbolic => {
            let (pf, module) = compute_l_symbolic(&f, &group, &job.tau, job.hbar, job.cap).map_err(CliError::computation)?;
            (module.dims(), module_betti(&pf, &module, n, dmax)?)
        }
    };
    ok(json!({
        "group": group_json(job.group),
        "p": job.p,
        "tau": job.tau,
        "hbar": job.hbar,
        "mode": job.mode,
        "seeds": job.seeds,
        "hilbert": dims,
        "resolution": betti_json(&table),
    }))
}

fn transition_error(e: TransitionError) -> CliError {
    match e {
        TransitionError::Modular { .. }
        | TransitionError::LowBound { .. }
        | TransitionError::Field(_)
        | TransitionError::Group(_) => CliError::validation(e),
        _ => CliError::computation(e),
    }
}

fn format_matrix(entries: &[Vec<TPoly>]) -> Vec<Vec<String>> {
    entries
        .iter()
        .map(|row| row.iter().map(|e| TransitionMatrix::format_entry(e)).collect())
        .collect()
}

fn transition(m: u32, p: u64, dmax: u32, seed: u64) -> Result<Artifact, CliError> {
    prime_field(p)?;
    let t = transition_matrix(m, p, dmax, seed).map_err(transition_error)?;
    let expected = closed_transition(m);
    let mut differing = Vec::new();
    for (s, row) in expected.iter().flatten().enumerate() {
        for (c, want) in row.iter().enumerate() {
            if t.entries[s][c] != *want {
                differing.push(json!({ "row": t.labels[s], "column": t.labels[c] }));
            }
        }
    }
    let matches = expected.as_ref().map(|_| differing.is_empty());
    let result = json!({
        "m": m,
        "p": p,
        "dmax": dmax,
        "seed": seed,
        "labels": t.labels,
        "matrix": format_matrix(&t.entries),
        "expected": expected.as_deref().map(format_matrix),
        "differing": differing,
        "match": matches,
        "notes": t.notes,
    });
    let mismatch = (matches == Some(false)).then(|| format!("{} entries differ from the closed form", differing.len()));
    Ok(Artifact { result, mismatch })
}

fn degeneration(g: GroupArgs, tau: &str, p: u64, seeds: &[u64]) -> Result<Artifact, CliError> {
    group_spec(g)?;
    if !g.m.is_multiple_of(g.r) {
        return Err(CliError::invalid(format!("r = {} does not divide m = {}", g.r, g.m)));
    }
    generic_field(p, g.m)?;
    let report = verify_degeneration(g.m, g.r, g.n, tau, p, seeds).map_err(CliError::computation)?;
    let mut result = serde_json::to_value(&report).expect("serializable");
    result["group"] = group_json(g);
    result["tau"] = json!(tau);
    result["p"] = json!(p);
    let mismatch = (!report.equal || !report.lemma_ok).then(|| {
        format!(
            "identity holds: {}, lemma spot check holds: {}",
            report.equal, report.lemma_ok
        )
    });
    Ok(Artifact { result, mismatch })
}

/// Matrices in the fixture layout: `{"group": [m, r, n], "tau": ..., "scalar": [...],
/// "byCharacteristic": {"p": [...]}}`; each matrix is a list of rows of polynomial strings.
fn koszul(p: u64, budget: u32, seeds: &[u64], spec: &Value) -> Result<Artifact, CliError> {
    let bad = |what: &str| CliError::invalid(format!("matrix file: {what}"));
    let dims: Vec<u64> = match spec.get("group") {
        Some(v) => serde_json::from_value(v.clone()).map_err(|_| bad("group must be [m, r, n]"))?,
        None => return Err(bad("missing group")),
    };
    let [m, r, n] = dims[..] else {
        return Err(bad("group must be [m, r, n]"));
    };
    let g = GroupArgs {
        m: m as u32,
        r: r as u32,
        n: n as usize,
    };
    let tau = spec.get("tau").and_then(Value::as_str).ok_or_else(|| bad("missing tau"))?;
    let (f, group) = validated(g, p, tau, 0)?;
    let empty = Vec::new();
    let scalar = spec.get("scalar").and_then(Value::as_array).unwrap_or(&empty);
    let specific = spec
        .get("byCharacteristic")
        .and_then(|b| b.get(p.to_string()))
        .and_then(Value::as_array)
        .unwrap_or(&empty);
    let mats = scalar
        .iter()
        .chain(specific)
        .map(|mat| parse_matrix(&f, mat, g.n))
        .collect::<Result<Vec<_>, _>>()?;
    if mats.is_empty() {
        return Err(bad(&format!("no matrices for p = {p}")));
    }
    let run = compute_l_specialized(&f, &group, tau, 0, seeds, None).map_err(CliError::computation)?;
    let report = matrix_koszul_check(&f, &mats, g.n, Some(&run.module), budget).map_err(CliError::validation)?;
    let cols: Vec<_> = mats.iter().flat_map(columns).map(|c| c.components).collect();
    let table = graded_betti(&f, &Presentation::columns(g.n, run.rep.dim, cols), budget).map_err(CliError::computation)?;
    ok(json!({
        "group": group_json(g),
        "tau": tau,
        "p": p,
        "budget": budget,
        "report": report,
        "resolution": betti_json(&table),
    }))
}

fn parse_matrix(f: &GaloisField, v: &Value, n: usize) -> Result<PolyMatrix<Fq>, CliError> {
    let bad = || CliError::invalid("matrix file: matrices are lists of rows of strings");
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|s| parse_poly(f, s.as_str().ok_or_else(bad)?, n).map_err(CliError::validation))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(m: u32, r: u32, n: usize, p: u64, tau: &str, hbar: u8) -> LmodJob {
        LmodJob {
            group: GroupArgs { m, r, n },
            p,
            tau: tau.into(),
            hbar,
            mode: Mode::Specialized,
            seeds: vec![1],
            cap: None,
        }
    }

    #[test]
    fn oracle_selection() {
        let (src, s) = oracle_for(&job(3, 3, 2, 7, "trivial", 0)).unwrap();
        assert_eq!((src, s), ("invariant-degrees", vec![1, 2, 2, 1]));
        let (src, s) = oracle_for(&job(2, 1, 2, 7, "trivial", 1)).unwrap();
        assert_eq!(src, "wreath");
        assert_eq!(s.iter().sum::<i64>(), 392);
        assert_eq!(
            oracle_for(&job(2, 1, 3, 7, "specht:2,1", 0)).unwrap().1.iter().sum::<i64>(),
            48
        );
        // p divides |G|: no proved closed form
        assert!(oracle_for(&job(2, 2, 5, 5, "trivial", 0)).is_none());
        assert!(oracle_for(&job(3, 3, 2, 7, "rho:1", 0)).is_none());
        assert!(oracle_for(&job(3, 3, 2, 7, "trivial", 1)).is_none());
    }
}
