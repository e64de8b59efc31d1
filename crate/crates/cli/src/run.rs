use rayon::prelude::*;
use serde_json::{json, Value};

use vosa_core::kernel::serial::{matrix_to_json, scalar_to_json_compact, vector_to_json};
use vosa_core::kernel::{HermitianMatrix, PsdVerdict, Weight};
use vosa_core::ns::{simple_quotient_dims, NsParams, NsVerma};
use vosa_core::structure::{conformal_comparison, decompose, weight_one_algebra};
use vosa_core::vosa::{
    invariance_check_all, labeled_vector_json, random_commutator_checks, CheckReport, TruncatedVosa,
};
use vosa_core::Error;

use crate::error::{CliError, CliResult};
use crate::job::{Check, Construction, Job};

/// Result of a run: the JSON report, the exit code, and the character table if requested.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
    pub characters: Option<Vec<(Weight, usize)>>,
}

/// The Gram matrix of the Verma module at weight `w`, with basis labels.
fn ns_gram(p: &NsParams, w: Weight, corrupt: Option<Weight>) -> (Vec<String>, HermitianMatrix) {
    let (basis, g) = NsVerma::new(p.clone()).gram(w);
    let labels = basis.iter().map(|m| format!("{m}v")).collect();
    if corrupt == Some(w) && g.dim() > 0 {
        let mut m = g.into_matrix();
        let flipped = -m.get(0, 0);
        m.set(0, 0, flipped);
        return (
            labels,
            HermitianMatrix::new(m).expect("diagonal flip keeps hermiticity"),
        );
    }
    (labels, g)
}

fn verdict_json(v: &PsdVerdict) -> Value {
    match v {
        PsdVerdict::PositiveDefinite => json!({ "verdict": "pd" }),
        PsdVerdict::PositiveSemidefinite { rank } => json!({ "verdict": "psd", "rank": rank }),
        PsdVerdict::Indefinite { witness, value } => json!({
            "verdict": "indefinite",
            "witness": vector_to_json(witness),
            "value": scalar_to_json_compact(value),
        }),
    }
}

/// Per-weight Gram matrices, either of the Verma module or of the algebra.
fn grams(
    job: &Job,
    vosa: Option<&TruncatedVosa>,
) -> Vec<(Weight, Vec<String>, HermitianMatrix)> {
    match (&job.construction, vosa) {
        (Construction::Ns(p), _) => job
            .cutoff
            .steps_up_to()
            .map(|w| {
                let (labels, g) = ns_gram(p, w, job.options.corrupt);
                (w, labels, g)
            })
            .collect(),
        (_, Some(v)) => v
            .space()
            .pieces()
            .iter()
            .zip(v.grams())
            .map(|(p, g)| (p.weight, p.labels.clone(), g.clone()))
            .collect(),
        (_, None) => Vec::new(),
    }
}

fn instance_name(job: &Job, vosa: Option<&TruncatedVosa>) -> String {
    match (&job.construction, vosa) {
        (Construction::Ns(p), None) => format!(
            "ns(c={}, h={})",
            vosa_core::kernel::format_rational(&p.c),
            vosa_core::kernel::format_rational(&p.h)
        ),
        (_, Some(v)) => v.name().to_string(),
        _ => job.construction.kind().to_string(),
    }
}

fn blank(check: Check, job: &Job, name: &str, passed: bool) -> CheckReport {
    CheckReport {
        check: check.name().to_string(),
        instance: name.to_string(),
        cutoff: job.cutoff,
        passed,
        witnesses: Vec::new(),
        details: Value::Null,
    }
}

fn needs_algebra(job: &Job) -> bool {
    !matches!(job.construction, Construction::Ns(_))
        || job
            .checks
            .iter()
            .any(|c| !matches!(c, Check::Gram | Check::Psd | Check::Characters))
}

fn characters(job: &Job, vosa: Option<&TruncatedVosa>) -> Vec<(Weight, usize)> {
    match (&job.construction, vosa) {
        (Construction::Ns(p), _) => simple_quotient_dims(p, job.cutoff),
        (_, Some(v)) => v.graded_dims(),
        (_, None) => Vec::new(),
    }
}

fn run_check(check: Check, job: &Job, vosa: Option<&TruncatedVosa>) -> CliResult<CheckReport> {
    let name = instance_name(job, vosa);
    let algebra =
        || vosa.ok_or_else(|| CliError::Job(format!("{} needs the algebra", check.name())));
    let report = match check {
        Check::Gram => {
            let mut r = blank(check, job, &name, true);
            r.details = Value::Array(
                grams(job, vosa)
                    .iter()
                    .map(|(w, labels, g)| {
                        json!({ "weight": w.to_string(), "basis": labels, "matrix": matrix_to_json(g.matrix()) })
                    })
                    .collect(),
            );
            r
        }
        Check::Psd => {
            let mut r = blank(check, job, &name, true);
            let mut rows = Vec::new();
            for (w, labels, g) in grams(job, vosa) {
                let v = g.psd_verdict();
                if !v.is_psd() {
                    r.passed = false;
                    r.witnesses.push(json!({ "weight": w.to_string(), "basis": labels, "detail": verdict_json(&v) }));
                }
                let mut row = verdict_json(&v);
                row["weight"] = json!(w.to_string());
                rows.push(row);
            }
            r.details = Value::Array(rows);
            r
        }
        Check::Invariance => {
            let v = algebra()?;
            CheckReport::from_invariance(v, &invariance_check_all(v, None)?)
        }
        Check::Commutator => {
            let v = algebra()?;
            let samples = random_commutator_checks(v, job.options.samples, job.options.seed)?;
            let mut r = blank(check, job, &name, true);
            for s in samples.iter().filter(|s| !s.outcome.passed()) {
                r.passed = false;
                r.witnesses.push(json!({
                    "u": v.label(s.u),
                    "v": v.label(s.v),
                    "m": s.m,
                    "n": s.n,
                    "w": v.label(s.w),
                    "lhs": labeled_vector_json(v, &s.outcome.lhs),
                    "rhs": labeled_vector_json(v, &s.outcome.rhs),
                }));
            }
            r.details = json!({ "samples": samples.len(), "seed": job.options.seed });
            r
        }
        Check::Decompose => {
            let v = algebra()?;
            match decompose(v) {
                Ok(d) => {
                    let mut r = blank(check, job, &name, d.passed());
                    r.details = d.to_json(v);
                    r
                }
                Err(e @ Error::CutoffExceeded { .. }) => return Err(e.into()),
                Err(e) => {
                    let mut r = blank(check, job, &name, false);
                    r.witnesses.push(json!({ "error": e.to_string() }));
                    r
                }
            }
        }
        Check::WeightOne => {
            let v = algebra()?;
            let g = weight_one_algebra(v)?;
            let mut r = blank(check, job, &name, g.passed());
            r.details = g.to_json();
            r
        }
        Check::Conformal => {
            let v = algebra()?;
            let kind = job.options.conformal.clone().ok_or_else(|| {
                CliError::Job("the conformal check needs options.conformal".into())
            })?;
            match conformal_comparison(v, kind) {
                Ok(c) => {
                    let mut r = blank(check, job, &name, c.passed());
                    if !c.passed() {
                        r.witnesses.push(json!({
                            "difference": labeled_vector_json(v, &c.difference),
                            "norm": scalar_to_json_compact(&c.difference_norm),
                        }));
                    }
                    r.details = c.to_json(v);
                    r
                }
                Err(e @ Error::CutoffExceeded { .. }) => return Err(e.into()),
                Err(e) => {
                    let mut r = blank(check, job, &name, false);
                    r.witnesses.push(json!({ "error": e.to_string() }));
                    r
                }
            }
        }
        Check::Characters => {
            let mut r = blank(check, job, &name, true);
            r.details = Value::Array(
                characters(job, vosa)
                    .iter()
                    .map(|(w, d)| json!({ "weight": w.to_string(), "dim": d }))
                    .collect(),
            );
            r
        }
    };
    Ok(report)
}

/// Builds the instance and runs every requested check, in parallel when the
/// current rayon pool allows; the report keeps the requested order.
pub fn run(job: &Job) -> CliResult<Outcome> {
    let vosa = if needs_algebra(job) {
        let mut v = job.construction.build(job.cutoff)?;
        if let Some(w) = job.options.corrupt {
            v = v.with_corrupted_form(w)?;
        }
        Some(v)
    } else {
        None
    };
    let reports = job
        .checks
        .par_iter()
        .map(|c| run_check(*c, job, vosa.as_ref()))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<CliResult<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let report = json!({
        "instance": instance_name(job, vosa.as_ref()),
        "construction": job.construction.kind(),
        "cutoff": job.cutoff.to_string(),
        "status": if passed { "pass" } else { "fail" },
        "checks": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
    });
    let characters = job
        .checks
        .contains(&Check::Characters)
        .then(|| characters(job, vosa.as_ref()));
    Ok(Outcome {
        report,
        exit_code: if passed { 0 } else { 1 },
        characters,
    })
}

/// Error report printed in place of a normal one.
pub fn error_report(e: &CliError) -> Value {
    json!({ "status": "error", "exit_code": e.exit_code(), "error": e.to_string() })
}

/// `weight,dim` rows.
pub fn characters_csv(table: &[(Weight, usize)]) -> String {
    let mut out = String::from("weight,dim\n");
    for (w, d) in table {
        out.push_str(&format!("{w},{d}\n"));
    }
    out
}
