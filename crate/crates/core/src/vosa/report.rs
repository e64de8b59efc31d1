use serde_json::{json, Map, Value};

use super::{InvarianceReport, TruncatedVosa};
use crate::kernel::serial::scalar_to_json_compact;
use crate::kernel::{SparseVector, Weight};

/// Sparse vector as `{label: coefficient}`.
pub fn labeled_vector_json(v: &TruncatedVosa, x: &SparseVector) -> Value {
    let mut m = Map::new();
    for (i, c) in x.iter() {
        m.insert(v.label(i).to_string(), scalar_to_json_compact(c));
    }
    Value::Object(m)
}

/// Serializable check outcome `{check, instance, cutoff, status, witnesses}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub cutoff: Weight,
    pub passed: bool,
    pub witnesses: Vec<Value>,
    pub details: Value,
}

impl CheckReport {
    pub fn new(check: &str, v: &TruncatedVosa, passed: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            instance: v.name().to_string(),
            cutoff: v.cutoff(),
            passed,
            witnesses: Vec::new(),
            details: Value::Null,
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "check": self.check,
            "instance": self.instance,
            "cutoff": self.cutoff.to_string(),
            "status": self.status(),
            "witnesses": self.witnesses,
        });
        if !self.details.is_null() {
            out["details"] = self.details.clone();
        }
        out
    }

    /// Invariance reports for several generators folded into one check.
    pub fn from_invariance(v: &TruncatedVosa, reports: &[InvarianceReport]) -> Self {
        let passed = reports.iter().all(InvarianceReport::passed);
        let mut out = CheckReport::new("invariance", v, passed);
        for r in reports {
            for f in &r.failures {
                out.witnesses.push(json!({
                    "a": f.generator,
                    "m": f.mode,
                    "u": v.label(f.u),
                    "v": v.label(f.v),
                    "lhs": scalar_to_json_compact(&f.lhs),
                    "rhs": scalar_to_json_compact(&f.rhs),
                }));
            }
        }
        out.details = Value::Array(
            reports
                .iter()
                .map(|r| {
                    json!({
                        "generator": r.generator,
                        "max_weight": r.max_weight.to_string(),
                        "coefficients": r.checked,
                        "failures": r.failures.len(),
                    })
                })
                .collect(),
        );
        out
    }
}
