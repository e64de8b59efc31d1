use serde::Deserialize;
use serde_json::Value;

use vosa_core::fermion::{build_fermion_vosa, FermionSpace};
use vosa_core::kernel::serial::matrix_from_json;
use vosa_core::kernel::{parse_rational, Matrix, Rational, Scalar, Weight};
use vosa_core::lattice::{build_lattice_vosa, IntegralLattice};
use vosa_core::ns::{build_ns_vosa, NsParams};
use vosa_core::structure::{direct_sum, tensor_product, ConformalKind};
use vosa_core::vosa::TruncatedVosa;

use crate::error::{CliError, CliResult};

/// A check that can be requested in a job.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Gram,
    Psd,
    Invariance,
    Commutator,
    Decompose,
    WeightOne,
    Conformal,
    Characters,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Gram => "gram",
            Check::Psd => "psd",
            Check::Invariance => "invariance",
            Check::Commutator => "commutator",
            Check::Decompose => "decompose",
            Check::WeightOne => "weight_one",
            Check::Conformal => "conformal",
            Check::Characters => "characters",
        }
    }
}

/// What to build.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    Ns(NsParams),
    Fermion(Matrix),
    Lattice {
        gram: Vec<Vec<i64>>,
        extra: Vec<Vec<i64>>,
    },
    DirectSum(Vec<Construction>),
    Tensor(Vec<Construction>),
}

/// Knobs for individual checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub samples: usize,
    pub seed: u64,
    pub conformal: Option<ConformalKind>,
    /// Weight whose Gram matrix gets entry (0, 0) negated before checking.
    pub corrupt: Option<Weight>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            samples: 200,
            seed: 0,
            conformal: None,
            corrupt: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Job {
    pub construction: Construction,
    pub cutoff: Weight,
    pub checks: Vec<Check>,
    pub options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    construction: String,
    #[serde(default)]
    parameters: Value,
    cutoff: Value,
    checks: Vec<Check>,
    #[serde(default)]
    options: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPart {
    construction: String,
    #[serde(default)]
    parameters: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    samples: Option<usize>,
    seed: Option<u64>,
    conformal: Option<RawConformal>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
enum RawConformal {
    Sugawara { level: Value, dual_coxeter: Value },
    Heisenberg,
}

fn job_err(msg: impl Into<String>) -> CliError {
    CliError::Job(msg.into())
}

fn rational(v: &Value, what: &str) -> CliResult<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => {
            return Err(job_err(format!(
                "{what} must be a rational string or number"
            )))
        }
    }
    .map_err(|e| job_err(format!("{what}: {e}")))
}

fn param<'a>(p: &'a Value, key: &str, construction: &str) -> CliResult<&'a Value> {
    p.get(key)
        .ok_or_else(|| job_err(format!("{construction} needs parameter \"{key}\"")))
}

fn int_rows(v: &Value, what: &str) -> CliResult<Vec<Vec<i64>>> {
    serde_json::from_value(v.clone())
        .map_err(|e| job_err(format!("{what} must be a list of integer lists: {e}")))
}

fn parse_construction(kind: &str, p: &Value) -> CliResult<Construction> {
    if !(p.is_object() || p.is_null()) {
        return Err(job_err("parameters must be an object"));
    }
    match kind {
        "ns" => {
            let c = rational(param(p, "c", kind)?, "c")?;
            let h = match p.get("h") {
                Some(h) => rational(h, "h")?,
                None => Rational::from_integer(0.into()),
            };
            Ok(Construction::Ns(NsParams::new(c, h)))
        }
        "fermion" => {
            let form = match (p.get("n"), p.get("form")) {
                (Some(n), None) => {
                    let n = n
                        .as_u64()
                        .filter(|n| *n > 0)
                        .ok_or_else(|| job_err("n must be a positive integer"))?;
                    Matrix::identity(n as usize)
                }
                (None, Some(f)) => {
                    matrix_from_json(f).map_err(|e| job_err(format!("form: {e}")))?
                }
                _ => return Err(job_err("fermion needs exactly one of \"n\" or \"form\"")),
            };
            FermionSpace::new(form.clone()).map_err(|e| job_err(format!("form: {e}")))?;
            Ok(Construction::Fermion(form))
        }
        "lattice" => {
            let gram = int_rows(param(p, "gram", kind)?, "gram")?;
            IntegralLattice::new(gram.clone()).map_err(|e| job_err(e.to_string()))?;
            let extra = match p.get("extra") {
                Some(x) => int_rows(x, "extra")?,
                None => Vec::new(),
            };
            if extra.iter().any(|x| x.len() != gram.len()) {
                return Err(job_err(
                    "every extra lattice vector needs one entry per basis vector",
                ));
            }
            Ok(Construction::Lattice { gram, extra })
        }
        "direct_sum" | "tensor" => {
            let key = if kind == "tensor" {
                "factors"
            } else {
                "summands"
            };
            let parts: Vec<RawPart> = serde_json::from_value(param(p, key, kind)?.clone())
                .map_err(|e| job_err(format!("{key}: {e}")))?;
            if parts.is_empty() {
                return Err(job_err(format!("{key} must be nonempty")));
            }
            let parts = parts
                .iter()
                .map(|r| parse_construction(&r.construction, &r.parameters))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(if kind == "tensor" {
                Construction::Tensor(parts)
            } else {
                Construction::DirectSum(parts)
            })
        }
        other => Err(job_err(format!("unknown construction \"{other}\""))),
    }
}

fn parse_options(v: &Value) -> CliResult<Options> {
    if v.is_null() {
        return Ok(Options::default());
    }
    let raw: RawOptions =
        serde_json::from_value(v.clone()).map_err(|e| job_err(format!("options: {e}")))?;
    let conformal = match raw.conformal {
        None => None,
        Some(RawConformal::Heisenberg) => Some(ConformalKind::Heisenberg),
        Some(RawConformal::Sugawara {
            level,
            dual_coxeter,
        }) => Some(ConformalKind::Sugawara {
            level: Scalar::real(rational(&level, "level")?),
            dual_coxeter: Scalar::real(rational(&dual_coxeter, "dual_coxeter")?),
        }),
    };
    Ok(Options {
        samples: raw.samples.unwrap_or(200),
        seed: raw.seed.unwrap_or(0),
        conformal,
        corrupt: None,
    })
}

impl Job {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let raw: RawJob = serde_json::from_str(text).map_err(|e| job_err(e.to_string()))?;
        let cutoff = match &raw.cutoff {
            Value::String(s) => Weight::parse(s),
            Value::Number(n) => Weight::parse(&n.to_string()),
            _ => return Err(job_err("cutoff must be a weight string or number")),
        }
        .map_err(|e| job_err(format!("cutoff: {e}")))?;
        if cutoff <= Weight::ZERO {
            return Err(job_err("cutoff must be positive"));
        }
        if raw.checks.is_empty() {
            return Err(job_err("checks must be nonempty"));
        }
        let construction = parse_construction(&raw.construction, &raw.parameters)?;
        let options = parse_options(&raw.options)?;
        if raw.checks.contains(&Check::Conformal) && options.conformal.is_none() {
            return Err(job_err("the conformal check needs options.conformal"));
        }
        Ok(Job {
            construction,
            cutoff,
            checks: raw.checks,
            options,
        })
    }

    /// Rejects cutoffs above `limit`.
    pub fn enforce_limit(&self, limit: Option<Weight>) -> CliResult<()> {
        match limit {
            Some(l) if self.cutoff > l => Err(job_err(format!(
                "cutoff {} exceeds the configured limit {l}",
                self.cutoff
            ))),
            _ => Ok(()),
        }
    }
}

impl Construction {
    pub fn kind(&self) -> &'static str {
        match self {
            Construction::Ns(_) => "ns",
            Construction::Fermion(_) => "fermion",
            Construction::Lattice { .. } => "lattice",
            Construction::DirectSum(_) => "direct_sum",
            Construction::Tensor(_) => "tensor",
        }
    }

    pub fn build(&self, cutoff: Weight) -> CliResult<TruncatedVosa> {
        Ok(match self {
            Construction::Ns(p) => build_ns_vosa(&p.c, cutoff)?,
            Construction::Fermion(form) => {
                build_fermion_vosa(&FermionSpace::new(form.clone())?, cutoff)?
            }
            Construction::Lattice { gram, extra } => {
                build_lattice_vosa(&IntegralLattice::new(gram.clone())?, cutoff, extra)?.into_vosa()
            }
            Construction::DirectSum(parts) => {
                let vs = parts
                    .iter()
                    .map(|p| p.build(cutoff))
                    .collect::<CliResult<Vec<_>>>()?;
                direct_sum(&vs.iter().collect::<Vec<_>>())?
            }
            Construction::Tensor(parts) => {
                let mut acc = parts[0].build(cutoff)?;
                for p in &parts[1..] {
                    acc = tensor_product(&acc, &p.build(cutoff)?)?;
                }
                acc
            }
        })
    }
}
