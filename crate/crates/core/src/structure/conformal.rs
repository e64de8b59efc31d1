use serde_json::{json, Value};

use super::weight_one::weight_one_form;
use crate::error::{Error, Result};
use crate::kernel::serial::scalar_to_json_compact;
use crate::kernel::{Matrix, Scalar, SparseVector};
use crate::vosa::{labeled_vector_json as vector_to_json, TruncatedVosa};

/// Which quadratic ansatz to compare the conformal vector against.
#[derive(Clone, Debug, PartialEq)]
pub enum ConformalKind {
    /// Affine ansatz for a simple weight-one algebra at the given level.
    Sugawara { level: Scalar, dual_coxeter: Scalar },
    /// Free-boson ansatz for an abelian weight-one algebra.
    Heisenberg,
}

impl ConformalKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConformalKind::Sugawara { .. } => "sugawara",
            ConformalKind::Heisenberg => "heisenberg",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConformalComparison {
    pub kind: ConformalKind,
    pub candidate: SparseVector,
    pub difference: SparseVector,
    pub difference_norm: Scalar,
}

impl ConformalComparison {
    pub fn passed(&self) -> bool {
        self.difference.is_zero()
    }

    pub fn to_json(&self, v: &TruncatedVosa) -> Value {
        json!({
            "kind": self.kind.name(),
            "candidate": vector_to_json(v, &self.candidate),
            "difference": vector_to_json(v, &self.difference),
            "difference_norm": scalar_to_json_compact(&self.difference_norm),
            "passed": self.passed(),
        })
    }
}

/// `scale · Σ_ij (M^{-1})_ij (b_i)_{-1} b_j` over the weight-one basis.
fn dual_quadratic(
    v: &TruncatedVosa,
    basis: &[usize],
    m: &Matrix,
    scale: &Scalar,
) -> Result<SparseVector> {
    let inv = m.inverse().ok_or(Error::BasisNotOrthonormalizable)?;
    let mut out = SparseVector::new();
    for (r, &i) in basis.iter().enumerate() {
        for (c, &j) in basis.iter().enumerate() {
            let q = inv.get(r, c);
            if q.is_zero() {
                continue;
            }
            let x = v.apply_mode(&SparseVector::basis(i), -1, &SparseVector::basis(j))?;
            out.add_scaled(&x, &(q * scale));
        }
    }
    Ok(out)
}

/// Builds the candidate `ω′` and compares it with the conformal vector.
pub fn conformal_comparison(v: &TruncatedVosa, kind: ConformalKind) -> Result<ConformalComparison> {
    let (basis, form) = weight_one_form(v)?;
    if basis.is_empty() {
        return Err(Error::BasisNotOrthonormalizable);
    }
    let candidate = match &kind {
        ConformalKind::Sugawara {
            level,
            dual_coxeter,
        } => {
            let inv_level = level.inv().ok_or(Error::BasisNotOrthonormalizable)?;
            let normalized =
                Matrix::from_fn(form.rows(), form.cols(), |r, c| form.get(r, c) * &inv_level);
            let denom = &(level + dual_coxeter) * &Scalar::int(2);
            let scale = denom.inv().ok_or(Error::BasisNotOrthonormalizable)?;
            dual_quadratic(v, &basis, &normalized, &scale)?
        }
        ConformalKind::Heisenberg => dual_quadratic(v, &basis, &form, &Scalar::frac(1, 2))?,
    };
    let difference = v.conformal().sub(&candidate);
    let difference_norm = v.form(&difference, &difference);
    Ok(ConformalComparison {
        kind,
        candidate,
        difference,
        difference_norm,
    })
}
