use std::collections::BTreeMap;

use super::TruncatedVosa;
use crate::error::{Error, Result};
use crate::kernel::{factorial, Rational, Scalar, SparseOperator, SparseVector, Weight};

/// The `L(1)`-chain of a homogeneous vector, ready for adjoint mode extraction.
///
/// Entry `j` holds `L(1)^j a / j!`, which has weight `wt(a) - j`.
#[derive(Clone, Debug)]
pub struct AdjointField {
    pub weight: Weight,
    pub sign: i64,
    pub chain: Vec<SparseVector>,
}

impl AdjointField {
    pub fn new(v: &TruncatedVosa, a: &SparseVector) -> Result<Self> {
        let weight = v.weight_of_vector(a).ok_or_else(|| {
            Error::InvalidInput("adjoint needs a nonzero homogeneous vector".into())
        })?;
        let mut chain = vec![a.clone()];
        let mut cur = a.clone();
        let mut w = weight;
        let mut j: u64 = 0;
        while w >= Weight::ONE {
            cur = v.virasoro(1, &cur)?;
            if cur.is_zero() {
                break;
            }
            j += 1;
            w = w - Weight::ONE;
            let inv = Rational::new(1.into(), factorial(j));
            chain.push(cur.scaled(&Scalar::real(inv)));
        }
        Ok(AdjointField {
            weight,
            sign: weight.reflection_sign(),
            chain,
        })
    }

    /// Whether `L(1)a = 0`.
    pub fn is_quasi_primary(&self) -> bool {
        self.chain.len() == 1
    }

    /// Shift in weight produced by the adjoint mode `m`.
    pub fn shift(&self, m: i64) -> Weight {
        Weight::int(m + 1) - self.weight
    }

    /// `A_m u = s Σ_j (L(1)^j a / j!)_{2w - j - m - 2} u`.
    pub fn apply(&self, v: &TruncatedVosa, m: i64, u: &SparseVector) -> Result<SparseVector> {
        let two_w = self.weight.twice();
        let mut out = SparseVector::new();
        for (j, b) in self.chain.iter().enumerate() {
            let k = two_w - j as i64 - m - 2;
            out.add(&v.apply_mode(b, k, u)?);
        }
        Ok(out.scaled(&Scalar::int(self.sign)))
    }
}

/// The adjoint mode `m` of `a` on every basis vector whose image stays in range.
pub fn adjoint_mode(v: &TruncatedVosa, a: &SparseVector, m: i64) -> Result<SparseOperator> {
    let field = AdjointField::new(v, a)?;
    adjoint_operator(v, &field, m)
}

fn adjoint_operator(v: &TruncatedVosa, field: &AdjointField, m: i64) -> Result<SparseOperator> {
    let shift = field.shift(m);
    let mut op = SparseOperator::new(shift);
    for j in 0..v.dim() {
        let t = v.space().weight_of(j) + shift;
        if t < Weight::ZERO || t > v.cutoff() {
            continue;
        }
        op.set_column(j, field.apply(v, m, &SparseVector::basis(j))?);
    }
    Ok(op)
}

/// Every adjoint mode of `a` that moves some basis vector to another in-range weight.
pub fn adjoint_modes(v: &TruncatedVosa, a: &SparseVector) -> Result<BTreeMap<i64, SparseOperator>> {
    let field = AdjointField::new(v, a)?;
    let c = v.cutoff().twice();
    let w = field.weight.twice();
    // shift = m + 1 - w ranges over [-cutoff, cutoff]
    let lo = (w - 2 - 2 * c).div_euclid(2) - 1;
    let hi = (w - 2 + 2 * c).div_euclid(2) + 1;
    let mut out = BTreeMap::new();
    for m in lo..=hi {
        let s = field.shift(m).twice();
        if s.abs() > c {
            continue;
        }
        out.insert(m, adjoint_operator(v, &field, m)?);
    }
    Ok(out)
}
