use serde_json::{json, Value};

use super::spectral::lagrange_projections;
use crate::error::{Error, Result};
use crate::kernel::serial::scalar_to_json_compact;
use crate::kernel::{Matrix, Scalar, SparseVector, Weight};
use crate::vosa::{labeled_vector_json as vector_to_json, TruncatedVosa};

/// Strong CFT type witnesses of one summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongCftFlags {
    pub weight_zero_one_dimensional: bool,
    pub l1_kills_weight_one: bool,
    pub no_negative_weights: bool,
    pub translation_kills_weight_zero: bool,
}

impl StrongCftFlags {
    pub fn all(&self) -> bool {
        self.weight_zero_one_dimensional
            && self.l1_kills_weight_one
            && self.no_negative_weights
            && self.translation_kills_weight_zero
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub idempotent: SparseVector,
    /// Basis of the summand at each weight, lowest weight first.
    pub basis: Vec<(Weight, Vec<SparseVector>)>,
    pub conformal: SparseVector,
    pub central_charge: Scalar,
    pub flags: StrongCftFlags,
}

impl Summand {
    pub fn graded_dims(&self) -> Vec<(Weight, usize)> {
        self.basis.iter().map(|(w, b)| (*w, b.len())).collect()
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub summands: Vec<Summand>,
    pub orthogonal: bool,
    pub sums_to_vacuum: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.orthogonal && self.sums_to_vacuum && self.summands.iter().all(|s| s.flags.all())
    }

    pub fn to_json(&self, v: &TruncatedVosa) -> Value {
        let summands: Vec<Value> = self
            .summands
            .iter()
            .map(|s| {
                json!({
                    "idempotent": vector_to_json(v, &s.idempotent),
                    "conformal": vector_to_json(v, &s.conformal),
                    "central_charge": scalar_to_json_compact(&s.central_charge),
                    "dims": s.graded_dims().iter().map(|(w, d)| json!([w.to_string(), d])).collect::<Vec<_>>(),
                    "flags": {
                        "weight_zero_one_dimensional": s.flags.weight_zero_one_dimensional,
                        "l1_kills_weight_one": s.flags.l1_kills_weight_one,
                        "no_negative_weights": s.flags.no_negative_weights,
                        "translation_kills_weight_zero": s.flags.translation_kills_weight_zero,
                    },
                })
            })
            .collect();
        json!({
            "summands": summands,
            "orthogonal": self.orthogonal,
            "sums_to_vacuum": self.sums_to_vacuum,
        })
    }
}

fn to_sparse(start: usize, coords: &[Scalar]) -> SparseVector {
    SparseVector::from_pairs(
        coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (start + k, c.clone())),
    )
}

/// Primitive orthogonal idempotents of the weight-zero algebra `u·v = u_{-1}v`.
fn weight_zero_idempotents(v: &TruncatedVosa) -> Result<Vec<SparseVector>> {
    let zero = v.basis_at(Weight::ZERO);
    let d = zero.len();
    let start = zero.start;
    let mult = |x: &SparseVector, y: &SparseVector| v.apply_mode(x, -1, y);
    let candidates = (1..=3u32).flat_map(|p| (0..3i64).map(move |s| (p, s)));
    for (p, s) in candidates {
        let x = to_sparse(
            start,
            &(0..d)
                .map(|i| Scalar::int((i as i64 + 1).pow(p) + s))
                .collect::<Vec<_>>(),
        );
        let mut cols = Vec::with_capacity(d);
        for j in zero.clone() {
            cols.push(
                mult(&x, &SparseVector::basis(j))?.to_dense(&zero.clone().collect::<Vec<_>>()),
            );
        }
        let lx = Matrix::from_fn(d, d, |r, c| cols[c][r].clone());
        let Some(projs) = lagrange_projections(&lx) else {
            continue;
        };
        let vac = v.vacuum().to_dense(&zero.clone().collect::<Vec<_>>());
        let idems: Vec<SparseVector> = projs
            .iter()
            .map(|(_, p)| to_sparse(start, &p.mul_vec(&vac)))
            .collect();
        let mut ok = true;
        for (a, ea) in idems.iter().enumerate() {
            for (b, eb) in idems.iter().enumerate() {
                let prod = mult(ea, eb)?;
                let want = if a == b {
                    ea.clone()
                } else {
                    SparseVector::new()
                };
                ok &= prod == want;
            }
        }
        if ok {
            return Ok(idems);
        }
    }
    Err(Error::NonSemisimpleWeightZero(
        "no multiplication operator on weight zero has a split simple spectrum".into(),
    ))
}

/// Splits the algebra along the primitive idempotents of its weight-zero space.
pub fn decompose(v: &TruncatedVosa) -> Result<DecompositionReport> {
    let idems = weight_zero_idempotents(v)?;
    let mut orthogonal = true;
    for (a, ea) in idems.iter().enumerate() {
        for (b, eb) in idems.iter().enumerate() {
            let want = if a == b {
                ea.clone()
            } else {
                SparseVector::new()
            };
            orthogonal &= v.apply_mode(ea, -1, eb)? == want;
        }
    }
    let mut total = SparseVector::new();
    for e in &idems {
        total.add(e);
    }
    let sums_to_vacuum = total == *v.vacuum();

    let mut summands = Vec::with_capacity(idems.len());
    for e in idems {
        let proj = v.descendant_mode(&e, -1)?;
        let mut basis = Vec::new();
        for piece in v.space().pieces() {
            let idx: Vec<usize> = piece.indices().collect();
            let images: Vec<Vec<Scalar>> = idx
                .iter()
                .map(|&j| proj.column(j).cloned().unwrap_or_default().to_dense(&idx))
                .collect();
            let mut m = Matrix::from_fn(idx.len(), idx.len(), |r, c| images[c][r].clone());
            let pivots = m.rref();
            let vecs: Vec<SparseVector> = pivots
                .iter()
                .map(|&c| to_sparse(piece.start, &images[c]))
                .collect();
            basis.push((piece.weight, vecs));
        }

        let conformal = v.apply_mode(v.conformal(), -1, &e)?;
        let top = v.apply_mode(&conformal, 3, &conformal)?;
        let (k, ek) = e
            .iter()
            .next()
            .ok_or_else(|| Error::NonSemisimpleWeightZero("zero idempotent".into()))?;
        let half_c = &top.get(k) / ek;
        if top != e.scaled(&half_c) {
            return Err(Error::InvalidInput(
                "summand conformal vector does not close on its idempotent".into(),
            ));
        }
        let central_charge = &half_c * &Scalar::int(2);

        let dim_at = |w: Weight| {
            basis
                .iter()
                .find(|(x, _)| *x == w)
                .map_or(0, |(_, b)| b.len())
        };
        let weight_one = basis
            .iter()
            .find(|(w, _)| *w == Weight::int(1))
            .map(|(_, b)| b.clone())
            .unwrap_or_default();
        let mut l1_kills = true;
        for u in &weight_one {
            l1_kills &= v.virasoro(1, u)?.is_zero();
        }
        let translation_kills = v.virasoro(-1, &e)?.is_zero();
        let flags = StrongCftFlags {
            weight_zero_one_dimensional: dim_at(Weight::ZERO) == 1,
            l1_kills_weight_one: l1_kills,
            no_negative_weights: v.space().pieces().iter().all(|p| p.weight >= Weight::ZERO),
            translation_kills_weight_zero: translation_kills,
        };
        summands.push(Summand {
            idempotent: e,
            basis,
            conformal,
            central_charge,
            flags,
        });
    }
    Ok(DecompositionReport {
        summands,
        orthogonal,
        sums_to_vacuum,
    })
}
