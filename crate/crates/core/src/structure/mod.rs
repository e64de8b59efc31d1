//! Direct sums, tensor products, decomposition into simple summands, the
//! weight-one Lie algebra and conformal-vector comparisons.

mod conformal;
mod decompose;
pub mod spectral;
mod sum;
mod tensor;
mod weight_one;

use std::collections::BTreeMap;

pub use conformal::{conformal_comparison, ConformalComparison, ConformalKind};
pub use decompose::{decompose, DecompositionReport, StrongCftFlags, Summand};
pub use sum::direct_sum;
pub use tensor::tensor_product;
pub use weight_one::{weight_one_algebra, IdealRatio, WeightOneAlgebra};

use crate::error::{Error, Result};
use crate::kernel::{GradedSpace, SparseOperator, SparseVector, Weight};
use crate::vosa::{Construction, Generator, TruncatedVosa, VosaParts};

/// Re-indexes a sparse vector.
pub(crate) fn remap_vector(v: &SparseVector, map: impl Fn(usize) -> usize) -> SparseVector {
    v.iter().map(|(i, c)| (map(i), c.clone())).collect()
}

/// Re-indexes sources and targets of an operator, dropping sources that `map` rejects.
pub(crate) fn remap_operator(
    op: &SparseOperator,
    map: impl Fn(usize) -> Option<usize>,
) -> SparseOperator {
    let mut out = SparseOperator::new(op.shift);
    for (src, col) in op.columns() {
        let Some(s) = map(src) else { continue };
        let mut img = SparseVector::new();
        let mut complete = true;
        for (t, c) in col.iter() {
            match map(t) {
                Some(t) => img.add_term(t, c),
                None => complete = false,
            }
        }
        if complete {
            out.set_column(s, img);
        }
    }
    out
}

/// The same algebra with every weight above `cutoff` discarded.
pub fn truncate(v: &TruncatedVosa, cutoff: Weight) -> Result<TruncatedVosa> {
    if cutoff >= v.cutoff() {
        return Ok(v.clone());
    }
    if cutoff < Weight::int(2) {
        return Err(Error::CutoffExceeded {
            needed: "2".into(),
            cutoff: cutoff.to_string(),
        });
    }
    let p = v.parts();
    let pieces: Vec<Vec<(String, bool)>> = p.space.pieces()[..=cutoff.twice() as usize]
        .iter()
        .map(|pc| {
            pc.labels
                .iter()
                .cloned()
                .zip(pc.odd.iter().copied())
                .collect()
        })
        .collect();
    let space = GradedSpace::new(cutoff, pieces)?;
    let n = space.dim();
    let keep = |i: usize| (i < n).then_some(i);

    let mut gen_map = BTreeMap::new();
    let mut generators = Vec::new();
    for (g, gen) in p.generators.iter().enumerate() {
        if gen.weight > cutoff {
            continue;
        }
        gen_map.insert(g, generators.len());
        generators.push(Generator {
            name: gen.name.clone(),
            index: gen.index,
            weight: gen.weight,
            odd: gen.odd,
            modes: gen
                .modes
                .iter()
                .map(|(k, op)| (*k, remap_operator(op, keep)))
                .filter(|(_, op)| !op.is_zero())
                .collect(),
        });
    }
    let constructions = p.constructions[..n]
        .iter()
        .map(|c| match c {
            Construction::Idempotent(k) => Ok(Construction::Idempotent(*k)),
            Construction::Generator(g) => gen_map
                .get(g)
                .map(|g| Construction::Generator(*g))
                .ok_or_else(|| Error::Unsupported("truncation drops a needed generator".into())),
            Construction::Mode {
                gen,
                mode,
                coeff,
                source,
            } => gen_map
                .get(gen)
                .map(|g| Construction::Mode {
                    gen: *g,
                    mode: *mode,
                    coeff: coeff.clone(),
                    source: source.clone(),
                })
                .ok_or_else(|| Error::Unsupported("truncation drops a needed generator".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedVosa::from_parts(VosaParts {
        name: p.name.clone(),
        space,
        central_charge: p.central_charge.clone(),
        vacuum: p.vacuum.clone(),
        conformal: p.conformal.clone(),
        generators,
        constructions,
        component: p.component[..n].to_vec(),
        involution: p.involution[..n].to_vec(),
        gram: p.gram[..=cutoff.twice() as usize].to_vec(),
    })
}
