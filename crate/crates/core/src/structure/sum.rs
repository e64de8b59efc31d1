use super::{remap_operator, remap_vector, truncate};
use crate::error::{Error, Result};
use crate::kernel::{GradedSpace, HermitianMatrix, Matrix, Scalar, SparseVector};
use crate::vosa::{Construction, Generator, TruncatedVosa, VosaParts};

/// Orthogonal direct sum of algebras with a common central charge.
pub fn direct_sum(vs: &[&TruncatedVosa]) -> Result<TruncatedVosa> {
    let first = vs
        .first()
        .ok_or_else(|| Error::InvalidInput("direct sum of nothing".into()))?;
    for v in &vs[1..] {
        if v.central_charge() != first.central_charge() {
            return Err(Error::CentralChargeMismatch(
                first.central_charge().to_string(),
                v.central_charge().to_string(),
            ));
        }
    }
    let cutoff = vs.iter().map(|v| v.cutoff()).min().expect("nonempty");
    let vs: Vec<TruncatedVosa> = vs
        .iter()
        .map(|v| truncate(v, cutoff))
        .collect::<Result<_>>()?;
    let npieces = cutoff.twice() as usize + 1;

    // new global index of every (summand, old index)
    let mut maps: Vec<Vec<usize>> = vs.iter().map(|v| vec![0; v.dim()]).collect();
    let mut labels: Vec<Vec<(String, bool)>> = vec![Vec::new(); npieces];
    let mut next = 0;
    for (k, piece) in labels.iter_mut().enumerate() {
        for (s, v) in vs.iter().enumerate() {
            let pc = &v.space().pieces()[k];
            for (local, i) in pc.indices().enumerate() {
                maps[s][i] = next;
                next += 1;
                piece.push((format!("[{}]{}", s + 1, pc.labels[local]), pc.odd[local]));
            }
        }
    }
    let space = GradedSpace::new(cutoff, labels)?;
    let dim = space.dim();

    let mut generators = Vec::new();
    let mut constructions = vec![Construction::Idempotent(0); dim];
    let mut component = vec![0; dim];
    let mut involution = vec![(0, Scalar::zero()); dim];
    let mut vacuum = SparseVector::new();
    let mut conformal = SparseVector::new();
    let mut comp_offset = 0;
    for (s, v) in vs.iter().enumerate() {
        let map = &maps[s];
        let gen_offset = generators.len();
        for g in v.generators() {
            generators.push(Generator {
                name: format!("[{}]{}", s + 1, g.name),
                index: map[g.index],
                weight: g.weight,
                odd: g.odd,
                modes: g
                    .modes
                    .iter()
                    .map(|(n, op)| (*n, remap_operator(op, |i| map.get(i).copied())))
                    .collect(),
            });
        }
        for (i, c) in v.constructions().iter().enumerate() {
            constructions[map[i]] = match c {
                Construction::Idempotent(k) => Construction::Idempotent(comp_offset + k),
                Construction::Generator(g) => Construction::Generator(gen_offset + g),
                Construction::Mode {
                    gen,
                    mode,
                    coeff,
                    source,
                } => Construction::Mode {
                    gen: gen_offset + gen,
                    mode: *mode,
                    coeff: coeff.clone(),
                    source: remap_vector(source, |j| map[j]),
                },
            };
            component[map[i]] = comp_offset + v.component_of(i);
            let (j, sign) = &v.parts().involution[i];
            involution[map[i]] = (map[*j], sign.clone());
        }
        vacuum.add(&remap_vector(v.vacuum(), |j| map[j]));
        conformal.add(&remap_vector(v.conformal(), |j| map[j]));
        comp_offset += v.num_components();
    }

    let mut gram = Vec::with_capacity(npieces);
    for (k, pc) in space.pieces().iter().enumerate() {
        let mut m = Matrix::zeros(pc.dim(), pc.dim());
        for (s, v) in vs.iter().enumerate() {
            let vp = &v.space().pieces()[k];
            let g = &v.grams()[k];
            for (a, i) in vp.indices().enumerate() {
                for (b, j) in vp.indices().enumerate() {
                    let (r, c) = (maps[s][i] - pc.start, maps[s][j] - pc.start);
                    m.set(r, c, g.get(a, b).clone());
                }
            }
        }
        gram.push(HermitianMatrix::new(m)?);
    }

    let names: Vec<&str> = vs.iter().map(|v| v.name()).collect();
    TruncatedVosa::from_parts(VosaParts {
        name: names.join(" ⊕ "),
        space,
        central_charge: first.central_charge().clone(),
        vacuum,
        conformal,
        generators,
        constructions,
        component,
        involution,
        gram,
    })
}
