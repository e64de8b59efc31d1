use std::collections::HashMap;

use super::truncate;
use crate::error::{Error, Result};
use crate::kernel::{GradedSpace, HermitianMatrix, Matrix, Scalar, SparseVector, Weight};
use crate::vosa::{tabulate_modes, Construction, Generator, TruncatedVosa, VosaParts};

fn single_vacuum(v: &TruncatedVosa) -> Result<usize> {
    let r = v.basis_at(Weight::ZERO);
    if r.len() != 1 {
        return Err(Error::Unsupported(format!(
            "tensor factors need a one-dimensional weight-zero space, {} has {}",
            v.name(),
            r.len()
        )));
    }
    Ok(r.start)
}

/// Graded tensor product with the super sign rule on the second factor.
pub fn tensor_product(v1: &TruncatedVosa, v2: &TruncatedVosa) -> Result<TruncatedVosa> {
    let cutoff = v1.cutoff().min(v2.cutoff());
    let a = truncate(v1, cutoff)?;
    let b = truncate(v2, cutoff)?;
    let vac1 = single_vacuum(&a)?;
    let vac2 = single_vacuum(&b)?;

    let top = cutoff.twice();
    let mut pairs_by_weight: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top as usize + 1];
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            let t = a.space().weight_of(i).twice() + b.space().weight_of(j).twice();
            if t <= top {
                pairs_by_weight[t as usize].push((i, j));
            }
        }
    }
    let labels = pairs_by_weight
        .iter()
        .map(|ps| {
            ps.iter()
                .map(|&(i, j)| {
                    (
                        format!("{}⊗{}", a.label(i), b.label(j)),
                        a.is_odd(i) ^ b.is_odd(j),
                    )
                })
                .collect()
        })
        .collect();
    let space = GradedSpace::new(cutoff, labels)?;
    let pairs: Vec<(usize, usize)> = pairs_by_weight.iter().flatten().copied().collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let embed = |x: &SparseVector, y: &SparseVector| -> Result<SparseVector> {
        let mut out = SparseVector::new();
        for (i, c) in x.iter() {
            for (j, d) in y.iter() {
                let k = index.get(&(i, j)).ok_or_else(|| Error::CutoffExceeded {
                    needed: (a.space().weight_of(i) + b.space().weight_of(j)).to_string(),
                    cutoff: cutoff.to_string(),
                })?;
                out.add_term(*k, &(c * d));
            }
        }
        Ok(out)
    };

    let n1 = a.generators().len();
    let mut generators = Vec::new();
    for (g, gen) in a.generators().iter().enumerate() {
        let modes = tabulate_modes(&space, gen.weight, |n, k| {
            let (i, j) = pairs[k];
            let x = a.apply_generator(g, n, &SparseVector::basis(i))?;
            embed(&x, &SparseVector::basis(j))
        })?;
        generators.push(Generator {
            name: format!("{}⊗1", gen.name),
            index: index[&(gen.index, vac2)],
            weight: gen.weight,
            odd: gen.odd,
            modes,
        });
    }
    for (g, gen) in b.generators().iter().enumerate() {
        let modes = tabulate_modes(&space, gen.weight, |n, k| {
            let (i, j) = pairs[k];
            let y = b.apply_generator(g, n, &SparseVector::basis(j))?;
            let sign = if gen.odd && a.is_odd(i) { -1 } else { 1 };
            Ok(embed(&SparseVector::basis(i), &y)?.scaled(&Scalar::int(sign)))
        })?;
        generators.push(Generator {
            name: format!("1⊗{}", gen.name),
            index: index[&(vac1, gen.index)],
            weight: gen.weight,
            odd: gen.odd,
            modes,
        });
    }

    let mut constructions = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        let con = if j == vac2 {
            match &a.constructions()[i] {
                _ if i == vac1 => Construction::Idempotent(0),
                Construction::Generator(g) => Construction::Generator(*g),
                Construction::Mode {
                    gen,
                    mode,
                    coeff,
                    source,
                } => Construction::Mode {
                    gen: *gen,
                    mode: *mode,
                    coeff: coeff.clone(),
                    source: embed(source, &SparseVector::basis(vac2))?,
                },
                Construction::Idempotent(_) => {
                    return Err(Error::Unsupported("idempotent above weight zero".into()))
                }
            }
        } else {
            let x = SparseVector::basis(i);
            match &b.constructions()[j] {
                Construction::Generator(g) if i == vac1 => Construction::Generator(n1 + g),
                Construction::Generator(g) => {
                    let sign = if b.generators()[*g].odd && a.is_odd(i) {
                        -1
                    } else {
                        1
                    };
                    Construction::Mode {
                        gen: n1 + g,
                        mode: -1,
                        coeff: Scalar::int(sign),
                        source: embed(&x, &SparseVector::basis(vac2))?,
                    }
                }
                Construction::Mode {
                    gen,
                    mode,
                    coeff,
                    source,
                } => {
                    let sign = if b.generators()[*gen].odd && a.is_odd(i) {
                        -1
                    } else {
                        1
                    };
                    Construction::Mode {
                        gen: n1 + gen,
                        mode: *mode,
                        coeff: coeff * &Scalar::int(sign),
                        source: embed(&x, source)?,
                    }
                }
                Construction::Idempotent(_) => {
                    return Err(Error::Unsupported("idempotent above weight zero".into()))
                }
            }
        };
        constructions.push(con);
    }

    let involution = pairs
        .iter()
        .map(|&(i, j)| {
            let (pi, si) = &a.parts().involution[i];
            let (pj, sj) = &b.parts().involution[j];
            (index[&(*pi, *pj)], si * sj)
        })
        .collect();

    let gram = pairs_by_weight
        .iter()
        .map(|ps| {
            let m = Matrix::from_fn(ps.len(), ps.len(), |r, c| {
                let (i, j) = ps[r];
                let (k, l) = ps[c];
                if a.space().weight_of(i) != a.space().weight_of(k) {
                    return Scalar::zero();
                }
                let x = a.form(&SparseVector::basis(i), &SparseVector::basis(k));
                let y = b.form(&SparseVector::basis(j), &SparseVector::basis(l));
                &x * &y
            });
            HermitianMatrix::new(m)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut conformal = embed(a.conformal(), &SparseVector::basis(vac2))?;
    conformal.add(&embed(&SparseVector::basis(vac1), b.conformal())?);
    let vacuum = embed(a.vacuum(), b.vacuum())?;

    TruncatedVosa::from_parts(VosaParts {
        name: format!("{} ⊗ {}", a.name(), b.name()),
        space,
        central_charge: a.central_charge() + b.central_charge(),
        vacuum,
        conformal,
        generators,
        constructions,
        component: vec![0; pairs.len()],
        involution,
        gram,
    })
}
