use std::collections::HashMap;

use super::monomial::{NsMode, NsMonomial};
use super::verma::{NsParams, NsVector, NsVerma};
use crate::error::{Error, Result};
use crate::kernel::{GradedSpace, HermitianMatrix, Matrix, Rational, Scalar, SparseVector, Weight};
use crate::vosa::{tabulate_modes, Construction, Generator, TruncatedVosa, VosaParts};

/// Per-weight data of the simple quotient `L(c, 0)`.
struct QuotientPiece {
    verma: Vec<NsMonomial>,
    gram: HermitianMatrix,
    /// Positions in `verma` of the chosen quotient basis.
    chosen: Vec<usize>,
    /// `G_BB^{-1}` restricted to the chosen rows.
    inv: Matrix,
    start: usize,
}

impl QuotientPiece {
    fn new(verma: Vec<NsMonomial>, gram: HermitianMatrix, start: usize) -> Self {
        let mut chosen: Vec<usize> = Vec::new();
        for k in 0..verma.len() {
            let mut trial = chosen.clone();
            trial.push(k);
            let block = Matrix::from_fn(trial.len(), trial.len(), |r, c| {
                gram.get(trial[r], trial[c]).clone()
            });
            if block.rank() == trial.len() {
                chosen = trial;
            }
        }
        let block = Matrix::from_fn(chosen.len(), chosen.len(), |r, c| {
            gram.get(chosen[r], chosen[c]).clone()
        });
        let inv = block.inverse().expect("chosen block is nondegenerate");
        QuotientPiece {
            verma,
            gram,
            chosen,
            inv,
            start,
        }
    }

    /// Coordinates of a Verma vector of this weight in the quotient basis.
    fn project(&self, v: &NsVector) -> SparseVector {
        let pairings: Vec<Scalar> = self
            .chosen
            .iter()
            .map(|&b| {
                let mut acc = Scalar::zero();
                for (m, c) in v {
                    let j = self
                        .verma
                        .iter()
                        .position(|x| x == m)
                        .expect("vector in weight basis");
                    acc += &(self.gram.get(j, b) * c);
                }
                acc
            })
            .collect();
        let coords = self.inv.mul_vec(&pairings);
        coords
            .into_iter()
            .enumerate()
            .map(|(k, c)| (self.start + k, c))
            .collect()
    }
}

/// The simple vacuum module `L(c, 0)` as a truncated VOSA generated by
/// `ω = L(-2)1` and `τ = G(-3/2)1`.
pub fn build_ns_vosa(c: &Rational, cutoff: Weight) -> Result<TruncatedVosa> {
    if cutoff < Weight::int(2) {
        return Err(Error::CutoffExceeded {
            needed: "2".into(),
            cutoff: cutoff.to_string(),
        });
    }
    if c == &Rational::from_integer(0.into()) {
        return Err(Error::InvalidInput(
            "central charge 0 gives the trivial algebra".into(),
        ));
    }
    let params = NsParams::new(c.clone(), Rational::from_integer(0.into()));
    let mut verma = NsVerma::new(params);
    let mut pieces: Vec<QuotientPiece> = Vec::new();
    let mut start = 0;
    for w in cutoff.steps_up_to() {
        let (basis, gram) = verma.gram(w);
        let p = QuotientPiece::new(basis, gram, start);
        start += p.chosen.len();
        pieces.push(p);
    }
    let labels = pieces
        .iter()
        .map(|p| {
            p.chosen
                .iter()
                .map(|&k| {
                    let m = &p.verma[k];
                    (format!("{m}1"), m.is_odd())
                })
                .collect()
        })
        .collect();
    let space = GradedSpace::new(cutoff, labels)?;
    let reps: Vec<NsMonomial> = pieces
        .iter()
        .flat_map(|p| p.chosen.iter().map(|&k| p.verma[k].clone()))
        .collect();
    let index: HashMap<NsMonomial, usize> = reps
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();

    let project = |v: &NsVector| -> SparseVector {
        let Some((m, _)) = v.iter().next() else {
            return SparseVector::new();
        };
        pieces[m.weight().twice() as usize].project(v)
    };

    let omega_m = NsMonomial::new(vec![2], vec![])?;
    let tau_m = NsMonomial::new(vec![], vec![3])?;
    let (Some(&omega), Some(&tau)) = (index.get(&omega_m), index.get(&tau_m)) else {
        return Err(Error::InvalidInput("ω or τ lies in the radical".into()));
    };

    let omega_modes = tabulate_modes(&space, Weight::int(2), |n, j| {
        Ok(project(&verma.apply(NsMode::L(n - 1), &reps[j])))
    })?;
    let tau_modes = tabulate_modes(&space, Weight::from_twice(3), |n, j| {
        Ok(project(&verma.apply(NsMode::G(2 * n - 1), &reps[j])))
    })?;
    let generators = vec![
        Generator {
            name: "omega".into(),
            index: omega,
            weight: Weight::int(2),
            odd: false,
            modes: omega_modes,
        },
        Generator {
            name: "tau".into(),
            index: tau,
            weight: Weight::from_twice(3),
            odd: true,
            modes: tau_modes,
        },
    ];

    let mut constructions = Vec::with_capacity(reps.len());
    for (k, m) in reps.iter().enumerate() {
        let con = if k == 0 {
            Construction::Idempotent(0)
        } else if k == omega {
            Construction::Generator(0)
        } else if k == tau {
            Construction::Generator(1)
        } else {
            let (x, rest) = m.split_first().expect("positive weight");
            let mut rv = NsVector::new();
            rv.insert(rest, Scalar::one());
            let (gen, mode) = match x {
                NsMode::L(n) => (0, n + 1),
                NsMode::G(r) => (1, (r + 1) / 2),
            };
            Construction::Mode {
                gen,
                mode,
                coeff: Scalar::one(),
                source: project(&rv),
            }
        };
        constructions.push(con);
    }

    let gram = pieces
        .iter()
        .map(|p| {
            let b = Matrix::from_fn(p.chosen.len(), p.chosen.len(), |r, c| {
                p.gram.get(p.chosen[r], p.chosen[c]).clone()
            });
            HermitianMatrix::new(b)
        })
        .collect::<Result<Vec<_>>>()?;

    let dim = reps.len();
    TruncatedVosa::from_parts(VosaParts {
        name: format!("ns(c={})", crate::kernel::format_rational(c)),
        space,
        central_charge: Scalar::real(c.clone()),
        vacuum: SparseVector::basis(0),
        conformal: SparseVector::basis(omega),
        generators,
        constructions,
        component: vec![0; dim],
        involution: (0..dim).map(|k| (k, Scalar::one())).collect(),
        gram,
    })
}
