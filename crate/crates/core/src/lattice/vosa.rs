use std::collections::HashMap;

use super::boson::{
    add_term, boson_basis, heisenberg_apply, heisenberg_apply_vec, BosonMonomial, BosonVector,
};
use super::cocycle::{synthesize_cocycle, Cocycle, IntegralLattice};
use crate::error::{Error, Result};
use crate::kernel::{
    GradedSpace, HermitianMatrix, Matrix, Rational, Scalar, SparseOperator, SparseVector, Weight,
};
use crate::vosa::{tabulate_modes, Construction, Generator, TruncatedVosa, VosaParts};

/// A basis state `u ⊗ e^λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeState {
    pub boson: BosonMonomial,
    pub point: Vec<i64>,
}

impl LatticeState {
    pub fn label(&self) -> String {
        let b = self.boson.to_string();
        if self.point.iter().all(|&x| x == 0) {
            format!("{b}1")
        } else {
            let p: Vec<String> = self.point.iter().map(|x| x.to_string()).collect();
            format!("{b}e^({})", p.join(","))
        }
    }
}

/// A truncated lattice VOSA together with the lattice data used to build it.
#[derive(Clone, Debug)]
pub struct LatticeVosa {
    lattice: IntegralLattice,
    cocycle: Cocycle,
    states: Vec<LatticeState>,
    index: HashMap<LatticeState, usize>,
    vosa: TruncatedVosa,
}

fn format_point(p: &[i64]) -> String {
    let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

fn neg(p: &[i64]) -> Vec<i64> {
    p.iter().map(|x| -x).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Lattice points of norm at most `bound`, sorted by norm and then coordinates.
pub fn lattice_points(lattice: &IntegralLattice, bound: i64) -> Vec<Vec<i64>> {
    let d = lattice.rank();
    let inv = lattice.gram_matrix().inverse().expect("positive definite");
    let radius: Vec<i64> = (0..d)
        .map(|i| {
            // largest k with k² ≤ bound · (G⁻¹)_ii
            let q = inv.get(i, i).re() * Rational::from_integer(bound.into());
            let mut k = 0i64;
            while Rational::from_integer(((k + 1) * (k + 1)).into()) <= q {
                k += 1;
            }
            k
        })
        .collect();
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for r in &radius {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-r..=*r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts.retain(|p| lattice.norm(p) <= bound);
    pts.sort_by_key(|p| (lattice.norm(p), p.clone()));
    pts
}

impl LatticeVosa {
    pub fn lattice(&self) -> &IntegralLattice {
        &self.lattice
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn states(&self) -> &[LatticeState] {
        &self.states
    }

    pub fn vosa(&self) -> &TruncatedVosa {
        &self.vosa
    }

    pub fn into_vosa(self) -> TruncatedVosa {
        self.vosa
    }

    pub fn state_index(&self, boson: &BosonMonomial, point: &[i64]) -> Option<usize> {
        self.index
            .get(&LatticeState {
                boson: boson.clone(),
                point: point.to_vec(),
            })
            .copied()
    }

    /// `(e^α)_n` on every basis state whose image stays under the cutoff.
    pub fn vertex_e_alpha_mode(&self, alpha: &[i64], n: i64) -> Result<SparseOperator> {
        if alpha.len() != self.lattice.rank() {
            return Err(Error::InvalidInput(
                "lattice vector has the wrong rank".into(),
            ));
        }
        let w = Weight::from_twice(self.lattice.norm(alpha));
        let shift = w.mode_shift(n);
        let mut op = SparseOperator::new(shift);
        for j in 0..self.states.len() {
            let t = self.vosa.space().weight_of(j) + shift;
            if t < Weight::ZERO || t > self.vosa.cutoff() {
                continue;
            }
            op.set_column(
                j,
                vertex_apply(
                    &self.lattice,
                    &self.cocycle,
                    &self.index,
                    alpha,
                    n,
                    &self.states[j],
                )?,
            );
        }
        Ok(op)
    }
}

/// `(e^β)_n (u ⊗ e^γ) = ε(β,γ) Σ_k Q_{j} P_k u ⊗ e^{β+γ}` with
/// `j = k - (β,γ) - n - 1`, where `P_k` and `Q_j` are the coefficients of
/// `E^+(-β, z)` and `E^-(-β, z)`.
fn vertex_apply(
    lattice: &IntegralLattice,
    cocycle: &Cocycle,
    index: &HashMap<LatticeState, usize>,
    beta: &[i64],
    n: i64,
    s: &LatticeState,
) -> Result<SparseVector> {
    let h: Vec<Scalar> = beta.iter().map(|&x| Scalar::int(x)).collect();
    let minus_h: Vec<Scalar> = beta.iter().map(|&x| Scalar::int(-x)).collect();
    let pairing = lattice.inner(beta, &s.point);

    let kmax = s.boson.weight();
    let mut p: Vec<BosonVector> = Vec::with_capacity(kmax as usize + 1);
    p.push([(s.boson.clone(), Scalar::one())].into());
    for k in 1..=kmax {
        let mut acc = BosonVector::new();
        for m in 1..=k {
            for (t, c) in heisenberg_apply_vec(lattice, &minus_h, m, &p[(k - m) as usize]) {
                add_term(&mut acc, t, c);
            }
        }
        let inv = Scalar::frac(1, k);
        p.push(acc.into_iter().map(|(t, c)| (t, &c * &inv)).collect());
    }

    let target = add(beta, &s.point);
    let eps = Scalar::int(cocycle.eps(beta, &s.point));
    let mut out = SparseVector::new();
    for (k, pk) in p.iter().enumerate() {
        if pk.is_empty() {
            continue;
        }
        let j = k as i64 - pairing - n - 1;
        if j < 0 {
            continue;
        }
        let mut q: Vec<BosonVector> = vec![pk.clone()];
        for jj in 1..=j {
            let mut acc = BosonVector::new();
            for m in 1..=jj {
                for (t, c) in heisenberg_apply_vec(lattice, &h, -m, &q[(jj - m) as usize]) {
                    add_term(&mut acc, t, c);
                }
            }
            let inv = Scalar::frac(1, jj);
            q.push(acc.into_iter().map(|(t, c)| (t, &c * &inv)).collect());
        }
        for (t, c) in &q[j as usize] {
            let key = LatticeState {
                boson: t.clone(),
                point: target.clone(),
            };
            let idx = index.get(&key).ok_or_else(|| Error::CutoffExceeded {
                needed: "above cutoff".into(),
                cutoff: "lattice build".into(),
            })?;
            out.add_term(*idx, &(c * &eps));
        }
    }
    Ok(out)
}

fn l1(p: &[i64]) -> i64 {
    p.iter().map(|x| x.abs()).sum()
}

/// Builds `V_L` up to `cutoff`, generated by the Heisenberg fields `α_i(-1)1`
/// and `e^λ` for `±` basis vectors plus any `extra` points.
pub fn build_lattice_vosa(
    lattice: &IntegralLattice,
    cutoff: Weight,
    extra: &[Vec<i64>],
) -> Result<LatticeVosa> {
    if cutoff < Weight::int(2) {
        return Err(Error::CutoffExceeded {
            needed: "2".into(),
            cutoff: cutoff.to_string(),
        });
    }
    let d = lattice.rank();
    let cocycle = synthesize_cocycle(lattice);
    let top = cutoff.twice();
    let points = lattice_points(lattice, top);

    let mut pieces_states: Vec<Vec<LatticeState>> = Vec::new();
    for t in 0..=top {
        let mut piece = Vec::new();
        for pt in &points {
            let nrm = lattice.norm(pt);
            if nrm > t || (t - nrm) % 2 != 0 {
                continue;
            }
            for b in boson_basis(d, (t - nrm) / 2) {
                piece.push(LatticeState {
                    boson: b,
                    point: pt.clone(),
                });
            }
        }
        pieces_states.push(piece);
    }
    let labels = pieces_states
        .iter()
        .map(|p| {
            p.iter()
                .map(|s| (s.label(), lattice.norm(&s.point) % 2 == 1))
                .collect()
        })
        .collect();
    let space = GradedSpace::new(cutoff, labels)?;
    let states: Vec<LatticeState> = pieces_states.iter().flatten().cloned().collect();
    let index: HashMap<LatticeState, usize> = states
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, s)| (s, k))
        .collect();
    let zero = vec![0i64; d];

    let mut gen_points: Vec<Vec<i64>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0i64; d];
        e[i] = 1;
        gen_points.push(e.clone());
        gen_points.push(neg(&e));
    }
    for p in extra {
        if p.len() != d {
            return Err(Error::InvalidInput(format!(
                "generator {p:?} has the wrong rank"
            )));
        }
        if p.iter().all(|&x| x == 0) || gen_points.contains(p) {
            continue;
        }
        gen_points.push(p.clone());
    }
    gen_points.retain(|p| lattice.norm(p) <= top);

    let mut generators = Vec::new();
    for i in 0..d {
        let mut dir = vec![Scalar::zero(); d];
        dir[i] = Scalar::one();
        let state = LatticeState {
            boson: BosonMonomial::new(vec![(i, 1)]),
            point: zero.clone(),
        };
        let modes = tabulate_modes(&space, Weight::ONE, |n, j| {
            let s = &states[j];
            let img: BosonVector = if n == 0 {
                let c: i64 = (0..d).map(|k| lattice.gram()[i][k] * s.point[k]).sum();
                [(s.boson.clone(), Scalar::int(c))].into()
            } else {
                heisenberg_apply(lattice, &dir, n, &s.boson)
            };
            Ok(img
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(b, c)| {
                    let key = LatticeState {
                        boson: b,
                        point: s.point.clone(),
                    };
                    (index[&key], c)
                })
                .collect())
        })?;
        generators.push(Generator {
            name: format!("a{}", i + 1),
            index: index[&state],
            weight: Weight::ONE,
            odd: false,
            modes,
        });
    }
    for p in &gen_points {
        let w = Weight::from_twice(lattice.norm(p));
        let modes = tabulate_modes(&space, w, |n, j| {
            vertex_apply(lattice, &cocycle, &index, p, n, &states[j])
        })?;
        generators.push(Generator {
            name: format!("e^{}", format_point(p)),
            index: index[&LatticeState {
                boson: BosonMonomial::default(),
                point: p.clone(),
            }],
            weight: w,
            odd: lattice.norm(p) % 2 == 1,
            modes,
        });
    }

    let mut constructions = Vec::with_capacity(states.len());
    for s in &states {
        let con = if let Some((&(dd, nn), _)) = s.boson.factors().split_first() {
            if s.boson.len() == 1 && nn == 1 && s.point == zero {
                Construction::Generator(dd)
            } else {
                let rest = LatticeState {
                    boson: s.boson.without(0),
                    point: s.point.clone(),
                };
                Construction::Mode {
                    gen: dd,
                    mode: -nn,
                    coeff: Scalar::one(),
                    source: SparseVector::basis(index[&rest]),
                }
            }
        } else if s.point == zero {
            Construction::Idempotent(0)
        } else if let Some(g) = gen_points.iter().position(|p| *p == s.point) {
            Construction::Generator(d + g)
        } else {
            let lam = &s.point;
            let (g, mu) = gen_points
                .iter()
                .enumerate()
                .map(|(g, b)| (g, sub(lam, b)))
                .min_by_key(|(_, mu)| (lattice.norm(mu), l1(mu), mu.clone()))
                .ok_or_else(|| Error::Unsupported("lattice has no generators".into()))?;
            if (lattice.norm(&mu), l1(&mu)) >= (lattice.norm(lam), l1(lam)) {
                return Err(Error::Unsupported(format!(
                    "e^{} is not reached from the generating set; supply extra generators",
                    format_point(lam)
                )));
            }
            let beta = &gen_points[g];
            Construction::Mode {
                gen: d + g,
                mode: -lattice.inner(beta, &mu) - 1,
                coeff: Scalar::int(cocycle.eps(beta, &mu)),
                source: SparseVector::basis(
                    index[&LatticeState {
                        boson: BosonMonomial::default(),
                        point: mu,
                    }],
                ),
            }
        };
        constructions.push(con);
    }

    let involution = states
        .iter()
        .map(|s| {
            let img = LatticeState {
                boson: s.boson.clone(),
                point: neg(&s.point),
            };
            let sign = if s.boson.len() % 2 == 0 { 1 } else { -1 };
            (index[&img], Scalar::int(sign))
        })
        .collect();

    let mut bcache: HashMap<(BosonMonomial, BosonMonomial), Scalar> = HashMap::new();
    let gram = pieces_states
        .iter()
        .map(|piece| {
            let mut m = Matrix::zeros(piece.len(), piece.len());
            for (r, a) in piece.iter().enumerate() {
                for (c, b) in piece.iter().enumerate() {
                    if a.point == b.point {
                        m.set(r, c, boson_form(lattice, &a.boson, &b.boson, &mut bcache));
                    }
                }
            }
            HermitianMatrix::new(m)
        })
        .collect::<Result<Vec<_>>>()?;

    let inv = lattice.gram_matrix().inverse().expect("positive definite");
    let mut conformal = SparseVector::new();
    for i in 0..d {
        for j in 0..d {
            let c = inv.get(i, j);
            if c.is_zero() {
                continue;
            }
            let key = LatticeState {
                boson: BosonMonomial::new(vec![(i, 1), (j, 1)]),
                point: zero.clone(),
            };
            conformal.add_term(index[&key], &c.scale(&Rational::new(1.into(), 2.into())));
        }
    }

    let vosa = TruncatedVosa::from_parts(VosaParts {
        name: format!("lattice({:?})", lattice.gram()),
        space,
        central_charge: Scalar::int(d as i64),
        vacuum: SparseVector::basis(0),
        conformal,
        generators,
        constructions,
        component: vec![0; states.len()],
        involution,
        gram,
    })?;
    Ok(LatticeVosa {
        lattice: lattice.clone(),
        cocycle,
        states,
        index,
        vosa,
    })
}

/// `(α_d(-n) R, m) = (R, α_d(n) m)`, memoized.
fn boson_form(
    lattice: &IntegralLattice,
    a: &BosonMonomial,
    b: &BosonMonomial,
    cache: &mut HashMap<(BosonMonomial, BosonMonomial), Scalar>,
) -> Scalar {
    if a.weight() != b.weight() {
        return Scalar::zero();
    }
    let Some(&(d, n)) = a.factors().first() else {
        return if b.is_empty() {
            Scalar::one()
        } else {
            Scalar::zero()
        };
    };
    let key = (a.clone(), b.clone());
    if let Some(v) = cache.get(&key) {
        return v.clone();
    }
    let rest = a.without(0);
    let mut dir = vec![Scalar::zero(); lattice.rank()];
    dir[d] = Scalar::one();
    let mut acc = Scalar::zero();
    for (t, c) in heisenberg_apply(lattice, &dir, n, b) {
        acc += &(&boson_form(lattice, &rest, &t, cache) * &c.conj());
    }
    cache.insert(key, acc.clone());
    acc
}
