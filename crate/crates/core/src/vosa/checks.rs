use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::adjoint::AdjointField;
use super::TruncatedVosa;
use crate::error::{Error, Result};
use crate::kernel::{binomial, Matrix, Scalar, SparseVector, Weight};

/// One coefficient where `(A_m u, v) ≠ (u, φ(a)_m v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceFailure {
    pub generator: String,
    pub mode: i64,
    pub u: usize,
    pub v: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub generator: String,
    pub max_weight: Weight,
    pub checked: usize,
    pub failures: Vec<InvarianceFailure>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares both sides of the invariance identity for generator `g`,
/// coefficient by coefficient, on all basis pairs up to `max_weight`.
pub fn invariance_check(
    v: &TruncatedVosa,
    g: usize,
    max_weight: Weight,
) -> Result<InvarianceReport> {
    let gen = v
        .generators()
        .get(g)
        .ok_or_else(|| Error::InvalidInput(format!("no generator {g}")))?;
    let wa = gen.weight;
    if max_weight > v.cutoff() - wa {
        return Err(Error::CutoffExceeded {
            needed: (max_weight + wa).to_string(),
            cutoff: v.cutoff().to_string(),
        });
    }
    let a = SparseVector::basis(gen.index);
    let phi_a = v.phi(&a);
    let field = AdjointField::new(v, &a)?;
    let mut report = InvarianceReport {
        generator: gen.name.clone(),
        max_weight,
        checked: 0,
        failures: Vec::new(),
    };
    for wu in max_weight.steps_up_to() {
        for wv in max_weight.steps_up_to() {
            // m = wt v + wt a - 1 - wt u
            let twice_m = wv.twice() + wa.twice() - 2 - wu.twice();
            if twice_m % 2 != 0 {
                continue;
            }
            let m = twice_m / 2;
            let us = v.basis_at(wu);
            let vs = v.basis_at(wv);
            if us.is_empty() || vs.is_empty() {
                continue;
            }
            let left: Vec<SparseVector> = us
                .clone()
                .map(|i| field.apply(v, m, &SparseVector::basis(i)))
                .collect::<Result<_>>()?;
            let right: Vec<SparseVector> = vs
                .clone()
                .map(|j| v.apply_mode(&phi_a, m, &SparseVector::basis(j)))
                .collect::<Result<_>>()?;
            for (iu, u) in us.clone().enumerate() {
                for (iv, w) in vs.clone().enumerate() {
                    let lhs = v.form(&left[iu], &SparseVector::basis(w));
                    let rhs = v.form(&SparseVector::basis(u), &right[iv]);
                    report.checked += 1;
                    if lhs != rhs {
                        report.failures.push(InvarianceFailure {
                            generator: gen.name.clone(),
                            mode: m,
                            u,
                            v: w,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Runs [`invariance_check`] on every generator, each up to `cutoff - wt(generator)`,
/// further capped by `cap` when given.
pub fn invariance_check_all(
    v: &TruncatedVosa,
    cap: Option<Weight>,
) -> Result<Vec<InvarianceReport>> {
    v.generators()
        .iter()
        .enumerate()
        .map(|(g, gen)| {
            let mut top = v.cutoff() - gen.weight;
            if let Some(c) = cap {
                top = top.min(c);
            }
            invariance_check(v, g, top)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorOutcome {
    pub lhs: SparseVector,
    pub rhs: SparseVector,
}

impl CommutatorOutcome {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `u_m v_n w - (-1)^{[u][v]} v_n u_m w` against `Σ_i C(m,i) (u_i v)_{m+n-i} w`.
pub fn commutator_check(
    v: &TruncatedVosa,
    a: &SparseVector,
    b: &SparseVector,
    m: i64,
    n: i64,
    w: &SparseVector,
) -> Result<CommutatorOutcome> {
    let inhomogeneous = || Error::InvalidInput("commutator check needs homogeneous u and v".into());
    let wa = v.weight_of_vector(a).ok_or_else(inhomogeneous)?;
    let wb = v.weight_of_vector(b).ok_or_else(inhomogeneous)?;
    let pa = v.parity_of_vector(a).ok_or_else(inhomogeneous)?;
    let pb = v.parity_of_vector(b).ok_or_else(inhomogeneous)?;

    let mut lhs = v.apply_mode(a, m, &v.apply_mode(b, n, w)?)?;
    let swapped = v.apply_mode(b, n, &v.apply_mode(a, m, w)?)?;
    let sign = if pa && pb {
        Scalar::one()
    } else {
        Scalar::int(-1)
    };
    lhs.add_scaled(&swapped, &sign);

    let mut rhs = SparseVector::new();
    for i in 0i64.. {
        if m >= 0 && i > m {
            break;
        }
        if wb + wa.mode_shift(i) < Weight::ZERO {
            break;
        }
        let c = binomial(m, i);
        let ab = v.apply_mode(a, i, b)?;
        if ab.is_zero() {
            continue;
        }
        rhs.add_scaled(&v.apply_mode(&ab, m + n - i, w)?, &Scalar::real(c));
    }
    Ok(CommutatorOutcome { lhs, rhs })
}

/// A sampled commutator tuple and its outcome.
#[derive(Clone, Debug)]
pub struct SampledCommutator {
    pub u: usize,
    pub v: usize,
    pub m: i64,
    pub n: i64,
    pub w: usize,
    pub outcome: CommutatorOutcome,
}

/// Draws `count` in-range tuples `(u, v, m, n, w)` of basis vectors and mode
/// indices with nonnegative final weight, resampling those that would need
/// data above the cutoff.
pub fn random_commutator_checks(
    v: &TruncatedVosa,
    count: usize,
    seed: u64,
) -> Result<Vec<SampledCommutator>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = v.cutoff();
    let half = Weight::from_twice(top.twice() / 2);
    let fields: Vec<usize> = (0..v.dim())
        .filter(|&i| v.space().weight_of(i) <= half.max(Weight::ONE))
        .collect();
    if fields.is_empty() {
        return Err(Error::InvalidInput("no basis vectors to sample".into()));
    }
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 200 * count.max(1) {
            return Err(Error::InvalidInput(format!(
                "only {} of {count} commutator tuples fit under the cutoff",
                out.len()
            )));
        }
        let iu = fields[rng.gen_range(0..fields.len())];
        let iv = fields[rng.gen_range(0..fields.len())];
        let iw = rng.gen_range(0..v.dim());
        let wu = v.space().weight_of(iu);
        let wv = v.space().weight_of(iv);
        let ww = v.space().weight_of(iw);
        let m = rng.gen_range(-2..=3i64);
        let n = rng.gen_range(-2..=3i64);
        let target = ww + wu.mode_shift(m) + wv.mode_shift(n);
        if target < Weight::ZERO || target > top {
            continue;
        }
        let (a, b, c) = (
            SparseVector::basis(iu),
            SparseVector::basis(iv),
            SparseVector::basis(iw),
        );
        match commutator_check(v, &a, &b, m, n, &c) {
            Ok(outcome) => out.push(SampledCommutator {
                u: iu,
                v: iv,
                m,
                n,
                w: iw,
                outcome,
            }),
            Err(Error::CutoffExceeded { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Named structural checks with a pass flag and a short detail string.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: Vec<(String, bool, String)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok, _)| *ok)
    }

    fn record(&mut self, name: &str, ok: bool, detail: String) {
        self.checks.push((name.to_string(), ok, detail));
    }
}

/// Grading by `L(0)`, the `L(-1)`-derivative property on generators, the
/// vacuum field, the involution, and positivity of every Gram piece.
pub fn verify_axioms(v: &TruncatedVosa) -> Result<AxiomReport> {
    let mut report = AxiomReport::default();
    let dim = v.dim();

    let mut bad = None;
    for j in 0..dim {
        let e = SparseVector::basis(j);
        let w = Scalar::real(v.space().weight_of(j).to_rational());
        if v.virasoro(0, &e)? != e.scaled(&w) {
            bad = Some(j);
            break;
        }
    }
    report.record(
        "grading",
        bad.is_none(),
        bad.map_or("L(0) acts by the weight".into(), |j| {
            format!("fails on {}", v.label(j))
        }),
    );

    let mut bad = None;
    'gens: for (gi, g) in v.generators().iter().enumerate() {
        let dg = v.virasoro(-1, &SparseVector::basis(g.index))?;
        for n in -3..=3i64 {
            for j in 0..dim {
                let t = v.space().weight_of(j) + g.weight.mode_shift(n - 1);
                if t < Weight::ZERO || t > v.cutoff() {
                    continue;
                }
                let e = SparseVector::basis(j);
                let lhs = match v.apply_mode(&dg, n, &e) {
                    Ok(x) => x,
                    Err(Error::CutoffExceeded { .. }) => continue,
                    Err(err) => return Err(err),
                };
                let rhs = v.apply_generator(gi, n - 1, &e)?.scaled(&Scalar::int(-n));
                if lhs != rhs {
                    bad = Some(format!("{} at mode {n} on {}", g.name, v.label(j)));
                    break 'gens;
                }
            }
        }
    }
    report.record(
        "derivative",
        bad.is_none(),
        bad.unwrap_or_else(|| "(L(-1)g)_n = -n g_(n-1)".into()),
    );

    let mut ok = true;
    for n in -3..=3i64 {
        for j in 0..dim {
            let t = v.space().weight_of(j) + Weight::ZERO.mode_shift(n);
            if t < Weight::ZERO || t > v.cutoff() {
                continue;
            }
            let e = SparseVector::basis(j);
            let img = v.apply_mode(v.vacuum(), n, &e)?;
            let want = if n == -1 { e } else { SparseVector::new() };
            ok &= img == want;
        }
    }
    report.record("vacuum", ok, "Y(1, z) is the identity".into());

    let involutive = (0..dim).all(|j| {
        let e = SparseVector::basis(j);
        v.phi(&v.phi(&e)) == e
    });
    let fixes = v.phi(v.vacuum()) == *v.vacuum() && v.phi(v.conformal()) == *v.conformal();
    report.record(
        "involution",
        involutive && fixes,
        "φ² = 1, φ(1) = 1, φ(ω) = ω".into(),
    );

    let mut bad = None;
    for (p, g) in v.space().pieces().iter().zip(v.grams()) {
        if g.dim() > 0 && !matches!(g.psd_verdict(), crate::kernel::PsdVerdict::PositiveDefinite) {
            bad = Some(p.weight);
            break;
        }
    }
    report.record(
        "positivity",
        bad.is_none(),
        bad.map_or("every piece positive definite".into(), |w| {
            format!("fails at weight {w}")
        }),
    );
    Ok(report)
}

/// Per-weight bilinear Gram `⟨e_i, e_j⟩ = sign · (e_i, φ(e_j))`, checked for symmetry.
pub fn bilinear_from_hermitian(v: &TruncatedVosa, sign: i64) -> Result<Vec<Matrix>> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput("sign must be +1 or -1".into()));
    }
    let s = Scalar::int(sign);
    let mut out = Vec::new();
    for p in v.space().pieces() {
        let idx: Vec<usize> = p.indices().collect();
        let images: Vec<SparseVector> = idx
            .iter()
            .map(|&j| v.phi(&SparseVector::basis(j)))
            .collect();
        let m = Matrix::from_fn(idx.len(), idx.len(), |r, c| {
            &s * &v.form(&SparseVector::basis(idx[r]), &images[c])
        });
        for r in 0..idx.len() {
            for c in r + 1..idx.len() {
                if m.get(r, c) != m.get(c, r) {
                    return Err(Error::SymmetryFailure {
                        weight: p.weight.to_string(),
                        row: r,
                        col: c,
                    });
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}
