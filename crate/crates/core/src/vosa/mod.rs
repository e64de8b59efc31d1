//! Truncated vertex operator superalgebras.
//!
//! A [`TruncatedVosa`] stores a graded basis up to a weight cutoff, the mode
//! matrices of a finite set of generating fields, and for every basis vector a
//! recipe expressing it as a generator mode applied to an earlier vector. Modes
//! of arbitrary vectors are then obtained from the Borcherds iterate formula
//!
//! `(a_p b)_q = Σ_{t≥0} (-1)^t C(p,t) [a_{p-t} b_{q+t} - (-1)^{p+[a][b]} b_{p+q-t} a_t]`,
//!
//! where both sums are finite because every weight is nonnegative.

mod adjoint;
mod checks;
mod report;

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

pub use adjoint::{adjoint_mode, adjoint_modes, AdjointField};
pub use checks::{
    bilinear_from_hermitian, commutator_check, invariance_check, invariance_check_all,
    random_commutator_checks, verify_axioms, AxiomReport, CommutatorOutcome, InvarianceFailure,
    InvarianceReport, SampledCommutator,
};
pub use report::{labeled_vector_json, CheckReport};

use crate::error::{Error, Result};
use crate::kernel::{
    binomial, GradedSpace, HermitianMatrix, Matrix, Scalar, SparseOperator, SparseVector, Weight,
};

/// A generating field: its state is a basis vector and its modes are precomputed.
#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub index: usize,
    pub weight: Weight,
    pub odd: bool,
    /// `n ↦ g_n`; modes whose in-range blocks all vanish may be absent.
    pub modes: BTreeMap<i64, SparseOperator>,
}

/// How a basis vector arises from the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Unit of a simple summand: its field is the projection onto component `k`.
    Idempotent(usize),
    /// The state of generator `g`.
    Generator(usize),
    /// `coeff · (g)_{mode} source`.
    Mode {
        gen: usize,
        mode: i64,
        coeff: Scalar,
        source: SparseVector,
    },
}

/// Tabulates the modes of a field of weight `weight` on every basis vector whose
/// image stays under the cutoff; `act(n, j)` returns the image of basis vector `j`.
pub fn tabulate_modes(
    space: &GradedSpace,
    weight: Weight,
    mut act: impl FnMut(i64, usize) -> Result<SparseVector>,
) -> Result<BTreeMap<i64, SparseOperator>> {
    let c = space.cutoff().twice();
    let w = weight.twice();
    let lo = (w - 2 - c).div_euclid(2);
    let hi = (w - 2 + c).div_euclid(2) + 1;
    let mut out = BTreeMap::new();
    for n in lo..=hi {
        let shift = weight.mode_shift(n);
        if shift.twice().abs() > c {
            continue;
        }
        let mut op = SparseOperator::new(shift);
        for j in 0..space.dim() {
            let t = space.weight_of(j) + shift;
            if t < Weight::ZERO || t > space.cutoff() {
                continue;
            }
            op.set_column(j, act(n, j)?);
        }
        if !op.is_zero() {
            out.insert(n, op);
        }
    }
    Ok(out)
}

/// Raw ingredients assembled by the engines.
#[derive(Clone, Debug)]
pub struct VosaParts {
    pub name: String,
    pub space: GradedSpace,
    pub central_charge: Scalar,
    pub vacuum: SparseVector,
    pub conformal: SparseVector,
    pub generators: Vec<Generator>,
    pub constructions: Vec<Construction>,
    pub component: Vec<usize>,
    pub involution: Vec<(usize, Scalar)>,
    pub gram: Vec<HermitianMatrix>,
}

type ModeKey = (usize, i64, usize);

pub struct TruncatedVosa {
    parts: VosaParts,
    num_components: usize,
    cache: RwLock<HashMap<ModeKey, Result<SparseVector>>>,
}

impl Clone for TruncatedVosa {
    fn clone(&self) -> Self {
        TruncatedVosa {
            parts: self.parts.clone(),
            num_components: self.num_components,
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl std::fmt::Debug for TruncatedVosa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruncatedVosa")
            .field("name", &self.parts.name)
            .field("cutoff", &self.parts.space.cutoff())
            .field("dim", &self.parts.space.dim())
            .finish()
    }
}

impl TruncatedVosa {
    pub fn from_parts(parts: VosaParts) -> Result<Self> {
        let dim = parts.space.dim();
        let bad = |m: String| Err(Error::InvalidInput(m));
        if parts.constructions.len() != dim
            || parts.component.len() != dim
            || parts.involution.len() != dim
        {
            return bad("per-basis tables do not match the space dimension".into());
        }
        if parts.gram.len() != parts.space.pieces().len() {
            return bad("one Gram matrix per weight is required".into());
        }
        for (p, g) in parts.space.pieces().iter().zip(&parts.gram) {
            if g.dim() != p.dim() {
                return bad(format!("Gram at weight {} has the wrong size", p.weight));
            }
        }
        for (i, (j, _)) in parts.involution.iter().enumerate() {
            if *j >= dim || parts.space.weight_of(*j) != parts.space.weight_of(i) {
                return bad(format!("involution moves basis vector {i} across weights"));
            }
        }
        for g in &parts.generators {
            if g.index >= dim || parts.space.weight_of(g.index) != g.weight {
                return bad(format!("generator {} has an inconsistent state", g.name));
            }
        }
        let num_components = parts.component.iter().max().map_or(1, |m| m + 1);
        Ok(TruncatedVosa {
            parts,
            num_components,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn parts(&self) -> &VosaParts {
        &self.parts
    }

    pub fn name(&self) -> &str {
        &self.parts.name
    }

    pub fn space(&self) -> &GradedSpace {
        &self.parts.space
    }

    pub fn cutoff(&self) -> Weight {
        self.parts.space.cutoff()
    }

    pub fn dim(&self) -> usize {
        self.parts.space.dim()
    }

    pub fn central_charge(&self) -> &Scalar {
        &self.parts.central_charge
    }

    pub fn vacuum(&self) -> &SparseVector {
        &self.parts.vacuum
    }

    pub fn conformal(&self) -> &SparseVector {
        &self.parts.conformal
    }

    pub fn generators(&self) -> &[Generator] {
        &self.parts.generators
    }

    pub fn generator_by_name(&self, name: &str) -> Option<usize> {
        self.parts.generators.iter().position(|g| g.name == name)
    }

    pub fn constructions(&self) -> &[Construction] {
        &self.parts.constructions
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.parts.component[i]
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn gram(&self, w: Weight) -> Option<&HermitianMatrix> {
        if w < Weight::ZERO || w > self.cutoff() {
            return None;
        }
        self.parts.gram.get(w.twice() as usize)
    }

    pub fn grams(&self) -> &[HermitianMatrix] {
        &self.parts.gram
    }

    pub fn graded_dims(&self) -> Vec<(Weight, usize)> {
        self.parts.space.graded_dims()
    }

    pub fn label(&self, i: usize) -> &str {
        self.parts.space.label(i)
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.parts.space.is_odd(i)
    }

    pub fn basis_at(&self, w: Weight) -> std::ops::Range<usize> {
        self.parts.space.piece(w).map_or(0..0, |p| p.indices())
    }

    /// Weight of a nonzero homogeneous vector.
    pub fn weight_of_vector(&self, v: &SparseVector) -> Option<Weight> {
        let mut ws = v.indices().map(|i| self.parts.space.weight_of(i));
        let w = ws.next()?;
        ws.all(|x| x == w).then_some(w)
    }

    /// Parity of a nonzero homogeneous vector.
    pub fn parity_of_vector(&self, v: &SparseVector) -> Option<bool> {
        let mut ps = v.indices().map(|i| self.is_odd(i));
        let p = ps.next()?;
        ps.all(|x| x == p).then_some(p)
    }

    /// Returns a copy whose Gram matrix at weight `w` has entry (0, 0) negated.
    pub fn with_corrupted_form(&self, w: Weight) -> Result<TruncatedVosa> {
        let mut parts = self.parts.clone();
        let k = w.twice() as usize;
        let g = parts
            .gram
            .get(k)
            .filter(|g| g.dim() > 0)
            .ok_or_else(|| Error::InvalidInput(format!("no basis at weight {w} to corrupt")))?;
        let mut m = g.matrix().clone();
        let flipped = -m.get(0, 0);
        m.set(0, 0, flipped);
        parts.gram[k] = HermitianMatrix::new(m)?;
        parts.name = format!("{} (corrupted form)", parts.name);
        TruncatedVosa::from_parts(parts)
    }

    fn cutoff_error(&self, needed: Weight) -> Error {
        Error::CutoffExceeded {
            needed: needed.to_string(),
            cutoff: self.cutoff().to_string(),
        }
    }

    /// Target weight of a mode of a weight-`wv` field on basis vector `j`,
    /// `None` when the target is negative (the mode annihilates).
    fn target_weight(&self, wv: Weight, n: i64, j: usize) -> Result<Option<Weight>> {
        let t = self.parts.space.weight_of(j) + wv.mode_shift(n);
        if t < Weight::ZERO {
            Ok(None)
        } else if t > self.cutoff() {
            Err(self.cutoff_error(t))
        } else {
            Ok(Some(t))
        }
    }

    /// `g_n v` for generator `g`.
    pub fn apply_generator(&self, g: usize, n: i64, v: &SparseVector) -> Result<SparseVector> {
        let gen = &self.parts.generators[g];
        let op = gen.modes.get(&n);
        let mut out = SparseVector::new();
        for (j, c) in v.iter() {
            if self.target_weight(gen.weight, n, j)?.is_none() {
                continue;
            }
            if let Some(col) = op.and_then(|op| op.column(j)) {
                out.add_scaled(col, c);
            }
        }
        Ok(out)
    }

    /// `v_n w` for arbitrary vectors (linear in both).
    pub fn apply_mode(&self, v: &SparseVector, n: i64, w: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::new();
        for (i, a) in v.iter() {
            for (j, b) in w.iter() {
                let r = self.basis_mode(i, n, j)?;
                out.add_scaled(&r, &(a * b));
            }
        }
        Ok(out)
    }

    /// `(e_i)_n e_j`, memoized.
    pub fn basis_mode(&self, i: usize, n: i64, j: usize) -> Result<SparseVector> {
        let key = (i, n, j);
        if let Some(r) = self.cache.read().expect("mode cache poisoned").get(&key) {
            return r.clone();
        }
        let r = self.compute_basis_mode(i, n, j);
        self.cache
            .write()
            .expect("mode cache poisoned")
            .insert(key, r.clone());
        r
    }

    fn compute_basis_mode(&self, i: usize, n: i64, j: usize) -> Result<SparseVector> {
        let wi = self.parts.space.weight_of(i);
        if self.target_weight(wi, n, j)?.is_none() {
            return Ok(SparseVector::new());
        }
        match &self.parts.constructions[i] {
            Construction::Idempotent(k) => {
                if n == -1 && self.parts.component[j] == *k {
                    Ok(SparseVector::basis(j))
                } else {
                    Ok(SparseVector::new())
                }
            }
            Construction::Generator(g) => self.apply_generator(*g, n, &SparseVector::basis(j)),
            Construction::Mode {
                gen,
                mode,
                coeff,
                source,
            } => {
                let g = &self.parts.generators[*gen];
                let (wa, p) = (g.weight, *mode);
                let wb = wi - wa.mode_shift(p);
                let odd_b = self.is_odd(i) ^ g.odd;
                let ej = SparseVector::basis(j);
                let wj = self.parts.space.weight_of(j);
                let mut sum = SparseVector::new();

                // Σ_t (-1)^t C(p,t) a_{p-t} b_{n+t} w
                for t in 0i64.. {
                    if p >= 0 && t > p {
                        break;
                    }
                    if wj + wb.mode_shift(n + t) < Weight::ZERO {
                        break;
                    }
                    let c = binomial(p, t);
                    let c = if t % 2 == 0 { c } else { -c };
                    let x = self.apply_mode(source, n + t, &ej)?;
                    if x.is_zero() {
                        continue;
                    }
                    let y = self.apply_generator(*gen, p - t, &x)?;
                    sum.add_scaled(&y, &Scalar::real(c));
                }

                // -(-1)^{p + [a][b]} Σ_t (-1)^t C(p,t) b_{p+n-t} a_t w
                let mut sign = if p.rem_euclid(2) == 0 { -1 } else { 1 };
                if g.odd && odd_b {
                    sign = -sign;
                }
                for t in 0i64.. {
                    if p >= 0 && t > p {
                        break;
                    }
                    if wj + wa.mode_shift(t) < Weight::ZERO {
                        break;
                    }
                    let c = binomial(p, t);
                    let c = if (t % 2 == 0) == (sign > 0) { c } else { -c };
                    let x = self.apply_generator(*gen, t, &ej)?;
                    if x.is_zero() {
                        continue;
                    }
                    let y = self.apply_mode(source, p + n - t, &x)?;
                    sum.add_scaled(&y, &Scalar::real(c));
                }
                Ok(sum.scaled(coeff))
            }
        }
    }

    /// The mode `v_n` on every basis vector whose image stays under the cutoff.
    pub fn descendant_mode(&self, v: &SparseVector, n: i64) -> Result<SparseOperator> {
        let wv = self.weight_of_vector(v).ok_or_else(|| {
            Error::InvalidInput("descendant_mode needs a homogeneous vector".into())
        })?;
        let shift = wv.mode_shift(n);
        let mut op = SparseOperator::new(shift);
        for j in 0..self.dim() {
            let t = self.parts.space.weight_of(j) + shift;
            if t < Weight::ZERO || t > self.cutoff() {
                continue;
            }
            let img = self.apply_mode(v, n, &SparseVector::basis(j))?;
            op.set_column(j, img);
        }
        Ok(op)
    }

    /// `L(n) v = ω_{n+1} v`.
    pub fn virasoro(&self, n: i64, v: &SparseVector) -> Result<SparseVector> {
        self.apply_mode(&self.parts.conformal, n + 1, v)
    }

    /// The anti-linear involution.
    pub fn phi(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, c) in v.iter() {
            let (j, s) = &self.parts.involution[i];
            out.add_term(*j, &(&c.conj() * s));
        }
        out
    }

    /// Hermitian form: linear in the first slot, conjugate-linear in the second.
    pub fn form(&self, u: &SparseVector, v: &SparseVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, a) in u.iter() {
            let wi = self.parts.space.weight_of(i);
            let g = &self.parts.gram[wi.twice() as usize];
            let li = self.parts.space.local_index(i);
            for (j, b) in v.iter() {
                if self.parts.space.weight_of(j) != wi {
                    continue;
                }
                let e = g.get(li, self.parts.space.local_index(j));
                if e.is_zero() {
                    continue;
                }
                acc += &(&(a * e) * &b.conj());
            }
        }
        acc
    }

    /// Readable expansion of a vector in basis labels.
    pub fn describe(&self, v: &SparseVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| format!("({c})·{}", self.label(i)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Dense Gram block restricted to a set of global indices of a single weight.
    pub fn gram_block(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), idx.len(), |r, c| {
            self.form(&SparseVector::basis(idx[r]), &SparseVector::basis(idx[c]))
        })
    }
}
