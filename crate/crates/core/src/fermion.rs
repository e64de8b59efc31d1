//! Free fermions: the Fock module of the Heisenberg superalgebra built on an
//! `n`-dimensional space with a symmetric form.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{GradedSpace, HermitianMatrix, Matrix, Rational, Scalar, SparseVector, Weight};
use crate::vosa::{tabulate_modes, Construction, Generator, TruncatedVosa, VosaParts};

/// The space `h` of fermion directions with its symmetric form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermionSpace {
    n: usize,
    form: Matrix,
}

impl FermionSpace {
    pub fn new(form: Matrix) -> Result<Self> {
        let n = form.rows();
        if n == 0 || form.cols() != n {
            return Err(Error::InvalidInput(
                "fermion form must be a nonempty square matrix".into(),
            ));
        }
        for r in 0..n {
            for c in 0..n {
                if !form.get(r, c).is_real() {
                    return Err(Error::InvalidInput(format!(
                        "form entry ({r}, {c}) is not real"
                    )));
                }
                if form.get(r, c) != form.get(c, r) {
                    return Err(Error::InvalidInput(format!(
                        "form is not symmetric at ({r}, {c})"
                    )));
                }
            }
        }
        if form.rank() != n {
            return Err(Error::InvalidInput("fermion form is degenerate".into()));
        }
        Ok(FermionSpace { n, form })
    }

    /// `n` directions with the identity form.
    pub fn orthonormal(n: usize) -> Result<Self> {
        FermionSpace::new(Matrix::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }
}

/// A product of distinct creation modes `u^i(-r)`, stored as `(i, 2r)` pairs in
/// canonical order: decreasing mode, then increasing direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FermionMonomial {
    factors: Vec<(usize, i64)>,
}

fn factor_key(f: &(usize, i64)) -> (i64, usize) {
    (-f.1, f.0)
}

impl FermionMonomial {
    pub fn vacuum() -> Self {
        FermionMonomial::default()
    }

    /// Builds a monomial from `(direction, 2r)` pairs, rejecting repeats and even modes.
    pub fn new(mut factors: Vec<(usize, i64)>) -> Result<Self> {
        if factors.iter().any(|f| f.1 <= 0 || f.1 % 2 == 0) {
            return Err(Error::InvalidWeight(
                "fermion modes are positive half-odd integers".into(),
            ));
        }
        factors.sort_by_key(factor_key);
        if factors.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("repeated fermion factor".into()));
        }
        Ok(FermionMonomial { factors })
    }

    pub fn factors(&self) -> &[(usize, i64)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn weight(&self) -> Weight {
        Weight::from_twice(self.factors.iter().map(|f| f.1).sum())
    }

    fn without(&self, k: usize) -> FermionMonomial {
        let mut factors = self.factors.clone();
        factors.remove(k);
        FermionMonomial { factors }
    }
}

impl fmt::Display for FermionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in &self.factors {
            write!(f, "u{}(-{}/2)", i + 1, r)?;
        }
        write!(f, "1")
    }
}

/// All monomials of weight `w`, ordered by factor count and then lexicographically.
pub fn fermion_basis(space: &FermionSpace, w: Weight) -> Vec<FermionMonomial> {
    let mut out = Vec::new();
    if w < Weight::ZERO {
        return out;
    }
    let target = w.twice();
    let mut slots: Vec<(usize, i64)> = Vec::new();
    let mut r = 1;
    while r <= target {
        for i in 0..space.n {
            slots.push((i, r));
        }
        r += 2;
    }
    slots.sort_by_key(factor_key);
    fn go(
        slots: &[(usize, i64)],
        from: usize,
        left: i64,
        cur: &mut Vec<(usize, i64)>,
        out: &mut Vec<FermionMonomial>,
    ) {
        if left == 0 {
            out.push(FermionMonomial {
                factors: cur.clone(),
            });
            return;
        }
        for k in from..slots.len() {
            if slots[k].1 > left {
                continue;
            }
            cur.push(slots[k]);
            go(slots, k + 1, left - slots[k].1, cur, out);
            cur.pop();
        }
    }
    go(&slots, 0, target, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            a.factors
                .iter()
                .map(factor_key)
                .cmp(b.factors.iter().map(factor_key))
        })
    });
    out
}

/// `u^i(s)` applied to a monomial, with `s` given doubled and of either sign.
pub fn fermion_apply_monomial(
    space: &FermionSpace,
    i: usize,
    twice_mode: i64,
    m: &FermionMonomial,
) -> Vec<(FermionMonomial, Scalar)> {
    if twice_mode < 0 {
        let f = (i, -twice_mode);
        match m.factors.binary_search_by_key(&factor_key(&f), factor_key) {
            Ok(_) => Vec::new(),
            Err(pos) => {
                let mut factors = m.factors.clone();
                factors.insert(pos, f);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                vec![(FermionMonomial { factors }, Scalar::int(sign))]
            }
        }
    } else {
        let mut out = Vec::new();
        for (k, (j, r)) in m.factors.iter().enumerate() {
            if *r != twice_mode {
                continue;
            }
            let c = space.form.get(i, *j);
            if c.is_zero() {
                continue;
            }
            let c = if k % 2 == 0 { c.clone() } else { -c };
            out.push((m.without(k), c));
        }
        out
    }
}

/// `u^i(s)` applied to a linear combination of monomials.
pub fn fermion_apply(
    space: &FermionSpace,
    i: usize,
    twice_mode: i64,
    v: &[(FermionMonomial, Scalar)],
) -> Vec<(FermionMonomial, Scalar)> {
    let mut acc: Vec<(FermionMonomial, Scalar)> = Vec::new();
    for (m, c) in v {
        for (t, d) in fermion_apply_monomial(space, i, twice_mode, m) {
            let x = c * &d;
            match acc.iter_mut().find(|(s, _)| *s == t) {
                Some(e) => e.1 += &x,
                None => acc.push((t, x)),
            }
        }
    }
    acc.retain(|(_, c)| !c.is_zero());
    acc.sort_by(|a, b| a.0.cmp(&b.0));
    acc
}

/// The truncated free-fermion VOSA with generators `u^i(-1/2)1`.
pub fn build_fermion_vosa(space: &FermionSpace, cutoff: Weight) -> Result<TruncatedVosa> {
    if cutoff < Weight::int(2) {
        return Err(Error::CutoffExceeded {
            needed: "2".into(),
            cutoff: cutoff.to_string(),
        });
    }
    let bases: Vec<Vec<FermionMonomial>> = cutoff
        .steps_up_to()
        .map(|w| fermion_basis(space, w))
        .collect();
    let pieces = bases
        .iter()
        .map(|b| {
            b.iter()
                .map(|m| (m.to_string(), m.len() % 2 == 1))
                .collect()
        })
        .collect();
    let graded = GradedSpace::new(cutoff, pieces)?;
    let all: Vec<FermionMonomial> = bases.iter().flatten().cloned().collect();
    let index: HashMap<FermionMonomial, usize> = all
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect();
    let to_sparse = |v: Vec<(FermionMonomial, Scalar)>| -> SparseVector {
        v.into_iter().map(|(m, c)| (index[&m], c)).collect()
    };

    let mut generators = Vec::with_capacity(space.n);
    for i in 0..space.n {
        let state = FermionMonomial {
            factors: vec![(i, 1)],
        };
        let modes = tabulate_modes(&graded, Weight::HALF, |n, j| {
            Ok(to_sparse(fermion_apply_monomial(
                space,
                i,
                2 * n + 1,
                &all[j],
            )))
        })?;
        generators.push(Generator {
            name: format!("u{}", i + 1),
            index: index[&state],
            weight: Weight::HALF,
            odd: true,
            modes,
        });
    }

    let constructions = all
        .iter()
        .map(|m| match m.factors.as_slice() {
            [] => Construction::Idempotent(0),
            [(i, 1)] => Construction::Generator(*i),
            [(i, r), ..] => Construction::Mode {
                gen: *i,
                mode: (-r - 1) / 2,
                coeff: Scalar::one(),
                source: SparseVector::basis(index[&m.without(0)]),
            },
        })
        .collect();

    let involution = all
        .iter()
        .enumerate()
        .map(|(k, m)| (k, Scalar::int(if m.len() % 2 == 0 { 1 } else { -1 })))
        .collect();

    let gram = fermion_gram(space, &bases)?;

    let inv = space
        .form
        .inverse()
        .ok_or_else(|| Error::InvalidInput("fermion form is degenerate".into()))?;
    let mut conformal = SparseVector::new();
    let vac = FermionMonomial::vacuum();
    for i in 0..space.n {
        for j in 0..space.n {
            let c = inv.get(i, j);
            if c.is_zero() {
                continue;
            }
            let half = c.scale(&Rational::new(1.into(), 2.into()));
            let inner = fermion_apply_monomial(space, j, -1, &vac);
            let outer = fermion_apply(space, i, -3, &inner);
            conformal.add_scaled(&to_sparse(outer), &half);
        }
    }

    TruncatedVosa::from_parts(VosaParts {
        name: format!("fermion(n={})", space.n),
        space: graded,
        central_charge: Scalar::frac(space.n as i64, 2),
        vacuum: SparseVector::basis(0),
        conformal,
        generators,
        constructions,
        component: vec![0; all.len()],
        involution,
        gram,
    })
}

/// Hermitian Gram per weight: `(u^a(-r)R, m) = (R, u^a(r) m)`.
fn fermion_gram(
    space: &FermionSpace,
    bases: &[Vec<FermionMonomial>],
) -> Result<Vec<HermitianMatrix>> {
    let mut local: HashMap<&FermionMonomial, usize> = HashMap::new();
    for b in bases {
        for (k, m) in b.iter().enumerate() {
            local.insert(m, k);
        }
    }
    let mut grams: Vec<HermitianMatrix> = Vec::with_capacity(bases.len());
    for (w, basis) in bases.iter().enumerate() {
        if w == 0 {
            grams.push(HermitianMatrix::identity(basis.len()));
            continue;
        }
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (r, mi) in basis.iter().enumerate() {
            let (a, s) = mi.factors[0];
            let rest = mi.without(0);
            let lower_w = w - s as usize;
            let lower = &grams[lower_w];
            let lr = local[&rest];
            for (c, mj) in basis.iter().enumerate() {
                let mut acc = Scalar::zero();
                for (t, coef) in fermion_apply_monomial(space, a, s, mj) {
                    acc += &(lower.get(lr, local[&t]) * &coef.conj());
                }
                m.set(r, c, acc);
            }
        }
        grams.push(HermitianMatrix::new(m)?);
    }
    Ok(grams)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> FermionSpace {
        FermionSpace::orthonormal(1).unwrap()
    }

    fn mono(f: &[(usize, i64)]) -> FermionMonomial {
        FermionMonomial::new(f.to_vec()).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = fermion_basis(&alpha(), Weight::int(4));
        assert_eq!(b, vec![mono(&[(0, 7), (0, 1)]), mono(&[(0, 5), (0, 3)])]);
        assert!(fermion_basis(&alpha(), Weight::ONE).is_empty());
        let two = FermionSpace::orthonormal(2).unwrap();
        assert_eq!(
            fermion_basis(&two, Weight::ONE),
            vec![mono(&[(0, 1), (1, 1)])]
        );
    }

    #[test]
    fn apply_examples() {
        let s = alpha();
        let a = mono(&[(0, 1)]);
        assert_eq!(
            fermion_apply_monomial(&s, 0, 1, &a),
            vec![(FermionMonomial::vacuum(), Scalar::one())]
        );
        assert!(fermion_apply_monomial(&s, 0, -1, &a).is_empty());
        let b = mono(&[(0, 3), (0, 1)]);
        assert_eq!(
            fermion_apply_monomial(&s, 0, 1, &b),
            vec![(mono(&[(0, 3)]), Scalar::int(-1))]
        );
    }

    #[test]
    fn rejects_repeats() {
        assert!(FermionMonomial::new(vec![(0, 1), (0, 1)]).is_err());
        assert!(FermionMonomial::new(vec![(0, 2)]).is_err());
    }

    #[test]
    fn gram_is_identity_for_orthonormal_form() {
        let v = build_fermion_vosa(&alpha(), Weight::int(3)).unwrap();
        for g in v.grams() {
            assert_eq!(*g, HermitianMatrix::identity(g.dim()));
        }
    }

    #[test]
    fn scaled_form_gives_product_gram() {
        let s = FermionSpace::new(Matrix::diagonal(&[Scalar::int(2)])).unwrap();
        let v = build_fermion_vosa(&s, Weight::int(2)).unwrap();
        let g = v.gram(Weight::int(2)).unwrap();
        assert_eq!(*g.get(0, 0), Scalar::int(4));
        assert_eq!(*v.central_charge(), Scalar::frac(1, 2));
    }

    #[test]
    fn virasoro_central_term() {
        let v = build_fermion_vosa(&alpha(), Weight::int(3)).unwrap();
        let x = v.virasoro(-2, v.vacuum()).unwrap();
        let y = v.virasoro(2, &x).unwrap();
        assert_eq!(y, v.vacuum().scaled(&Scalar::frac(1, 4)));
    }

    #[test]
    fn generator_is_invariant() {
        let v = build_fermion_vosa(&alpha(), Weight::int(4)).unwrap();
        let r = crate::vosa::invariance_check(&v, 0, Weight::from_twice(7)).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(crate::vosa::verify_axioms(&v).unwrap().passed());
    }
}
