use std::collections::{BTreeMap, HashMap};

use super::monomial::{verma_basis, NsMode, NsMonomial};
use crate::error::Result;
use crate::kernel::{HermitianMatrix, Matrix, Rational, Scalar, Weight};

/// Central charge and highest weight of a Verma module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsParams {
    pub c: Rational,
    pub h: Rational,
}

impl NsParams {
    pub fn new(c: Rational, h: Rational) -> Self {
        NsParams { c, h }
    }
}

/// Linear combination of PBW monomials.
pub type NsVector = BTreeMap<NsMonomial, Scalar>;

fn add_into(acc: &mut NsVector, m: NsMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(m.clone()).or_insert_with(Scalar::zero);
    *e += &c;
    if e.is_zero() {
        acc.remove(&m);
    }
}

fn add_scaled(acc: &mut NsVector, v: &NsVector, c: &Scalar) {
    for (m, x) in v {
        add_into(acc, m.clone(), c * x);
    }
}

/// `[x, y]` (anticommutator for two `G`s) as an optional mode plus a central scalar.
fn bracket(p: &NsParams, x: NsMode, y: NsMode) -> (Option<(NsMode, Scalar)>, Scalar) {
    let c = Scalar::real(p.c.clone());
    match (x, y) {
        (NsMode::L(m), NsMode::L(n)) => {
            let central = if m + n == 0 {
                c.scale(&Rational::new((m * m * m - m).into(), 12.into()))
            } else {
                Scalar::zero()
            };
            let term = (m != n).then(|| (NsMode::L(m + n), Scalar::int(m - n)));
            (term, central)
        }
        (NsMode::L(m), NsMode::G(r)) => {
            // (m/2 - r) G(m + r), r doubled
            let coef = Scalar::frac(m - r, 2);
            let term = (!coef.is_zero()).then(|| (NsMode::G(2 * m + r), coef));
            (term, Scalar::zero())
        }
        (NsMode::G(r), NsMode::L(m)) => {
            let coef = Scalar::frac(r - m, 2);
            let term = (!coef.is_zero()).then(|| (NsMode::G(2 * m + r), coef));
            (term, Scalar::zero())
        }
        (NsMode::G(r), NsMode::G(s)) => {
            let central = if r + s == 0 {
                // (c/3)(r² - 1/4) with r doubled
                c.scale(&Rational::new((r * r - 1).into(), 12.into()))
            } else {
                Scalar::zero()
            };
            (Some((NsMode::L((r + s) / 2), Scalar::int(2))), central)
        }
    }
}

/// A Verma module with memoized normal ordering and Gram matrices.
#[derive(Clone, Debug)]
pub struct NsVerma {
    params: NsParams,
    cache: HashMap<(NsMode, NsMonomial), NsVector>,
    grams: Vec<(Vec<NsMonomial>, HermitianMatrix)>,
}

impl NsVerma {
    pub fn new(params: NsParams) -> Self {
        NsVerma {
            params,
            cache: HashMap::new(),
            grams: Vec::new(),
        }
    }

    pub fn params(&self) -> &NsParams {
        &self.params
    }

    /// `x · m v` expanded in the PBW basis.
    pub fn apply(&mut self, x: NsMode, m: &NsMonomial) -> NsVector {
        let key = (x, m.clone());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let out = self.compute(x, m);
        self.cache.insert(key, out.clone());
        out
    }

    fn compute(&mut self, x: NsMode, m: &NsMonomial) -> NsVector {
        let mut out = NsVector::new();
        if x == NsMode::L(0) {
            let w = Scalar::real(&self.params.h + m.weight().to_rational());
            add_into(&mut out, m.clone(), w);
            return out;
        }
        if let Some(p) = m.try_prepend(x) {
            add_into(&mut out, p, Scalar::one());
            return out;
        }
        let Some((f, rest)) = m.split_first() else {
            // positive mode on the highest-weight vector
            return out;
        };
        if let (NsMode::G(r), NsMode::G(s)) = (x, f) {
            if r == s && r < 0 {
                // G(r)² = L(2r)
                return self.apply(NsMode::L(r), &rest);
            }
        }
        // x f R = ± f (x R) + [x, f] R
        let sign = if x.is_odd() && f.is_odd() { -1 } else { 1 };
        let inner = self.apply(x, &rest);
        for (t, c) in &inner {
            let moved = self.apply(f, t);
            add_scaled(&mut out, &moved, &(c * &Scalar::int(sign)));
        }
        let (term, central) = bracket(&self.params, x, f);
        if let Some((y, c)) = term {
            let v = self.apply(y, &rest);
            add_scaled(&mut out, &v, &c);
        }
        add_into(&mut out, rest, central);
        out
    }

    /// Applies `word[0] word[1] … word[k-1]` to `v`, rightmost first.
    pub fn apply_word(&mut self, word: &[NsMode], v: &NsVector) -> NsVector {
        let mut cur = v.clone();
        for &x in word.iter().rev() {
            let mut next = NsVector::new();
            for (m, c) in &cur {
                let img = self.apply(x, m);
                add_scaled(&mut next, &img, c);
            }
            cur = next;
        }
        cur
    }

    /// Gram matrix of the contravariant form at relative weight `w`.
    pub fn gram(&mut self, w: Weight) -> (Vec<NsMonomial>, HermitianMatrix) {
        let k = w.twice().max(0) as usize;
        while self.grams.len() <= k {
            let next = Weight::from_twice(self.grams.len() as i64);
            let g = self.build_gram(next);
            self.grams.push(g);
        }
        self.grams[k].clone()
    }

    fn build_gram(&mut self, w: Weight) -> (Vec<NsMonomial>, HermitianMatrix) {
        let basis = verma_basis(w);
        if w == Weight::ZERO {
            return (basis, HermitianMatrix::identity(1));
        }
        let n = basis.len();
        let mut m = Matrix::zeros(n, n);
        for (i, mi) in basis.iter().enumerate() {
            let (x, rest) = mi.split_first().expect("positive weight monomial");
            let lower_w = w - x.adjoint().degree();
            let (lower_basis, lower) = self.grams[lower_w.twice() as usize].clone();
            let li = lower_basis
                .iter()
                .position(|b| *b == rest)
                .expect("rest is canonical");
            for (j, mj) in basis.iter().enumerate().skip(i) {
                let img = self.apply(x.adjoint(), mj);
                let mut acc = Scalar::zero();
                for (t, c) in &img {
                    let lj = lower_basis
                        .iter()
                        .position(|b| b == t)
                        .expect("image in basis");
                    acc += &(lower.get(li, lj) * &c.conj());
                }
                m.set(j, i, acc.conj());
                m.set(i, j, acc);
            }
        }
        (
            basis,
            HermitianMatrix::new(m).expect("contravariant form is Hermitian"),
        )
    }
}

/// Applies a word of modes to a single monomial.
pub fn normal_order_apply(p: &NsParams, word: &[NsMode], m: &NsMonomial) -> NsVector {
    let mut v = NsVector::new();
    v.insert(m.clone(), Scalar::one());
    NsVerma::new(p.clone()).apply_word(word, &v)
}

/// The contravariant Gram matrix at relative weight `w`, in [`verma_basis`] order.
pub fn shapovalov_gram(p: &NsParams, w: Weight) -> Result<HermitianMatrix> {
    if w < Weight::ZERO {
        return Err(crate::error::Error::InvalidWeight(w.to_string()));
    }
    Ok(NsVerma::new(p.clone()).gram(w).1)
}

/// `rank` of the Gram matrix at every weight up to `cutoff`.
pub fn simple_quotient_dims(p: &NsParams, cutoff: Weight) -> Vec<(Weight, usize)> {
    let mut v = NsVerma::new(p.clone());
    cutoff
        .steps_up_to()
        .map(|w| (w, v.gram(w).1.rank()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn params(c: (i64, i64), h: (i64, i64)) -> NsParams {
        NsParams::new(rat(c.0, c.1), rat(h.0, h.1))
    }

    fn hw_coeff(v: &NsVector) -> Scalar {
        v.get(&NsMonomial::highest_weight())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    #[test]
    fn lowering_then_raising() {
        let p = params((7, 10), (1, 10));
        let lm1 = NsMonomial::new(vec![1], vec![]).unwrap();
        let v = normal_order_apply(&p, &[NsMode::L(1)], &lm1);
        assert_eq!(hw_coeff(&v), Scalar::frac(1, 5));
        let gm1 = NsMonomial::new(vec![], vec![1]).unwrap();
        let v = normal_order_apply(&p, &[NsMode::G(1)], &gm1);
        assert_eq!(hw_coeff(&v), Scalar::frac(1, 5));
        let gm3 = NsMonomial::new(vec![], vec![3]).unwrap();
        let v = normal_order_apply(&p, &[NsMode::G(3)], &gm3);
        // 2h + 2c/3
        assert_eq!(hw_coeff(&v), Scalar::frac(2, 3));
    }

    #[test]
    fn zero_mode_and_annihilation() {
        let p = params((3, 2), (1, 3));
        let m = NsMonomial::new(vec![2], vec![1]).unwrap();
        let v = normal_order_apply(&p, &[NsMode::L(0)], &m);
        assert_eq!(v.get(&m), Some(&Scalar::frac(17, 6)));
        let hw = NsMonomial::highest_weight();
        assert!(normal_order_apply(&p, &[NsMode::L(2)], &hw).is_empty());
        assert!(normal_order_apply(&p, &[NsMode::G(1)], &hw).is_empty());
    }

    #[test]
    fn odd_squares_reduce() {
        let p = params((1, 1), (0, 1));
        let hw = NsMonomial::highest_weight();
        let v = normal_order_apply(&p, &[NsMode::G(-1), NsMode::G(-1)], &hw);
        let want: NsVector = [(NsMonomial::new(vec![1], vec![]).unwrap(), Scalar::one())].into();
        assert_eq!(v, want);
    }

    #[test]
    fn weight_three_halves_gram_formula() {
        let p = params((7, 10), (1, 10));
        let g = shapovalov_gram(&p, Weight::from_twice(3)).unwrap();
        let want = HermitianMatrix::from_rationals(&[
            vec![rat(2, 3), rat(2, 5)],
            vec![rat(2, 5), rat(6, 25)],
        ])
        .unwrap();
        assert_eq!(g, want);
    }

    #[test]
    fn vacuum_dims_at_seven_tenths() {
        let d = simple_quotient_dims(&params((7, 10), (0, 1)), Weight::int(2));
        let dims: Vec<usize> = d.iter().map(|x| x.1).collect();
        assert_eq!(dims, [1, 0, 0, 1, 1]);
        let d = simple_quotient_dims(&params((15, 2), (0, 1)), Weight::int(2));
        assert_eq!(d[4].1, 1);
    }
}
