use std::collections::BTreeMap;
use std::fmt;

use super::cocycle::IntegralLattice;
use crate::kernel::Scalar;

/// A product of Heisenberg creation modes `α_d(-n)`, kept as `(d, n)` pairs
/// sorted by decreasing mode and then increasing direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BosonMonomial {
    factors: Vec<(usize, i64)>,
}

fn key(f: &(usize, i64)) -> (i64, usize) {
    (-f.1, f.0)
}

impl BosonMonomial {
    pub fn new(mut factors: Vec<(usize, i64)>) -> Self {
        factors.sort_by_key(key);
        BosonMonomial { factors }
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

    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn without(&self, k: usize) -> BosonMonomial {
        let mut factors = self.factors.clone();
        factors.remove(k);
        BosonMonomial { factors }
    }

    pub fn with(&self, d: usize, n: i64) -> BosonMonomial {
        let mut factors = self.factors.clone();
        let pos = factors.partition_point(|f| key(f) <= key(&(d, n)));
        factors.insert(pos, (d, n));
        BosonMonomial { factors }
    }
}

impl fmt::Display for BosonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, n) in &self.factors {
            write!(f, "a{}(-{n})", d + 1)?;
        }
        Ok(())
    }
}

pub type BosonVector = BTreeMap<BosonMonomial, Scalar>;

pub fn add_term(v: &mut BosonVector, m: BosonMonomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(m.clone()).or_insert_with(Scalar::zero);
    *e += &c;
    if e.is_zero() {
        v.remove(&m);
    }
}

/// Monomials of boson weight `b` in `rank` directions, fewest factors first.
pub fn boson_basis(rank: usize, b: i64) -> Vec<BosonMonomial> {
    let mut slots = Vec::new();
    for n in (1..=b).rev() {
        for d in 0..rank {
            slots.push((d, n));
        }
    }
    fn go(
        slots: &[(usize, i64)],
        from: usize,
        left: i64,
        cur: &mut Vec<(usize, i64)>,
        out: &mut Vec<BosonMonomial>,
    ) {
        if left == 0 {
            out.push(BosonMonomial {
                factors: cur.clone(),
            });
            return;
        }
        for k in from..slots.len() {
            if slots[k].1 > left {
                continue;
            }
            cur.push(slots[k]);
            go(slots, k, left - slots[k].1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if b >= 0 {
        go(&slots, 0, b, &mut Vec::new(), &mut out);
    }
    out.sort_by(|x, y| {
        x.len()
            .cmp(&y.len())
            .then_with(|| x.factors.iter().map(key).cmp(y.factors.iter().map(key)))
    });
    out
}

/// `h(n)` for `h = Σ c_i α_i` acting on a boson monomial; the zero mode is
/// supplied separately since it depends on the lattice point.
pub fn heisenberg_apply(
    lattice: &IntegralLattice,
    h: &[Scalar],
    n: i64,
    m: &BosonMonomial,
) -> BosonVector {
    let mut out = BosonVector::new();
    if n < 0 {
        for (d, c) in h.iter().enumerate() {
            add_term(&mut out, m.with(d, -n), c.clone());
        }
    } else if n > 0 {
        for (k, (d, r)) in m.factors.iter().enumerate() {
            if *r != n {
                continue;
            }
            let mut acc = Scalar::zero();
            for (i, c) in h.iter().enumerate() {
                acc += &(c * &Scalar::int(lattice.gram()[i][*d]));
            }
            add_term(&mut out, m.without(k), &acc * &Scalar::int(n));
        }
    }
    out
}

pub fn heisenberg_apply_vec(
    lattice: &IntegralLattice,
    h: &[Scalar],
    n: i64,
    v: &BosonVector,
) -> BosonVector {
    let mut out = BosonVector::new();
    for (m, c) in v {
        for (t, d) in heisenberg_apply(lattice, h, n, m) {
            add_term(&mut out, t, c * &d);
        }
    }
    out
}
