use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::Weight;

/// A Neveu–Schwarz mode; `G` carries its half-integer index doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NsMode {
    L(i64),
    G(i64),
}

impl NsMode {
    pub fn is_odd(self) -> bool {
        matches!(self, NsMode::G(_))
    }

    /// Amount by which the mode lowers the weight.
    pub fn degree(self) -> Weight {
        match self {
            NsMode::L(n) => Weight::int(n),
            NsMode::G(r) => Weight::from_twice(r),
        }
    }

    /// The formal adjoint `L(n)† = L(-n)`, `G(r)† = G(-r)`.
    pub fn adjoint(self) -> NsMode {
        match self {
            NsMode::L(n) => NsMode::L(-n),
            NsMode::G(r) => NsMode::G(-r),
        }
    }
}

impl fmt::Display for NsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NsMode::L(n) => write!(f, "L({n})"),
            NsMode::G(r) => write!(f, "G({}/2)", r),
        }
    }
}

/// `L(-l_1)…L(-l_a) G(-g_1)…G(-g_b) v` with `l` weakly and `g` strictly
/// decreasing; `g` entries are doubled half-odd integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NsMonomial {
    l: Vec<i64>,
    g: Vec<i64>,
}

impl NsMonomial {
    pub fn highest_weight() -> Self {
        NsMonomial::default()
    }

    pub fn new(l: Vec<i64>, g: Vec<i64>) -> Result<Self> {
        if l.iter().any(|&n| n <= 0) || l.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "L modes must be positive and weakly decreasing".into(),
            ));
        }
        if g.iter().any(|&r| r <= 0 || r % 2 == 0) || g.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput(
                "G modes must be positive half-odd integers, strictly decreasing".into(),
            ));
        }
        Ok(NsMonomial { l, g })
    }

    pub fn l_modes(&self) -> &[i64] {
        &self.l
    }

    pub fn g_modes(&self) -> &[i64] {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.l.len() + self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_odd(&self) -> bool {
        self.g.len() % 2 == 1
    }

    pub fn weight(&self) -> Weight {
        Weight::from_twice(2 * self.l.iter().sum::<i64>() + self.g.iter().sum::<i64>())
    }

    /// The leftmost factor as a (negative) mode, with the remaining monomial.
    pub fn split_first(&self) -> Option<(NsMode, NsMonomial)> {
        if let Some((&n, rest)) = self.l.split_first() {
            let m = NsMonomial {
                l: rest.to_vec(),
                g: self.g.clone(),
            };
            Some((NsMode::L(-n), m))
        } else {
            let (&r, rest) = self.g.split_first()?;
            Some((
                NsMode::G(-r),
                NsMonomial {
                    l: vec![],
                    g: rest.to_vec(),
                },
            ))
        }
    }

    /// Prepends a creation mode when doing so keeps the canonical order.
    pub(crate) fn try_prepend(&self, x: NsMode) -> Option<NsMonomial> {
        match x {
            NsMode::L(n) if n < 0 => {
                if self.l.first().map_or(true, |&f| -n >= f) {
                    let mut l = vec![-n];
                    l.extend_from_slice(&self.l);
                    return Some(NsMonomial {
                        l,
                        g: self.g.clone(),
                    });
                }
                None
            }
            NsMode::G(r) if r < 0 => {
                if self.l.is_empty() && self.g.first().map_or(true, |&f| -r > f) {
                    let mut g = vec![-r];
                    g.extend_from_slice(&self.g);
                    return Some(NsMonomial { l: vec![], g });
                }
                None
            }
            _ => None,
        }
    }

    /// Canonical basis order: fewer factors first, then fewer `G`s, then
    /// larger `L` list, then larger `G` list.
    pub fn basis_cmp(&self, o: &NsMonomial) -> Ordering {
        self.len()
            .cmp(&o.len())
            .then(self.g.len().cmp(&o.g.len()))
            .then_with(|| o.l.cmp(&self.l))
            .then_with(|| o.g.cmp(&self.g))
    }
}

impl fmt::Display for NsMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.l {
            write!(f, "L(-{n})")?;
        }
        for r in &self.g {
            write!(f, "G(-{r}/2)")?;
        }
        Ok(())
    }
}

fn partitions(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for k in (1..=max.min(n)).rev() {
        cur.push(k);
        partitions(n - k, k, cur, out);
        cur.pop();
    }
}

fn distinct_odd(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    let mut k = max.min(n);
    if k % 2 == 0 {
        k -= 1;
    }
    while k >= 1 {
        cur.push(k);
        distinct_odd(n - k, k - 2, cur, out);
        cur.pop();
        k -= 2;
    }
}

/// PBW monomials of relative weight `w`, in canonical basis order.
pub fn verma_basis(w: Weight) -> Vec<NsMonomial> {
    let mut out = Vec::new();
    if w < Weight::ZERO {
        return out;
    }
    let total = w.twice();
    let mut gsets = Vec::new();
    for gsum in 0..=total {
        if (total - gsum) % 2 != 0 {
            continue;
        }
        let mut sets = Vec::new();
        distinct_odd(gsum, gsum, &mut Vec::new(), &mut sets);
        for g in sets {
            gsets.push((g, (total - gsum) / 2));
        }
    }
    for (g, lsum) in gsets {
        let mut parts = Vec::new();
        partitions(lsum, lsum, &mut Vec::new(), &mut parts);
        for l in parts {
            out.push(NsMonomial { l, g: g.clone() });
        }
    }
    out.sort_by(NsMonomial::basis_cmp);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(w: Weight) -> Vec<String> {
        verma_basis(w).iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn small_bases() {
        assert_eq!(
            verma_basis(Weight::ZERO),
            vec![NsMonomial::highest_weight()]
        );
        assert_eq!(names(Weight::from_twice(3)), ["G(-3/2)", "L(-1)G(-1/2)"]);
        assert_eq!(
            names(Weight::int(2)),
            ["L(-2)", "L(-1)L(-1)", "G(-3/2)G(-1/2)"]
        );
    }

    #[test]
    fn sizes_match_generating_function() {
        // Π (1 + q^{k-1/2}) / (1 - q^k)
        let top = 12usize;
        let mut coeffs = vec![0i64; top + 1];
        coeffs[0] = 1;
        for k in 1..=top / 2 {
            for i in 2 * k..=top {
                coeffs[i] += coeffs[i - 2 * k];
            }
        }
        let mut r = 1;
        while r <= top {
            for i in (r..=top).rev() {
                coeffs[i] += coeffs[i - r];
            }
            r += 2;
        }
        for (t, &c) in coeffs.iter().enumerate() {
            let b = verma_basis(Weight::from_twice(t as i64));
            assert_eq!(b.len() as i64, c, "weight {t}/2");
            let mut d = b.clone();
            d.dedup();
            assert_eq!(d.len(), b.len());
            assert!(b.iter().all(|m| m.weight() == Weight::from_twice(t as i64)));
        }
    }
}
