use crate::error::{Error, Result};
use crate::kernel::{HermitianMatrix, Matrix, PsdVerdict, Scalar};

/// A positive definite integral lattice given by the Gram matrix of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let d = gram.len();
        if d == 0 {
            return Err(Error::InvalidInput("lattice rank must be positive".into()));
        }
        for (r, row) in gram.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidInput(format!(
                    "gram row {r} has length {}",
                    row.len()
                )));
            }
        }
        for r in 0..d {
            for c in r + 1..d {
                if gram[r][c] != gram[c][r] {
                    return Err(Error::InvalidInput(format!(
                        "gram is not symmetric at entry ({r}, {c})"
                    )));
                }
            }
        }
        let m = Matrix::from_fn(d, d, |r, c| Scalar::int(gram[r][c]));
        if HermitianMatrix::new(m)?.psd_verdict() != PsdVerdict::PositiveDefinite {
            return Err(Error::InvalidInput("gram is not positive definite".into()));
        }
        Ok(IntegralLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                acc += x * y * self.gram[i][j];
            }
        }
        acc
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.inner(a, a)
    }

    pub fn gram_matrix(&self) -> Matrix {
        let d = self.rank();
        Matrix::from_fn(d, d, |r, c| Scalar::int(self.gram[r][c]))
    }
}

/// Bimultiplicative sign `ε(α, β) = (-1)^{Σ a_i b_j e_ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    exponents: Vec<Vec<u8>>,
}

impl Cocycle {
    pub fn exponent(&self, i: usize, j: usize) -> u8 {
        self.exponents[i][j]
    }

    pub fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0i64;
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if self.exponents[i][j] == 1 {
                    e += x * y;
                }
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Checks `ε(α,β) ε(β,α) = (-1)^{(α,β) + (α,α)(β,β)}` on the box `|a_i|, |b_i| ≤ radius`.
    pub fn satisfies_commutator(&self, lattice: &IntegralLattice, radius: i64) -> bool {
        let pts = grid(lattice.rank(), radius);
        pts.iter().all(|a| {
            pts.iter().all(|b| {
                let lhs = self.eps(a, b) * self.eps(b, a);
                let e = lattice.inner(a, b) + lattice.norm(a) * lattice.norm(b);
                lhs == if e.rem_euclid(2) == 0 { 1 } else { -1 }
            })
        })
    }
}

fn grid(d: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Ordered-basis cocycle: on the diagonal `((α_i,α_i) + (α_i,α_i)²)/2`, below
/// it `(α_i,α_j) + (α_i,α_i)(α_j,α_j)`, above it zero (all mod 2).
pub fn synthesize_cocycle(lattice: &IntegralLattice) -> Cocycle {
    let g = lattice.gram();
    let d = lattice.rank();
    let mut exponents = vec![vec![0u8; d]; d];
    for i in 0..d {
        let n = g[i][i];
        exponents[i][i] = ((n + n * n) / 2).rem_euclid(2) as u8;
        for j in 0..i {
            exponents[i][j] = (g[i][j] + g[i][i] * g[j][j]).rem_euclid(2) as u8;
        }
    }
    Cocycle { exponents }
}

/// `(-1)^{((α,α) + (α,α)²)/2}`.
pub fn e_alpha_sign(lattice: &IntegralLattice, a: &[i64]) -> i64 {
    let n = lattice.norm(a);
    if ((n + n * n) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grams() {
        assert!(IntegralLattice::new(vec![vec![2, 1], vec![0, 2]]).is_err());
        assert!(IntegralLattice::new(vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(IntegralLattice::new(vec![]).is_err());
    }

    #[test]
    fn rank_one_signs() {
        let a1 = IntegralLattice::new(vec![vec![2]]).unwrap();
        let e = synthesize_cocycle(&a1);
        assert_eq!(e.eps(&[1], &[1]), -1);
        assert_eq!(e.eps(&[1], &[-1]), -1);
        assert_eq!(e.eps(&[0], &[3]), 1);
        let z = IntegralLattice::new(vec![vec![1]]).unwrap();
        let e = synthesize_cocycle(&z);
        assert_eq!(e.eps(&[1], &[-1]) * e.eps(&[-1], &[1]), 1);
        assert_eq!(e_alpha_sign(&z, &[1]), -1);
        assert_eq!(e_alpha_sign(&a1, &[1]), -1);
        assert_eq!(e_alpha_sign(&a1, &[0]), 1);
    }

    #[test]
    fn commutator_and_pairing_condition() {
        for g in [
            vec![vec![2]],
            vec![vec![1]],
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![2, -1], vec![-1, 2]],
            vec![vec![3, 1], vec![1, 2]],
        ] {
            let l = IntegralLattice::new(g).unwrap();
            let e = synthesize_cocycle(&l);
            assert!(e.satisfies_commutator(&l, 2));
            for a in grid(l.rank(), 2) {
                let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                assert_eq!(e.eps(&a, &neg), e_alpha_sign(&l, &a));
                assert_eq!(e.eps(&vec![0; l.rank()], &a), 1);
            }
        }
    }
}
