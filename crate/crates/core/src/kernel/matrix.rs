//! Dense exact matrices, Hermitian matrices and congruence diagonalization.

use std::fmt;

use num_traits::Zero;

use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Simultaneous row and column permutation: entry (i, j) of the result is (p[i], p[j]).
    pub fn permute_symmetric(&self, p: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(p[i], p[j]).clone())
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            for c in 0..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(r, c) - &(&f * self.get(row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{x : self · x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[f] = Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -m.get(r, f);
                }
                x
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| aug.get(r, c + n).clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A square matrix with `m[i][j] = conj(m[j][i])`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::InvalidInput(format!(
                "matrix is {}x{}, not square",
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..m.rows() {
            for j in i..m.cols() {
                if *m.get(i, j) != m.get(j, i).conj() {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not Hermitian at entry ({i}, {j})"
                    )));
                }
            }
        }
        Ok(HermitianMatrix(m))
    }

    pub fn from_rationals(rows: &[Vec<Rational>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().cloned().map(Scalar::real).collect())
            .collect();
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix(Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `x† · self · y`
    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let my = self.0.mul_vec(y);
        let mut acc = Scalar::zero();
        for (a, b) in x.iter().zip(&my) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(&a.conj() * b);
            }
        }
        acc
    }

    pub fn congruence_diagonalize(&self) -> Congruence {
        congruence_diagonalize(self)
    }

    pub fn psd_verdict(&self) -> PsdVerdict {
        psd_verdict(self)
    }

    pub fn radical_basis(&self) -> Vec<Vec<Scalar>> {
        radical_basis(self)
    }

    pub fn rank(&self) -> usize {
        self.congruence_diagonalize()
            .pivots
            .iter()
            .filter(|p| !p.is_zero())
            .count()
    }
}

impl fmt::Display for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Result of a congruence diagonalization: `transform† · m · transform = diag(pivots)`.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub pivots: Vec<Rational>,
    pub transform: Matrix,
    /// First vector found with `v† m v < 0`, if any.
    pub negative_witness: Option<Vec<Scalar>>,
}

/// Symmetric elimination with diagonal pivoting and a hyperbolic step when
/// every remaining diagonal entry vanishes.
pub fn congruence_diagonalize(m: &HermitianMatrix) -> Congruence {
    let n = m.dim();
    let mut a = m.0.clone();
    let mut t = Matrix::identity(n);
    let mut pivots = Vec::with_capacity(n);
    let mut witness: Option<Vec<Scalar>> = None;

    for k in 0..n {
        let pivot_row = (k..n).find(|&p| !a.get(p, p).is_zero());
        let p = match pivot_row {
            Some(p) => p,
            None => {
                let off = (k..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_zero());
                let Some((i, j)) = off else {
                    pivots.extend((k..n).map(|_| Rational::zero()));
                    break;
                };
                // (t_i - c t_j) has norm -2|a_ij|², (t_i + c t_j) has norm 2|a_ij|².
                let c = a.get(i, j).conj();
                if witness.is_none() {
                    let ti = t.column(i);
                    let tj = t.column(j);
                    witness = Some(ti.iter().zip(&tj).map(|(x, y)| x - &(&c * y)).collect());
                }
                add_scaled_column(&mut a, i, j, &c);
                add_scaled_row(&mut a, i, j, &c.conj());
                add_scaled_column(&mut t, i, j, &c);
                i
            }
        };
        a.swap_rows(k, p);
        a.swap_cols(k, p);
        t.swap_cols(k, p);

        let d = a.get(k, k).clone();
        if d.real_sign() < 0 && witness.is_none() {
            witness = Some(t.column(k));
        }
        let d_inv = d.inv().expect("pivot is nonzero");
        for j in (k + 1)..n {
            let akj = a.get(k, j).clone();
            if akj.is_zero() {
                continue;
            }
            let c = &akj * &d_inv;
            add_scaled_column(&mut a, j, k, &-&c);
            add_scaled_row(&mut a, j, k, &-&c.conj());
            add_scaled_column(&mut t, j, k, &-&c);
        }
        pivots.push(d.re().clone());
    }

    Congruence {
        pivots,
        transform: t,
        negative_witness: witness,
    }
}

fn add_scaled_column(m: &mut Matrix, dst: usize, src: usize, c: &Scalar) {
    for r in 0..m.rows() {
        let s = m.get(r, src);
        if s.is_zero() {
            continue;
        }
        let v = m.get(r, dst) + &(c * s);
        m.set(r, dst, v);
    }
}

fn add_scaled_row(m: &mut Matrix, dst: usize, src: usize, c: &Scalar) {
    for col in 0..m.cols() {
        let s = m.get(src, col);
        if s.is_zero() {
            continue;
        }
        let v = m.get(dst, col) + &(c * s);
        m.set(dst, col, v);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    PositiveDefinite,
    PositiveSemidefinite { rank: usize },
    Indefinite { witness: Vec<Scalar>, value: Scalar },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        !matches!(self, PsdVerdict::Indefinite { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            PsdVerdict::PositiveDefinite => "pd",
            PsdVerdict::PositiveSemidefinite { .. } => "psd",
            PsdVerdict::Indefinite { .. } => "indefinite",
        }
    }
}

pub fn psd_verdict(m: &HermitianMatrix) -> PsdVerdict {
    let cong = congruence_diagonalize(m);
    if let Some(w) = cong.negative_witness {
        let value = m.pair(&w, &w);
        return PsdVerdict::Indefinite { witness: w, value };
    }
    let positive = cong.pivots.iter().filter(|p| !p.is_zero()).count();
    if positive == m.dim() {
        PsdVerdict::PositiveDefinite
    } else {
        PsdVerdict::PositiveSemidefinite { rank: positive }
    }
}

/// Exact basis of the kernel: transform columns whose pivot vanishes.
pub fn radical_basis(m: &HermitianMatrix) -> Vec<Vec<Scalar>> {
    let cong = congruence_diagonalize(m);
    cong.pivots
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_zero())
        .map(|(k, _)| cong.transform.column(k))
        .collect()
}
