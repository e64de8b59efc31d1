//! Sparse vectors over a global basis and sparse weight-shifting operators.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::scalar::Scalar;
use super::weight::Weight;

/// Sparse vector keyed by global basis index.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseVector(BTreeMap<usize, Scalar>);

impl SparseVector {
    pub fn new() -> Self {
        SparseVector(BTreeMap::new())
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::new();
        v.0.insert(i, Scalar::one());
        v
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Self::new();
        for (i, c) in pairs {
            v.add_term(i, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(i) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, &(c * x));
        }
    }

    pub fn add(&mut self, other: &SparseVector) {
        for (i, x) in other.iter() {
            self.add_term(i, x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVector {
        if c.is_zero() {
            return SparseVector::new();
        }
        SparseVector(self.0.iter().map(|(i, x)| (*i, c * x)).collect())
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn to_dense(&self, indices: &[usize]) -> Vec<Scalar> {
        indices.iter().map(|&i| self.get(i)).collect()
    }
}

impl FromIterator<(usize, Scalar)> for SparseVector {
    fn from_iter<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        SparseVector::from_pairs(iter)
    }
}

/// Weight-homogeneous sparse operator: every column maps a source basis vector
/// of weight `w` into weight `w + shift`. Sources without a column act as zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseOperator {
    pub shift: Weight,
    columns: BTreeMap<usize, SparseVector>,
}

impl SparseOperator {
    pub fn new(shift: Weight) -> Self {
        SparseOperator {
            shift,
            columns: BTreeMap::new(),
        }
    }

    pub fn set_column(&mut self, src: usize, image: SparseVector) {
        if image.is_zero() {
            self.columns.remove(&src);
        } else {
            self.columns.insert(src, image);
        }
    }

    pub fn column(&self, src: usize) -> Option<&SparseVector> {
        self.columns.get(&src)
    }

    pub fn columns(&self) -> impl Iterator<Item = (usize, &SparseVector)> {
        self.columns.iter().map(|(i, v)| (*i, v))
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (i, c) in v.iter() {
            if let Some(col) = self.columns.get(&i) {
                out.add_scaled(col, c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }
}
