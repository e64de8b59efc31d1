use super::weight::Weight;
use crate::error::{Error, Result};

/// One homogeneous piece of a graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub weight: Weight,
    pub labels: Vec<String>,
    pub odd: Vec<bool>,
    /// Global index of the first basis vector in this piece.
    pub start: usize,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.labels.len()
    }
}

/// A `½Z≥0`-graded space truncated at `cutoff`, with a global basis numbering
/// that runs through the pieces in increasing weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    cutoff: Weight,
    pieces: Vec<Piece>,
    weight_of: Vec<Weight>,
}

impl GradedSpace {
    /// `pieces[k]` holds the (label, odd) pairs at weight `k/2`.
    pub fn new(cutoff: Weight, pieces: Vec<Vec<(String, bool)>>) -> Result<Self> {
        if cutoff < Weight::ZERO {
            return Err(Error::InvalidInput("negative cutoff".into()));
        }
        let n = cutoff.twice() as usize + 1;
        if pieces.len() > n {
            return Err(Error::InvalidInput("piece above the cutoff".into()));
        }
        let mut out = Vec::with_capacity(n);
        let mut weight_of = Vec::new();
        let mut start = 0;
        let mut it = pieces.into_iter();
        for k in 0..n {
            let entries = it.next().unwrap_or_default();
            let weight = Weight::from_twice(k as i64);
            let (labels, odd): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
            weight_of.extend(std::iter::repeat(weight).take(labels.len()));
            let dim = labels.len();
            out.push(Piece {
                weight,
                labels,
                odd,
                start,
            });
            start += dim;
        }
        Ok(GradedSpace {
            cutoff,
            pieces: out,
            weight_of,
        })
    }

    pub fn cutoff(&self) -> Weight {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.weight_of.len()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece(&self, w: Weight) -> Option<&Piece> {
        if w < Weight::ZERO || w > self.cutoff {
            return None;
        }
        self.pieces.get(w.twice() as usize)
    }

    pub fn weight_of(&self, i: usize) -> Weight {
        self.weight_of[i]
    }

    pub fn is_odd(&self, i: usize) -> bool {
        let p = &self.pieces[self.weight_of[i].twice() as usize];
        p.odd[i - p.start]
    }

    pub fn label(&self, i: usize) -> &str {
        let p = &self.pieces[self.weight_of[i].twice() as usize];
        &p.labels[i - p.start]
    }

    /// Position of global index `i` inside its piece.
    pub fn local_index(&self, i: usize) -> usize {
        let p = &self.pieces[self.weight_of[i].twice() as usize];
        i - p.start
    }

    /// `(weight, dim)` for every weight up to the cutoff.
    pub fn graded_dims(&self) -> Vec<(Weight, usize)> {
        self.pieces.iter().map(|p| (p.weight, p.dim())).collect()
    }
}
