use super::verma::{NsParams, NsVerma};
use crate::error::{Error, Result};
use crate::kernel::{rat, HermitianMatrix, PsdVerdict, Rational, Weight};

/// One unitary point of the discrete series, with every `(r, s)` that yields it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSeriesPoint {
    pub m: i64,
    pub r: i64,
    pub s: i64,
    pub c: Rational,
    pub h: Rational,
    pub labels: Vec<(i64, i64)>,
}

impl DiscreteSeriesPoint {
    pub fn params(&self) -> NsParams {
        NsParams::new(self.c.clone(), self.h.clone())
    }
}

/// `c_m = 3/2 (1 - 8 / ((m+2)(m+4)))`.
pub fn discrete_series_charge(m: i64) -> Rational {
    rat(3, 2) * (Rational::from_integer(1.into()) - rat(8, (m + 2) * (m + 4)))
}

/// All admissible `(r, s)` at level `m`, deduplicated by `h`.
pub fn discrete_series(m: i64) -> Result<Vec<DiscreteSeriesPoint>> {
    if m < 1 {
        return Err(Error::InvalidInput(
            "discrete series level must be positive".into(),
        ));
    }
    let c = discrete_series_charge(m);
    let den = 8 * (m + 2) * (m + 4);
    let mut out: Vec<DiscreteSeriesPoint> = Vec::new();
    for r in 1..=m + 1 {
        for s in 1..=r {
            if (r - s) % 2 != 0 {
                continue;
            }
            let t = (m + 4) * r - (m + 2) * s;
            let h = rat(t * t - 4, den);
            match out.iter_mut().find(|p| p.h == h) {
                Some(p) => p.labels.push((r, s)),
                None => out.push(DiscreteSeriesPoint {
                    m,
                    r,
                    s,
                    c: c.clone(),
                    h,
                    labels: vec![(r, s)],
                }),
            }
        }
    }
    Ok(out)
}

/// Per-weight Gram matrices and positivity verdicts.
#[derive(Clone, Debug)]
pub struct UnitarityReport {
    pub params: NsParams,
    pub weights: Vec<(Weight, HermitianMatrix, PsdVerdict)>,
}

impl UnitarityReport {
    /// True iff every weight is positive semidefinite.
    pub fn consistent_with_unitary(&self) -> bool {
        self.weights.iter().all(|(_, _, v)| v.is_psd())
    }

    pub fn first_indefinite(&self) -> Option<Weight> {
        self.weights
            .iter()
            .find(|(_, _, v)| !v.is_psd())
            .map(|(w, _, _)| *w)
    }
}

pub fn unitarity_check(p: &NsParams, cutoff: Weight) -> UnitarityReport {
    let mut verma = NsVerma::new(p.clone());
    let weights = cutoff
        .steps_up_to()
        .map(|w| {
            let g = verma.gram(w).1;
            let v = g.psd_verdict();
            (w, g, v)
        })
        .collect();
    UnitarityReport {
        params: p.clone(),
        weights,
    }
}
