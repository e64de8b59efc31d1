use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("weight {0} is not a half-integer")]
    InvalidWeight(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("computation needs weight {needed} but the cutoff is {cutoff}")]
    CutoffExceeded { needed: String, cutoff: String },
    #[error("bilinear form is not symmetric at weight {weight}, entry ({row}, {col})")]
    SymmetryFailure {
        weight: String,
        row: usize,
        col: usize,
    },
    #[error("central charges differ: {0} vs {1}")]
    CentralChargeMismatch(String, String),
    #[error("weight-zero algebra is not split semisimple: {0}")]
    NonSemisimpleWeightZero(String),
    #[error("weight-one basis is not orthonormalizable over the rationals")]
    BasisNotOrthonormalizable,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
