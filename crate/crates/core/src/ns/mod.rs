//! Neveu–Schwarz Verma modules, their contravariant forms, the discrete
//! series and the simple vacuum algebra `L(c, 0)`.

mod monomial;
mod series;
mod verma;
mod vosa;

pub use monomial::{verma_basis, NsMode, NsMonomial};
pub use series::{
    discrete_series, discrete_series_charge, unitarity_check, DiscreteSeriesPoint, UnitarityReport,
};
pub use verma::{
    normal_order_apply, shapovalov_gram, simple_quotient_dims, NsParams, NsVector, NsVerma,
};
pub use vosa::build_ns_vosa;
