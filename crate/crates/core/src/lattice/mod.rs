//! Lattice vertex operator superalgebras `V_L` for positive definite integral lattices.

mod boson;
mod cocycle;
mod vosa;

pub use boson::{boson_basis, heisenberg_apply, BosonMonomial, BosonVector};
pub use cocycle::{e_alpha_sign, synthesize_cocycle, Cocycle, IntegralLattice};
pub use vosa::{build_lattice_vosa, lattice_points, LatticeState, LatticeVosa};
