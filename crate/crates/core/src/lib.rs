//! Exact construction and verification of truncated unitary vertex operator
//! superalgebras: Neveu–Schwarz vacuum modules, free fermions and lattice
//! algebras, together with the structural operations built on top of them.

pub mod error;
pub mod fermion;
pub mod kernel;
pub mod lattice;
pub mod ns;
pub mod structure;
pub mod vosa;

pub use error::{Error, Result};
