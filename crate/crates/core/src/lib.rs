//! Exact computation of the largest edge-graph diameter `δ(d,k)` of lattice
//! polytopes in `[0,k]^d`, for `d = 3` and small `k`.

pub mod driver;
pub mod error;
pub mod geometry;
pub mod innerpoints;
pub mod minkowski;
pub mod polygons;
pub mod shelling;
pub mod symmetry;

pub use error::{Error, Result};
