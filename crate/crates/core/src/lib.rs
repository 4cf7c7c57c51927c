//! Exact computational toolkit for the opposition graph on `(n-1, n)`-flags
//! of `PG(2n, q)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf`]: arithmetic in `GF(q)` for prime powers `q <= 16`.
//! - [`linalg`]: matrices over `GF(q)` and canonical (RREF) subspaces.
//! - [`geometry`]: enumeration of subspaces and flags, opposition and duality.
//! - [`qcount`]: exact evaluation of the closed counting formulas.
//! - [`graph`]: the opposition graph with dense or streaming adjacency.
//! - [`coclique`]: constructions, verification, weights, colors and classification.
//! - [`search`]: exact and heuristic maximum-coclique search.

pub mod bitset;
pub mod cache;
pub mod coclique;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod graph;
pub mod linalg;
pub mod qcount;
pub mod search;

pub use error::{Error, Result};
pub use geometry::{Flag, FlagGeometry, ProjSpace};
pub use gf::FieldSpec;
pub use linalg::{MatGF, Subspace};
