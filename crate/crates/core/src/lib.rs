//! Exact computations for the p2 crystiles `T(A, B)`.
//!
//! The tile is the attractor of `g(T) = T ∪ a(T) ∪ … ∪ a^{B-2}(T) ∪ c(T)` where
//! `g(x) = M x + ((B-1)/2, 0)` and `M = [[0, -B], [1, -A]]`. This crate computes
//! neighbor sets and neighbor graphs, decides disk-likeness two independent ways,
//! produces exact intersection witnesses, and rasterizes point clouds of the tile.
//!
//! Everything except the raster back end is exact: group elements carry integer
//! translations and all planar geometry uses arbitrary-precision rationals.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

mod error;
pub mod exact;
pub mod group;
pub mod neighbors;
pub mod raster;
pub mod topology;

pub use error::Error;
pub use exact::{BoundingBox, Budget, QMat2, QVec2, Rational, RationalAffineMap};
pub use group::{verify_complete_residue_system, DigitSet, P2Element, TileParams};
pub use neighbors::{Edge, LatticeNeighborSet, NeighborGraph};
pub use topology::{DiskVerdict, Reason, Verdict, WitnessPair};

pub type Result<T> = core::result::Result<T, Error>;
