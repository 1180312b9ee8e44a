//! Comparison decision trees and comparison communication protocols.
//!
//! Every query in these models is a threshold test `θ_x(y) = [y ≥ x]` on an
//! `n`-bit input read as an MSB-first integer, so lexicographic order on
//! `{0,1}^n` is plain integer order. The crate computes the two measures that
//! pin down the complexity of a function in each model:
//!
//! * [`boolfn::mu`], the number of maximal constant runs of a truth table,
//!   whose `⌈log₂⌉` is the optimal comparison decision tree depth;
//! * [`rectpart::chi_geom`], the minimum number of monochromatic contiguous
//!   rectangles tiling a two-party function matrix, whose logarithm is the
//!   comparison communication cost up to a constant factor.
//!
//! Builders produce witnesses ([`cdt::build_tree`], [`rectpart::chi_geom_tiling`],
//! [`ccp::protocol_from_tiling`]) and exhaustive checkers verify them. Brute-force
//! oracles ([`cdt::min_depth_oracle`], [`rectpart::min_partition_oracle`],
//! [`boolfn::enumerate_histogram`]) are kept independent of the fast paths.

pub mod boolfn;
pub mod ccp;
pub mod cdt;
mod error;
pub mod fmatrix;
pub mod rectpart;
pub mod sample;
mod search;

pub use boolfn::{BlockDecomposition, TruthTable};
pub use ccp::{Party, Protocol, ProtocolNode, Transcript, VertexRectangles};
pub use cdt::{ComparisonTree, Query, TreeNode};
pub use error::{Error, Result};
pub use fmatrix::{FunctionMatrix, Generator, GeoRect, Tile, Tiling, TilingFailure};
pub use rectpart::{CellRegion, ChordGraph, RectPartition};

/// `⌈log₂ v⌉`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(v: u64) -> u32 {
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros()
    }
}
