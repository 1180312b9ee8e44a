use thiserror::Error;

use crate::fmatrix::{GeoRect, TilingFailure};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {n} outside supported range 1..={max}")]
    Arity { n: u32, max: u32 },

    #[error("expected {expected} values, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("block count {k} outside 1..={max}")]
    BlockCount { k: u64, max: u64 },

    #[error("arity mismatch: artifact has n={artifact}, function has n={function}")]
    ArityMismatch { artifact: u32, function: u32 },

    #[error("threshold {value} is not an {n}-bit input")]
    Threshold { value: u32, n: u32 },

    #[error("rectangle {rect} lies outside a {rows}x{cols} grid")]
    OutOfBounds {
        rect: GeoRect,
        rows: usize,
        cols: usize,
    },

    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),

    #[error("matrix is {rows}x{cols}, expected a 2^n x 2^n square")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid tiling: {0}")]
    InvalidTiling(TilingFailure),

    #[error("protocol outputs {got} at (x={x}, y={y}) but f(x, y) = {expected}")]
    IncorrectProtocol {
        x: u32,
        y: u32,
        got: bool,
        expected: bool,
    },

    /// A face left after cutting was not a rectangle. Never expected; this
    /// indicates a bug in the rectangulation.
    #[error(
        "rectangulation left a non-rectangular face with {cells} cells in bounding box {bbox}"
    )]
    NonRectangularFace { cells: usize, bbox: GeoRect },
}
