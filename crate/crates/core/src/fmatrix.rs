//! Two-party function matrices, contiguous rectangles, and monochromatic tilings.
//!
//! Entry `(x, y)` of a [`FunctionMatrix`] is `f(x, y)`: rows belong to Alice,
//! columns to Bob, both indexed by MSB-first integer encoding.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Largest per-party arity for a function matrix (side 256).
pub const MAX_MATRIX_ARITY: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl FunctionMatrix {
    /// A general `rows × cols` bit matrix. Only `2^n × 2^n` squares are
    /// function matrices in the communication model; other shapes are
    /// accepted for rectangle partitioning.
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::Length {
                expected: rows * cols,
                actual: bits.len(),
            });
        }
        Ok(Self { rows, cols, bits })
    }

    pub fn from_fn(n: u32, f: impl Fn(u32, u32) -> bool) -> Result<Self> {
        if !(1..=MAX_MATRIX_ARITY).contains(&n) {
            return Err(Error::Arity {
                n,
                max: MAX_MATRIX_ARITY,
            });
        }
        let side = 1u32 << n;
        let bits = (0..side)
            .flat_map(|x| (0..side).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Ok(Self {
            rows: side as usize,
            cols: side as usize,
            bits,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `Some(n)` when the matrix is a `2^n × 2^n` square with `1 ≤ n ≤ 8`.
    pub fn arity(&self) -> Option<u32> {
        if self.rows != self.cols || !self.rows.is_power_of_two() {
            return None;
        }
        let n = self.rows.trailing_zeros();
        (1..=MAX_MATRIX_ARITY).contains(&n).then_some(n)
    }

    pub(crate) fn require_arity(&self) -> Result<u32> {
        self.arity().ok_or(Error::NotSquare {
            rows: self.rows,
            cols: self.cols,
        })
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.cols + y]
    }

    pub fn row(&self, x: usize) -> &[bool] {
        &self.bits[x * self.cols..(x + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let bits = (0..self.cols)
            .flat_map(|y| (0..self.rows).map(move |x| (x, y)))
            .map(|(x, y)| self.get(x, y))
            .collect();
        Self {
            rows: self.cols,
            cols: self.rows,
            bits,
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn full_rect(&self) -> Option<GeoRect> {
        (self.rows > 0 && self.cols > 0).then(|| GeoRect::new(0, self.rows - 1, 0, self.cols - 1))
    }
}

/// Named two-party functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `popcount(x) ⊕ popcount(y)` mod 2.
    Parity,
    /// `(x + y) mod 2`.
    Checkerboard,
    /// `[y ≥ x]`.
    GreaterEqual,
    /// `[x = y]`.
    Equality,
    Constant0,
    Constant1,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Parity,
        Generator::Checkerboard,
        Generator::GreaterEqual,
        Generator::Equality,
        Generator::Constant0,
        Generator::Constant1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Parity => "parity",
            Generator::Checkerboard => "checkerboard",
            Generator::GreaterEqual => "greater_equal",
            Generator::Equality => "equality",
            Generator::Constant0 => "constant0",
            Generator::Constant1 => "constant1",
        }
    }

    pub fn eval(self, x: u32, y: u32) -> bool {
        match self {
            Generator::Parity => (x.count_ones() + y.count_ones()) % 2 == 1,
            Generator::Checkerboard => (x + y) % 2 == 1,
            Generator::GreaterEqual => y >= x,
            Generator::Equality => x == y,
            Generator::Constant0 => false,
            Generator::Constant1 => true,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_owned()))
    }
}

pub fn generate(generator: Generator, n: u32) -> Result<FunctionMatrix> {
    FunctionMatrix::from_fn(n, |x, y| generator.eval(x, y))
}

/// An inclusive interval product `[x_lo, x_hi] × [y_lo, y_hi]` of row and
/// column indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeoRect {
    pub x_lo: usize,
    pub x_hi: usize,
    pub y_lo: usize,
    pub y_hi: usize,
}

impl GeoRect {
    pub fn new(x_lo: usize, x_hi: usize, y_lo: usize, y_hi: usize) -> Self {
        debug_assert!(x_lo <= x_hi && y_lo <= y_hi);
        Self {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        }
    }

    /// `None` when either interval is inverted.
    pub fn try_new(x_lo: usize, x_hi: usize, y_lo: usize, y_hi: usize) -> Option<Self> {
        (x_lo <= x_hi && y_lo <= y_hi).then(|| Self::new(x_lo, x_hi, y_lo, y_hi))
    }

    pub fn cell(x: usize, y: usize) -> Self {
        Self::new(x, x, y, y)
    }

    pub fn height(&self) -> usize {
        self.x_hi - self.x_lo + 1
    }

    pub fn width(&self) -> usize {
        self.y_hi - self.y_lo + 1
    }

    pub fn area(&self) -> usize {
        self.height() * self.width()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        (self.x_lo..=self.x_hi).contains(&x) && (self.y_lo..=self.y_hi).contains(&y)
    }

    pub fn fits(&self, rows: usize, cols: usize) -> bool {
        self.x_hi < rows && self.y_hi < cols
    }

    pub fn intersects(&self, other: &GeoRect) -> bool {
        self.x_lo <= other.x_hi
            && other.x_lo <= self.x_hi
            && self.y_lo <= other.y_hi
            && other.y_lo <= self.y_hi
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.x_lo..=self.x_hi).flat_map(move |x| (self.y_lo..=self.y_hi).map(move |y| (x, y)))
    }
}

impl fmt::Display for GeoRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]x[{}, {}]",
            self.x_lo, self.x_hi, self.y_lo, self.y_hi
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub rect: GeoRect,
    pub color: bool,
}

/// A list of colored rectangles intended to partition a matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tiling {
    pub tiles: Vec<Tile>,
}

impl Tiling {
    pub fn new(mut tiles: Vec<Tile>) -> Self {
        tiles.sort();
        Self { tiles }
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Sorted distinct `{x_lo, x_hi + 1}` over all tiles: the horizontal lines
    /// obtained by extending every tile edge across the matrix.
    pub fn row_lines(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .tiles
            .iter()
            .flat_map(|t| [t.rect.x_lo, t.rect.x_hi + 1])
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn col_lines(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .tiles
            .iter()
            .flat_map(|t| [t.rect.y_lo, t.rect.y_hi + 1])
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The first property a tiling violates, with a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TilingFailure {
    OutOfBounds { tile: usize },
    Overlap { x: usize, y: usize },
    NotMonochromatic { tile: usize, x: usize, y: usize },
    WrongColor { tile: usize, x: usize, y: usize },
    Uncovered { x: usize, y: usize },
}

impl fmt::Display for TilingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TilingFailure::OutOfBounds { tile } => write!(f, "tile {tile} is out of bounds"),
            TilingFailure::Overlap { x, y } => write!(f, "cell ({x}, {y}) is covered twice"),
            TilingFailure::NotMonochromatic { tile, x, y } => {
                write!(f, "tile {tile} is not monochromatic (cell ({x}, {y}))")
            }
            TilingFailure::WrongColor { tile, x, y } => {
                write!(f, "tile {tile} has the wrong color (cell ({x}, {y}))")
            }
            TilingFailure::Uncovered { x, y } => write!(f, "cell ({x}, {y}) is not covered"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TilingCheck {
    pub failure: Option<TilingFailure>,
}

impl TilingCheck {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// The common value of `m` on `r`, or `None` if both colors occur.
pub fn is_monochromatic(m: &FunctionMatrix, r: &GeoRect) -> Result<Option<bool>> {
    if !r.fits(m.rows, m.cols) {
        return Err(Error::OutOfBounds {
            rect: *r,
            rows: m.rows,
            cols: m.cols,
        });
    }
    let first = m.get(r.x_lo, r.y_lo);
    let uniform = (r.x_lo..=r.x_hi).all(|x| m.row(x)[r.y_lo..=r.y_hi].iter().all(|&b| b == first));
    Ok(uniform.then_some(first))
}

/// Checks, tile by tile, bounds, disjointness, and color; then coverage.
pub fn verify_tiling(m: &FunctionMatrix, t: &Tiling) -> TilingCheck {
    let fail = |failure| TilingCheck {
        failure: Some(failure),
    };
    let mut covered = vec![false; m.rows * m.cols];
    for (i, tile) in t.tiles.iter().enumerate() {
        let r = &tile.rect;
        if !r.fits(m.rows, m.cols) {
            return fail(TilingFailure::OutOfBounds { tile: i });
        }
        let first = m.get(r.x_lo, r.y_lo);
        for (x, y) in r.cells() {
            let cell = &mut covered[x * m.cols + y];
            if *cell {
                return fail(TilingFailure::Overlap { x, y });
            }
            *cell = true;
            if m.get(x, y) != first {
                return fail(TilingFailure::NotMonochromatic { tile: i, x, y });
            }
        }
        if first != tile.color {
            return fail(TilingFailure::WrongColor {
                tile: i,
                x: r.x_lo,
                y: r.y_lo,
            });
        }
    }
    match covered.iter().position(|&c| !c) {
        Some(i) => fail(TilingFailure::Uncovered {
            x: i / m.cols.max(1),
            y: i % m.cols.max(1),
        }),
        None => TilingCheck { failure: None },
    }
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Runs in `i128` while the intermediate minors fit and restarts with
/// arbitrary-precision integers otherwise.
pub fn rank(m: &FunctionMatrix) -> usize {
    let as_int = |b: bool| i128::from(b);
    let rows: Vec<Vec<i128>> = (0..m.rows)
        .map(|x| m.row(x).iter().copied().map(as_int).collect())
        .collect();
    if let Some(r) = bareiss_rank_i128(rows) {
        return r;
    }
    let rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|x| {
            m.row(x)
                .iter()
                .map(|&b| BigInt::from(u8::from(b)))
                .collect()
        })
        .collect();
    bareiss_rank_big(rows)
}

fn bareiss_rank_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c];
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let factor = row[c];
            for (v, &p) in row[c + 1..cols].iter_mut().zip(&pivot_row[c + 1..cols]) {
                *v = pivot.checked_mul(*v)?.checked_sub(factor.checked_mul(p)?)? / prev;
            }
            row[c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
