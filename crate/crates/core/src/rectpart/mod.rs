//! Minimum partitions of rectilinear cell regions into rectangles, and the
//! geometric tiling number built on them.
//!
//! The fast path follows the classical chord construction: collect the
//! reflex vertices, join co-linear pairs by chords through the interior, cut
//! along a maximum set of pairwise non-crossing chords (found through a
//! bipartite matching), then resolve every remaining reflex vertex with one
//! axis-parallel ray. The faces that remain are rectangles, and their number
//! is minimum. [`min_partition_oracle`] recomputes the minimum by exhaustive
//! search for cross-checking.
//!
//! Lattice point `(row, col)` is the corner shared by cells `(row − 1, col − 1)`,
//! `(row − 1, col)`, `(row, col − 1)` and `(row, col)`.

mod matching;
mod oracle;

use std::collections::VecDeque;

use crate::fmatrix::{FunctionMatrix, GeoRect, Tile, Tiling};
use crate::{Error, Result};

pub use matching::{hopcroft_karp, max_independent_set, Matching};
pub use oracle::{min_partition_oracle, min_partition_oracle_with_cap, ORACLE_CELL_CAP};

/// A set of cells in a `rows × cols` grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellRegion {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl CellRegion {
    pub fn new(rows: usize, cols: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::Length {
                expected: rows * cols,
                actual: cells.len(),
            });
        }
        Ok(Self { rows, cols, cells })
    }

    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: vec![false; rows * cols],
        }
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            cells: vec![true; rows * cols],
        }
    }

    /// Region from a picture: one string per row, `#` or `1` marks a cell.
    pub fn from_rows(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.chars().count());
        let cells = rows
            .iter()
            .flat_map(|r| r.chars().map(|c| c == '#' || c == '1'))
            .collect();
        Self::new(rows.len(), cols, cells).expect("ragged picture")
    }

    /// The cells of `m` equal to `color`.
    pub fn from_color(m: &FunctionMatrix, color: bool) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            cells: m.bits().iter().map(|&b| b == color).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn width(&self) -> usize {
        self.cols
    }

    pub fn height(&self) -> usize {
        self.rows
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row < self.rows && col < self.cols && self.cells[row * self.cols + col]
    }

    /// Like [`contains`](Self::contains) but for possibly negative indices.
    #[inline]
    fn at(&self, row: isize, col: isize) -> bool {
        row >= 0 && col >= 0 && self.contains(row as usize, col as usize)
    }

    pub fn set(&mut self, row: usize, col: usize, inside: bool) {
        self.cells[row * self.cols + col] = inside;
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    pub fn iter_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| (i / self.cols, i % self.cols))
    }

    /// The four cells around a lattice point: `[nw, ne, sw, se]`.
    fn quadrants(&self, p: LatticePoint) -> [bool; 4] {
        let (r, c) = (p.row as isize, p.col as isize);
        [
            self.at(r - 1, c - 1),
            self.at(r - 1, c),
            self.at(r, c - 1),
            self.at(r, c),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub row: usize,
    pub col: usize,
}

impl LatticePoint {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// A concave corner of a region. Pinch points, where exactly two diagonally
/// opposite cells are inside, count twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReflexVertex {
    pub point: LatticePoint,
    pub multiplicity: u8,
}

/// 4-connected components, ordered by their first cell in row-major order.
/// Each component keeps the grid dimensions of its parent.
pub fn components(region: &CellRegion) -> Vec<CellRegion> {
    let (rows, cols) = (region.rows, region.cols);
    let mut label = vec![usize::MAX; rows * cols];
    let mut out = Vec::new();
    for start in 0..rows * cols {
        if !region.cells[start] || label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut comp = CellRegion::empty(rows, cols);
        let mut queue = VecDeque::from([start]);
        label[start] = id;
        while let Some(i) = queue.pop_front() {
            comp.cells[i] = true;
            let (r, c) = (i / cols, i % cols);
            let neighbours = [
                (r > 0).then(|| i - cols),
                (r + 1 < rows).then(|| i + cols),
                (c > 0).then(|| i - 1),
                (c + 1 < cols).then(|| i + 1),
            ];
            for j in neighbours.into_iter().flatten() {
                if region.cells[j] && label[j] == usize::MAX {
                    label[j] = id;
                    queue.push_back(j);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn reflex_vertices(region: &CellRegion) -> Vec<ReflexVertex> {
    let mut out = Vec::new();
    for row in 0..=region.rows {
        for col in 0..=region.cols {
            let point = LatticePoint::new(row, col);
            let q = region.quadrants(point);
            let inside = q.iter().filter(|&&b| b).count();
            let multiplicity = match inside {
                3 => 1,
                2 if q == [true, false, false, true] || q == [false, true, true, false] => 2,
                _ => continue,
            };
            out.push(ReflexVertex {
                point,
                multiplicity,
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// An axis-parallel segment through the interior of a region joining two
/// reflex vertices. A horizontal chord lies on row line `line` and spans
/// columns `lo..=hi`; a vertical one lies on column line `line`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub orientation: Orientation,
    pub line: usize,
    pub lo: usize,
    pub hi: usize,
}

impl Chord {
    pub fn endpoints(&self) -> [LatticePoint; 2] {
        match self.orientation {
            Orientation::Horizontal => [
                LatticePoint::new(self.line, self.lo),
                LatticePoint::new(self.line, self.hi),
            ],
            Orientation::Vertical => [
                LatticePoint::new(self.lo, self.line),
                LatticePoint::new(self.hi, self.line),
            ],
        }
    }

    /// Closed-segment intersection of a horizontal and a vertical chord;
    /// sharing an endpoint counts.
    pub fn crosses(&self, other: &Chord) -> bool {
        let (h, v) = match (self.orientation, other.orientation) {
            (Orientation::Horizontal, Orientation::Vertical) => (self, other),
            (Orientation::Vertical, Orientation::Horizontal) => (other, self),
            _ => return false,
        };
        (v.lo..=v.hi).contains(&h.line) && (h.lo..=h.hi).contains(&v.line)
    }
}

/// Chords of a region and the bipartite crossing relation between the
/// horizontal and vertical ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChordGraph {
    pub h_chords: Vec<Chord>,
    pub v_chords: Vec<Chord>,
    /// `(i, j)`: `h_chords[i]` crosses `v_chords[j]`.
    pub crossings: Vec<(usize, usize)>,
}

impl ChordGraph {
    pub fn from_chords(h_chords: Vec<Chord>, v_chords: Vec<Chord>) -> Self {
        let mut crossings = Vec::new();
        for (i, h) in h_chords.iter().enumerate() {
            for (j, v) in v_chords.iter().enumerate() {
                if h.crosses(v) {
                    crossings.push((i, j));
                }
            }
        }
        Self {
            h_chords,
            v_chords,
            crossings,
        }
    }
}

/// Cut state of the unit edges of a grid, plus interior tests.
struct Edges<'a> {
    region: &'a CellRegion,
    /// Horizontal edge on row line `r` spanning column `c`: `r * cols + c`.
    cut_h: Vec<bool>,
    /// Vertical edge on column line `c` spanning row `r`: `r * (cols + 1) + c`.
    cut_v: Vec<bool>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Dir {
    Left,
    Right,
    Up,
    Down,
}

#[derive(Clone, Copy)]
enum EdgeId {
    H(usize, usize),
    V(usize, usize),
}

impl<'a> Edges<'a> {
    fn new(region: &'a CellRegion) -> Self {
        Self {
            region,
            cut_h: vec![false; (region.rows + 1) * region.cols],
            cut_v: vec![false; region.rows * (region.cols + 1)],
        }
    }

    /// The unit edge leaving `p` in direction `d`, if it lies in the grid.
    fn edge(&self, p: LatticePoint, d: Dir) -> Option<EdgeId> {
        let (rows, cols) = (self.region.rows, self.region.cols);
        match d {
            Dir::Right => (p.col < cols).then_some(EdgeId::H(p.row, p.col)),
            Dir::Left => (p.col > 0).then(|| EdgeId::H(p.row, p.col - 1)),
            Dir::Down => (p.row < rows).then_some(EdgeId::V(p.row, p.col)),
            Dir::Up => (p.row > 0).then(|| EdgeId::V(p.row - 1, p.col)),
        }
    }

    /// Both cells on either side of the edge are inside the region.
    fn interior(&self, e: EdgeId) -> bool {
        let reg = self.region;
        match e {
            EdgeId::H(r, c) => r > 0 && reg.contains(r - 1, c) && reg.contains(r, c),
            EdgeId::V(r, c) => c > 0 && reg.contains(r, c - 1) && reg.contains(r, c),
        }
    }

    fn is_cut(&self, e: EdgeId) -> bool {
        match e {
            EdgeId::H(r, c) => self.cut_h[r * self.region.cols + c],
            EdgeId::V(r, c) => self.cut_v[r * (self.region.cols + 1) + c],
        }
    }

    fn cut(&mut self, e: EdgeId) {
        match e {
            EdgeId::H(r, c) => self.cut_h[r * self.region.cols + c] = true,
            EdgeId::V(r, c) => self.cut_v[r * (self.region.cols + 1) + c] = true,
        }
    }

    fn open(&self, p: LatticePoint, d: Dir) -> bool {
        self.edge(p, d).is_some_and(|e| self.interior(e))
    }

    fn touches_cut(&self, p: LatticePoint, dirs: &[Dir]) -> bool {
        dirs.iter()
            .filter_map(|&d| self.edge(p, d))
            .any(|e| self.is_cut(e))
    }

    /// Walks from `p` along `d` while the next edge is interior; returns the
    /// point where the walk stops.
    fn trace(&self, mut p: LatticePoint, d: Dir) -> LatticePoint {
        while self.open(p, d) {
            p = step(p, d);
        }
        p
    }

    /// Cuts from reflex vertex `p` along `d` until the ray meets the boundary
    /// or an existing cut.
    fn shoot(&mut self, mut p: LatticePoint, d: Dir) {
        let sideways: &[Dir] = match d {
            Dir::Left | Dir::Right => &[Dir::Up, Dir::Down],
            Dir::Up | Dir::Down => &[Dir::Left, Dir::Right],
        };
        while let Some(e) = self
            .edge(p, d)
            .filter(|&e| self.interior(e) && !self.is_cut(e))
        {
            self.cut(e);
            p = step(p, d);
            if self.touches_cut(p, sideways) {
                break;
            }
        }
    }

    fn cut_chord(&mut self, chord: &Chord) {
        for k in chord.lo..chord.hi {
            let e = match chord.orientation {
                Orientation::Horizontal => EdgeId::H(chord.line, k),
                Orientation::Vertical => EdgeId::V(k, chord.line),
            };
            self.cut(e);
        }
    }

    /// Faces of the region after cutting, as cell sets in row-major order of
    /// their first cell.
    fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let (rows, cols) = (self.region.rows, self.region.cols);
        let mut seen = vec![false; rows * cols];
        let mut faces = Vec::new();
        for (r0, c0) in self.region.iter_cells() {
            if seen[r0 * cols + c0] {
                continue;
            }
            seen[r0 * cols + c0] = true;
            let mut face = Vec::new();
            let mut queue = VecDeque::from([(r0, c0)]);
            while let Some((r, c)) = queue.pop_front() {
                face.push((r, c));
                // Neighbour cell and the edge separating it from (r, c).
                let steps = [
                    (r > 0).then(|| ((r - 1, c), EdgeId::H(r, c))),
                    (r + 1 < rows).then(|| ((r + 1, c), EdgeId::H(r + 1, c))),
                    (c > 0).then(|| ((r, c - 1), EdgeId::V(r, c))),
                    (c + 1 < cols).then(|| ((r, c + 1), EdgeId::V(r, c + 1))),
                ];
                for ((nr, nc), e) in steps.into_iter().flatten() {
                    if self.region.contains(nr, nc) && !seen[nr * cols + nc] && !self.is_cut(e) {
                        seen[nr * cols + nc] = true;
                        queue.push_back((nr, nc));
                    }
                }
            }
            faces.push(face);
        }
        faces
    }
}

fn step(p: LatticePoint, d: Dir) -> LatticePoint {
    match d {
        Dir::Left => LatticePoint::new(p.row, p.col - 1),
        Dir::Right => LatticePoint::new(p.row, p.col + 1),
        Dir::Up => LatticePoint::new(p.row - 1, p.col),
        Dir::Down => LatticePoint::new(p.row + 1, p.col),
    }
}

/// Every chord of the region. Each reflex vertex has exactly one interior
/// direction per axis; tracing right and down from every reflex vertex finds
/// each chord once.
pub fn chord_graph(region: &CellRegion) -> ChordGraph {
    let edges = Edges::new(region);
    let reflex: std::collections::HashSet<LatticePoint> = reflex_vertices(region)
        .into_iter()
        .filter(|v| v.multiplicity == 1)
        .map(|v| v.point)
        .collect();
    let mut sorted: Vec<LatticePoint> = reflex.iter().copied().collect();
    sorted.sort_unstable();
    let (mut h, mut v) = (Vec::new(), Vec::new());
    for &p in &sorted {
        if edges.open(p, Dir::Right) {
            let q = edges.trace(p, Dir::Right);
            if reflex.contains(&q) {
                h.push(Chord {
                    orientation: Orientation::Horizontal,
                    line: p.row,
                    lo: p.col,
                    hi: q.col,
                });
            }
        }
        if edges.open(p, Dir::Down) {
            let q = edges.trace(p, Dir::Down);
            if reflex.contains(&q) {
                v.push(Chord {
                    orientation: Orientation::Vertical,
                    line: p.col,
                    lo: p.row,
                    hi: q.row,
                });
            }
        }
    }
    ChordGraph::from_chords(h, v)
}

/// A largest set of pairwise non-crossing chords: `|H| + |V| − ν`, with `ν`
/// the maximum matching of the crossing graph (König).
pub fn max_independent_chords(g: &ChordGraph) -> Vec<Chord> {
    let mut adj = vec![Vec::new(); g.h_chords.len()];
    for &(i, j) in &g.crossings {
        adj[i].push(j);
    }
    let (keep_h, keep_v) = max_independent_set(&adj, g.v_chords.len());
    let h = g
        .h_chords
        .iter()
        .zip(keep_h)
        .filter(|(_, k)| *k)
        .map(|(c, _)| *c);
    let v = g
        .v_chords
        .iter()
        .zip(keep_v)
        .filter(|(_, k)| *k)
        .map(|(c, _)| *c);
    h.chain(v).collect()
}

/// Disjoint rectangles whose union is a region.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RectPartition {
    pub rects: Vec<GeoRect>,
}

impl RectPartition {
    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

/// Minimum-cardinality partition of `region` into rectangles.
///
/// Pinch points need no cut: all four unit edges around one lie on the
/// boundary, so no face ever has a concave corner there.
pub fn min_partition(region: &CellRegion) -> Result<RectPartition> {
    let mut edges = Edges::new(region);
    let graph = chord_graph(region);
    for chord in max_independent_chords(&graph) {
        edges.cut_chord(&chord);
    }
    for v in reflex_vertices(region) {
        if v.multiplicity != 1 {
            continue;
        }
        let p = v.point;
        let all = [Dir::Left, Dir::Right, Dir::Up, Dir::Down];
        if edges.touches_cut(p, &all) {
            // Endpoint of a chosen chord, or hit by an earlier ray.
            continue;
        }
        let d = if edges.open(p, Dir::Right) {
            Dir::Right
        } else {
            Dir::Left
        };
        edges.shoot(p, d);
    }
    let mut rects = Vec::new();
    for face in edges.faces() {
        let bbox = bounding_box(&face);
        if bbox.area() != face.len() {
            return Err(Error::NonRectangularFace {
                cells: face.len(),
                bbox,
            });
        }
        rects.push(bbox);
    }
    rects.sort_unstable();
    Ok(RectPartition { rects })
}

fn bounding_box(cells: &[(usize, usize)]) -> GeoRect {
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (usize::MAX, 0, usize::MAX, 0);
    for &(r, c) in cells {
        x_lo = x_lo.min(r);
        x_hi = x_hi.max(r);
        y_lo = y_lo.min(c);
        y_hi = y_hi.max(c);
    }
    GeoRect::new(x_lo, x_hi, y_lo, y_hi)
}

/// `χ^geom`: the minimum number of monochromatic contiguous rectangles tiling
/// `m`. Every monochromatic rectangle lies in one color class, so this is the
/// sum of the two per-color minimum partitions.
pub fn chi_geom(m: &FunctionMatrix) -> Result<usize> {
    Ok(chi_geom_tiling(m)?.len())
}

/// A minimum monochromatic tiling of `m`, tiles sorted.
pub fn chi_geom_tiling(m: &FunctionMatrix) -> Result<Tiling> {
    let mut tiles = Vec::new();
    for color in [false, true] {
        let part = min_partition(&CellRegion::from_color(m, color))?;
        tiles.extend(part.rects.into_iter().map(|rect| Tile { rect, color }));
    }
    Ok(Tiling::new(tiles))
}
