//! Comparison communication protocols.
//!
//! Alice holds row index `x`, Bob column index `y`; every internal vertex is
//! owned by one of them and asks a comparison query on that party's input.
//! The cost of a protocol is its depth.

use crate::cdt::Query;
use crate::fmatrix::{self, FunctionMatrix, GeoRect, Tile, Tiling, MAX_MATRIX_ARITY};
use crate::search::balanced_search;
use crate::{Error, Result};

/// Largest arity [`verify_protocol`] checks exhaustively (`2^12` input pairs).
pub const VERIFY_ARITY_CAP: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn name(self) -> &'static str {
        match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProtocolNode {
    Leaf(bool),
    Query {
        owner: Party,
        query: Query,
        zero: Box<ProtocolNode>,
        one: Box<ProtocolNode>,
    },
}

impl ProtocolNode {
    pub fn query(owner: Party, query: Query, zero: ProtocolNode, one: ProtocolNode) -> Self {
        ProtocolNode::Query {
            owner,
            query,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    fn depth(&self) -> u32 {
        match self {
            ProtocolNode::Leaf(_) => 0,
            ProtocolNode::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    fn size(&self) -> usize {
        match self {
            ProtocolNode::Leaf(_) => 1,
            ProtocolNode::Query { zero, one, .. } => 1 + zero.size() + one.size(),
        }
    }

    fn leaves(&self) -> usize {
        match self {
            ProtocolNode::Leaf(_) => 1,
            ProtocolNode::Query { zero, one, .. } => zero.leaves() + one.leaves(),
        }
    }

    fn check(&self, n: u32) -> Result<()> {
        match self {
            ProtocolNode::Leaf(_) => Ok(()),
            ProtocolNode::Query {
                query, zero, one, ..
            } => {
                query.check(n)?;
                zero.check(n)?;
                one.check(n)
            }
        }
    }
}

/// A comparison protocol for functions `{0,1}^n × {0,1}^n → {0,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Protocol {
    n: u32,
    root: ProtocolNode,
}

impl Protocol {
    pub fn new(n: u32, root: ProtocolNode) -> Result<Self> {
        if !(1..=MAX_MATRIX_ARITY).contains(&n) {
            return Err(Error::Arity {
                n,
                max: MAX_MATRIX_ARITY,
            });
        }
        root.check(n)?;
        Ok(Self { n, root })
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn root(&self) -> &ProtocolNode {
        &self.root
    }

    pub fn into_root(self) -> ProtocolNode {
        self.root
    }

    /// Depth of the tree: the worst-case number of bits exchanged.
    pub fn cost(&self) -> u32 {
        self.root.depth()
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaves()
    }

    pub fn vertex_count(&self) -> usize {
        self.root.size()
    }

    /// Preorder ids of the vertices visited on input `(x, y)`.
    pub fn vertex_path(&self, x: u32, y: u32) -> Vec<usize> {
        let mut path = vec![0];
        let mut id = 0;
        let mut node = &self.root;
        while let ProtocolNode::Query {
            owner,
            query,
            zero,
            one,
        } = node
        {
            if query.answer(input_of(*owner, x, y)) {
                id += 1 + zero.size();
                node = one;
            } else {
                id += 1;
                node = zero;
            }
            path.push(id);
        }
        path
    }
}

#[inline]
fn input_of(owner: Party, x: u32, y: u32) -> u32 {
    match owner {
        Party::Alice => x,
        Party::Bob => y,
    }
}

/// The branch bits of one run and the output it ends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub bits: Vec<bool>,
    pub output: bool,
}

pub fn simulate(p: &Protocol, x: u32, y: u32) -> Transcript {
    let mut bits = Vec::new();
    let mut node = &p.root;
    loop {
        match node {
            ProtocolNode::Leaf(output) => {
                return Transcript {
                    bits,
                    output: *output,
                }
            }
            ProtocolNode::Query {
                owner,
                query,
                zero,
                one,
            } => {
                let bit = query.answer(input_of(*owner, x, y));
                bits.push(bit);
                node = if bit { one } else { zero };
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProtocolVerification {
    pub correct: bool,
    pub cost: u32,
    /// First input pair (row-major) with a wrong output.
    pub witness: Option<(u32, u32)>,
}

/// Simulates `p` on all `2^{2n}` input pairs.
pub fn verify_protocol(p: &Protocol, m: &FunctionMatrix) -> Result<ProtocolVerification> {
    verify_protocol_with_cap(p, m, VERIFY_ARITY_CAP)
}

pub fn verify_protocol_with_cap(
    p: &Protocol,
    m: &FunctionMatrix,
    cap: u32,
) -> Result<ProtocolVerification> {
    let n = m.require_arity()?;
    if p.n != n {
        return Err(Error::ArityMismatch {
            artifact: p.n,
            function: n,
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "protocol verification arity",
            value: n as usize,
            cap: cap as usize,
        });
    }
    let side = 1u32 << n;
    let witness = (0..side)
        .flat_map(|x| (0..side).map(move |y| (x, y)))
        .find(|&(x, y)| simulate(p, x, y).output != m.get(x as usize, y as usize));
    Ok(ProtocolVerification {
        correct: witness.is_none(),
        cost: p.cost(),
        witness,
    })
}

/// Alice announces `x` with `n` halving queries, then Bob announces `y`; the
/// leaf holds `f(x, y)`. Cost exactly `2n`.
pub fn trivial_protocol(m: &FunctionMatrix) -> Result<Protocol> {
    let n = m.require_arity()?;
    let cuts: Vec<u32> = (1..1u32 << n).collect();
    let root = balanced_search(
        &cuts,
        &mut |x| {
            balanced_search(
                &cuts,
                &mut |y| ProtocolNode::Leaf(m.get(x, y)),
                &mut |t, zero, one| ProtocolNode::query(Party::Bob, Query::Threshold(t), zero, one),
            )
        },
        &mut |t, zero, one| ProtocolNode::query(Party::Alice, Query::Threshold(t), zero, one),
    );
    Ok(Protocol { n, root })
}

/// Compiles a monochromatic tiling into a protocol.
///
/// Extending every tile edge across the matrix yields `R` row strips and `C`
/// column strips; each strip cell lies inside a single tile. Alice locates her
/// row strip by balanced search over the strip boundaries, Bob his column
/// strip, and the leaf carries the color of the tile there. Cost is at most
/// `⌈log₂ R⌉ + ⌈log₂ C⌉ ≤ 2⌈log₂(2·|T|)⌉`.
pub fn protocol_from_tiling(m: &FunctionMatrix, t: &Tiling) -> Result<Protocol> {
    let n = m.require_arity()?;
    if let Some(failure) = fmatrix::verify_tiling(m, t).failure {
        return Err(Error::InvalidTiling(failure));
    }
    let row_lines = t.row_lines();
    let col_lines = t.col_lines();
    let inner = |lines: &[usize]| -> Vec<u32> {
        lines[1..lines.len() - 1]
            .iter()
            .map(|&l| l as u32)
            .collect()
    };
    let (row_cuts, col_cuts) = (inner(&row_lines), inner(&col_lines));
    // The tiling is valid, so the tile color at a strip corner is f there.
    let root = balanced_search(
        &row_cuts,
        &mut |i| {
            balanced_search(
                &col_cuts,
                &mut |j| ProtocolNode::Leaf(m.get(row_lines[i], col_lines[j])),
                &mut |t, zero, one| ProtocolNode::query(Party::Bob, Query::Threshold(t), zero, one),
            )
        },
        &mut |t, zero, one| ProtocolNode::query(Party::Alice, Query::Threshold(t), zero, one),
    );
    Ok(Protocol { n, root })
}

/// The input rectangle reaching each vertex, indexed by preorder id; `None`
/// marks a vertex no input reaches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRectangles {
    pub rects: Vec<Option<GeoRect>>,
}

impl VertexRectangles {
    pub fn get(&self, id: usize) -> Option<GeoRect> {
        self.rects[id]
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

type Interval = Option<(usize, usize)>;

/// Splits an inclusive interval at threshold `t` into `[lo, t−1]` and `[t, hi]`.
fn split_interval(lo: usize, hi: usize, t: usize) -> (Interval, Interval) {
    let below = (t > lo).then(|| (lo, hi.min(t - 1)));
    let above = (t <= hi).then(|| (lo.max(t), hi));
    (below, above)
}

fn child_rects(owner: Party, query: Query, r: GeoRect) -> (Option<GeoRect>, Option<GeoRect>) {
    let t = match query {
        Query::ConstZero => return (Some(r), None),
        Query::Threshold(t) => t as usize,
    };
    match owner {
        Party::Alice => {
            let (b, a) = split_interval(r.x_lo, r.x_hi, t);
            (
                b.map(|(lo, hi)| GeoRect {
                    x_lo: lo,
                    x_hi: hi,
                    ..r
                }),
                a.map(|(lo, hi)| GeoRect {
                    x_lo: lo,
                    x_hi: hi,
                    ..r
                }),
            )
        }
        Party::Bob => {
            let (b, a) = split_interval(r.y_lo, r.y_hi, t);
            (
                b.map(|(lo, hi)| GeoRect {
                    y_lo: lo,
                    y_hi: hi,
                    ..r
                }),
                a.map(|(lo, hi)| GeoRect {
                    y_lo: lo,
                    y_hi: hi,
                    ..r
                }),
            )
        }
    }
}

fn propagate<'a>(
    node: &'a ProtocolNode,
    rect: Option<GeoRect>,
    out: &mut Vec<(Option<GeoRect>, &'a ProtocolNode)>,
) {
    out.push((rect, node));
    if let ProtocolNode::Query {
        owner,
        query,
        zero,
        one,
    } = node
    {
        let (r0, r1) = match rect {
            Some(r) => child_rects(*owner, *query, r),
            None => (None, None),
        };
        propagate(zero, r0, out);
        propagate(one, r1, out);
    }
}

/// Top-down interval propagation: the root sees the full square and an
/// owner's threshold query splits that owner's interval.
pub fn vertex_rectangles(p: &Protocol) -> VertexRectangles {
    let side = 1usize << p.n;
    let mut out = Vec::new();
    propagate(
        &p.root,
        Some(GeoRect::new(0, side - 1, 0, side - 1)),
        &mut out,
    );
    VertexRectangles {
        rects: out.into_iter().map(|(r, _)| r).collect(),
    }
}

/// The monochromatic tiling formed by the reachable leaf rectangles of a
/// correct protocol.
pub fn leaf_tiling(p: &Protocol, m: &FunctionMatrix) -> Result<Tiling> {
    let check = verify_protocol_with_cap(p, m, MAX_MATRIX_ARITY)?;
    if let Some((x, y)) = check.witness {
        return Err(Error::IncorrectProtocol {
            x,
            y,
            got: simulate(p, x, y).output,
            expected: m.get(x as usize, y as usize),
        });
    }
    let side = 1usize << p.n;
    let mut out = Vec::new();
    propagate(
        &p.root,
        Some(GeoRect::new(0, side - 1, 0, side - 1)),
        &mut out,
    );
    let tiles = out
        .into_iter()
        .filter_map(|(rect, node)| match (rect, node) {
            (Some(rect), ProtocolNode::Leaf(color)) => Some(Tile {
                rect,
                color: *color,
            }),
            _ => None,
        })
        .collect();
    Ok(Tiling::new(tiles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ceil_log2;
    use crate::fmatrix::{generate, verify_tiling, Generator};
    use crate::rectpart::{chi_geom, chi_geom_tiling};

    fn leaf(b: bool) -> ProtocolNode {
        ProtocolNode::Leaf(b)
    }

    #[test]
    fn simulate_examples() {
        let p = Protocol::new(2, leaf(true)).unwrap();
        let t = simulate(&p, 1, 2);
        assert_eq!((t.bits.len(), t.output), (0, true));

        for n in 1..=4 {
            let all_ones = (1u32 << n) - 1;
            let root = ProtocolNode::query(
                Party::Alice,
                Query::Threshold(all_ones),
                leaf(false),
                leaf(true),
            );
            let p = Protocol::new(n, root).unwrap();
            assert_eq!(simulate(&p, 0, all_ones).bits, vec![false]);
            assert_eq!(simulate(&p, all_ones, 0).bits, vec![true]);
        }

        let root = ProtocolNode::query(Party::Bob, Query::ConstZero, leaf(false), leaf(true));
        let p = Protocol::new(3, root).unwrap();
        assert!((0..8).all(|y| simulate(&p, 5, y).bits == vec![false]));
    }

    #[test]
    fn protocol_rejects_wide_thresholds() {
        let root = ProtocolNode::query(Party::Bob, Query::Threshold(8), leaf(false), leaf(true));
        assert_eq!(
            Protocol::new(3, root),
            Err(Error::Threshold { value: 8, n: 3 })
        );
    }

    #[test]
    fn verify_examples() {
        let parity = generate(Generator::Parity, 2).unwrap();
        let lone = Protocol::new(2, leaf(false)).unwrap();
        let r = verify_protocol(&lone, &parity).unwrap();
        assert_eq!((r.correct, r.witness), (false, Some((0, 1))));

        let wrong_arity = Protocol::new(3, leaf(false)).unwrap();
        assert!(matches!(
            verify_protocol(&wrong_arity, &parity),
            Err(Error::ArityMismatch { .. })
        ));
        let big = generate(Generator::Constant0, 7).unwrap();
        let p = Protocol::new(7, leaf(false)).unwrap();
        assert!(matches!(
            verify_protocol(&p, &big),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn trivial_protocol_examples() {
        let z = generate(Generator::Constant0, 1).unwrap();
        let p = trivial_protocol(&z).unwrap();
        assert_eq!(p.cost(), 2);
        assert_eq!(p.leaf_count(), 4);
        assert!(verify_protocol(&p, &z).unwrap().correct);
        for g in Generator::ALL {
            for n in 1..=4 {
                let m = generate(g, n).unwrap();
                let p = trivial_protocol(&m).unwrap();
                let r = verify_protocol(&p, &m).unwrap();
                assert!(r.correct, "{g} n={n}");
                assert_eq!(r.cost, 2 * n);
            }
        }
    }

    #[test]
    fn compiled_protocol_examples() {
        let one = generate(Generator::Constant1, 3).unwrap();
        let p = protocol_from_tiling(&one, &chi_geom_tiling(&one).unwrap()).unwrap();
        assert_eq!(p.root(), &leaf(true));
        assert_eq!(p.cost(), 0);

        let parity = generate(Generator::Parity, 1).unwrap();
        let p = protocol_from_tiling(&parity, &chi_geom_tiling(&parity).unwrap()).unwrap();
        assert!(verify_protocol(&p, &parity).unwrap().correct);
        assert!(p.cost() <= 2);

        let eq = generate(Generator::Equality, 2).unwrap();
        let t = chi_geom_tiling(&eq).unwrap();
        let p = protocol_from_tiling(&eq, &t).unwrap();
        let strips = |lines: Vec<usize>| lines.len() as u64 - 1;
        let bound = ceil_log2(strips(t.row_lines())) + ceil_log2(strips(t.col_lines()));
        assert!(p.cost() <= bound);
        assert!(verify_protocol(&p, &eq).unwrap().correct);
    }

    #[test]
    fn compiler_rejects_bad_tilings() {
        let m = generate(Generator::Parity, 1).unwrap();
        let bad = Tiling::new(vec![Tile {
            rect: GeoRect::new(0, 1, 0, 1),
            color: false,
        }]);
        assert!(matches!(
            protocol_from_tiling(&m, &bad),
            Err(Error::InvalidTiling(_))
        ));
    }

    #[test]
    fn vertex_rectangle_examples() {
        let p = Protocol::new(2, leaf(false)).unwrap();
        assert_eq!(
            vertex_rectangles(&p).rects,
            vec![Some(GeoRect::new(0, 3, 0, 3))]
        );

        let root = ProtocolNode::query(Party::Alice, Query::Threshold(0), leaf(false), leaf(true));
        let p = Protocol::new(2, root).unwrap();
        assert_eq!(
            vertex_rectangles(&p).rects,
            vec![
                Some(GeoRect::new(0, 3, 0, 3)),
                None,
                Some(GeoRect::new(0, 3, 0, 3))
            ]
        );

        let root = ProtocolNode::query(
            Party::Bob,
            Query::Threshold(1),
            leaf(false),
            ProtocolNode::query(Party::Alice, Query::ConstZero, leaf(true), leaf(true)),
        );
        let p = Protocol::new(2, root).unwrap();
        assert_eq!(
            vertex_rectangles(&p).rects,
            vec![
                Some(GeoRect::new(0, 3, 0, 3)),
                Some(GeoRect::new(0, 3, 0, 0)),
                Some(GeoRect::new(0, 3, 1, 3)),
                Some(GeoRect::new(0, 3, 1, 3)),
                None,
            ]
        );
    }

    #[test]
    fn vertex_path_matches_preorder_ids() {
        let m = generate(Generator::GreaterEqual, 2).unwrap();
        let p = trivial_protocol(&m).unwrap();
        // Root, Alice ≥ 2 branch is the second subtree.
        let path = p.vertex_path(3, 0);
        assert_eq!(path.len(), 5);
        assert_eq!(path[0], 0);
        assert_eq!(path[1], 1 + 7 * 2 + 1);
        let rects = vertex_rectangles(&p);
        for id in path {
            assert!(rects.get(id).unwrap().contains(3, 0));
        }
    }

    #[test]
    fn leaf_tiling_examples() {
        let z = generate(Generator::Constant0, 2).unwrap();
        let t = leaf_tiling(&trivial_protocol(&z).unwrap(), &z).unwrap();
        assert!(t.tiles.iter().all(|tile| !tile.color));
        assert!(verify_tiling(&z, &t).is_valid());

        let parity = generate(Generator::Parity, 1).unwrap();
        let p = trivial_protocol(&parity).unwrap();
        let t = leaf_tiling(&p, &parity).unwrap();
        assert!(t.len() >= 4 && p.cost() >= 2);

        for g in Generator::ALL {
            let m = generate(g, 3).unwrap();
            let chi = chi_geom(&m).unwrap();
            let p = protocol_from_tiling(&m, &chi_geom_tiling(&m).unwrap()).unwrap();
            let t = leaf_tiling(&p, &m).unwrap();
            assert!(verify_tiling(&m, &t).is_valid());
            assert!(t.len() >= chi);
            assert!(t.len() <= 1 << p.cost());
        }

        let lone = Protocol::new(1, leaf(false)).unwrap();
        assert!(matches!(
            leaf_tiling(&lone, &parity),
            Err(Error::IncorrectProtocol { .. })
        ));
    }
}
