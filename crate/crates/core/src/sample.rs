//! Random instances for property tests, acceptance sweeps, and benchmarks.

use rand::Rng;

use crate::boolfn::TruthTable;
use crate::ccp::{Party, Protocol, ProtocolNode};
use crate::cdt::{ComparisonTree, Query, TreeNode};
use crate::fmatrix::{self, FunctionMatrix, GeoRect};
use crate::rectpart::CellRegion;

pub fn random_table<R: Rng + ?Sized>(n: u32, rng: &mut R) -> TruthTable {
    let values = (0..1usize << n).map(|_| rng.random()).collect();
    TruthTable::new(n, values).expect("arity in range")
}

/// Independent cells, each set with probability `density`.
pub fn random_matrix<R: Rng + ?Sized>(n: u32, density: f64, rng: &mut R) -> FunctionMatrix {
    let side = 1usize << n;
    let bits = (0..side * side).map(|_| rng.random_bool(density)).collect();
    FunctionMatrix::new(side, side, bits).expect("square shape")
}

/// XOR of `layers` random rectangles: matrices with large monochromatic
/// blocks, unlike independent noise.
pub fn random_block_matrix<R: Rng + ?Sized>(n: u32, layers: usize, rng: &mut R) -> FunctionMatrix {
    let side = 1usize << n;
    let mut bits = vec![false; side * side];
    for _ in 0..layers {
        let (a, b) = (rng.random_range(0..side), rng.random_range(0..side));
        let (c, d) = (rng.random_range(0..side), rng.random_range(0..side));
        let r = GeoRect::new(a.min(b), a.max(b), c.min(d), c.max(d));
        for (x, y) in r.cells() {
            bits[x * side + y] ^= true;
        }
    }
    FunctionMatrix::new(side, side, bits).expect("square shape")
}

pub fn random_region<R: Rng + ?Sized>(
    rows: usize,
    cols: usize,
    density: f64,
    rng: &mut R,
) -> CellRegion {
    let cells = (0..rows * cols).map(|_| rng.random_bool(density)).collect();
    CellRegion::new(rows, cols, cells).expect("shape")
}

fn random_query<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Query {
    if rng.random_bool(0.1) {
        Query::ConstZero
    } else {
        Query::Threshold(rng.random_range(0..1u32 << n))
    }
}

fn random_party<R: Rng + ?Sized>(rng: &mut R) -> Party {
    if rng.random() {
        Party::Alice
    } else {
        Party::Bob
    }
}

/// A random comparison tree of depth at most `max_depth`; not tied to any
/// function.
pub fn random_tree<R: Rng + ?Sized>(n: u32, max_depth: u32, rng: &mut R) -> ComparisonTree {
    fn node<R: Rng + ?Sized>(n: u32, budget: u32, rng: &mut R) -> TreeNode {
        if budget == 0 || rng.random_bool(0.3) {
            return TreeNode::Leaf(rng.random());
        }
        let q = random_query(n, rng);
        TreeNode::query(q, node(n, budget - 1, rng), node(n, budget - 1, rng))
    }
    ComparisonTree::new(n, node(n, max_depth, rng)).expect("thresholds drawn in range")
}

/// A random protocol of depth at most `max_depth`; not tied to any function.
pub fn random_protocol<R: Rng + ?Sized>(n: u32, max_depth: u32, rng: &mut R) -> Protocol {
    fn node<R: Rng + ?Sized>(n: u32, budget: u32, rng: &mut R) -> ProtocolNode {
        if budget == 0 || rng.random_bool(0.25) {
            return ProtocolNode::Leaf(rng.random());
        }
        let owner = random_party(rng);
        let q = random_query(n, rng);
        ProtocolNode::query(owner, q, node(n, budget - 1, rng), node(n, budget - 1, rng))
    }
    Protocol::new(n, node(n, max_depth, rng)).expect("thresholds drawn in range")
}

/// A random protocol that computes `m`: split the current input rectangle at
/// random until it is monochromatic, sometimes stalling with a query that
/// leaves the rectangle whole (at most `stalls` times on any path).
pub fn random_correct_protocol<R: Rng + ?Sized>(
    m: &FunctionMatrix,
    stalls: u32,
    rng: &mut R,
) -> Protocol {
    let n = m.arity().expect("function matrix");
    fn node<R: Rng + ?Sized>(
        m: &FunctionMatrix,
        n: u32,
        r: GeoRect,
        stalls: u32,
        rng: &mut R,
    ) -> ProtocolNode {
        if stalls > 0 && rng.random_bool(0.1) {
            let owner = random_party(rng);
            let side = 1u32 << n;
            let (lo, hi) = match owner {
                Party::Alice => (r.x_lo as u32, r.x_hi as u32),
                Party::Bob => (r.y_lo as u32, r.y_hi as u32),
            };
            // Queries whose answer is fixed on the whole rectangle.
            let stall = if rng.random() || hi + 1 >= side {
                (Query::Threshold(rng.random_range(0..=lo)), true)
            } else if rng.random() {
                (Query::Threshold(rng.random_range(hi + 1..side)), false)
            } else {
                (Query::ConstZero, false)
            };
            let live = node(m, n, r, stalls - 1, rng);
            let dead = ProtocolNode::Leaf(rng.random());
            return match stall {
                (q, true) => ProtocolNode::query(owner, q, dead, live),
                (q, false) => ProtocolNode::query(owner, q, live, dead),
            };
        }
        if let Some(color) = fmatrix::is_monochromatic(m, &r).expect("in bounds") {
            return ProtocolNode::Leaf(color);
        }
        let can_alice = r.x_hi > r.x_lo;
        let can_bob = r.y_hi > r.y_lo;
        let owner = match (can_alice, can_bob) {
            (true, true) => random_party(rng),
            (true, false) => Party::Alice,
            _ => Party::Bob,
        };
        let (below, above) = match owner {
            Party::Alice => {
                let t = rng.random_range(r.x_lo + 1..=r.x_hi);
                (GeoRect { x_hi: t - 1, ..r }, GeoRect { x_lo: t, ..r })
            }
            Party::Bob => {
                let t = rng.random_range(r.y_lo + 1..=r.y_hi);
                (GeoRect { y_hi: t - 1, ..r }, GeoRect { y_lo: t, ..r })
            }
        };
        let t = match owner {
            Party::Alice => above.x_lo,
            Party::Bob => above.y_lo,
        } as u32;
        ProtocolNode::query(
            owner,
            Query::Threshold(t),
            node(m, n, below, stalls, rng),
            node(m, n, above, stalls, rng),
        )
    }
    let full = m.full_rect().expect("non-empty");
    Protocol::new(n, node(m, n, full, stalls, rng)).expect("thresholds in range")
}

/// Wraps a random subtree of `p` in a query that always takes the branch
/// back to it; the function computed is unchanged and the cost may grow by one.
pub fn perturb_protocol<R: Rng + ?Sized>(p: &Protocol, rng: &mut R) -> Protocol {
    fn rebuild<R: Rng + ?Sized>(
        node: &ProtocolNode,
        target: usize,
        id: &mut usize,
        rng: &mut R,
    ) -> ProtocolNode {
        let here = *id;
        *id += 1;
        let copy = match node {
            ProtocolNode::Leaf(b) => ProtocolNode::Leaf(*b),
            ProtocolNode::Query {
                owner,
                query,
                zero,
                one,
            } => {
                let z = rebuild(zero, target, id, rng);
                let o = rebuild(one, target, id, rng);
                ProtocolNode::query(*owner, *query, z, o)
            }
        };
        if here != target {
            return copy;
        }
        let dead = ProtocolNode::Leaf(rng.random());
        let owner = random_party(rng);
        if rng.random() {
            ProtocolNode::query(owner, Query::ConstZero, copy, dead)
        } else {
            ProtocolNode::query(owner, Query::Threshold(0), dead, copy)
        }
    }
    let target = rng.random_range(0..p.vertex_count());
    let root = rebuild(p.root(), target, &mut 0, rng);
    Protocol::new(p.arity(), root).expect("same thresholds")
}
