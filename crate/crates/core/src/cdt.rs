//! Comparison decision trees.
//!
//! Internal nodes ask `θ_x(y) = [y ≥ x]` (or the constant-zero query) and
//! route to `one` when the answer is 1. [`build_tree`] runs a balanced search
//! over the block boundaries of a truth table and reaches the optimal depth
//! `⌈log₂ μ⌉`; [`min_depth_oracle`] recomputes the optimum by interval
//! dynamic programming without looking at blocks.

use std::fmt;

use crate::boolfn::{self, TruthTable};
use crate::search::balanced_search;
use crate::{Error, Result};

/// Largest arity accepted by [`min_depth_oracle`].
pub const ORACLE_ARITY_CAP: u32 = 6;

/// A comparison query on a single `n`-bit input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Query {
    /// `θ_x`: answers 1 iff the input is `≥ x`.
    Threshold(u32),
    /// Always answers 0.
    ConstZero,
}

impl Query {
    #[inline]
    pub fn answer(self, input: u32) -> bool {
        match self {
            Query::Threshold(x) => input >= x,
            Query::ConstZero => false,
        }
    }

    pub(crate) fn check(self, n: u32) -> Result<()> {
        match self {
            Query::Threshold(value) if u64::from(value) >= 1u64 << n => {
                Err(Error::Threshold { value, n })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Threshold(x) => write!(f, "θ_{x}"),
            Query::ConstZero => f.write_str("0"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TreeNode {
    Leaf(bool),
    Query {
        query: Query,
        zero: Box<TreeNode>,
        one: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn query(query: Query, zero: TreeNode, one: TreeNode) -> Self {
        TreeNode::Query {
            query,
            zero: Box::new(zero),
            one: Box::new(one),
        }
    }

    fn depth(&self) -> u32 {
        match self {
            TreeNode::Leaf(_) => 0,
            TreeNode::Query { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    fn leaves(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 1,
            TreeNode::Query { zero, one, .. } => zero.leaves() + one.leaves(),
        }
    }

    fn collect_queries(&self, out: &mut Vec<Query>) {
        if let TreeNode::Query { query, zero, one } = self {
            out.push(*query);
            zero.collect_queries(out);
            one.collect_queries(out);
        }
    }
}

/// A comparison decision tree over `n`-bit inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComparisonTree {
    n: u32,
    root: TreeNode,
}

impl ComparisonTree {
    /// Checks that every threshold is an `n`-bit value.
    pub fn new(n: u32, root: TreeNode) -> Result<Self> {
        if !(1..=boolfn::MAX_ARITY).contains(&n) {
            return Err(Error::Arity {
                n,
                max: boolfn::MAX_ARITY,
            });
        }
        let tree = Self { n, root };
        for q in tree.queries() {
            q.check(n)?;
        }
        Ok(tree)
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn eval(&self, y: u32) -> bool {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf(out) => return *out,
                TreeNode::Query { query, zero, one } => {
                    node = if query.answer(y) { one } else { zero };
                }
            }
        }
    }

    pub fn depth(&self) -> u32 {
        self.root.depth()
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaves()
    }

    /// Queries in preorder.
    pub fn queries(&self) -> Vec<Query> {
        let mut out = Vec::new();
        self.root.collect_queries(&mut out);
        out
    }
}

/// Binary search for the block containing the input: boundary `b` becomes the
/// query `θ_{b+1}`, which separates `y ≤ b` from `y ≥ b + 1`.
pub fn build_tree(tt: &TruthTable) -> ComparisonTree {
    let blocks = boolfn::blocks(tt);
    let cuts: Vec<u32> = blocks.boundaries().iter().map(|b| b + 1).collect();
    let root = balanced_search(
        &cuts,
        &mut |i| TreeNode::Leaf(blocks.block_value(i)),
        &mut |t, zero, one| TreeNode::query(Query::Threshold(t), zero, one),
    );
    ComparisonTree {
        n: tt.arity(),
        root,
    }
}

/// The depth-`n` tree that pins down the input exactly by halving.
pub fn trivial_tree(tt: &TruthTable) -> ComparisonTree {
    let cuts: Vec<u32> = (1..1u32 << tt.arity()).collect();
    let root = balanced_search(
        &cuts,
        &mut |i| TreeNode::Leaf(tt.get(i as u32)),
        &mut |t, zero, one| TreeNode::query(Query::Threshold(t), zero, one),
    );
    ComparisonTree {
        n: tt.arity(),
        root,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeVerification {
    pub correct: bool,
    pub depth: u32,
    /// Smallest input on which the tree disagrees with the table.
    pub witness: Option<u32>,
}

/// Evaluates the tree on all `2^n` inputs.
pub fn verify_tree(tree: &ComparisonTree, tt: &TruthTable) -> Result<TreeVerification> {
    if tree.arity() != tt.arity() {
        return Err(Error::ArityMismatch {
            artifact: tree.arity(),
            function: tt.arity(),
        });
    }
    let witness = (0..1u32 << tt.arity()).find(|&y| tree.eval(y) != tt.get(y));
    Ok(TreeVerification {
        correct: witness.is_none(),
        depth: tree.depth(),
        witness,
    })
}

/// Exact minimum depth of any comparison tree computing `tt`.
///
/// Every subtree of a comparison tree sees a contiguous interval of inputs,
/// so `depth[a, b]` is 0 when `tt` is constant on `[a, b]` and otherwise
/// `1 + min_{a < x ≤ b} max(depth[a, x−1], depth[x, b])`. Thresholds outside
/// `(a, b]` and the constant-zero query leave the interval unsplit and never
/// help.
pub fn min_depth_oracle(tt: &TruthTable) -> Result<u32> {
    min_depth_oracle_with_cap(tt, ORACLE_ARITY_CAP)
}

pub fn min_depth_oracle_with_cap(tt: &TruthTable, cap: u32) -> Result<u32> {
    let n = tt.arity();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "decision tree oracle arity",
            value: n as usize,
            cap: cap as usize,
        });
    }
    let size = 1usize << n;
    let v = tt.values();
    // depth[a][b] filled by increasing interval length.
    let mut depth = vec![vec![0u32; size]; size];
    for len in 2..=size {
        for a in 0..=size - len {
            let b = a + len - 1;
            let constant = v[a..=b].iter().all(|&x| x == v[a]);
            depth[a][b] = if constant {
                0
            } else {
                1 + (a + 1..=b)
                    .map(|x| depth[a][x - 1].max(depth[x][b]))
                    .min()
                    .expect("interval of length >= 2 has a split")
            };
        }
    }
    Ok(depth[0][size - 1])
}
