//! One-dimensional boolean functions as truth tables, their block structure,
//! and exact counts of functions by block count.
//!
//! Input `i ∈ [0, 2^n)` is the bit string of `i` read MSB-first, so the
//! lexicographic order on `{0,1}^n` coincides with integer order.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::{ceil_log2, Error, Result};

/// Largest supported arity for a truth table (2^20 entries).
pub const MAX_ARITY: u32 = 20;

/// Largest arity [`enumerate_histogram`] will sweep exhaustively.
pub const ENUMERATION_CAP: u32 = 4;

/// A function `{0,1}^n → {0,1}` stored as its `2^n` outputs in input order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    values: Vec<bool>,
}

fn check_arity(n: u32) -> Result<()> {
    if (1..=MAX_ARITY).contains(&n) {
        Ok(())
    } else {
        Err(Error::Arity { n, max: MAX_ARITY })
    }
}

impl TruthTable {
    pub fn new(n: u32, values: Vec<bool>) -> Result<Self> {
        check_arity(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::Length {
                expected,
                actual: values.len(),
            });
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: u32, f: impl Fn(u32) -> bool) -> Result<Self> {
        check_arity(n)?;
        Ok(Self {
            n,
            values: (0..1u32 << n).map(f).collect(),
        })
    }

    /// Builds a table of arity `n ≤ 6` from the low `2^n` bits of `bits`;
    /// bit `i` is the output on input `i`.
    pub fn from_bits(n: u32, bits: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::Arity { n, max: 6 });
        }
        Self::from_fn(n, |i| (bits >> i) & 1 == 1)
    }

    pub fn constant(n: u32, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// The comparison function `θ_x(y) = [y ≥ x]`.
    pub fn threshold(n: u32, x: u32) -> Result<Self> {
        Self::from_fn(n, |y| y >= x)
    }

    /// `π_n`, the projection onto the last input bit.
    pub fn last_coordinate(n: u32) -> Result<Self> {
        Self::from_fn(n, |y| y & 1 == 1)
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, y: u32) -> bool {
        self.values[y as usize]
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| !v).collect(),
        }
    }
}

/// The maximal constant runs of a truth table.
///
/// `boundaries` holds every index `b` with `values[b] ≠ values[b + 1]`; block
/// values alternate starting from `first_value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    n: u32,
    boundaries: Vec<u32>,
    first_value: bool,
}

impl BlockDecomposition {
    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn boundaries(&self) -> &[u32] {
        &self.boundaries
    }

    pub fn first_value(&self) -> bool {
        self.first_value
    }

    /// Number of blocks, `μ`.
    pub fn count(&self) -> u64 {
        self.boundaries.len() as u64 + 1
    }

    /// Output value of block `i`.
    pub fn block_value(&self, i: usize) -> bool {
        self.first_value ^ (i % 2 == 1)
    }

    pub fn to_table(&self) -> TruthTable {
        let mut values = Vec::with_capacity(1 << self.n);
        let mut value = self.first_value;
        let mut next = self.boundaries.iter().peekable();
        for i in 0..1u32 << self.n {
            values.push(value);
            if next.next_if(|&&b| b == i).is_some() {
                value = !value;
            }
        }
        TruthTable { n: self.n, values }
    }
}

pub fn blocks(tt: &TruthTable) -> BlockDecomposition {
    let boundaries = tt
        .values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != w[1])
        .map(|(i, _)| i as u32)
        .collect();
    BlockDecomposition {
        n: tt.n,
        boundaries,
        first_value: tt.values[0],
    }
}

/// `μ(f)`: the number of maximal constant runs in the ordered output list.
pub fn mu(tt: &TruthTable) -> u64 {
    1 + tt.values.windows(2).filter(|w| w[0] != w[1]).count() as u64
}

/// Optimal comparison decision tree depth, `⌈log₂ μ(f)⌉`.
pub fn dcomp(tt: &TruthTable) -> u32 {
    ceil_log2(mu(tt))
}

fn binomial(m: &BigUint, r: u64) -> BigUint {
    // C(m, r) = prod_{i=1..r} (m - r + i) / i; each prefix is itself a binomial.
    let mut acc = BigUint::one();
    for i in 1..=r {
        acc = acc * (m - BigUint::from(r) + BigUint::from(i)) / BigUint::from(i);
    }
    acc
}

/// Number of functions of arity `n` with exactly `k` blocks: `2·C(2^n − 1, k − 1)`.
pub fn count_by_mu(n: u32, k: u64) -> Result<BigUint> {
    check_arity(n)?;
    let size = 1u64 << n;
    if k == 0 || k > size {
        return Err(Error::BlockCount { k, max: size });
    }
    let m = size - 1;
    let r = (k - 1).min(m - (k - 1));
    Ok(binomial(&BigUint::from(m), r) * 2u32)
}

/// Number of functions of arity `n` whose comparison tree depth is `n`,
/// namely `2^(2^n − 1)`.
pub fn count_max_complexity(n: u32) -> Result<BigUint> {
    check_arity(n)?;
    Ok(BigUint::one() << ((1u64 << n) - 1))
}

/// Exhaustive histogram of `μ` over all `2^(2^n)` functions of arity `n`.
pub fn enumerate_histogram(n: u32) -> Result<BTreeMap<u64, u64>> {
    enumerate_histogram_with_cap(n, ENUMERATION_CAP)
}

pub fn enumerate_histogram_with_cap(n: u32, cap: u32) -> Result<BTreeMap<u64, u64>> {
    check_arity(n)?;
    if n > cap || n > 5 {
        return Err(Error::CapExceeded {
            what: "enumeration arity",
            value: n as usize,
            cap: cap.min(5) as usize,
        });
    }
    let mut hist = BTreeMap::new();
    for bits in 0..1u64 << (1u64 << n) {
        let tt = TruthTable::from_bits(n, bits)?;
        *hist.entry(mu(&tt)).or_insert(0) += 1;
    }
    Ok(hist)
}
