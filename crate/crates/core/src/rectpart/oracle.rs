//! Exhaustive minimum rectangle partition by branch-and-bound.
//!
//! The first uncovered cell in row-major order must be the top-left corner of
//! whichever rectangle covers it, so each node branches over every rectangle
//! anchored there that fits in the uncovered cells. Branches that cannot beat
//! the best partition found so far are pruned, as are repeat visits to an
//! uncovered set already reached with no more rectangles spent.

use std::collections::HashMap;

use super::CellRegion;
use crate::{Error, Result};

/// Largest region (in cells) the oracle accepts by default.
pub const ORACLE_CELL_CAP: usize = 24;

pub fn min_partition_oracle(region: &CellRegion) -> Result<usize> {
    min_partition_oracle_with_cap(region, ORACLE_CELL_CAP)
}

/// Same as [`min_partition_oracle`] with an explicit cell cap (at most 64).
pub fn min_partition_oracle_with_cap(region: &CellRegion, cap: usize) -> Result<usize> {
    let cap = cap.min(64);
    let count = region.cell_count();
    if count > cap {
        return Err(Error::CapExceeded {
            what: "oracle region cells",
            value: count,
            cap,
        });
    }
    if count == 0 {
        return Ok(0);
    }
    let anchored = anchored_rectangles(region);
    let mut search = Search {
        anchored,
        best: count,
        seen: HashMap::new(),
    };
    let all = if count == 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    };
    search.descend(all, 0);
    Ok(search.best)
}

/// For each region cell (by row-major rank), the bit masks of all rectangles
/// inside the region with that cell as top-left corner, largest first.
fn anchored_rectangles(region: &CellRegion) -> Vec<Vec<u64>> {
    let (rows, cols) = (region.rows(), region.cols());
    let mut rank = vec![usize::MAX; rows * cols];
    for (i, (r, c)) in region.iter_cells().enumerate() {
        rank[r * cols + c] = i;
    }
    let mut out = Vec::new();
    for (r, c) in region.iter_cells() {
        let mut masks: Vec<(usize, u64)> = Vec::new();
        let mut max_width = usize::MAX;
        for bottom in r..rows {
            let run = (c..cols)
                .take_while(|&cc| region.contains(bottom, cc))
                .count();
            max_width = max_width.min(run);
            if max_width == 0 {
                break;
            }
            for width in 1..=max_width {
                let mut mask = 0u64;
                for rr in r..=bottom {
                    for cc in c..c + width {
                        mask |= 1 << rank[rr * cols + cc];
                    }
                }
                masks.push(((bottom - r + 1) * width, mask));
            }
        }
        masks.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        out.push(masks.into_iter().map(|(_, m)| m).collect());
    }
    out
}

struct Search {
    anchored: Vec<Vec<u64>>,
    best: usize,
    /// Fewest rectangles spent on reaching each uncovered set.
    seen: HashMap<u64, usize>,
}

impl Search {
    fn descend(&mut self, uncovered: u64, used: usize) {
        if uncovered == 0 {
            self.best = self.best.min(used);
            return;
        }
        if used + 1 >= self.best {
            return;
        }
        match self.seen.get(&uncovered) {
            Some(&prior) if prior <= used => return,
            _ => {
                self.seen.insert(uncovered, used);
            }
        }
        let anchor = uncovered.trailing_zeros() as usize;
        for k in 0..self.anchored[anchor].len() {
            let rect = self.anchored[anchor][k];
            if rect & !uncovered == 0 {
                self.descend(uncovered & !rect, used + 1);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        assert_eq!(min_partition_oracle(&CellRegion::empty(4, 4)).unwrap(), 0);
        assert_eq!(min_partition_oracle(&CellRegion::full(4, 6)).unwrap(), 1);
        let l = CellRegion::from_rows(&["#.", "##"]);
        assert_eq!(min_partition_oracle(&l).unwrap(), 2);
        let plus = CellRegion::from_rows(&[".#.", "###", ".#."]);
        assert_eq!(min_partition_oracle(&plus).unwrap(), 3);
        let pinched = CellRegion::from_rows(&["###", "#.#", "##."]);
        assert_eq!(min_partition_oracle(&pinched).unwrap(), 4);
        let checker = CellRegion::from_rows(&["#.#.", ".#.#", "#.#.", ".#.#"]);
        assert_eq!(min_partition_oracle(&checker).unwrap(), 8);
    }

    #[test]
    fn cap_is_enforced() {
        let big = CellRegion::full(5, 5);
        assert_eq!(
            min_partition_oracle(&big),
            Err(Error::CapExceeded {
                what: "oracle region cells",
                value: 25,
                cap: 24
            })
        );
        assert_eq!(min_partition_oracle_with_cap(&big, 25).unwrap(), 1);
    }
}
