//! Balanced threshold search over a sorted list of cut points.
//!
//! Cuts `c_0 < c_1 < ...` split a range into segments; segment `i` holds the
//! values in `[c_{i-1}, c_i)`. Each internal node asks `v ≥ c_m` with
//! `m = ⌊(len − 1) / 2⌋`, so `k` segments are resolved in `⌈log₂ k⌉` queries.

pub(crate) fn balanced_search<T>(
    cuts: &[u32],
    leaf: &mut dyn FnMut(usize) -> T,
    split: &mut dyn FnMut(u32, T, T) -> T,
) -> T {
    search_from(cuts, 0, leaf, split)
}

fn search_from<T>(
    cuts: &[u32],
    first_segment: usize,
    leaf: &mut dyn FnMut(usize) -> T,
    split: &mut dyn FnMut(u32, T, T) -> T,
) -> T {
    if cuts.is_empty() {
        return leaf(first_segment);
    }
    let mid = (cuts.len() - 1) / 2;
    let below = search_from(&cuts[..mid], first_segment, leaf, split);
    let above = search_from(&cuts[mid + 1..], first_segment + mid + 1, leaf, split);
    split(cuts[mid], below, above)
}
