//! Hopcroft–Karp maximum matching and the König vertex cover it yields.

use std::collections::VecDeque;

const INF: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    /// `left_mate[u] = Some(v)` iff `(u, v)` is matched.
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

/// Maximum matching of the bipartite graph with `adj[u]` listing the right
/// neighbours of left vertex `u`.
pub fn hopcroft_karp(adj: &[Vec<usize>], right_len: usize) -> Matching {
    let left_len = adj.len();
    let mut left_mate = vec![None; left_len];
    let mut right_mate = vec![None; right_len];
    let mut dist = vec![INF; left_len];
    let mut size = 0;
    while layer(adj, &left_mate, &right_mate, &mut dist) {
        let mut next = vec![0usize; left_len];
        for u in 0..left_len {
            if left_mate[u].is_none()
                && augment(
                    u,
                    adj,
                    &mut left_mate,
                    &mut right_mate,
                    &mut dist,
                    &mut next,
                )
            {
                size += 1;
            }
        }
    }
    Matching {
        size,
        left_mate,
        right_mate,
    }
}

fn layer(
    adj: &[Vec<usize>],
    left_mate: &[Option<usize>],
    right_mate: &[Option<usize>],
    dist: &mut [u32],
) -> bool {
    let mut queue = VecDeque::new();
    for (u, d) in dist.iter_mut().enumerate() {
        if left_mate[u].is_none() {
            *d = 0;
            queue.push_back(u);
        } else {
            *d = INF;
        }
    }
    let mut found = false;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            match right_mate[v] {
                None => found = true,
                Some(w) if dist[w] == INF => {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                Some(_) => {}
            }
        }
    }
    found
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    left_mate: &mut [Option<usize>],
    right_mate: &mut [Option<usize>],
    dist: &mut [u32],
    next: &mut [usize],
) -> bool {
    while next[u] < adj[u].len() {
        let v = adj[u][next[u]];
        next[u] += 1;
        let ok = match right_mate[v] {
            None => true,
            Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, left_mate, right_mate, dist, next),
        };
        if ok {
            left_mate[u] = Some(v);
            right_mate[v] = Some(u);
            return true;
        }
    }
    dist[u] = INF;
    false
}

/// Membership flags of a maximum independent set, as the complement of the
/// minimum vertex cover from König's construction: with `Z` the vertices
/// alternating-reachable from unmatched left vertices, the cover is
/// `(L \ Z) ∪ (R ∩ Z)`.
pub fn max_independent_set(adj: &[Vec<usize>], right_len: usize) -> (Vec<bool>, Vec<bool>) {
    let m = hopcroft_karp(adj, right_len);
    let mut left_seen = vec![false; adj.len()];
    let mut right_seen = vec![false; right_len];
    let mut queue: VecDeque<usize> = (0..adj.len())
        .filter(|&u| m.left_mate[u].is_none())
        .collect();
    for &u in &queue {
        left_seen[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if right_seen[v] {
                continue;
            }
            right_seen[v] = true;
            if let Some(w) = m.right_mate[v] {
                if !left_seen[w] {
                    left_seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let right_keep = right_seen.iter().map(|s| !s).collect();
    (left_seen, right_keep)
}
