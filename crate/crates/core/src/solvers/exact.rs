//! Exact oracles by dynamic programming over subsets (Held–Karp).
//!
//! All three problems reduce to a maximum-weight Hamiltonian path:
//! the shortest superstring maximizes total adjacent overlap, the fewest
//! occurrences of a symbol maximizes the total σ-count of adjacent overlaps,
//! and the shortest Hamiltonian path of a weighted digraph maximizes edge
//! weight because node weights are counted once either way.
//!
//! # Why the σ-minimum bounds every superstring
//!
//! Take any superstring `s` and order the inputs by leftmost occurrence in
//! `s`. Consecutive inputs `a`, `b` then sit at offsets with `b` starting
//! after `a` starts; the part of `s` between their starts contains
//! `pref(a, b)` up to a suffix of `ov(a, b)` that `s` may fail to share, so
//! its σ-count is at least `|pref(a, b)|_σ`. Summing over the order and
//! adding the last string gives `|s|_σ ≥ |s(π)|_σ` for that permutation `π`,
//! hence `|s|_σ` is at least the permutation minimum returned by
//! [`exact_sigma`]. The unit tests confirm this by enumerating every short
//! superstring of small instances.

use crate::error::{Result, ScsError};
use crate::graph::{sigma_graph, HamPath, WeightedDigraph};
use crate::strings::{count_occurrences, Instance, Sym};

use super::greedy::Solution;

/// Largest instance accepted by the exact superstring oracles.
pub const EXACT_MAX_N: usize = 20;

/// Largest graph for which trace diagnostics compute the shortest path.
pub const SHP_MAX_N: usize = 15;

const NONE: u32 = u32::MAX;

/// Maximum total edge weight over Hamiltonian paths of `g`, with the
/// lexicographically smallest optimal node sequence.
pub fn max_weight_hamiltonian_path(g: &WeightedDigraph, cap: usize) -> Result<(u64, HamPath)> {
    let n = g.n();
    if n > cap {
        return Err(ScsError::Capacity(format!("{n} nodes exceed the exact limit of {cap}")));
    }
    let weight = |u: usize, v: usize| g.weight(u, v) as u32;
    let full = (1usize << n) - 1;
    // best[mask][first]: max weight of a path over `mask` starting at `first`
    let mut best = vec![NONE; (1 << n) * n];
    for v in 0..n {
        best[(1 << v) * n + v] = 0;
    }
    for mask in 1..=full {
        for first in 0..n {
            if mask & (1 << first) == 0 || mask == 1 << first {
                continue;
            }
            let rest = mask & !(1 << first);
            let mut b = NONE;
            let mut r = rest;
            while r != 0 {
                let next = r.trailing_zeros() as usize;
                r &= r - 1;
                let tail = best[rest * n + next];
                if tail != NONE {
                    let cand = tail + weight(first, next);
                    if b == NONE || cand > b {
                        b = cand;
                    }
                }
            }
            best[mask * n + first] = b;
        }
    }
    let mut first = 0;
    let mut total = best[full * n];
    for v in 1..n {
        if best[full * n + v] > total {
            first = v;
            total = best[full * n + v];
        }
    }
    let mut order = vec![first];
    let mut mask = full & !(1 << first);
    let mut cur = first;
    let mut remaining = total;
    while mask != 0 {
        let next = (0..n)
            .filter(|&v| mask & (1 << v) != 0)
            .find(|&v| {
                let tail = best[mask * n + v];
                tail != NONE && tail + weight(cur, v) == remaining
            })
            .expect("reconstruction follows an optimal path");
        remaining -= weight(cur, next);
        order.push(next);
        mask &= !(1 << next);
        cur = next;
    }
    Ok((total as u64, HamPath::new(order)?))
}

/// Shortest superstring over all permutations.
pub fn exact_scs(inst: &Instance) -> Result<Solution> {
    let g = crate::graph::overlap_graph(inst);
    let (_, path) = max_weight_hamiltonian_path(&g, EXACT_MAX_N)?;
    Solution::from_permutation(inst, path.order())
}

/// Minimum over permutations `π` of `|s(π)|_σ`, with a minimizing `π`.
pub fn exact_sigma(inst: &Instance, p: Sym) -> Result<(u64, Vec<usize>)> {
    let g = sigma_graph(inst, p);
    let (w, path) = max_weight_hamiltonian_path(&g, EXACT_MAX_N)?;
    let total: u64 = inst.strings().iter().map(|s| count_occurrences(s, p)).sum();
    Ok((total - w, path.order().to_vec()))
}

/// `‖SHP‖` of a weighted digraph.
pub fn shortest_hamiltonian_path(g: &WeightedDigraph) -> Result<(i64, HamPath)> {
    let (w, path) = max_weight_hamiltonian_path(g, SHP_MAX_N)?;
    Ok((g.total_node_weight() as i64 - w as i64, path))
}
