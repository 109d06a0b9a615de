//! The PATH and CYC edge scans with full execution traces.

use serde::{Deserialize, Serialize};

use super::order::{edge_order, OrderPolicy};
use crate::error::Result;
use crate::graph::{CycleCover, EdgeRef, HamPath, WeightedDigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rejection {
    /// Dominated by an already chosen edge.
    R1,
    /// Not dominated, but closing a cycle.
    R2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedEdge {
    pub edge: EdgeRef,
    pub reason: Rejection,
}

/// Closed interval of positions on the final path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn disjoint(&self, other: &Interval) -> bool {
        self.end < other.start || other.end < self.start
    }
}

/// An R2 rejection `(v_j, v_i)`, spanning positions `[i, j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadBackEdge {
    pub edge: EdgeRef,
    pub interval: Interval,
}

/// Node partition induced by cutting the path at its weak links.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blocks {
    pub left: Vec<usize>,
    pub middle: Vec<usize>,
    pub right: Vec<usize>,
}

/// Complete record of one PATH execution.
///
/// Positions (`Interval`) refer to the final path `path[0] → … → path[n-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTrace {
    pub path: Vec<usize>,
    pub included: Vec<EdgeRef>,
    pub rejected: Vec<RejectedEdge>,
    pub bad_back_edges: Vec<BadBackEdge>,
    /// Innermost bad-back-edge intervals, sorted by position.
    pub culprits: Vec<Interval>,
    pub weak_links: Vec<EdgeRef>,
    pub blocks: Blocks,
}

impl PathTrace {
    /// Position of every node on the final path.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.path.len()];
        for (i, &v) in self.path.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// The bad back edge spanning exactly `interval`, if any.
    pub fn back_edge_of(&self, interval: &Interval) -> Option<&BadBackEdge> {
        self.bad_back_edges.iter().find(|b| b.interval == *interval)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Every pair of intervals is either disjoint or nested.
pub fn is_laminar(intervals: &[Interval]) -> bool {
    intervals.iter().enumerate().all(|(i, a)| {
        intervals[i + 1..]
            .iter()
            .all(|b| a.disjoint(b) || a.contains(b) || b.contains(a))
    })
}

/// Runs PATH on `g`: scans all edges in the policy order, rejecting an edge
/// whose tail already has a chosen out-edge or whose head already has a
/// chosen in-edge (R1), else one that would close a cycle (R2).
pub fn path(g: &WeightedDigraph, policy: &OrderPolicy) -> Result<(HamPath, PathTrace)> {
    let n = g.n();
    let order = edge_order(g, policy)?;
    let mut next: Vec<Option<usize>> = vec![None; n];
    let mut has_in = vec![false; n];
    let mut dsu = Dsu((0..n).collect());
    let mut included = Vec::with_capacity(n.saturating_sub(1));
    let mut rejected = Vec::new();

    for e in order {
        if next[e.tail].is_some() || has_in[e.head] {
            debug_assert!(included.iter().any(|c: &EdgeRef| {
                (c.tail == e.tail || c.head == e.head) && c.weight >= e.weight
            }));
            rejected.push(RejectedEdge { edge: e, reason: Rejection::R1 });
        } else if dsu.find(e.tail) == dsu.find(e.head) {
            rejected.push(RejectedEdge { edge: e, reason: Rejection::R2 });
        } else {
            next[e.tail] = Some(e.head);
            has_in[e.head] = true;
            dsu.union(e.tail, e.head);
            included.push(e);
        }
    }
    debug_assert_eq!(included.len(), n - 1);

    let start = (0..n).find(|&v| !has_in[v]).expect("a path has a first node");
    let mut order = Vec::with_capacity(n);
    let mut cur = Some(start);
    while let Some(v) = cur {
        order.push(v);
        cur = next[v];
    }
    let ham = HamPath::new(order.clone())?;
    let trace = build_trace(order, included, rejected);
    Ok((ham, trace))
}

fn build_trace(path: Vec<usize>, included: Vec<EdgeRef>, rejected: Vec<RejectedEdge>) -> PathTrace {
    let n = path.len();
    let mut pos = vec![0; n];
    for (i, &v) in path.iter().enumerate() {
        pos[v] = i;
    }
    let bad_back_edges: Vec<BadBackEdge> = rejected
        .iter()
        .filter(|r| r.reason == Rejection::R2)
        .map(|r| {
            let (i, j) = (pos[r.edge.head], pos[r.edge.tail]);
            debug_assert!(i <= j, "R2 edges point backwards along the path");
            BadBackEdge { edge: r.edge, interval: Interval { start: i.min(j), end: i.max(j) } }
        })
        .collect();

    let intervals: Vec<Interval> = bad_back_edges.iter().map(|b| b.interval).collect();
    let mut culprits: Vec<Interval> = intervals
        .iter()
        .filter(|a| !intervals.iter().any(|b| b != *a && a.contains(b)))
        .copied()
        .collect();
    culprits.sort();
    culprits.dedup();

    // inclusion rank of the path edge leaving position p
    let mut rank = vec![0usize; n];
    for (k, e) in included.iter().enumerate() {
        rank[pos[e.tail]] = k;
    }
    let mut weak_links = Vec::new();
    let mut cuts = Vec::new();
    for pair in culprits.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.end >= b.start {
            continue;
        }
        let p = (a.end..b.start).max_by_key(|&p| rank[p]).expect("non-empty gap");
        cuts.push(p);
        weak_links.push(included[rank[p]]);
    }

    let mut blocks = Blocks::default();
    let mut seg_start = 0;
    let mut bounds: Vec<usize> = cuts.iter().map(|&p| p + 1).collect();
    bounds.push(n);
    for (k, &seg_end) in bounds.iter().enumerate() {
        match culprits.get(k) {
            Some(c) => {
                for (p, &v) in path.iter().enumerate().take(seg_end).skip(seg_start) {
                    if p < c.start {
                        blocks.left.push(v);
                    } else if p <= c.end {
                        blocks.middle.push(v);
                    } else {
                        blocks.right.push(v);
                    }
                }
            }
            None => blocks.left.extend(&path[seg_start..seg_end]),
        }
        seg_start = seg_end;
    }

    PathTrace { path, included, rejected, bad_back_edges, culprits, weak_links, blocks }
}

/// Runs CYC on `g`: the PATH scan with rule R1 only. The result is a
/// maximum-weight cycle cover.
pub fn cyc(g: &WeightedDigraph, policy: &OrderPolicy) -> Result<CycleCover> {
    let n = g.n();
    let mut succ: Vec<Option<usize>> = vec![None; n];
    let mut has_in = vec![false; n];
    for e in edge_order(g, policy)? {
        if succ[e.tail].is_none() && !has_in[e.head] {
            succ[e.tail] = Some(e.head);
            has_in[e.head] = true;
        }
    }
    CycleCover::new(succ.into_iter().map(|s| s.expect("complete graph yields a cover")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{max_cover_brute_force, overlap_graph};
    use crate::solvers::order::order_for_chosen;
    use crate::strings::{superstring_of_permutation, Instance};

    #[test]
    fn adversarial_order_builds_long_superstring() {
        // abbb, bbba: taking (bbba → abbb) first forces bbbabbb
        let inst = Instance::from_strs(&["abbb", "bbba"]).unwrap();
        let g = overlap_graph(&inst);
        let order = order_for_chosen(&g, &[(1, 0)]).unwrap();
        let (ham, trace) = path(&g, &OrderPolicy::Explicit(order)).unwrap();
        assert_eq!(ham.order(), &[1, 0]);
        assert_eq!(superstring_of_permutation(&inst, ham.order()).unwrap(), b"bbbabbb");
        assert_eq!(ham.length(&g), 7);
        // the heavy edge (abbb → bbba) closes the cycle
        assert!(trace.bad_back_edges.iter().any(|b| (b.edge.tail, b.edge.head) == (0, 1)));

        let (ham, _) = path(&g, &OrderPolicy::Lexicographic).unwrap();
        assert_eq!(ham.length(&g), 5);
    }

    #[test]
    fn single_node() {
        let g = WeightedDigraph::new(vec![4], vec![vec![2]]).unwrap();
        let (ham, trace) = path(&g, &OrderPolicy::Lexicographic).unwrap();
        assert_eq!(ham.order(), &[0]);
        assert!(trace.included.is_empty());
        // the self-loop is the only edge and closes a cycle
        assert_eq!(trace.bad_back_edges.len(), 1);
        assert_eq!(trace.culprits, vec![Interval { start: 0, end: 0 }]);
        assert_eq!(trace.blocks.middle, vec![0]);
    }

    #[test]
    fn fig2_path_is_within_four_times_optimum() {
        let inst = Instance::from_strs(&["ABE", "DAB", "DFA", "ACB", "ECA", "CBD"]).unwrap();
        let g = overlap_graph(&inst);
        let (ham, trace) = path(&g, &OrderPolicy::Lexicographic).unwrap();
        assert!(ham.length(&g) <= 4 * 11);
        assert_eq!(trace.included.len(), 5);
        assert_eq!(trace.included.len() + trace.rejected.len(), 36);
    }

    #[test]
    fn cyc_examples() {
        let g = overlap_graph(&Instance::from_strs(&["ab", "ba"]).unwrap());
        let c = cyc(&g, &OrderPolicy::Lexicographic).unwrap();
        assert_eq!(c.weight(&g), 2);
        assert_eq!(c.cycles(), vec![vec![0, 1]]);

        let zero = WeightedDigraph::new(vec![1, 1, 1], vec![vec![0; 3]; 3]).unwrap();
        for seed in 0..5 {
            assert_eq!(cyc(&zero, &OrderPolicy::SeededRandom(seed)).unwrap().weight(&zero), 0);
        }

        let fig2 = overlap_graph(&Instance::from_strs(&["ABE", "DAB", "DFA", "ACB", "ECA", "CBD"]).unwrap());
        let (best, _) = max_cover_brute_force(&fig2);
        assert_eq!(cyc(&fig2, &OrderPolicy::Lexicographic).unwrap().weight(&fig2), best);
    }

    #[test]
    fn laminarity_helper() {
        let a = Interval { start: 0, end: 3 };
        let b = Interval { start: 1, end: 2 };
        let c = Interval { start: 4, end: 5 };
        let d = Interval { start: 2, end: 4 };
        assert!(is_laminar(&[a, b, c]));
        assert!(!is_laminar(&[a, d]));
    }
}
