//! Complete weighted digraphs with self-loops, overlap graphs, cycle covers
//! and the pseudo-overlap property certifier.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScsError};
use crate::strings::{count_occurrences, overlap_len, prefix_part, split, ascii, Instance, Sym};

/// Dense complete digraph: node weights `|v|` and edge weights `w(u, v)`,
/// diagonal included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedDigraph {
    node_weights: Vec<u64>,
    /// Row-major `n × n`.
    edge_weights: Vec<u64>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub tail: usize,
    pub head: usize,
    pub weight: u64,
}

impl WeightedDigraph {
    pub fn new(node_weights: Vec<u64>, matrix: Vec<Vec<u64>>) -> Result<WeightedDigraph> {
        let n = node_weights.len();
        if n == 0 {
            return Err(ScsError::invalid("graph needs at least one node"));
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(ScsError::invalid(format!("edge matrix must be {n}×{n}")));
        }
        Ok(WeightedDigraph {
            node_weights,
            edge_weights: matrix.into_iter().flatten().collect(),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<WeightedDigraph> {
        if labels.len() != self.n() {
            return Err(ScsError::invalid("one label per node required"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.node_weights.len()
    }

    pub fn node_weight(&self, v: usize) -> u64 {
        self.node_weights[v]
    }

    pub fn node_weights(&self) -> &[u64] {
        &self.node_weights
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.edge_weights[u * self.n() + v]
    }

    pub fn edge(&self, tail: usize, head: usize) -> EdgeRef {
        EdgeRef { tail, head, weight: self.weight(tail, head) }
    }

    /// All `n²` edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        let n = self.n();
        (0..n * n).map(move |k| self.edge(k / n, k % n))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => format!("v{v}"),
        }
    }

    pub fn total_node_weight(&self) -> u64 {
        self.node_weights.iter().sum()
    }

    /// `‖v_0 → … → v_k‖` for a simple path given as a node sequence.
    pub fn path_length(&self, order: &[usize]) -> i64 {
        let nodes: u64 = order.iter().map(|&v| self.node_weight(v)).sum();
        let edges: u64 = order.windows(2).map(|w| self.weight(w[0], w[1])).sum();
        nodes as i64 - edges as i64
    }

    /// `‖C‖` for a cycle given as its node sequence (closing edge implied).
    pub fn cycle_length(&self, cycle: &[usize]) -> i64 {
        let k = cycle.len();
        let nodes: u64 = cycle.iter().map(|&v| self.node_weight(v)).sum();
        let edges: u64 = (0..k).map(|i| self.weight(cycle[i], cycle[(i + 1) % k])).sum();
        nodes as i64 - edges as i64
    }
}

/// `OG(S)`: node weight `|s_i|`, edge weight `|ov(s_i, s_j)|`.
pub fn overlap_graph(inst: &Instance) -> WeightedDigraph {
    let n = inst.len();
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| overlap_len(inst.get(i), inst.get(j)) as u64).collect())
        .collect();
    let nodes = inst.strings().iter().map(|s| s.len() as u64).collect();
    WeightedDigraph::new(nodes, matrix)
        .and_then(|g| g.with_labels(inst.to_strings()))
        .expect("instance is non-empty")
}

/// `G_σ`: node weight `|s_i|_σ`, edge weight `|ov(s_i, s_j)|_σ`.
pub fn sigma_graph(inst: &Instance, p: Sym) -> WeightedDigraph {
    let n = inst.len();
    let matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let sp = split(inst.get(i), inst.get(j)).expect("non-empty strings");
                    count_occurrences(&sp.ov, p)
                })
                .collect()
        })
        .collect();
    let nodes = inst.strings().iter().map(|s| count_occurrences(s, p)).collect();
    WeightedDigraph::new(nodes, matrix)
        .and_then(|g| g.with_labels(inst.to_strings()))
        .expect("instance is non-empty")
}

fn check_edges_within(g: &WeightedDigraph, edges: &[EdgeRef], nodes: Option<&[usize]>) -> Result<()> {
    for e in edges {
        let inside = |v: usize| v < g.n() && nodes.is_none_or(|ns| ns.contains(&v));
        if !inside(e.tail) || !inside(e.head) {
            return Err(ScsError::invalid(format!(
                "edge ({}, {}) leaves the node set",
                e.tail, e.head
            )));
        }
    }
    Ok(())
}

/// `w(G)`: sum of edge weights, looked up in `g`.
pub fn subgraph_weight(g: &WeightedDigraph, edges: &[EdgeRef]) -> Result<u64> {
    check_edges_within(g, edges, None)?;
    Ok(edges.iter().map(|e| g.weight(e.tail, e.head)).sum())
}

/// `‖G‖ = Σ_{v ∈ V} |v| − w(G)`. Each node counts once however many edges
/// touch it.
pub fn subgraph_length(g: &WeightedDigraph, edges: &[EdgeRef], nodes: &[usize]) -> Result<i64> {
    let mut uniq = nodes.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.iter().any(|&v| v >= g.n()) {
        return Err(ScsError::invalid("node index out of range"));
    }
    check_edges_within(g, edges, Some(&uniq))?;
    let node_sum: u64 = uniq.iter().map(|&v| g.node_weight(v)).sum();
    Ok(node_sum as i64 - subgraph_weight(g, edges)? as i64)
}

/// `|C|_σ`: σ-counts of the prefix parts around a cycle of instance strings.
pub fn cycle_length_sigma(inst: &Instance, cycle: &[usize], p: Sym) -> u64 {
    let k = cycle.len();
    (0..k)
        .map(|i| {
            let (a, b) = (inst.get(cycle[i]), inst.get(cycle[(i + 1) % k]));
            count_occurrences(prefix_part(a, b), p)
        })
        .sum()
}

/// A cycle cover as a successor permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCover {
    successor: Vec<usize>,
}

impl CycleCover {
    pub fn new(successor: Vec<usize>) -> Result<CycleCover> {
        crate::strings::check_permutation(&successor, successor.len())
            .map_err(|_| ScsError::invalid("successor map is not a bijection"))?;
        if successor.is_empty() {
            return Err(ScsError::invalid("empty cycle cover"));
        }
        Ok(CycleCover { successor })
    }

    pub fn successor(&self) -> &[usize] {
        &self.successor
    }

    pub fn n(&self) -> usize {
        self.successor.len()
    }

    /// Orbits of the successor map, each starting at its smallest node.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.successor[v];
            }
            out.push(cycle);
        }
        out
    }

    pub fn weight(&self, g: &WeightedDigraph) -> u64 {
        self.successor.iter().enumerate().map(|(u, &v)| g.weight(u, v)).sum()
    }

    pub fn length(&self, g: &WeightedDigraph) -> i64 {
        g.total_node_weight() as i64 - self.weight(g) as i64
    }
}

/// A Hamiltonian path as the visiting order of node indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamPath {
    order: Vec<usize>,
}

impl HamPath {
    pub fn new(order: Vec<usize>) -> Result<HamPath> {
        crate::strings::check_permutation(&order, order.len())?;
        Ok(HamPath { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn weight(&self, g: &WeightedDigraph) -> u64 {
        self.order.windows(2).map(|w| g.weight(w[0], w[1])).sum()
    }

    pub fn length(&self, g: &WeightedDigraph) -> i64 {
        g.path_length(&self.order)
    }
}

/// Largest graph for which the certifier re-checks cover optimality by brute force.
pub const BRUTE_FORCE_COVER_MAX_N: usize = 8;

/// Maximum-weight cycle cover by trying every successor bijection.
/// Exponential; meant for `n ≤ 8`.
pub fn max_cover_brute_force(g: &WeightedDigraph) -> (u64, CycleCover) {
    fn rec(g: &WeightedDigraph, u: usize, used: &mut [bool], cur: &mut Vec<usize>, acc: u64, best: &mut (u64, Vec<usize>)) {
        let n = g.n();
        if u == n {
            if acc > best.0 || best.1.is_empty() {
                *best = (acc, cur.clone());
            }
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(g, u + 1, used, cur, acc + g.weight(u, v), best);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut best = (0, Vec::new());
    rec(g, 0, &mut vec![false; g.n()], &mut Vec::new(), 0, &mut best);
    (best.0, CycleCover { successor: best.1 })
}

/// Outcome of one property check; `witness` is set on the first violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl PropertyCheck {
    fn pass() -> Self {
        PropertyCheck { holds: true, witness: None }
    }

    fn record(&mut self, witness: &[usize]) {
        if self.holds {
            self.holds = false;
            self.witness = Some(witness.to_vec());
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    P1,
    P2,
    P3,
    P4,
    /// The strict form `w(c1, c2) < ‖C1‖ + ‖C2‖` of P4.
    P4Strict,
}

/// Results of the four pseudo-overlap properties on one graph and cover.
///
/// `p4_strict` is informational: it reports whether every cross-cycle edge
/// is strictly below the bound, with the first equality case as witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub p1: PropertyCheck,
    pub p2: PropertyCheck,
    pub p3: PropertyCheck,
    pub p4: PropertyCheck,
    pub p4_strict: PropertyCheck,
}

impl PropertyReport {
    pub fn all_hold(&self) -> bool {
        self.p1.holds && self.p2.holds && self.p3.holds && self.p4.holds
    }
}

fn p1_violated(g: &WeightedDigraph, u: usize, v: usize) -> bool {
    g.node_weight(u) < g.weight(u, v) || g.node_weight(u) < g.weight(v, u)
}

// |v| + w(u, w) ≥ w(u, v) + w(v, w)
fn p2_violated(g: &WeightedDigraph, u: usize, v: usize, w: usize) -> bool {
    g.node_weight(v) + g.weight(u, w) < g.weight(u, v) + g.weight(v, w)
}

fn p3_violated(g: &WeightedDigraph, u: usize, v: usize, u2: usize, v2: usize) -> bool {
    let uv = g.weight(u, v);
    uv >= g.weight(u, v2).max(g.weight(u2, v))
        && uv + g.weight(u2, v2) < g.weight(u, v2) + g.weight(u2, v)
}

fn cycle_index(cover: &CycleCover) -> (Vec<Vec<usize>>, Vec<usize>) {
    let cycles = cover.cycles();
    let mut which = vec![0; cover.n()];
    for (k, c) in cycles.iter().enumerate() {
        for &v in c {
            which[v] = k;
        }
    }
    (cycles, which)
}

/// Re-evaluates a witness; true when it exhibits a violation of `prop`.
pub fn witness_violates(g: &WeightedDigraph, cover: &CycleCover, prop: Property, witness: &[usize]) -> bool {
    let n = g.n();
    if witness.iter().any(|&v| v >= n) {
        return false;
    }
    match (prop, witness) {
        (Property::P1, &[u, v]) => p1_violated(g, u, v),
        (Property::P2, &[u, v, w]) => p2_violated(g, u, v, w),
        (Property::P3, &[u, v, u2, v2]) => p3_violated(g, u, v, u2, v2),
        (Property::P4 | Property::P4Strict, &[c1, c2]) => {
            let (cycles, which) = cycle_index(cover);
            if which[c1] == which[c2] {
                return false;
            }
            let bound = g.cycle_length(&cycles[which[c1]]) + g.cycle_length(&cycles[which[c2]]);
            let w = g.weight(c1, c2) as i64;
            if prop == Property::P4 {
                w > bound
            } else {
                w >= bound
            }
        }
        _ => false,
    }
}

/// Checks P1–P4 on `g`. `max_cover` must be a maximum-weight cycle cover of
/// `g`; for `n ≤ 8` this is re-verified by brute force.
pub fn check_properties(g: &WeightedDigraph, max_cover: &CycleCover) -> Result<PropertyReport> {
    let n = g.n();
    if max_cover.n() != n {
        return Err(ScsError::invalid(format!(
            "cover has {} nodes, graph has {n}",
            max_cover.n()
        )));
    }
    if n <= BRUTE_FORCE_COVER_MAX_N {
        let (best, _) = max_cover_brute_force(g);
        if max_cover.weight(g) != best {
            return Err(ScsError::invalid(format!(
                "cover weight {} is not the maximum {best}",
                max_cover.weight(g)
            )));
        }
    }

    let mut p1 = PropertyCheck::pass();
    let mut p2 = PropertyCheck::pass();
    let mut p3 = PropertyCheck::pass();
    for u in 0..n {
        for v in 0..n {
            if p1.holds && p1_violated(g, u, v) {
                p1.record(&[u, v]);
            }
            for w in 0..n {
                if p2.holds && p2_violated(g, u, v, w) {
                    p2.record(&[u, v, w]);
                }
            }
        }
    }
    'outer: for u in 0..n {
        for v in 0..n {
            for u2 in 0..n {
                for v2 in 0..n {
                    if p3_violated(g, u, v, u2, v2) {
                        p3.record(&[u, v, u2, v2]);
                        break 'outer;
                    }
                }
            }
        }
    }

    let mut p4 = PropertyCheck::pass();
    let mut p4_strict = PropertyCheck::pass();
    let (cycles, which) = cycle_index(max_cover);
    let lengths: Vec<i64> = cycles.iter().map(|c| g.cycle_length(c)).collect();
    for c1 in 0..n {
        for c2 in 0..n {
            let (k1, k2) = (which[c1], which[c2]);
            if k1 == k2 {
                continue;
            }
            let w = g.weight(c1, c2) as i64;
            let bound = lengths[k1] + lengths[k2];
            if w > bound {
                p4.record(&[c1, c2]);
            }
            if w >= bound {
                p4_strict.record(&[c1, c2]);
            }
        }
    }
    Ok(PropertyReport { p1, p2, p3, p4, p4_strict })
}

/// Graphviz rendering. Zero-weight edges are dropped unless `all_edges`.
pub fn to_dot(g: &WeightedDigraph, all_edges: bool) -> String {
    let mut out = String::from("digraph G {\n  node [shape=box];\n");
    for v in 0..g.n() {
        let _ = writeln!(
            out,
            "  n{v} [label=\"{} ({})\"];",
            escape(&g.label(v)),
            g.node_weight(v)
        );
    }
    for e in g.edges() {
        if e.weight == 0 && !all_edges {
            continue;
        }
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.tail, e.head, e.weight);
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Labels of an instance, used when building graphs by hand.
pub fn instance_labels(inst: &Instance) -> Vec<String> {
    inst.strings().iter().map(|s| ascii(s)).collect()
}
