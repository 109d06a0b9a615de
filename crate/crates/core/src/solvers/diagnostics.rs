//! Structural checks on PATH traces: laminarity of bad back edges, the
//! placement of their endpoints relative to culprits and blocks, and the
//! inequality `w(BC) − 2‖C_m‖ ≤ ‖SHP‖`.

use serde::{Deserialize, Serialize};

use super::exact::shortest_hamiltonian_path;
use super::path::{is_laminar, Interval, PathTrace};
use crate::error::{Result, ScsError};
use crate::graph::WeightedDigraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    /// Total weight of the bad back edges that close culprits.
    pub w_bc: u64,
    /// `‖C_m‖`: culprits closed by their back edges.
    pub cm_length: i64,
    pub shp_length: i64,
    pub laminar_ok: bool,
    /// Heads of bad back edges are left nodes or culprit starts; tails are
    /// right nodes or culprit ends.
    pub placement_ok: bool,
    pub main2_ok: bool,
}

impl DiagnosticsReport {
    pub fn all_ok(&self) -> bool {
        self.laminar_ok && self.placement_ok && self.main2_ok
    }
}

pub fn analyze_trace(g: &WeightedDigraph, trace: &PathTrace) -> Result<DiagnosticsReport> {
    if trace.path.len() != g.n() {
        return Err(ScsError::invalid("trace does not belong to this graph"));
    }
    let (shp_length, _) = shortest_hamiltonian_path(g)?;

    let intervals: Vec<Interval> = trace.bad_back_edges.iter().map(|b| b.interval).collect();
    let laminar_ok = is_laminar(&intervals);

    let mut w_bc = 0u64;
    let mut cm_length = 0i64;
    for c in &trace.culprits {
        let back = trace
            .back_edge_of(c)
            .ok_or_else(|| ScsError::invalid("culprit without a bad back edge"))?;
        w_bc += back.edge.weight;
        let nodes = &trace.path[c.start..=c.end];
        cm_length += g.cycle_length(nodes);
    }

    let pos = trace.positions();
    let is_left = {
        let mut v = vec![false; g.n()];
        trace.blocks.left.iter().for_each(|&x| v[x] = true);
        v
    };
    let is_right = {
        let mut v = vec![false; g.n()];
        trace.blocks.right.iter().for_each(|&x| v[x] = true);
        v
    };
    let placement_ok = trace.bad_back_edges.iter().all(|b| {
        let head_ok = is_left[b.edge.head] || trace.culprits.iter().any(|c| c.start == pos[b.edge.head]);
        let tail_ok = is_right[b.edge.tail] || trace.culprits.iter().any(|c| c.end == pos[b.edge.tail]);
        head_ok && tail_ok
    });

    let main2_ok = w_bc as i64 - 2 * cm_length <= shp_length;
    Ok(DiagnosticsReport { w_bc, cm_length, shp_length, laminar_ok, placement_ok, main2_ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::overlap_graph;
    use crate::solvers::greedy::{enumerate_instantiations, Algo};
    use crate::solvers::order::{order_for_chosen, OrderPolicy};
    use crate::solvers::path::path;
    use crate::strings::Instance;

    #[test]
    fn lga_lower_bound_family_traces_pass() {
        let inst = Instance::from_strs(&["abbb", "bbbb", "bbbc", "bbcc"]).unwrap();
        let g = overlap_graph(&inst);
        let e = enumerate_instantiations(&inst, Algo::LocallyGreedy, 10_000);
        let worst = e.max_length().unwrap();
        assert_eq!(worst.length, 13);
        let order = order_for_chosen(&g, &worst.chosen_edges()).unwrap();
        let (ham, trace) = path(&g, &OrderPolicy::Explicit(order)).unwrap();
        assert_eq!(ham.length(&g), 13);
        let report = analyze_trace(&g, &trace).unwrap();
        assert!(report.laminar_ok && report.main2_ok && report.placement_ok, "{report:?}");
    }

    #[test]
    fn no_culprit_weight_without_back_edges_into_culprits() {
        // zero weights everywhere: every back edge has weight 0
        let g = WeightedDigraph::new(vec![1, 1, 1], vec![vec![0; 3]; 3]).unwrap();
        let (_, trace) = path(&g, &OrderPolicy::Lexicographic).unwrap();
        let report = analyze_trace(&g, &trace).unwrap();
        assert_eq!(report.w_bc, 0);
        assert!(report.main2_ok);
    }

    #[test]
    fn capacity_guard() {
        let n = 16;
        let g = WeightedDigraph::new(vec![1; n], vec![vec![0; n]; n]).unwrap();
        let (_, trace) = path(&g, &OrderPolicy::Lexicographic).unwrap();
        assert!(matches!(analyze_trace(&g, &trace), Err(ScsError::Capacity(_))));
    }
}
