//! Shortest common superstring workbench.
//!
//! The greedy family (GA, the locally greedy LGA, and the generic PATH/CYC
//! scans over pseudo-overlap graphs), exact Held–Karp oracles, the known
//! adversarial instance families and an exhaustive search harness for worst
//! approximation ratios, measured by length or per symbol.

pub mod cli;
pub mod error;
pub mod graph;
pub mod instances;
pub mod search;
pub mod solvers;
pub mod strings;

pub use error::{Result, ScsError};
pub use graph::{
    check_properties, cycle_length_sigma, overlap_graph, sigma_graph, subgraph_length, subgraph_weight, CycleCover,
    EdgeRef, HamPath, PropertyReport, WeightedDigraph,
};
pub use solvers::{Algo, OrderPolicy, Solution, TieBreaker};
pub use strings::{
    count_occurrences, merge, normalize, normalize_with, overlap_len, split, superstring_of_permutation, Instance,
    NormalizeOptions, OverlapSplit, Sym, SENTINEL,
};
