//! Algorithms: PATH and CYC over pseudo-overlap graphs, GA and LGA on
//! strings, exact oracles and trace diagnostics.

pub mod diagnostics;
pub mod exact;
pub mod greedy;
pub mod order;
pub mod path;

pub use diagnostics::{analyze_trace, DiagnosticsReport};
pub use exact::{exact_scs, exact_sigma, max_weight_hamiltonian_path, shortest_hamiltonian_path, EXACT_MAX_N, SHP_MAX_N};
pub use greedy::{
    enumerate_instantiations, forced_greedy_run, greedy_scs, locally_greedy_scs, run, Algo, Enumeration, ForcedRun, MergeStep, Solution,
    TieBreaker, DEFAULT_ENUMERATION_BUDGET,
};
pub use order::{edge_order, order_for_chosen, validate_order, OrderPolicy};
pub use path::{cyc, is_laminar, path, BadBackEdge, Blocks, Interval, PathTrace, RejectedEdge, Rejection};
