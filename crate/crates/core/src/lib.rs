//! Automorphism groups of vertex-colored graphs by search over ordered
//! partition pairs.
//!
//! A search node is an ordered partition pair (OPP): a top and a bottom
//! partition of the vertices, standing for every permutation that maps each
//! top cell onto the bottom cell at the same position. Nodes are refined to
//! equitability and branched on by mapping one top vertex to each candidate
//! in its bottom cell. Two refinement modes are provided: a conventional one
//! that compares split locations, and an enhanced one that also checks, step
//! by step, that the bottom refines exactly like the top and that new cells
//! have matching edge counts. The enhanced mode prunes conflicting subtrees
//! earlier and never reports more conflicts.
//!
//! ```
//! use oppsym::{parse_graph, search, SearchConfig};
//!
//! let g = parse_graph(b"4 4 1\n0 0 0 0\n0 1\n1 2\n2 3\n3 0\n").unwrap();
//! let result = search(&g, &SearchConfig::default()).unwrap();
//! assert_eq!(result.stats.group_order.to_string(), "8");
//! ```

pub mod cnf;
pub mod compare;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod refine;
pub mod search;

pub use cnf::{cnf_to_graph, parse_cnf, parse_cnf_to_graph, parse_cnf_to_graph_limited, Cnf};
pub use compare::{run_comparison, ComparisonReport};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use graph::{parse_graph, ColoredGraph};
pub use oracle::{brute_force_aut, generated_group_order, orbits_of, GroupSummary, OrbitPartition};
pub use partition::{
    classify, individualize, is_equitable, opp_permutations, Opp, OppClass, OrderedPartition,
};
pub use perm::Permutation;
pub use refine::{
    refine_baseline, refine_enhanced, refine_one, refine_pair, Conflict, ConflictReason,
    RefineMode, RefineOutcome, Trace,
};
pub use search::{
    search, search_observed, select_target, Heuristic, LeafKind, Mode, SearchConfig, SearchError,
    SearchObserver, SearchResult, SearchStats, DEFAULT_MAX_NODES,
};
