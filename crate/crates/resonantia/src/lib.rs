//! Fullerene graphs as combinatorial objects: validated rotation-system
//! embeddings, isomer generation by face spirals, Kekulé structures and
//! resonant hexagon patterns, pentagon substructure predicates, cyclic
//! edge-cuts, and a census harness that sweeps every isomer in a vertex
//! range and reports the exceptional graphs.

pub mod canon;
pub mod cuts;
pub mod graph;
pub mod harness;
pub mod io;
pub mod matching;
pub mod patterns;
pub mod resonance;
pub mod spiral;

#[cfg(test)]
pub(crate) mod testutil;

pub use canon::{canonical_form, CanonicalCode};
pub use graph::{Face, FullereneGraph, GraphError, MAX_VERTICES};
pub use cuts::{
    apply_cut_operation, cyclic_edge_connectivity, find_nontrivial_cyclic_5_cut_brute,
    has_nontrivial_cyclic_5_cut, is_cyclic_cut, min_cyclic_cut_brute, nabla, CutClass, CutError,
    CutMove, EdgeCut,
};
pub use harness::{
    run_census, structural_sweep, CensusReport, ExceptionalGraph, GraphRecord, GraphRef,
    HarnessError, RunConfig, Tally,
};
pub use io::{read_graphs_from_path, IoError};
pub use spiral::{
    construct_nanotube, enumerate_isomers, unwind_spiral, NanotubeParam, SpiralCode, SpiralError,
};
pub use matching::{
    brute_force_matching_size, gallai_edmonds, has_perfect_matching, is_factor_critical, max_matching, try_perfect_matching,
    GEComponent, GEDecomposition, Matching, MatchingError, PerfectMatching, SimpleGraph,
};
pub use patterns::{
    contains_l, contains_r, is_ipr, pentagon_adjacency, Anchor, PatternKind, PatternWitness,
    PentagonAdjacency,
};
pub use resonance::{
    disjoint_hexagon_patterns, is_k_resonant, is_resonant_pattern, resonant_by_forced_alternation,
    verify_witness, DisjointPatterns, HexPattern, ResonanceError, ResonanceVerdict,
};
