//! Spanning-tree packing, arboricity and orientations of graphs, with
//! exact certificates, random graph processes and asymptotic predictions.

pub mod asymptotics;
pub mod cover;
pub mod diagnostics;
pub mod dsu;
pub mod error;
pub mod experiment;
mod flow;
mod forests;
pub mod graph;
pub mod io;
pub mod orientation;
pub mod packing;
pub mod random;

pub use cover::{
    arboricity, arboricity_hitting_times, brute_force_arboricity, cover_with_k_forests, densest_ratio,
    densest_ratio_set, max_avg_degree_subgraph, verify_cover, ArboricityAtLeast, ArboricityResult,
    ArboricityTracker, Cover, DenseSetCertificate, DensityForm,
};
pub use error::{Error, Result};
pub use experiment::{run as run_experiment, ExperimentConfig, ExperimentKind, ExperimentReport};
pub use graph::{Edge, Graph, Partition, Rational, Vertex, VertexSet};
pub use orientation::{
    min_max_indegree, min_max_orientation, orient_k, two_choice_load, LoadResult, Orient, Orientation,
};
pub use packing::{
    brute_force_stp, pack_k_trees, stp_number, stp_number_from, verify_packing, DecompositionKind,
    ForestDecomposition, InvalidDecomposition, Packing, PartitionCertificate, StpResult,
};
pub use random::{gen_gnp, gen_gnm, IncrementalPredicate, ProcessStream, RngSeed};
