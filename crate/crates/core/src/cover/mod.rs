//! Transversals, tree covers, exact cycle partitions and bound formulas.

pub mod bounds;
pub mod partition;
pub mod transversal;
pub mod tree;

pub use bounds::{evaluate_bounds, BoundReport, BoundValue, DeltaValue};
pub use partition::{exact_cycle_partition, CyclePartitionCertificate, MAX_PARTITION_VERTICES};
pub use transversal::{exact_transversal, greedy_degree_transversal, GreedyTransversal, Transversal};
pub use tree::{spanning_tree, tree_cover, tree_cover_number, CoverMode, SpanningTree, TreeCoverCertificate};
