//! Monochromatic tree covers, cycle partitions and the extremal structures
//! around them, for edge-coloured graphs at desk scale.

pub mod budget;
pub mod certificate;
pub mod constructions;
pub mod cover;
pub mod cycles;
mod dsu;
pub mod error;
pub mod graph;
pub mod hamilton;
pub mod hub;
pub mod hypergraph;
pub mod kit;
pub mod rational;
pub mod simple;

pub use budget::{Budget, Outcome};
pub use error::{Error, Result};
pub use graph::{
    blow_up, monochromatic_components, random_coloured_graph, Colour, ColourSet, ColouredGraph, Component,
    CycleKind, DegenerateCycle, IntraColourRule, Vertex,
};
pub use hypergraph::{
    connectivity_hypergraph, duplicate_edges, flatten, is_delta_intersecting, ConnectivityHypergraph,
    HyperEdge, IntersectionProfile, MultiHypergraph,
};
pub use rational::Rational;
pub use simple::SimpleGraph;
pub use certificate::{verify_certificate, Certificate, VerificationReport, Violation, ViolationKind};
pub use cover::{
    evaluate_bounds, exact_cycle_partition, exact_transversal, greedy_degree_transversal, tree_cover,
    tree_cover_number, BoundReport, CoverMode, CyclePartitionCertificate, DeltaValue, Transversal,
    TreeCoverCertificate,
};
pub use cycles::{
    bipartite_cycle_cover, contracted_graph, independence_number, posa_cycle_cover, signature_cover,
    ContractedGraph, IndependentSet, SignatureCover,
};
pub use hub::{
    c_links, hub_search_heuristic, is_expander, simplified_graph, verify_hub, verify_linked_family,
    ConnectingHub, ExpanderParams, ExpanderVerdict, HubParams, HubReport, HubViolationKind, LinkedHubFamily,
};
