//! Small gadgets: b-matchings on triangles and barbells, triangle packings,
//! connected-matching covers and cherry covers.

pub mod barbell;
pub mod bmatching;
pub mod cherries;
pub mod matchings;
pub mod paths;
pub mod triangles;

pub use barbell::{assemble_barbells, Barbell, BarbellAssembly};
pub use bmatching::{barbell_b_matching, triangle_b_matching, BMatching, DemandFunction};
pub use cherries::{cherry_cover, Cherry, CherryCover, CherryRound};
pub use matchings::{greedy_connected_matching_cover, ConnectedMatching, MatchingCover, MatchingRound};
pub use paths::{longest_path, LongestPath, EXACT_PATH_LIMIT};
pub use triangles::{triangle_packing, PackingMode, Triangle};
