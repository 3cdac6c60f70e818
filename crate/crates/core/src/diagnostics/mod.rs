//! Executable pieces of the seed-subgraph argument: forest orientation and
//! coloring, balanced cut search, edge-disjoint path counts, the sprinkling
//! union bound, and an end-to-end sprinkling experiment.

mod cut;
mod flow;
mod forest;
mod seed_core;
mod sprinkling;

pub use cut::{count_crossing, find_balanced_cut, min_side_size, CutWitness};
pub use flow::{edge_disjoint_paths, edge_disjoint_paths_excluding};
pub use forest::{
    color_forest, depth_color, orient_forest, verify_upstream_bound, Color, ColoredForest,
    Orientation, Segment, UpstreamReport, UpstreamViolation,
};
pub use seed_core::{default_h_size, seed_core_experiment, SeedCoreReport};
pub use sprinkling::{path_length, sprinkling_bound, SprinklingBound};
