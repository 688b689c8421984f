//! The compilation pipeline: treeify, path rewrite, macrotile compilation
//! and cut weakening.

mod macrotile;
mod path;
mod pipeline;
mod treeify;
mod walk;

pub use macrotile::{compile_macrotiles, weaken_cut, MacrotileSpec, SubEdge, WeakenedCut};
pub use path::{bfs_orientation, tree_path_edges, uniquify_path, Orientation};
pub use pipeline::{choose_start, size_separable_compile, EdgePolicy, PipelineTrace, Stage, WalkChoice};
pub use treeify::treeify;
pub use walk::{boundary_walk, halfway_edge, BoundaryWalk, Halfway, WalkStep};
