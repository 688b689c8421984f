use thiserror::Error;

use crate::analysis::Diagnostic;
use crate::geom::Cell;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("assembly has no cells")]
    EmptyAssembly,
    #[error("assembly domain is not edge-connected")]
    Disconnected,
    #[error("cell ({}, {}) occupied twice", .0.x, .0.y)]
    DuplicateCell(Cell),
    #[error("unknown tile `{0}`")]
    UnknownTile(String),
    #[error("tile index {0} out of range")]
    TileIndex(u32),
    #[error("glue `{0}` declared twice")]
    DuplicateGlue(String),
    #[error("glue `{0}` must have positive strength")]
    ZeroStrength(String),
    #[error("tile system has no tiles")]
    NoTiles,
    #[error("temperature must be positive")]
    ZeroTemperature,
    #[error("1-occurrence cells do not form a connected subassembly")]
    NotConnected,
    #[error("no bond joins two 1-occurrence tiles")]
    NoSuchEdge,
    #[error("bond graph is not a tree")]
    NotATree,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("glue `{0}` on the cut path is not unique in the compiled assembly")]
    PathNotUnique(String),
    #[error("input system does not have a unique mismatch-free finite terminal assembly: {0}")]
    NotUmfta(String),
    #[error("terminal assembly has a single tile")]
    TrivialAssembly,
    #[error("lint found {} violation(s)", .0.len())]
    Lint(Vec<Diagnostic>),
    #[error("verdict unknown under caps: {0}")]
    UnknownUnderCaps(String),
}
