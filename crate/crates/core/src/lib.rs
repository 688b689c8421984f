//! Two-handed tile assembly (2HAM) toolkit.
//!
//! The crate has three layers:
//!
//! * domain types ([`system`], [`assembly`], [`bond`]) for tile systems,
//!   canonical assemblies and weighted bond graphs;
//! * a brute-force producibility closure ([`sim`]) that serves as the
//!   oracle for everything else;
//! * the compilation pipeline ([`analysis`], [`transform`], [`verify`])
//!   that turns a temperature-1 system with a unique mismatch-free terminal
//!   assembly into a scale-2, temperature-2 system whose terminal assembly
//!   is at least twice as large as any other producible assembly.
//!
//! [`format`] and [`render`] provide the text file formats and SVG output
//! used by the command-line tool.

pub mod analysis;
pub mod assembly;
pub mod bond;
mod error;
pub mod fixtures;
pub mod format;
pub mod geom;
pub mod render;
pub mod sim;
pub mod system;
pub mod transform;
pub mod verify;

pub use assembly::{Assembly, Shape};
pub use bond::{BondEdge, BondGraph, GlueSidePair};
pub use error::{Error, Result};
pub use geom::{Axis, Cell, Corner, Side};
pub use sim::{Caps, ClosureResult, UmftaVerdict};
pub use system::{GlueId, Tile, TileId, TileSystem};
