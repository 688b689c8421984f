use std::collections::HashMap;

use crate::assembly::Assembly;
use crate::bond::{BondEdge, BondGraph};
use crate::error::{Error, Result};
use crate::geom::{Cell, Corner, Side};
use crate::system::TileSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkStep {
    /// Leave `from` through its side `side`.
    Cross {
        edge: BondEdge,
        from: Cell,
        side: Side,
    },
    Sweep {
        cell: Cell,
        corner: Corner,
    },
}

/// Counterclockwise outline of a tree bond graph: enter a tile through side
/// `d`, sweep its corners counterclockwise (N, W, S, E order) until the next
/// bonded side, cross it. Starts by crossing `start` away from
/// `first_endpoint` and stops just before crossing it that way again.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWalk {
    pub steps: Vec<WalkStep>,
    pub start: BondEdge,
    pub first_endpoint: Cell,
}

impl BoundaryWalk {
    pub fn sweep_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, WalkStep::Sweep { .. }))
            .count()
    }

    /// `(sweeps before, step)` for every crossing, in walk order.
    pub fn crossings(&self) -> Vec<(usize, WalkStep)> {
        let mut count = 0;
        let mut out = Vec::new();
        for &step in &self.steps {
            match step {
                WalkStep::Sweep { .. } => count += 1,
                WalkStep::Cross { .. } => out.push((count, step)),
            }
        }
        out
    }

    /// Swept `(cell, corner)` pairs in walk order.
    pub fn sweeps(&self) -> Vec<(Cell, Corner)> {
        self.steps
            .iter()
            .filter_map(|s| match *s {
                WalkStep::Sweep { cell, corner } => Some((cell, corner)),
                WalkStep::Cross { .. } => None,
            })
            .collect()
    }

    /// Sweep index of each `(cell, corner)`.
    pub fn sweep_index(&self) -> HashMap<(Cell, Corner), usize> {
        self.sweeps().into_iter().enumerate().map(|(i, k)| (k, i)).collect()
    }
}

pub fn boundary_walk(
    assembly: &Assembly,
    system: &TileSystem,
    start: &BondEdge,
    first_endpoint: Cell,
) -> Result<BoundaryWalk> {
    let g = BondGraph::new(assembly, system);
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let start = *g
        .edge_between(start.a, start.b)
        .ok_or_else(|| Error::PreconditionFailed(format!("{start} is not a bond")))?;
    if !start.touches(first_endpoint) {
        return Err(Error::PreconditionFailed(format!(
            "{first_endpoint} is not an endpoint of {start}"
        )));
    }
    let n = g.nodes().len();
    let mut steps = Vec::with_capacity(6 * n);
    let mut from = first_endpoint;
    let mut exit = start.side_at(first_endpoint);
    let mut edge = start;
    loop {
        steps.push(WalkStep::Cross {
            edge,
            from,
            side: exit,
        });
        let cell = from.step(exit);
        let mut side = exit.opposite();
        loop {
            steps.push(WalkStep::Sweep {
                cell,
                corner: Corner::after(side),
            });
            side = side.ccw();
            if let Some(e) = g.edge_at(cell, side) {
                edge = *e;
                exit = side;
                from = cell;
                break;
            }
        }
        if from == first_endpoint && edge.key() == start.key() {
            break;
        }
        debug_assert!(steps.len() <= 6 * n);
    }
    Ok(BoundaryWalk {
        steps,
        start,
        first_endpoint,
    })
}

/// The crossing nearest the middle of the walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Halfway {
    pub edge: BondEdge,
    /// Sweeps before the crossing.
    pub sweeps_before: usize,
    /// Index of the crossing among the walk's crossings.
    pub crossing: usize,
    /// `sweeps_before - 2n`.
    pub imbalance: i64,
}

/// Crossing whose preceding sweep count is closest to half the walk,
/// ties to the earlier one.
pub fn halfway_edge(walk: &BoundaryWalk) -> Halfway {
    let total = walk.sweep_count() as i64;
    let half = total / 2;
    let (crossing, (s, step)) = walk
        .crossings()
        .into_iter()
        .enumerate()
        .min_by_key(|&(_, (s, _))| ((s as i64 - half).abs(), s))
        .expect("walk has crossings");
    let WalkStep::Cross { edge, .. } = step else {
        unreachable!()
    };
    Halfway {
        edge,
        sweeps_before: s,
        crossing,
        imbalance: s as i64 - half,
    }
}
