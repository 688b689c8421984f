use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::assembly::Assembly;
use crate::bond::{BondEdge, BondGraph, GlueSidePair};
use crate::error::{Error, Result};
use crate::geom::{Axis, Cell, Corner, Side};
use crate::system::{GlueId, TileId, TileSystem};

use super::path::Orientation;
use super::walk::{BoundaryWalk, Halfway, WalkStep};


/// The two corners along a side, upper/left first.
fn side_corners(side: Side) -> [Corner; 2] {
    match side {
        Side::N => [Corner::NW, Corner::NE],
        Side::E => [Corner::NE, Corner::SE],
        Side::S => [Corner::SW, Corner::SE],
        Side::W => [Corner::NW, Corner::SW],
    }
}

#[derive(Clone, Copy)]
enum UnitSide {
    /// Sub-edge `pos` of macroside `side`.
    External(Side, usize),
    /// Internal unit edge nearest a macroside.
    Internal(Side),
}

/// Role of each side (N, E, S, W) of a quadrant unit.
fn unit_sides(q: Corner) -> [UnitSide; 4] {
    use UnitSide::*;
    match q {
        Corner::NW => [External(Side::N, 0), Internal(Side::N), Internal(Side::W), External(Side::W, 0)],
        Corner::NE => [External(Side::N, 1), External(Side::E, 0), Internal(Side::E), Internal(Side::N)],
        Corner::SW => [Internal(Side::W), Internal(Side::S), External(Side::S, 0), External(Side::W, 1)],
        Corner::SE => [Internal(Side::E), External(Side::E, 1), External(Side::S, 1), Internal(Side::S)],
    }
}

fn unit_cell(c: Cell, q: Corner) -> Cell {
    let (ox, oy) = q.unit_offset();
    Cell::new(2 * c.x + ox, 2 * c.y + oy)
}

/// Sub-edge position used when crossing out of a tile through `side`.
fn crossing_position(side: Side) -> usize {
    match side {
        Side::E | Side::N => 1,
        Side::W | Side::S => 0,
    }
}

/// The 2x2 block of unit tiles standing in for one source tile type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacrotileSpec {
    pub source_tile: TileId,
    /// Unit tile ids in NW, NE, SW, SE order.
    pub units: [TileId; 4],
    /// Internal glue nearest each macroside (N, E, S, W).
    pub internal: [Option<GlueId>; 4],
    /// Sub-edge glues of each macroside, upper/left first.
    pub external: [Option<[GlueId; 2]>; 4],
}

impl MacrotileSpec {
    pub fn unit(&self, q: Corner) -> TileId {
        self.units[Corner::ALL.iter().position(|&c| c == q).unwrap()]
    }
}

/// Scale-2, temperature-2 compilation of a tree assembly. On every bond the
/// sub-edge crossed first by the walk gets strength 2 and the other
/// strength 1. Inside each macrotile the unit edge nearest a macroside
/// carries a glue unless that side is the incoming one: strength 2 next to
/// an unbonded side, 1 next to an outgoing side.
pub fn compile_macrotiles(
    system: &TileSystem,
    assembly: &Assembly,
    walk: &BoundaryWalk,
    orientation: &Orientation,
) -> Result<(TileSystem, Assembly, Vec<MacrotileSpec>)> {
    let g = BondGraph::new(assembly, system);
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if orientation.root != walk.first_endpoint {
        return Err(Error::PreconditionFailed(
            "orientation root differs from the walk's first endpoint".into(),
        ));
    }

    // first-visited position per glue-side pair
    let mut first_seen: BTreeSet<(Cell, Cell)> = BTreeSet::new();
    let mut hi_position: BTreeMap<GlueSidePair, (usize, BondEdge)> = BTreeMap::new();
    for step in &walk.steps {
        let WalkStep::Cross { edge, side, .. } = *step else {
            continue;
        };
        if !first_seen.insert(edge.key()) {
            continue;
        }
        let pos = crossing_position(side);
        match hi_position.get(&edge.pair) {
            Some(&(p, other)) if p != pos => {
                return Err(Error::InconsistentOrientation(format!(
                    "glue {} is first crossed on different sub-edges at {} and {}",
                    system.glue_name(edge.pair.glue),
                    other,
                    edge
                )));
            }
            Some(_) => {}
            None => {
                hi_position.insert(edge.pair, (pos, edge));
            }
        }
    }
    let mut axes_of: HashMap<GlueId, BTreeSet<Axis>> = HashMap::new();
    for pair in hi_position.keys() {
        axes_of.entry(pair.glue).or_default().insert(pair.axis);
    }

    let mut out = TileSystem::new(2);
    let mut sub_glues: BTreeMap<GlueSidePair, [GlueId; 2]> = BTreeMap::new();
    for (&pair, &(pos, _)) in &hi_position {
        let base = system.glue_name(pair.glue);
        let stem = if axes_of[&pair.glue].len() > 1 {
            let a = if pair.axis == Axis::Horizontal { "h" } else { "v" };
            format!("{base}#{a}")
        } else {
            base.to_string()
        };
        let hi = out.add_glue(&format!("{stem}#hi"), 2)?;
        let lo = out.add_glue(&format!("{stem}#lo"), 1)?;
        let mut slots = [lo; 2];
        slots[pos] = hi;
        sub_glues.insert(pair, slots);
    }

    // orientation profile per tile type (consistency checked upstream)
    let mut profile: BTreeMap<TileId, Cell> = BTreeMap::new();
    for &(c, t) in assembly.cells() {
        profile.entry(t).or_insert(c);
    }

    let mut specs = Vec::new();
    let mut spec_of: HashMap<TileId, usize> = HashMap::new();
    for (&t, &c) in &profile {
        let tile = system.tile(t);
        let incoming = orientation.incoming(c);
        let outgoing = orientation.outgoing(c);
        let mut external = [None; 4];
        let mut internal = [None; 4];
        for side in Side::ALL {
            let pair = GlueSidePair {
                glue: tile.glue(side),
                axis: side.axis(),
            };
            let bonded = g.edge_at(c, side).is_some();
            if let Some(&slots) = sub_glues.get(&pair) {
                external[side.index()] = Some(slots);
            }
            if Some(side) == incoming {
                continue;
            }
            let strength = if outgoing.contains(&side) {
                1
            } else if bonded {
                return Err(Error::InconsistentOrientation(format!(
                    "bond on side {side} of {} is neither incoming nor outgoing",
                    tile.name
                )));
            } else {
                2
            };
            let name = out.fresh_glue_name(&format!("{}!{}", tile.name, side));
            internal[side.index()] = Some(out.add_glue(&name, strength)?);
        }
        let mut units = [0; 4];
        for (k, &q) in Corner::ALL.iter().enumerate() {
            let glues = unit_sides(q).map(|role| match role {
                UnitSide::External(side, pos) => {
                    external[side.index()].map_or(GlueId::NULL, |s| s[pos])
                }
                UnitSide::Internal(side) => internal[side.index()].unwrap_or(GlueId::NULL),
            });
            let name = out.fresh_tile_name(&format!("{}.{}", tile.name, q.name()));
            units[k] = out.add_tile(&name, glues);
        }
        spec_of.insert(t, specs.len());
        specs.push(MacrotileSpec {
            source_tile: t,
            units,
            internal,
            external,
        });
    }

    let scaled = Assembly::canonicalize(assembly.cells().iter().flat_map(|&(c, t)| {
        let spec = &specs[spec_of[&t]];
        Corner::ALL.map(|q| (unit_cell(c, q), spec.unit(q)))
    }))?;
    Ok((out, scaled, specs))
}

/// Glue changes made by [`weaken_cut`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakenedCut {
    /// The two sub-edge glues left at strength 1 across the cut.
    pub cut_glues: [GlueId; 2],
    /// Sub-edge glues raised to strength 2.
    pub raised: Vec<GlueId>,
    /// Internal glues removed from the path macrotiles.
    pub deleted: Vec<GlueId>,
    /// Unit counts of the two halves.
    pub halves: (usize, usize),
}

/// A sub-edge of the compiled assembly, as its two unit cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubEdge {
    pub a: Cell,
    pub b: Cell,
}

/// Splits the compiled assembly into the two halves of the walk separated
/// by the start crossing and the halfway crossing. The two crossing
/// sub-edges drop to strength 1, the other sub-edge of every path bond
/// rises to 2, and the internal glues next to path macrosides or joining
/// the halves are removed.
pub fn weaken_cut(
    system: &TileSystem,
    assembly: &Assembly,
    walk: &BoundaryWalk,
    halfway: &Halfway,
    path: &[BondEdge],
) -> Result<(TileSystem, Assembly, WeakenedCut)> {
    let units: Vec<Cell> = walk.sweeps().into_iter().map(|(c, q)| unit_cell(c, q)).collect();
    let n = units.len();
    let s = halfway.sweeps_before;
    if s == 0 || s >= n {
        return Err(Error::PreconditionFailed("halfway crossing at the walk start".into()));
    }
    let first: BTreeSet<Cell> = units[..s].iter().copied().collect();
    let g = BondGraph::new(assembly, system);
    let mut pair_count: HashMap<GlueSidePair, usize> = HashMap::new();
    for e in g.edges() {
        *pair_count.entry(e.pair).or_default() += 1;
    }
    let unique = |e: &BondEdge| -> Result<GlueId> {
        if pair_count[&e.pair] != 1 {
            return Err(Error::PathNotUnique(system.glue_name(e.pair.glue).to_string()));
        }
        Ok(e.pair.glue)
    };
    let bond = |a: Cell, b: Cell| -> Result<BondEdge> {
        g.edge_between(a, b)
            .copied()
            .ok_or_else(|| Error::PreconditionFailed(format!("no bond between units {a} and {b}")))
    };

    let cut_edges = [bond(units[n - 1], units[0])?, bond(units[s - 1], units[s])?];
    let cut_glues = [unique(&cut_edges[0])?, unique(&cut_edges[1])?];
    let is_cut = |e: &BondEdge| cut_edges.iter().any(|c| c.key() == e.key());

    let mut sys = system.clone();
    let mut raised = Vec::new();
    for edge in path {
        for pos in 0..2 {
            let a = unit_cell(edge.a, side_corners(edge.side)[pos]);
            let b = unit_cell(edge.b, side_corners(edge.side.opposite())[pos]);
            let sub = bond(a, b)?;
            if !is_cut(&sub) {
                let glue = unique(&sub)?;
                sys.set_strength(glue, 2);
                raised.push(glue);
            }
        }
    }
    for glue in cut_glues {
        sys.set_strength(glue, 1);
    }

    // internal edges next to each path macroside, plus anything else
    // still joining the halves
    let mut doomed: BTreeSet<(Cell, Cell)> = BTreeSet::new();
    for edge in path {
        for (c, side) in [(edge.a, edge.side), (edge.b, edge.side.opposite())] {
            let [p, q] = side_corners(side).map(|k| unit_cell(c, k));
            if let Some(e) = g.edge_between(p, q) {
                doomed.insert(e.key());
            }
        }
    }
    for e in g.edges() {
        if first.contains(&e.a) != first.contains(&e.b) && !is_cut(e) {
            if !system.glue_name(e.pair.glue).contains('!') {
                return Err(Error::PreconditionFailed(format!(
                    "sub-edge {e} joins the two halves"
                )));
            }
            doomed.insert(e.key());
        }
    }
    let counts = assembly.occurrence_counts();
    let mut deleted = Vec::new();
    for key in doomed {
        let e = g.edge_between(key.0, key.1).unwrap();
        for (c, side) in [(e.a, e.side), (e.b, e.side.opposite())] {
            let t = assembly.get(c).unwrap();
            if counts[&t] != 1 {
                return Err(Error::PathNotUnique(sys.tile(t).name.clone()));
            }
            sys.tile_mut(t).glues[side.index()] = GlueId::NULL;
        }
        deleted.push(e.pair.glue);
    }
    let report = WeakenedCut {
        cut_glues,
        raised,
        deleted,
        halves: (s, n - s),
    };
    Ok((sys, assembly.clone(), report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::transform::{bfs_orientation, boundary_walk};

    fn compile(
        f: fn() -> (TileSystem, Assembly),
        first: Cell,
    ) -> (TileSystem, Assembly, Vec<MacrotileSpec>) {
        let (s, a) = f();
        let g = BondGraph::new(&a, &s);
        let e = *g.edges().iter().find(|e| e.touches(first)).unwrap();
        let w = boundary_walk(&a, &s, &e, first).unwrap();
        let o = bfs_orientation(&a, &s, first).unwrap();
        compile_macrotiles(&s, &a, &w, &o).unwrap()
    }

    #[test]
    fn domino_compiles_to_eight_units() {
        let (s2, a2, specs) = compile(fixtures::domino, Cell::new(0, 0));
        assert_eq!(s2.temperature(), 2);
        assert_eq!(s2.size(), 8);
        assert_eq!(a2.extent(), (4, 2));
        assert_eq!(specs.len(), 2);
        let e = specs[0].external[Side::E.index()].unwrap();
        let mut st = [s2.strength(e[0]), s2.strength(e[1])];
        st.sort();
        assert_eq!(st, [1, 2]);
        assert!(a2.is_mismatch_free(&s2));
    }

    #[test]
    fn root_has_four_internal_glues_others_three() {
        let (s2, _, specs) = compile(fixtures::path3, Cell::new(0, 0));
        assert_eq!(s2.size(), 12);
        let present = |k: usize| specs[k].internal.iter().filter(|g| g.is_some()).count();
        assert_eq!(present(0), 4);
        assert_eq!(present(1), 3);
        assert_eq!(present(2), 3);
        let b = &specs[1];
        assert!(b.internal[Side::W.index()].is_none());
        assert_eq!(s2.strength(b.internal[Side::E.index()].unwrap()), 1);
        assert_eq!(s2.strength(b.internal[Side::N.index()].unwrap()), 2);
    }

    #[test]
    fn compiled_terminal_is_two_stable() {
        for (name, s, a) in fixtures::umfta_fixtures() {
            let (s, a) = crate::transform::treeify(&s, &a).unwrap();
            let g = BondGraph::new(&a, &s);
            let e = g.edges()[0];
            let w = boundary_walk(&a, &s, &e, e.a).unwrap();
            let o = bfs_orientation(&a, &s, e.a).unwrap();
            let (s2, a2, _) = compile_macrotiles(&s, &a, &w, &o).unwrap();
            assert!(s2.size() <= 4 * s.size(), "{name}");
            assert!(crate::bond::is_tau_stable(&a2, &s2, 2), "{name}");
            assert!(a2.is_mismatch_free(&s2), "{name}");
            assert_eq!(a2.shape(), a.shape().scale(2), "{name}");
        }
    }
}
