use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::analysis::tree_path;
use crate::assembly::Assembly;
use crate::bond::{BondEdge, BondGraph};
use crate::error::{Error, Result};
use crate::geom::{Cell, Side};
use crate::system::{TileId, TileSystem};

/// Edges of the tree path from `from` to `to`, both included, starting
/// with `from`.
pub fn tree_path_edges(g: &BondGraph, from: &BondEdge, to: &BondEdge) -> Vec<BondEdge> {
    if from.key() == to.key() {
        return vec![*from];
    }
    let cells = tree_path(g, from.a, to.a);
    let mut edges: Vec<BondEdge> = cells
        .windows(2)
        .map(|w| *g.edge_between(w[0], w[1]).unwrap())
        .collect();
    if edges.first().map(|e| e.key()) != Some(from.key()) {
        edges.insert(0, *from);
    }
    if edges.last().map(|e| e.key()) != Some(to.key()) {
        edges.push(*to);
    }
    edges
}

/// Cells touched by a path of edges, in path order.
pub(crate) fn path_cells(edges: &[BondEdge]) -> Vec<Cell> {
    let first = edges[0];
    let mut cells = if edges.len() == 1 {
        vec![first.a, first.b]
    } else {
        let start = if edges[1].touches(first.b) { first.a } else { first.b };
        vec![start, first.other(start)]
    };
    for e in &edges[1..] {
        let last = *cells.last().unwrap();
        cells.push(e.other(last));
    }
    cells
}

/// Gives each edge on the path from `e_prime` to `e` a fresh glue (except
/// `e_prime`, whose pair is already unique) and each path cell a tile type
/// of its own. Returns the rewritten system and assembly and the path cells.
pub fn uniquify_path(
    system: &TileSystem,
    assembly: &Assembly,
    e_prime: &BondEdge,
    e: &BondEdge,
) -> Result<(TileSystem, Assembly, Vec<Cell>)> {
    let g = BondGraph::new(assembly, system);
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let counts = assembly.occurrence_counts();
    let one = |c: Cell| counts[&assembly.get(c).unwrap()] == 1;
    if !one(e_prime.a) || !one(e_prime.b) {
        return Err(Error::PreconditionFailed(format!(
            "{e_prime} does not join two 1-occurrence tiles"
        )));
    }
    let edges = tree_path_edges(&g, e_prime, e);
    let cells = path_cells(&edges);

    let mut sys = system.clone();
    let mut placed: BTreeMap<Cell, TileId> = assembly.cells().iter().copied().collect();
    for (i, &c) in cells.iter().enumerate() {
        let t = placed[&c];
        if counts[&t] > 1 {
            let tile = sys.tile(t).clone();
            let name = sys.fresh_tile_name(&format!("{}~p{}", tile.name, i));
            placed.insert(c, sys.add_tile(&name, tile.glues));
        }
    }
    for (i, edge) in edges.iter().enumerate().skip(1) {
        let old = edge.pair.glue;
        let name = sys.fresh_glue_name(&format!("{}~p{}", sys.glue_name(old), i));
        let fresh = sys.add_glue(&name, sys.strength(old))?;
        for (c, side) in [(edge.a, edge.side), (edge.b, edge.side.opposite())] {
            sys.tile_mut(placed[&c]).glues[side.index()] = fresh;
        }
    }
    let out = Assembly::canonicalize(placed)?;
    Ok((sys, out, cells))
}

/// Parent/child direction of every bond of a tree assembly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub root: Cell,
    /// Child -> (parent, side of the child facing the parent).
    pub parent: BTreeMap<Cell, (Cell, Side)>,
    /// Cells in BFS order.
    pub order: Vec<Cell>,
}

impl Orientation {
    pub fn incoming(&self, c: Cell) -> Option<Side> {
        self.parent.get(&c).map(|p| p.1)
    }

    /// Sides of `c` leading to its children.
    pub fn outgoing(&self, c: Cell) -> BTreeSet<Side> {
        Side::ALL
            .into_iter()
            .filter(|&s| self.parent.get(&c.step(s)).is_some_and(|p| p.0 == c))
            .collect()
    }

    /// The parent endpoint of a bond.
    pub fn parent_of(&self, edge: &BondEdge) -> Cell {
        match self.parent.get(&edge.b) {
            Some(&(p, _)) if p == edge.a => edge.a,
            _ => edge.b,
        }
    }
}

/// Breadth-first orientation from `root`, neighbours visited N, W, S, E.
/// Every occurrence of a tile type must have the same incoming side and the
/// same outgoing sides.
pub fn bfs_orientation(assembly: &Assembly, system: &TileSystem, root: Cell) -> Result<Orientation> {
    let g = BondGraph::new(assembly, system);
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let mut parent = BTreeMap::new();
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    let mut seen = BTreeSet::from([root]);
    while let Some(c) = queue.pop_front() {
        for side in [Side::N, Side::W, Side::S, Side::E] {
            if g.edge_at(c, side).is_some() {
                let d = c.step(side);
                if seen.insert(d) {
                    parent.insert(d, (c, side.opposite()));
                    order.push(d);
                    queue.push_back(d);
                }
            }
        }
    }
    let o = Orientation {
        root,
        parent,
        order,
    };
    let mut profile: HashMap<TileId, (Option<Side>, BTreeSet<Side>, Cell)> = HashMap::new();
    for &(c, t) in assembly.cells() {
        let here = (o.incoming(c), o.outgoing(c));
        match profile.get(&t) {
            Some((inc, out, first)) if (inc, out) != (&here.0, &here.1) => {
                return Err(Error::InconsistentOrientation(format!(
                    "tile {} at {} and {} is oriented differently",
                    system.tile(t).name,
                    first,
                    c
                )));
            }
            Some(_) => {}
            None => {
                profile.insert(t, (here.0, here.1, c));
            }
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn edge(g: &BondGraph, a: (i32, i32), b: (i32, i32)) -> BondEdge {
        *g.edge_between(Cell::new(a.0, a.1), Cell::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn path3_rewrites_only_e() {
        let (s, a) = fixtures::path3();
        let g = BondGraph::new(&a, &s);
        let (ep, e) = (edge(&g, (0, 0), (1, 0)), edge(&g, (1, 0), (2, 0)));
        let (s2, a2, cells) = uniquify_path(&s, &a, &ep, &e).unwrap();
        assert_eq!(s2.size(), s.size());
        assert_eq!(cells, vec![Cell::new(0, 0), Cell::new(1, 0), Cell::new(2, 0)]);
        let g2 = BondGraph::new(&a2, &s2);
        assert_eq!(g2.edges()[0].pair, g.edges()[0].pair);
        assert_eq!(s2.glue_name(g2.edges()[1].pair.glue), "g2~p1");
        assert_eq!(a2.shape(), a.shape());
    }

    #[test]
    fn same_edge_is_a_no_op() {
        let (s, a) = fixtures::domino();
        let g = BondGraph::new(&a, &s);
        let e = g.edges()[0];
        let (s2, a2, cells) = uniquify_path(&s, &a, &e, &e).unwrap();
        assert_eq!(s2, s);
        assert_eq!(a2, a);
        assert_eq!(cells, vec![e.a, e.b]);
    }

    #[test]
    fn multi_occurrence_path_tile_gets_a_copy() {
        // l - m - m - r with the m tiles sharing a type
        let mut s = TileSystem::new(1);
        s.add_tile_named("l", ["-", "x", "-", "-"]);
        s.add_tile_named("m", ["-", "x", "-", "x"]);
        s.add_tile_named("q", ["-", "y", "-", "x"]);
        s.add_tile_named("r", ["-", "-", "-", "y"]);
        let a = Assembly::canonicalize(
            [(0, "l"), (1, "m"), (2, "m"), (3, "q"), (4, "r")]
                .map(|(x, n)| (Cell::new(x, 0), s.tile_by_name(n).unwrap())),
        )
        .unwrap();
        let g = BondGraph::new(&a, &s);
        let ep = edge(&g, (3, 0), (4, 0));
        let e = edge(&g, (1, 0), (2, 0));
        let (s2, a2, cells) = uniquify_path(&s, &a, &ep, &e).unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!(s2.size(), s.size() + 2);
        assert!(s2.size() <= 2 * s.size());
        let counts = a2.occurrence_counts();
        for c in &cells {
            assert_eq!(counts[&a2.get(*c).unwrap()], 1);
        }
        assert_eq!(a2.get(Cell::new(0, 0)), a.get(Cell::new(0, 0)));
    }

    #[test]
    fn orientation_examples() {
        let (s, a) = fixtures::path3();
        let o = bfs_orientation(&a, &s, Cell::new(0, 0)).unwrap();
        assert_eq!(o.incoming(Cell::new(1, 0)), Some(Side::W));
        assert_eq!(o.incoming(Cell::new(2, 0)), Some(Side::W));
        assert_eq!(o.outgoing(Cell::new(0, 0)), BTreeSet::from([Side::E]));

        let (s, a) = fixtures::star4();
        let o = bfs_orientation(&a, &s, Cell::new(0, 0)).unwrap();
        let c = Cell::new(1, 0);
        assert_eq!(o.incoming(c), Some(Side::W));
        assert_eq!(o.outgoing(c), BTreeSet::from([Side::N, Side::E]));
        assert_eq!(o.order.len(), 4);
    }

    #[test]
    fn repeated_tile_is_entered_from_one_side() {
        // U shape: t hangs off both arms
        let mut s = TileSystem::new(1);
        s.add_tile_named("l", ["c", "a", "-", "-"]);
        s.add_tile_named("r", ["-", "b", "-", "a"]);
        s.add_tile_named("rr", ["c", "-", "-", "b"]);
        s.add_tile_named("t", ["-", "-", "c", "-"]);
        let a = Assembly::canonicalize(
            [(0, 0, "l"), (1, 0, "r"), (2, 0, "rr"), (0, 1, "t"), (2, 1, "t")]
                .map(|(x, y, n)| (Cell::new(x, y), s.tile_by_name(n).unwrap())),
        )
        .unwrap();
        let o = bfs_orientation(&a, &s, Cell::new(1, 0)).unwrap();
        assert_eq!(o.incoming(Cell::new(0, 1)), Some(Side::S));
        assert_eq!(o.incoming(Cell::new(2, 1)), Some(Side::S));
        assert!(matches!(
            bfs_orientation(&a, &s, Cell::new(0, 1)),
            Err(Error::InconsistentOrientation(_))
        ));
    }
}
