//! Weighted bond graphs and temperature stability.

use std::fmt;

use crate::assembly::Assembly;
use crate::geom::{Axis, Cell, Side};
use crate::system::{GlueId, TileSystem};

/// A glue together with the axis it bonds on; the label of a bond edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlueSidePair {
    pub glue: GlueId,
    pub axis: Axis,
}

/// A positive-strength bond between two cells. `a < b` in canonical cell
/// order, `side` is the side of `a` facing `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BondEdge {
    pub a: Cell,
    pub b: Cell,
    pub side: Side,
    pub strength: u32,
    pub pair: GlueSidePair,
}

impl BondEdge {
    pub fn other(&self, c: Cell) -> Cell {
        if c == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, c: Cell) -> bool {
        self.a == c || self.b == c
    }

    /// The side of cell `c` (an endpoint) that carries this bond.
    pub fn side_at(&self, c: Cell) -> Side {
        if c == self.a {
            self.side
        } else {
            self.side.opposite()
        }
    }

    pub fn key(&self) -> (Cell, Cell) {
        (self.a, self.b)
    }
}

impl fmt::Display for BondEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Bond graph over the occupied cells of an assembly. Node `i` is the
/// assembly's `i`-th cell in canonical order.
#[derive(Clone, Debug)]
pub struct BondGraph {
    nodes: Vec<Cell>,
    edges: Vec<BondEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl BondGraph {
    pub fn new(assembly: &Assembly, system: &TileSystem) -> BondGraph {
        let nodes: Vec<Cell> = assembly.positions().collect();
        let mut edges = Vec::new();
        for (i, j, side) in assembly.adjacencies() {
            let ta = system.tile(assembly.cells()[i].1);
            let tb = system.tile(assembly.cells()[j].1);
            let g = ta.glue(side);
            if g != tb.glue(side.opposite()) || g.is_null() {
                continue;
            }
            let strength = system.strength(g);
            if strength == 0 {
                continue;
            }
            edges.push(BondEdge {
                a: nodes[i],
                b: nodes[j],
                side,
                strength,
                pair: GlueSidePair {
                    glue: g,
                    axis: side.axis(),
                },
            });
        }
        edges.sort();
        let mut adjacency = vec![Vec::new(); nodes.len()];
        for (e, edge) in edges.iter().enumerate() {
            let i = nodes.binary_search(&edge.a).unwrap();
            let j = nodes.binary_search(&edge.b).unwrap();
            adjacency[i].push((j, e));
            adjacency[j].push((i, e));
        }
        BondGraph {
            nodes,
            edges,
            adjacency,
        }
    }

    pub fn nodes(&self) -> &[Cell] {
        &self.nodes
    }

    /// Edges sorted canonically by `(a, b)`.
    pub fn edges(&self) -> &[BondEdge] {
        &self.edges
    }

    pub fn node_index(&self, c: Cell) -> Option<usize> {
        self.nodes.binary_search(&c).ok()
    }

    /// `(neighbour node, edge index)` pairs.
    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    pub fn edge_between(&self, a: Cell, b: Cell) -> Option<&BondEdge> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.edges.iter().find(|e| e.a == a && e.b == b)
    }

    /// The bond on side `side` of cell `c`, if any.
    pub fn edge_at(&self, c: Cell, side: Side) -> Option<&BondEdge> {
        let n = self.node_index(c)?;
        self.adjacency[n]
            .iter()
            .map(|&(_, e)| &self.edges[e])
            .find(|e| e.side_at(c) == side)
    }

    pub fn degree(&self, c: Cell) -> usize {
        self.node_index(c).map_or(0, |n| self.adjacency[n].len())
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(n) = stack.pop() {
            for &(m, _) in &self.adjacency[n] {
                if !seen[m] {
                    seen[m] = true;
                    count += 1;
                    stack.push(m);
                }
            }
        }
        count == self.nodes.len()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.nodes.len() && self.is_connected()
    }

    /// Weight of a global minimum edge cut (Stoer-Wagner). Zero when the
    /// graph is disconnected; `None` for graphs with fewer than two nodes.
    pub fn min_cut(&self) -> Option<u64> {
        let n = self.nodes.len();
        if n < 2 {
            return None;
        }
        let mut w = vec![vec![0u64; n]; n];
        for e in &self.edges {
            let i = self.node_index(e.a).unwrap();
            let j = self.node_index(e.b).unwrap();
            w[i][j] += e.strength as u64;
            w[j][i] += e.strength as u64;
        }
        Some(stoer_wagner(w))
    }

    /// Connected with every 2-partition held by total strength at least `tau`.
    pub fn is_tau_stable(&self, tau: u32) -> bool {
        match self.min_cut() {
            None => true,
            Some(cut) => cut >= tau as u64,
        }
    }
}

fn stoer_wagner(mut w: Vec<Vec<u64>>) -> u64 {
    let n = w.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let m = active.len();
        let mut in_a = vec![false; m];
        let mut conn = vec![0u64; m];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..m {
            let mut pick = usize::MAX;
            for k in 0..m {
                if !in_a[k] && (pick == usize::MAX || conn[k] > conn[pick]) {
                    pick = k;
                }
            }
            in_a[pick] = true;
            if step == m - 1 {
                best = best.min(conn[pick]);
                last = pick;
            } else {
                prev = pick;
                for k in 0..m {
                    if !in_a[k] {
                        conn[k] += w[active[pick]][active[k]];
                    }
                }
            }
        }
        // merge `last` into `prev`
        let (s, t) = (active[prev], active[last]);
        for &k in &active {
            w[s][k] += w[t][k];
            w[k][s] = w[s][k];
        }
        w[s][s] = 0;
        active.remove(last);
    }
    best
}

pub fn is_tau_stable(assembly: &Assembly, system: &TileSystem, tau: u32) -> bool {
    BondGraph::new(assembly, system).is_tau_stable(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    /// Minimum over all 2-partitions of the node set.
    fn brute_min_cut(nodes: usize, edges: &[(usize, usize, u64)]) -> u64 {
        (1u32..(1 << nodes) - 1)
            .map(|mask| {
                edges
                    .iter()
                    .filter(|&&(a, b, _)| ((mask >> a) & 1) != ((mask >> b) & 1))
                    .map(|e| e.2)
                    .sum::<u64>()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn domino_bond_graph() {
        let (s, a) = fixtures::domino();
        let g = BondGraph::new(&a, &s);
        assert_eq!(g.nodes().len(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].strength, 1);
        assert!(g.is_tau_stable(1));
        assert!(!g.is_tau_stable(2));
    }

    #[test]
    fn square4_is_a_four_cycle_and_two_stable() {
        let (s, a) = fixtures::square4();
        let g = BondGraph::new(&a, &s);
        assert_eq!(g.nodes().len(), 4);
        assert_eq!(g.edges().len(), 4);
        assert!(g.nodes().iter().all(|&c| g.degree(c) == 2));
        let idx = |c| g.node_index(c).unwrap();
        let edges: Vec<_> = g
            .edges()
            .iter()
            .map(|e| (idx(e.a), idx(e.b), e.strength as u64))
            .collect();
        assert_eq!(brute_min_cut(4, &edges), 2);
        assert!(g.is_tau_stable(2));
        assert!(!g.is_tau_stable(3));
    }

    #[test]
    fn null_facing_sides_give_no_edge() {
        let mut s = TileSystem::new(1);
        s.add_tile_named("a", ["-", "-", "-", "-"]);
        let a = Assembly::canonicalize([(Cell::new(0, 0), 0), (Cell::new(1, 0), 0)]).unwrap();
        let g = BondGraph::new(&a, &s);
        assert!(g.edges().is_empty());
        assert!(!g.is_tau_stable(1));
    }

    #[test]
    fn single_tile_is_stable_at_any_temperature() {
        let mut s = TileSystem::new(5);
        s.add_tile_named("a", ["g", "-", "-", "-"]);
        assert!(is_tau_stable(&Assembly::single(0), &s, 5));
    }

    proptest! {
        #[test]
        fn stoer_wagner_matches_brute_force(
            n in 2usize..9,
            raw in proptest::collection::vec((0usize..9, 0usize..9, 0u64..4), 0..20),
        ) {
            let edges: Vec<_> = raw.into_iter().filter(|e| e.0 < n && e.1 < n && e.0 != e.1).collect();
            let mut w = vec![vec![0u64; n]; n];
            for &(a, b, s) in &edges {
                w[a][b] += s;
                w[b][a] += s;
            }
            prop_assert_eq!(stoer_wagner(w), brute_min_cut(n, &edges));
        }
    }
}
