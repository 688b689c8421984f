//! Structural analyses of a claimed unique mismatch-free terminal assembly
//! at temperature 1: cycles, glue-side pair statistics, 1-occurrence tiles,
//! and a linter for the necessary conditions such an assembly satisfies.
//!
//! A lint diagnostic proves the input is not such an instance. An empty
//! lint is necessary but not sufficient; combine it with
//! [`crate::sim::is_umfta`].

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::assembly::Assembly;
use crate::bond::{BondEdge, BondGraph, GlueSidePair};
use crate::error::{Error, Result};
use crate::geom::Cell;
use crate::sim::{self, Caps, NotUmftaReason, UmftaVerdict};
use crate::system::{TileId, TileSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagnosticCode {
    /// Two facing glues differ.
    Mismatch,
    /// A glue-side pair occurs twice on one simple cycle.
    RepeatedPairOnCycle,
    /// A glue-side pair labels both a cycle edge and a bridge.
    PairOnAndOffCycle,
    /// Tree bond graph with fewer than two 1-occurrence tiles.
    TooFewOneOccurrence,
    /// 1-occurrence tiles do not induce a connected subgraph.
    OneOccDisconnected,
    /// A pair joining two 1-occurrence tiles occurs more than once.
    OneOccPairRepeated,
    /// Tree path between two occurrences of a tile uses different sides.
    TwoOccDifferentGlueSide,
    /// The closure has several terminal assemblies.
    MultipleTerminals,
    /// The closure hit a cap (unbounded growth suspected).
    Growth,
}

impl DiagnosticCode {
    pub const STRUCTURAL: [DiagnosticCode; 7] = [
        DiagnosticCode::Mismatch,
        DiagnosticCode::RepeatedPairOnCycle,
        DiagnosticCode::PairOnAndOffCycle,
        DiagnosticCode::TooFewOneOccurrence,
        DiagnosticCode::OneOccDisconnected,
        DiagnosticCode::OneOccPairRepeated,
        DiagnosticCode::TwoOccDifferentGlueSide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiagnosticCode::Mismatch => "Mismatch",
            DiagnosticCode::RepeatedPairOnCycle => "RepeatedPairOnCycle",
            DiagnosticCode::PairOnAndOffCycle => "PairOnAndOffCycle",
            DiagnosticCode::TooFewOneOccurrence => "TooFewOneOccurrence",
            DiagnosticCode::OneOccDisconnected => "OneOccDisconnected",
            DiagnosticCode::OneOccPairRepeated => "OneOccPairRepeated",
            DiagnosticCode::TwoOccDifferentGlueSide => "TwoOccDifferentGlueSide",
            DiagnosticCode::MultipleTerminals => "MultipleTerminals",
            DiagnosticCode::Growth => "Growth",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    /// Witness cells, in the assembly's canonical coordinates.
    pub cells: Vec<Cell>,
    pub message: String,
}

impl Diagnostic {
    fn new(code: DiagnosticCode, cells: Vec<Cell>, message: String) -> Self {
        Diagnostic {
            code,
            cells,
            message,
        }
    }
}

impl fmt::Display for Diagnostic {
    /// `CODE cell-list message`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        let cells = if cells.is_empty() { "-".to_string() } else { cells.join(";") };
        write!(f, "{} {} {}", self.code, cells, self.message)
    }
}

/// Bond edges grouped by glue-side pair.
pub fn glue_side_pair_index(
    assembly: &Assembly,
    system: &TileSystem,
) -> BTreeMap<GlueSidePair, Vec<BondEdge>> {
    let g = BondGraph::new(assembly, system);
    let mut index: BTreeMap<GlueSidePair, Vec<BondEdge>> = BTreeMap::new();
    for e in g.edges() {
        index.entry(e.pair).or_default().push(*e);
    }
    index
}

/// BFS spanning tree from the first node: `parent[n] = (parent node, edge)`.
fn spanning_tree(g: &BondGraph) -> Vec<Option<(usize, usize)>> {
    let n = g.nodes().len();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, e));
                    queue.push_back(v);
                }
            }
        }
    }
    parent
}

/// Fundamental cycles of a BFS spanning tree, one per non-tree edge in
/// canonical edge order. Each cycle is listed as its edges, starting with
/// the non-tree edge.
pub fn find_simple_cycles(g: &BondGraph) -> Vec<Vec<BondEdge>> {
    let parent = spanning_tree(g);
    let tree_edges: BTreeSet<usize> = parent.iter().flatten().map(|&(_, e)| e).collect();
    let depth = |mut v: usize| {
        let mut d = 0;
        while let Some((p, _)) = parent[v] {
            v = p;
            d += 1;
        }
        d
    };
    let mut cycles = Vec::new();
    for (ei, e) in g.edges().iter().enumerate() {
        if tree_edges.contains(&ei) {
            continue;
        }
        let mut u = g.node_index(e.a).unwrap();
        let mut v = g.node_index(e.b).unwrap();
        let (mut du, mut dv) = (depth(u), depth(v));
        let mut left = Vec::new();
        let mut right = Vec::new();
        while du > dv {
            let (p, pe) = parent[u].unwrap();
            left.push(g.edges()[pe]);
            u = p;
            du -= 1;
        }
        while dv > du {
            let (p, pe) = parent[v].unwrap();
            right.push(g.edges()[pe]);
            v = p;
            dv -= 1;
        }
        while u != v {
            let (pu, eu) = parent[u].unwrap();
            let (pv, ev) = parent[v].unwrap();
            left.push(g.edges()[eu]);
            right.push(g.edges()[ev]);
            u = pu;
            v = pv;
        }
        let mut cycle = vec![*e];
        cycle.extend(right);
        cycle.extend(left.into_iter().rev());
        cycles.push(cycle);
    }
    cycles
}

pub fn is_tree(g: &BondGraph) -> bool {
    g.is_tree()
}

/// Whether removing `edge` disconnects its endpoints.
pub fn is_bridge(g: &BondGraph, edge: &BondEdge) -> bool {
    let start = g.node_index(edge.a).unwrap();
    let goal = g.node_index(edge.b).unwrap();
    let mut seen = vec![false; g.nodes().len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &(v, e) in g.neighbors(u) {
            if g.edges()[e].key() == edge.key() || seen[v] {
                continue;
            }
            if v == goal {
                return false;
            }
            seen[v] = true;
            stack.push(v);
        }
    }
    true
}

/// A simple cycle through both edges, as a closed list of cells, if one
/// exists. Uses two vertex-disjoint paths (unit vertex capacities).
pub fn common_simple_cycle(g: &BondGraph, e1: &BondEdge, e2: &BondEdge) -> Option<Vec<Cell>> {
    if e1.key() == e2.key() {
        return None;
    }
    let n = g.nodes().len();
    let idx = |c: Cell| g.node_index(c).unwrap();
    let excluded = |e: usize| {
        let k = g.edges()[e].key();
        k == e1.key() || k == e2.key()
    };
    let shared = [e1.a, e1.b]
        .into_iter()
        .find(|&c| e2.touches(c));
    if let Some(x) = shared {
        // cycle y - x - z closed by a path z .. y avoiding x
        let y = idx(e1.other(x));
        let z = idx(e2.other(x));
        let xi = idx(x);
        let mut prev = vec![usize::MAX; n];
        prev[z] = z;
        let mut queue = VecDeque::from([z]);
        while let Some(u) = queue.pop_front() {
            for &(v, e) in g.neighbors(u) {
                if v == xi || excluded(e) || prev[v] != usize::MAX {
                    continue;
                }
                prev[v] = u;
                queue.push_back(v);
            }
        }
        if prev[y] == usize::MAX {
            return None;
        }
        let mut cycle = vec![x];
        let mut u = y;
        while u != z {
            cycle.push(g.nodes()[u]);
            u = prev[u];
        }
        cycle.push(g.nodes()[z]);
        return Some(cycle);
    }

    // node-split flow network: v_in = 2v, v_out = 2v + 1, source 2n, sink 2n+1
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        net.add(2 * v, 2 * v + 1);
    }
    for (ei, e) in g.edges().iter().enumerate() {
        if excluded(ei) {
            continue;
        }
        let (u, v) = (idx(e.a), idx(e.b));
        net.add(2 * u + 1, 2 * v);
        net.add(2 * v + 1, 2 * u);
    }
    let (a, b) = (idx(e1.a), idx(e1.b));
    let (c, d) = (idx(e2.a), idx(e2.b));
    net.add(source, 2 * a);
    net.add(source, 2 * b);
    net.add(2 * c + 1, sink);
    net.add(2 * d + 1, sink);
    if net.max_flow(source, sink, 2) < 2 {
        return None;
    }
    let paths = net.paths(source, sink);
    let to_cells = |p: &Vec<usize>| -> Vec<usize> {
        p.iter().filter(|&&x| x < 2 * n && x % 2 == 0).map(|x| x / 2).collect()
    };
    let pa = paths.iter().map(to_cells).find(|p| p[0] == a)?;
    let pb = paths.iter().map(to_cells).find(|p| p[0] == b)?;
    // a -> ... -> (c|d) -> other end of e2 -> ... -> b -> a
    let mut cycle: Vec<Cell> = pa.iter().map(|&v| g.nodes()[v]).collect();
    cycle.extend(pb.iter().rev().map(|&v| g.nodes()[v]));
    Some(cycle)
}

struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, u: usize, v: usize) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(1);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && !seen[v] {
                        seen[v] = true;
                        via[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Decomposes the unit flow into source-to-sink node paths.
    fn paths(&mut self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            let mut path = vec![s];
            let mut u = s;
            while u != t {
                // forward edges carrying flow have residual reverse capacity
                let next = self.adj[u]
                    .iter()
                    .copied()
                    .find(|&e| e % 2 == 0 && self.cap[e] == 0 && self.cap[e ^ 1] > 0);
                let Some(e) = next else {
                    return out;
                };
                self.cap[e ^ 1] -= 1;
                u = self.to[e];
                path.push(u);
            }
            out.push(path);
        }
    }
}

fn one_occurrence_cells(assembly: &Assembly) -> Vec<Cell> {
    let counts = assembly.occurrence_counts();
    assembly
        .cells()
        .iter()
        .filter(|(_, t)| counts[t] == 1)
        .map(|c| c.0)
        .collect()
}

/// Connected components of the subgraph of `g` induced by `cells`.
fn induced_components(g: &BondGraph, cells: &[Cell]) -> Vec<Vec<Cell>> {
    let keep: BTreeSet<usize> = cells.iter().map(|&c| g.node_index(c).unwrap()).collect();
    let mut seen = BTreeSet::new();
    let mut comps = Vec::new();
    for &start in &keep {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(v, _) in g.neighbors(u) {
                if keep.contains(&v) && seen.insert(v) {
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort();
        comps.push(comp.into_iter().map(|i| g.nodes()[i]).collect());
    }
    comps
}

/// Cells along the unique tree path from `from` to `to`, inclusive.
pub fn tree_path(g: &BondGraph, from: Cell, to: Cell) -> Vec<Cell> {
    let n = g.nodes().len();
    let s = g.node_index(from).unwrap();
    let t = g.node_index(to).unwrap();
    let mut prev = vec![usize::MAX; n];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    assert!(prev[t] != usize::MAX, "cells are not connected");
    let mut path = vec![to];
    let mut u = t;
    while u != s {
        u = prev[u];
        path.push(g.nodes()[u]);
    }
    path.reverse();
    path
}

/// Structural necessary conditions (a)-(g); see [`DiagnosticCode`].
pub fn lint_assembly(system: &TileSystem, assembly: &Assembly) -> Vec<Diagnostic> {
    use DiagnosticCode::*;
    let mut out = Vec::new();
    let g = BondGraph::new(assembly, system);
    let name = |t: TileId| system.tile(t).name.as_str();
    let pair_name = |p: &GlueSidePair| format!("({}, {})", system.glue_name(p.glue), p.axis);

    for (a, b) in assembly.mismatches(system) {
        out.push(Diagnostic::new(
            Mismatch,
            vec![a, b],
            format!("facing glues of {} and {} differ", name(assembly.get(a).unwrap()), name(assembly.get(b).unwrap())),
        ));
    }

    let index = glue_side_pair_index(assembly, system);
    for (pair, edges) in &index {
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if let Some(cycle) = common_simple_cycle(&g, &edges[i], &edges[j]) {
                    out.push(Diagnostic::new(
                        RepeatedPairOnCycle,
                        cycle,
                        format!(
                            "glue-side pair {} occurs on edges {} and {} of one simple cycle",
                            pair_name(pair),
                            edges[i],
                            edges[j]
                        ),
                    ));
                }
            }
        }
        let (bridges, on_cycle): (Vec<&BondEdge>, Vec<&BondEdge>) =
            edges.iter().partition(|e| is_bridge(&g, e));
        if !bridges.is_empty() && !on_cycle.is_empty() {
            out.push(Diagnostic::new(
                PairOnAndOffCycle,
                vec![on_cycle[0].a, on_cycle[0].b, bridges[0].a, bridges[0].b],
                format!(
                    "glue-side pair {} labels cycle edge {} and bridge {}",
                    pair_name(pair),
                    on_cycle[0],
                    bridges[0]
                ),
            ));
        }
    }

    let tree = g.is_tree();
    let one_occ = one_occurrence_cells(assembly);
    if tree && assembly.len() >= 2 && one_occ.len() < 2 {
        out.push(Diagnostic::new(
            TooFewOneOccurrence,
            one_occ.clone(),
            format!(
                "tree assembly of {} cells has {} 1-occurrence tile(s); at least two are required",
                assembly.len(),
                one_occ.len()
            ),
        ));
    }

    let comps = induced_components(&g, &one_occ);
    if comps.len() > 1 {
        out.push(Diagnostic::new(
            OneOccDisconnected,
            comps.iter().map(|c| c[0]).collect(),
            format!("1-occurrence tiles split into {} bond-connected groups", comps.len()),
        ));
    }

    let counts = assembly.occurrence_counts();
    let one = |c: Cell| counts[&assembly.get(c).unwrap()] == 1;
    for (pair, edges) in &index {
        if edges.len() > 1 {
            if let Some(e) = edges.iter().find(|e| one(e.a) && one(e.b)) {
                out.push(Diagnostic::new(
                    OneOccPairRepeated,
                    edges.iter().flat_map(|e| [e.a, e.b]).collect(),
                    format!(
                        "glue-side pair {} joins 1-occurrence tiles at {} but occurs {} times",
                        pair_name(pair),
                        e,
                        edges.len()
                    ),
                ));
            }
        }
    }

    if tree {
        let mut by_tile: BTreeMap<TileId, Vec<Cell>> = BTreeMap::new();
        for &(c, t) in assembly.cells() {
            by_tile.entry(t).or_default().push(c);
        }
        for (t, cells) in by_tile.iter().filter(|(_, c)| c.len() > 1) {
            for i in 0..cells.len() {
                for j in i + 1..cells.len() {
                    let path = tree_path(&g, cells[i], cells[j]);
                    let first = cells[i].side_towards(path[1]).unwrap();
                    let last = cells[j].side_towards(path[path.len() - 2]).unwrap();
                    if first != last {
                        out.push(Diagnostic::new(
                            TwoOccDifferentGlueSide,
                            vec![cells[i], cells[j]],
                            format!(
                                "path between occurrences of {} leaves via {} and enters via {}",
                                name(*t),
                                first,
                                last
                            ),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Structural lint plus the closure verdict: `MultipleTerminals` when the
/// saturated closure has several terminals, `Growth` when a cap was hit,
/// `Mismatch` for a mismatched producible.
pub fn lint_umfta(system: &TileSystem, assembly: &Assembly, caps: Caps) -> (Vec<Diagnostic>, UmftaVerdict) {
    let mut diags = lint_assembly(system, assembly);
    let (verdict, _) = sim::is_umfta(system, caps);
    diags.extend(verdict_diagnostic(system, &verdict));
    (diags, verdict)
}

pub fn verdict_diagnostic(system: &TileSystem, verdict: &UmftaVerdict) -> Option<Diagnostic> {
    match verdict {
        UmftaVerdict::Yes { .. } => None,
        UmftaVerdict::No {
            reason: NotUmftaReason::MultipleTerminals(ts),
        } => Some(Diagnostic::new(
            DiagnosticCode::MultipleTerminals,
            Vec::new(),
            format!("closure has {} terminal assemblies", ts.len()),
        )),
        UmftaVerdict::No {
            reason: NotUmftaReason::NoTerminal,
        } => Some(Diagnostic::new(
            DiagnosticCode::MultipleTerminals,
            Vec::new(),
            "closure has no terminal assembly".into(),
        )),
        UmftaVerdict::No {
            reason: NotUmftaReason::Mismatch(a),
        } => Some(Diagnostic::new(
            DiagnosticCode::Mismatch,
            a.mismatches(system).into_iter().flat_map(|(p, q)| [p, q]).collect(),
            format!("producible assembly of {} cells has a mismatch", a.len()),
        )),
        UmftaVerdict::Unknown { witness, .. } => Some(Diagnostic::new(
            DiagnosticCode::Growth,
            Vec::new(),
            format!("closure reached a cap; largest producible has {} cells", witness.len()),
        )),
    }
}

/// Restriction of the assembly to its 1-occurrence tiles.
pub fn one_occurrence_subassembly(assembly: &Assembly, system: &TileSystem) -> Result<Assembly> {
    let g = BondGraph::new(assembly, system);
    let cells = one_occurrence_cells(assembly);
    if cells.is_empty() || induced_components(&g, &cells).len() != 1 {
        return Err(Error::NotConnected);
    }
    let keep: BTreeSet<Cell> = cells.into_iter().collect();
    assembly.restrict(|c, _| keep.contains(&c))
}

/// Canonically least bond edge joining two 1-occurrence tiles of a tree
/// assembly.
pub fn find_one_occurrence_edge(assembly: &Assembly, system: &TileSystem) -> Result<BondEdge> {
    one_occurrence_edges(assembly, system)?
        .into_iter()
        .next()
        .ok_or(Error::NoSuchEdge)
}

/// All bond edges joining two 1-occurrence tiles, canonical order.
pub fn one_occurrence_edges(assembly: &Assembly, system: &TileSystem) -> Result<Vec<BondEdge>> {
    let g = BondGraph::new(assembly, system);
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let counts = assembly.occurrence_counts();
    let one = |c: Cell| counts[&assembly.get(c).unwrap()] == 1;
    Ok(g.edges()
        .iter()
        .filter(|e| one(e.a) && one(e.b))
        .copied()
        .collect())
}

/// Tile type -> cells, for callers that need the occurrences themselves.
pub fn occurrences(assembly: &Assembly) -> HashMap<TileId, Vec<Cell>> {
    let mut m: HashMap<TileId, Vec<Cell>> = HashMap::new();
    for &(c, t) in assembly.cells() {
        m.entry(t).or_default().push(c);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geom::Axis;

    fn asm(s: &TileSystem, cells: &[(i32, i32, &str)]) -> Assembly {
        Assembly::canonicalize(
            cells
                .iter()
                .map(|&(x, y, n)| (Cell::new(x, y), s.tile_by_name(n).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn pair_index_examples() {
        let (s, a) = fixtures::domino();
        let idx = glue_side_pair_index(&a, &s);
        assert_eq!(idx.len(), 1);
        let (pair, edges) = idx.iter().next().unwrap();
        assert_eq!(pair.axis, Axis::Horizontal);
        assert_eq!(edges.len(), 1);

        let (s, a) = fixtures::square4();
        let idx = glue_side_pair_index(&a, &s);
        assert_eq!(idx.len(), 4);
        assert!(idx.values().all(|e| e.len() == 1));

        let mut s = TileSystem::new(1);
        s.add_tile_named("t", ["g", "-", "g", "-"]);
        let a = asm(&s, &[(0, 0, "t"), (0, 1, "t"), (0, 2, "t")]);
        let idx = glue_side_pair_index(&a, &s);
        assert_eq!(idx.len(), 1);
        assert_eq!(idx.values().next().unwrap().len(), 2);
        assert_eq!(idx.keys().next().unwrap().axis, Axis::Vertical);
    }

    #[test]
    fn cycle_basis_sizes() {
        let (s, a) = fixtures::path3();
        let g = BondGraph::new(&a, &s);
        assert!(is_tree(&g));
        assert!(find_simple_cycles(&g).is_empty());

        let (s, a) = fixtures::square4();
        let g = BondGraph::new(&a, &s);
        let cycles = find_simple_cycles(&g);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);

        let (s, a) = fixtures::block2x3();
        let g = BondGraph::new(&a, &s);
        assert_eq!(g.edges().len(), 7);
        assert_eq!(find_simple_cycles(&g).len(), 2);
    }

    #[test]
    fn fundamental_cycles_are_closed_walks() {
        let (s, a) = fixtures::block2x3();
        let g = BondGraph::new(&a, &s);
        for cycle in find_simple_cycles(&g) {
            let mut deg: HashMap<Cell, usize> = HashMap::new();
            for e in &cycle {
                *deg.entry(e.a).or_default() += 1;
                *deg.entry(e.b).or_default() += 1;
            }
            assert!(deg.values().all(|&d| d == 2));
        }
    }

    #[test]
    fn clean_fixtures_lint_empty() {
        for (name, s, a) in fixtures::umfta_fixtures() {
            assert!(lint_assembly(&s, &a).is_empty(), "{name}: {:?}", lint_assembly(&s, &a));
        }
    }

    #[test]
    fn common_cycle_between_opposite_square_edges() {
        let (s, a) = fixtures::square4();
        let g = BondGraph::new(&a, &s);
        let e = g.edges();
        let cyc = common_simple_cycle(&g, &e[0], &e[3]).unwrap();
        assert_eq!(cyc.len(), 4);
        let cyc = common_simple_cycle(&g, &e[0], &e[1]).unwrap();
        assert_eq!(cyc.len(), 4);
        let (s, a) = fixtures::path3();
        let g = BondGraph::new(&a, &s);
        assert!(common_simple_cycle(&g, &g.edges()[0], &g.edges()[1]).is_none());
    }

    #[test]
    fn one_occurrence_subassembly_examples() {
        let (s, a) = fixtures::path3();
        assert_eq!(one_occurrence_subassembly(&a, &s).unwrap(), a);
        let (s, a) = fixtures::star4();
        assert_eq!(one_occurrence_subassembly(&a, &s).unwrap(), a);

        // a - t - t - c with the middle tiles sharing a type
        let mut s = TileSystem::new(1);
        s.add_tile_named("a", ["-", "x", "-", "-"]);
        s.add_tile_named("t", ["-", "x", "-", "x"]);
        s.add_tile_named("c", ["-", "-", "-", "x"]);
        let a = asm(&s, &[(0, 0, "a"), (1, 0, "t"), (2, 0, "t"), (3, 0, "c")]);
        assert!(matches!(one_occurrence_subassembly(&a, &s), Err(Error::NotConnected)));
        assert!(lint_assembly(&s, &a)
            .iter()
            .any(|d| d.code == DiagnosticCode::OneOccDisconnected));
    }

    #[test]
    fn one_occurrence_edge_examples() {
        let (s, a) = fixtures::domino();
        let e = find_one_occurrence_edge(&a, &s).unwrap();
        assert_eq!(e.key(), (Cell::new(0, 0), Cell::new(1, 0)));
        let (s, a) = fixtures::path3();
        let e = find_one_occurrence_edge(&a, &s).unwrap();
        assert_eq!(e.key(), (Cell::new(0, 0), Cell::new(1, 0)));
        let (s, a) = fixtures::square4();
        assert!(matches!(find_one_occurrence_edge(&a, &s), Err(Error::NotATree)));
    }

    #[test]
    fn one_occurrence_edge_at_two_tile_leaf_pair() {
        // r - m - m - m column where only the top pair is 1-occurrence:
        // m repeats along a horizontal arm, the leaf pair hangs off the end.
        let mut s = TileSystem::new(1);
        s.add_tile_named("m", ["-", "x", "-", "x"]);
        s.add_tile_named("p", ["y", "-", "-", "x"]);
        s.add_tile_named("q", ["-", "-", "y", "-"]);
        s.add_tile_named("l", ["-", "x", "-", "-"]);
        let a = asm(
            &s,
            &[(0, 0, "l"), (1, 0, "m"), (2, 0, "m"), (3, 0, "p"), (3, 1, "q")],
        );
        let e = find_one_occurrence_edge(&a, &s).unwrap();
        assert_eq!(e.key(), (Cell::new(3, 0), Cell::new(3, 1)));
    }
}
