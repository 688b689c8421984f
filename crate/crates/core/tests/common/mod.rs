#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use tilesep_core::*;

/// Every connected, 1-stable sub-configuration of `terminal`, found by brute
/// force over cell subsets. Bonds are read straight off the glue labels.
pub fn connected_subconfigurations(system: &TileSystem, terminal: &Assembly) -> HashSet<Assembly> {
    let cells = terminal.cells();
    let n = cells.len();
    assert!(n <= 16, "oracle is exponential in the terminal size");
    let bonded = |i: usize, j: usize| {
        let (ci, ti) = cells[i];
        let (cj, tj) = cells[j];
        Side::ALL.into_iter().any(|s| {
            ci.step(s) == cj && {
                let g = system.tile(ti).glue(s);
                !g.is_null() && g == system.tile(tj).glue(s.opposite()) && system.strength(g) >= 1
            }
        })
    };
    let mut out = HashSet::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut seen = vec![members[0]];
        let mut queue = VecDeque::from([members[0]]);
        while let Some(i) = queue.pop_front() {
            for &j in &members {
                if !seen.contains(&j) && bonded(i, j) {
                    seen.push(j);
                    queue.push_back(j);
                }
            }
        }
        if seen.len() == members.len() {
            let a = Assembly::canonicalize(members.iter().map(|&i| cells[i])).unwrap();
            out.insert(a);
        }
    }
    out
}

/// Quadrant of a unit tile, from its `.<NW|NE|SW|SE>` name suffix.
pub fn quadrant(system: &TileSystem, tile: TileId) -> Corner {
    let name = &system.tile(tile).name;
    match name.rsplit('.').next() {
        Some("NW") => Corner::NW,
        Some("NE") => Corner::NE,
        Some("SW") => Corner::SW,
        Some("SE") => Corner::SE,
        _ => panic!("{name} is not a unit tile"),
    }
}

/// Whether every unit tile of `a` sits in its named quadrant of one common 2x2 grid.
pub fn on_single_grid(system: &TileSystem, a: &Assembly) -> bool {
    let phases: HashSet<(i32, i32)> = a
        .cells()
        .iter()
        .map(|&(c, t)| {
            let (dx, dy) = quadrant(system, t).unit_offset();
            ((c.x - dx).rem_euclid(2), (c.y - dy).rem_euclid(2))
        })
        .collect();
    phases.len() == 1
}

/// Terminals that are proper subassemblies of some producible.
pub fn swallowed_terminals(closure: &ClosureResult) -> Vec<(Assembly, Assembly)> {
    let mut bad = Vec::new();
    for t in &closure.terminals {
        for p in &closure.producibles {
            if p.len() > t.len() && t.is_subassembly_of(p) {
                bad.push((t.clone(), p.clone()));
            }
        }
    }
    bad
}

pub fn as_set(closure: &ClosureResult) -> HashSet<Assembly> {
    closure.producibles.iter().cloned().collect()
}
