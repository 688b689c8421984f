//! Brute-force 2HAM producibility closure.
//!
//! Starting from every single tile, pairs of producible assemblies are
//! combined at every translation whose seam strength reaches the
//! temperature, until no new canonical assembly appears. Every pair is
//! examined exactly once, so terminality falls out of the same pass.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::assembly::Assembly;
use crate::geom::{Cell, Side};
use crate::system::{GlueId, TileId, TileSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Assemblies with more cells than this are not added.
    pub max_size: usize,
    /// Closure stops once this many distinct producibles exist.
    pub max_count: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_size: 64,
            max_count: 100_000,
        }
    }
}

impl Caps {
    pub fn new(max_size: usize, max_count: usize) -> Caps {
        Caps {
            max_size,
            max_count,
        }
    }
}

/// Dense occupancy plus glue-site indexes for fast offset scanning.
struct Footprint<'a> {
    assembly: &'a Assembly,
    width: i32,
    height: i32,
    grid: Vec<Option<TileId>>,
    /// Empty neighbour positions reachable through a non-null glue:
    /// (position, side of the occupied tile facing it, glue).
    sites: Vec<(Cell, Side, GlueId)>,
    /// (side, glue) -> cells whose tile carries `glue` on `side`.
    by_glue: HashMap<(Side, GlueId), Vec<Cell>>,
}

impl<'a> Footprint<'a> {
    fn new(assembly: &'a Assembly, system: &TileSystem) -> Self {
        let (width, height) = assembly.extent();
        let mut grid = vec![None; (width * height) as usize];
        for &(c, t) in assembly.cells() {
            grid[(c.y * width + c.x) as usize] = Some(t);
        }
        let mut fp = Footprint {
            assembly,
            width,
            height,
            grid,
            sites: Vec::new(),
            by_glue: HashMap::new(),
        };
        for &(c, t) in assembly.cells() {
            let tile = system.tile(t);
            for side in Side::ALL {
                let g = tile.glue(side);
                if g.is_null() || system.strength(g) == 0 {
                    continue;
                }
                fp.by_glue.entry((side, g)).or_default().push(c);
                if fp.at(c.step(side)).is_none() {
                    fp.sites.push((c.step(side), side, g));
                }
            }
        }
        fp
    }

    fn at(&self, c: Cell) -> Option<TileId> {
        if c.x < 0 || c.y < 0 || c.x >= self.width || c.y >= self.height {
            None
        } else {
            self.grid[(c.y * self.width + c.x) as usize]
        }
    }
}

/// Seam strength between `a` and `b` translated by `(dx, dy)`, or `None`
/// if the two overlap.
fn seam_strength(
    a: &Footprint,
    b: &Footprint,
    dx: i32,
    dy: i32,
    system: &TileSystem,
) -> Option<u32> {
    let mut total = 0;
    for &(c, t) in b.assembly.cells() {
        let p = c.offset(dx, dy);
        if a.at(p).is_some() {
            return None;
        }
        let tile = system.tile(t);
        for side in Side::ALL {
            let g = tile.glue(side);
            if g.is_null() {
                continue;
            }
            if let Some(n) = a.at(p.step(side)) {
                if system.tile(n).glue(side.opposite()) == g {
                    total += system.strength(g);
                }
            }
        }
    }
    Some(total)
}

fn candidate_offsets(a: &Footprint, b: &Footprint) -> Vec<(i32, i32)> {
    let mut offsets = Vec::new();
    for &(p, side, g) in &a.sites {
        if let Some(cells) = b.by_glue.get(&(side.opposite(), g)) {
            for c in cells {
                offsets.push((p.x - c.x, p.y - c.y));
            }
        }
    }
    offsets.sort_unstable_by_key(|&(dx, dy)| (dy, dx));
    offsets.dedup();
    offsets
}

fn combine(a: &Assembly, b: &Assembly, dx: i32, dy: i32) -> Assembly {
    let mut cells = a.cells().to_vec();
    cells.extend(b.cells().iter().map(|&(c, t)| (c.offset(dx, dy), t)));
    Assembly::from_cells_unchecked(cells)
}

fn attachments_fp(
    a: &Footprint,
    b: &Footprint,
    system: &TileSystem,
) -> Vec<((i32, i32), Assembly)> {
    let tau = system.temperature();
    candidate_offsets(a, b)
        .into_iter()
        .filter(|&(dx, dy)| seam_strength(a, b, dx, dy, system).is_some_and(|s| s >= tau))
        .map(|(dx, dy)| ((dx, dy), combine(a.assembly, b.assembly, dx, dy)))
        .collect()
}

/// Every translation of `b` (relative to the canonical positions of both)
/// at which it attaches to `a` with seam strength at least the temperature,
/// with the resulting canonical superassembly. Sorted by offset `(dy, dx)`.
pub fn attachment_offsets(
    a: &Assembly,
    b: &Assembly,
    system: &TileSystem,
) -> Vec<((i32, i32), Assembly)> {
    let fa = Footprint::new(a, system);
    let fb = Footprint::new(b, system);
    attachments_fp(&fa, &fb, system)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapKind {
    Size,
    Count,
}

/// Outcome of a producibility closure.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    /// Sorted by `(size, cells)`.
    pub producibles: Vec<Assembly>,
    /// Producibles that combine with no producible (itself included).
    pub terminals: Vec<Assembly>,
    /// True iff the closure finished without any cap rejection.
    pub saturated: bool,
    pub size_cap_hits: usize,
    pub count_cap_exceeded: bool,
}

impl ClosureResult {
    pub fn first_cap(&self) -> Option<CapKind> {
        if self.count_cap_exceeded {
            Some(CapKind::Count)
        } else if self.size_cap_hits > 0 {
            Some(CapKind::Size)
        } else {
            None
        }
    }

    pub fn non_terminals(&self) -> impl Iterator<Item = &Assembly> {
        self.producibles
            .iter()
            .filter(move |p| self.terminals.binary_search(p).is_err())
    }

    pub fn is_terminal(&self, a: &Assembly) -> bool {
        self.terminals.binary_search(a).is_ok()
    }

    pub fn contains(&self, a: &Assembly) -> bool {
        self.producibles
            .binary_search_by(|p| sort_key(p).cmp(&sort_key(a)))
            .is_ok()
    }

    pub fn largest(&self) -> Option<&Assembly> {
        self.producibles.last()
    }

    /// Number of producibles per size.
    pub fn size_histogram(&self) -> Vec<(usize, usize)> {
        let mut h: Vec<(usize, usize)> = Vec::new();
        for p in &self.producibles {
            match h.last_mut() {
                Some((s, n)) if *s == p.len() => *n += 1,
                _ => h.push((p.len(), 1)),
            }
        }
        h
    }
}

fn sort_key(a: &Assembly) -> (usize, &Assembly) {
    (a.len(), a)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosureOptions {
    /// One operand of every combination must be a single tile.
    pub seeded: bool,
    /// Randomize worklist and partner order with this seed.
    pub shuffle_seed: Option<u64>,
}

pub fn enumerate_producibles(system: &TileSystem, caps: Caps, seeded: bool) -> ClosureResult {
    closure(
        system,
        caps,
        ClosureOptions {
            seeded,
            shuffle_seed: None,
        },
    )
}

pub fn closure(system: &TileSystem, caps: Caps, options: ClosureOptions) -> ClosureResult {
    let mut rng = options.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
    let mut items: Vec<Assembly> = Vec::new();
    let mut index: HashMap<Assembly, usize> = HashMap::new();
    let mut combines = Vec::new();
    let mut worklist = VecDeque::new();
    for t in 0..system.size() as TileId {
        let a = Assembly::single(t);
        if !index.contains_key(&a) {
            index.insert(a.clone(), items.len());
            worklist.push_back(items.len());
            items.push(a);
            combines.push(false);
        }
    }
    // processed items, in processing order; footprints live alongside
    let mut processed: Vec<usize> = Vec::new();
    let mut size_cap_hits = 0;
    let mut count_cap_exceeded = false;

    'outer: while !worklist.is_empty() {
        let n = match rng.as_mut() {
            Some(r) => {
                let k = r.random_range(0..worklist.len());
                worklist.swap_remove_back(k).unwrap()
            }
            None => worklist.pop_front().unwrap(),
        };
        processed.push(n);
        let n_single = items[n].len() == 1;
        let mut partners: Vec<usize> = processed
            .iter()
            .copied()
            .filter(|&m| !options.seeded || n_single || items[m].len() == 1)
            .collect();
        if let Some(r) = rng.as_mut() {
            partners.shuffle(r);
        }
        let fn_ = Footprint::new(&items[n], system);
        let found: Vec<(usize, Vec<Assembly>)> = partners
            .par_iter()
            .map(|&m| {
                let fm = Footprint::new(&items[m], system);
                let combos = attachments_fp(&fn_, &fm, system);
                (m, combos.into_iter().map(|c| c.1).collect())
            })
            .collect();
        for (m, combos) in found {
            if combos.is_empty() {
                continue;
            }
            combines[n] = true;
            combines[m] = true;
            for c in combos {
                if c.len() > caps.max_size {
                    size_cap_hits += 1;
                    continue;
                }
                if index.contains_key(&c) {
                    continue;
                }
                if items.len() >= caps.max_count {
                    count_cap_exceeded = true;
                    break 'outer;
                }
                index.insert(c.clone(), items.len());
                worklist.push_back(items.len());
                items.push(c);
                combines.push(false);
            }
        }
    }

    let saturated = !count_cap_exceeded && size_cap_hits == 0;
    let mut terminals: Vec<Assembly> = items
        .iter()
        .zip(&combines)
        .filter(|(_, &c)| !c)
        .map(|(a, _)| a.clone())
        .collect();
    if !saturated {
        // unprocessed items were never paired; their status is unknown
        let done: std::collections::HashSet<usize> = processed.iter().copied().collect();
        terminals.retain(|a| done.contains(&index[a]));
    }
    terminals.sort();
    let mut producibles = items;
    producibles.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
    ClosureResult {
        producibles,
        terminals,
        saturated,
        size_cap_hits,
        count_cap_exceeded,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UmftaVerdict {
    Yes {
        terminal: Assembly,
    },
    /// Saturated closure that violates the hypothesis.
    No {
        reason: NotUmftaReason,
    },
    /// A cap was hit; `witness` is the largest producible found.
    Unknown {
        cap: CapKind,
        witness: Assembly,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotUmftaReason {
    MultipleTerminals(Vec<Assembly>),
    NoTerminal,
    /// A producible assembly (possibly the terminal) contains a mismatch.
    Mismatch(Assembly),
}

impl UmftaVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, UmftaVerdict::Yes { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            UmftaVerdict::Yes { .. } => "yes",
            UmftaVerdict::No { .. } => "no",
            UmftaVerdict::Unknown { .. } => "unknown",
        }
    }

    pub fn describe(&self) -> String {
        match self {
            UmftaVerdict::Yes { terminal } => format!("yes ({} cells)", terminal.len()),
            UmftaVerdict::No { reason } => match reason {
                NotUmftaReason::MultipleTerminals(t) => format!("no ({} terminals)", t.len()),
                NotUmftaReason::NoTerminal => "no (no terminal assembly)".into(),
                NotUmftaReason::Mismatch(a) => {
                    format!("no (mismatched producible of {} cells)", a.len())
                }
            },
            UmftaVerdict::Unknown { cap, .. } => match cap {
                CapKind::Size => "unknown (size cap)".into(),
                CapKind::Count => "unknown (count cap)".into(),
            },
        }
    }
}

pub fn umfta_verdict(system: &TileSystem, closure: &ClosureResult) -> UmftaVerdict {
    if let Some(cap) = closure.first_cap() {
        return UmftaVerdict::Unknown {
            cap,
            witness: closure.largest().cloned().expect("singles are producible"),
        };
    }
    if let Some(bad) = closure
        .producibles
        .iter()
        .find(|p| !p.is_mismatch_free(system))
    {
        return UmftaVerdict::No {
            reason: NotUmftaReason::Mismatch(bad.clone()),
        };
    }
    match closure.terminals.len() {
        0 => UmftaVerdict::No {
            reason: NotUmftaReason::NoTerminal,
        },
        1 => UmftaVerdict::Yes {
            terminal: closure.terminals[0].clone(),
        },
        _ => UmftaVerdict::No {
            reason: NotUmftaReason::MultipleTerminals(closure.terminals.clone()),
        },
    }
}

/// Runs the closure and classifies the system.
pub fn is_umfta(system: &TileSystem, caps: Caps) -> (UmftaVerdict, ClosureResult) {
    let c = enumerate_producibles(system, caps, false);
    (umfta_verdict(system, &c), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn single_tiles_attach_once_in_domino() {
        let (s, _) = fixtures::domino();
        let offs = attachment_offsets(&Assembly::single(0), &Assembly::single(1), &s);
        assert_eq!(offs.len(), 1);
        assert_eq!(offs[0].0, (1, 0));
        assert_eq!(offs[0].1.len(), 2);
    }

    #[test]
    fn terminal_domino_accepts_nothing() {
        let (s, a) = fixtures::domino();
        assert!(attachment_offsets(&a, &Assembly::single(0), &s).is_empty());
        assert!(attachment_offsets(&a, &a, &s).is_empty());
    }

    #[test]
    fn seam_below_temperature_rejected() {
        let (mut s, _) = fixtures::domino();
        s.set_temperature(2);
        assert!(attachment_offsets(&Assembly::single(0), &Assembly::single(1), &s).is_empty());
    }

    #[test]
    fn domino_closure() {
        let (s, a) = fixtures::domino();
        let c = enumerate_producibles(&s, Caps::new(10, 100), false);
        assert!(c.saturated);
        assert_eq!(c.producibles.len(), 3);
        assert_eq!(c.terminals, vec![a.clone()]);
        assert_eq!(umfta_verdict(&s, &c), UmftaVerdict::Yes { terminal: a });
    }

    #[test]
    fn stacking_system_hits_size_cap() {
        let s = fixtures::stacking();
        let c = enumerate_producibles(&s, Caps::new(6, 100), false);
        assert!(!c.saturated);
        assert!(c.size_cap_hits > 0);
        let sizes: Vec<usize> = c.producibles.iter().map(|p| p.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 5, 6]);
        assert!(c.producibles.iter().all(|p| p.extent().0 == 1));
        match umfta_verdict(&s, &c) {
            UmftaVerdict::Unknown { cap, witness } => {
                assert_eq!(cap, CapKind::Size);
                assert_eq!(witness.len(), 6);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn count_cap_stops_early() {
        let s = fixtures::stacking();
        let c = enumerate_producibles(&s, Caps::new(100, 3), false);
        assert!(c.count_cap_exceeded);
        assert!(!c.saturated);
        assert_eq!(c.producibles.len(), 3);
    }

    #[test]
    fn unattachable_extra_tile_gives_two_terminals() {
        let (mut s, _) = fixtures::domino();
        s.add_tile_named("c", ["-", "-", "-", "lonely"]);
        let (v, _) = is_umfta(&s, Caps::new(10, 100));
        match v {
            UmftaVerdict::No {
                reason: NotUmftaReason::MultipleTerminals(t),
            } => assert_eq!(t.len(), 2),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn self_attaching_assembly_is_not_terminal() {
        // a single tile that binds to a copy of itself
        let mut s = TileSystem::new(1);
        s.add_tile_named("t", ["-", "g", "-", "g"]);
        let c = enumerate_producibles(&s, Caps::new(3, 100), false);
        assert!(c.terminals.iter().all(|t| t.len() == 3) || c.terminals.is_empty());
        assert!(!c.is_terminal(&Assembly::single(0)));
    }
}
