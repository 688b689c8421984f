//! Canonical assemblies and shapes (equivalence up to translation).

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::geom::{Cell, Side};
use crate::system::{TileId, TileSystem};

/// A finite, edge-connected placement of tiles, stored at its canonical
/// translate (`min x = min y = 0`) with cells sorted by `(y, x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly {
    cells: Vec<(Cell, TileId)>,
}

impl Assembly {
    /// Translates an arbitrary cell map to its canonical translate.
    pub fn canonicalize<I>(raw: I) -> Result<Assembly>
    where
        I: IntoIterator<Item = (Cell, TileId)>,
    {
        let mut cells: Vec<(Cell, TileId)> = raw.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::EmptyAssembly);
        }
        cells.sort_unstable();
        for w in cells.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateCell(w[0].0));
            }
        }
        let a = Self::normalize(cells);
        if !domain_connected(a.cells.iter().map(|c| c.0)) {
            return Err(Error::Disconnected);
        }
        Ok(a)
    }

    /// Canonical translate of cells already known to be non-empty, distinct
    /// and connected. Sorting is redone here.
    pub(crate) fn from_cells_unchecked(mut cells: Vec<(Cell, TileId)>) -> Assembly {
        cells.sort_unstable();
        Self::normalize(cells)
    }

    fn normalize(mut cells: Vec<(Cell, TileId)>) -> Assembly {
        let min_x = cells.iter().map(|c| c.0.x).min().unwrap();
        let min_y = cells.iter().map(|c| c.0.y).min().unwrap();
        if min_x != 0 || min_y != 0 {
            for c in &mut cells {
                c.0 = c.0.offset(-min_x, -min_y);
            }
        }
        Assembly { cells }
    }

    pub fn single(tile: TileId) -> Assembly {
        Assembly {
            cells: vec![(Cell::new(0, 0), tile)],
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[(Cell, TileId)] {
        &self.cells
    }

    pub fn positions(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().map(|c| c.0)
    }

    pub fn position_index(&self, cell: Cell) -> Option<usize> {
        self.cells.binary_search_by(|c| c.0.cmp(&cell)).ok()
    }

    pub fn get(&self, cell: Cell) -> Option<TileId> {
        self.position_index(cell).map(|i| self.cells[i].1)
    }

    /// Width and height of the bounding box.
    pub fn extent(&self) -> (i32, i32) {
        let w = self.cells.iter().map(|c| c.0.x).max().unwrap() + 1;
        let h = self.cells.last().unwrap().0.y + 1;
        (w, h)
    }

    pub fn shape(&self) -> Shape {
        Shape {
            cells: self.positions().collect(),
        }
    }

    /// Tile index -> number of cells holding it.
    pub fn occurrence_counts(&self) -> BTreeMap<TileId, usize> {
        let mut counts = BTreeMap::new();
        for &(_, t) in &self.cells {
            *counts.entry(t).or_insert(0) += 1;
        }
        counts
    }

    /// Replaces every tile index through `remap`.
    pub fn remap_tiles(&self, remap: &[TileId]) -> Assembly {
        Assembly {
            cells: self
                .cells
                .iter()
                .map(|&(c, t)| (c, remap[t as usize]))
                .collect(),
        }
    }

    pub fn with_tile_at(&self, cell: Cell, tile: TileId) -> Assembly {
        let mut a = self.clone();
        let i = a.position_index(cell).expect("cell not in assembly");
        a.cells[i].1 = tile;
        a
    }

    /// Restriction to the given cells, canonicalized.
    pub fn restrict(&self, keep: impl Fn(Cell, TileId) -> bool) -> Result<Assembly> {
        Assembly::canonicalize(self.cells.iter().copied().filter(|&(c, t)| keep(c, t)))
    }

    pub fn check_tiles(&self, system: &TileSystem) -> Result<()> {
        match self.cells.iter().find(|c| c.1 as usize >= system.size()) {
            Some(c) => Err(Error::TileIndex(c.1)),
            None => Ok(()),
        }
    }

    /// Adjacent occupied pairs `(i, j, side)` with `i < j` in cell order
    /// and `side` the side of cell `i` facing cell `j`.
    pub fn adjacencies(&self) -> Vec<(usize, usize, Side)> {
        let mut out = Vec::new();
        for (i, &(c, _)) in self.cells.iter().enumerate() {
            for side in [Side::E, Side::N] {
                if let Some(j) = self.position_index(c.step(side)) {
                    out.push((i, j, side));
                }
            }
        }
        out
    }

    /// Lattice-adjacent cell pairs whose facing glues differ. Null against
    /// non-null counts as a mismatch; null against null does not.
    pub fn mismatches(&self, system: &TileSystem) -> Vec<(Cell, Cell)> {
        self.adjacencies()
            .into_iter()
            .filter(|&(i, j, side)| {
                let a = system.tile(self.cells[i].1).glue(side);
                let b = system.tile(self.cells[j].1).glue(side.opposite());
                a != b
            })
            .map(|(i, j, _)| (self.cells[i].0, self.cells[j].0))
            .collect()
    }

    pub fn is_mismatch_free(&self, system: &TileSystem) -> bool {
        self.mismatches(system).is_empty()
    }

    /// Whether `self` equals some translate of a subset of `other`'s cells
    /// (same tiles at the same relative positions).
    pub fn is_subassembly_of(&self, other: &Assembly) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let (c0, t0) = self.cells[0];
        other.cells.iter().any(|&(oc, ot)| {
            if ot != t0 {
                return false;
            }
            let (dx, dy) = (oc.x - c0.x, oc.y - c0.y);
            self.cells
                .iter()
                .all(|&(c, t)| other.get(c.offset(dx, dy)) == Some(t))
        })
    }
}

pub(crate) fn domain_connected(cells: impl Iterator<Item = Cell>) -> bool {
    let set: HashSet<Cell> = cells.collect();
    let Some(&start) = set.iter().next() else {
        return true;
    };
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for s in Side::ALL {
            let n = c.step(s);
            if set.contains(&n) && seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len() == set.len()
}

/// A polyomino at its canonical translate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    cells: Vec<Cell>,
}

impl Shape {
    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Shape {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort_unstable();
        cells.dedup();
        if let (Some(mx), Some(my)) = (
            cells.iter().map(|c| c.x).min(),
            cells.iter().map(|c| c.y).min(),
        ) {
            for c in &mut cells {
                *c = c.offset(-mx, -my);
            }
        }
        Shape { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Replaces every cell with a `k x k` block.
    pub fn scale(&self, k: u32) -> Shape {
        assert!(k >= 1, "scale factor must be positive");
        let k = k as i32;
        Shape::from_cells(self.cells.iter().flat_map(|c| {
            (0..k).flat_map(move |dy| (0..k).map(move |dx| Cell::new(c.x * k + dx, c.y * k + dy)))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn asm(cells: &[(i32, i32, TileId)]) -> Result<Assembly> {
        Assembly::canonicalize(cells.iter().map(|&(x, y, t)| (Cell::new(x, y), t)))
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(asm(&[(5, 7, 0)]).unwrap().cells(), &[(Cell::new(0, 0), 0)]);
        let d = asm(&[(0, 0, 0), (1, 0, 1)]).unwrap();
        assert_eq!(d.cells(), &[(Cell::new(0, 0), 0), (Cell::new(1, 0), 1)]);
        let l = asm(&[(-2, 3, 0), (-1, 3, 1), (-1, 4, 2)]).unwrap();
        assert_eq!(
            l.cells(),
            &[(Cell::new(0, 0), 0), (Cell::new(1, 0), 1), (Cell::new(1, 1), 2)]
        );
    }

    #[test]
    fn canonicalize_errors() {
        assert!(matches!(asm(&[]), Err(Error::EmptyAssembly)));
        assert!(matches!(asm(&[(0, 0, 0), (2, 0, 0)]), Err(Error::Disconnected)));
        assert!(matches!(asm(&[(0, 0, 0), (0, 0, 1)]), Err(Error::DuplicateCell(_))));
    }

    #[test]
    fn mismatch_rules() {
        let mut s = TileSystem::new(1);
        s.add_tile_named("a", ["-", "g1", "-", "-"]);
        s.add_tile_named("b", ["-", "-", "-", "g2"]);
        s.add_tile_named("c", ["-", "-", "-", "-"]);
        s.add_tile_named("d", ["-", "-", "-", "g1"]);
        assert!(!asm(&[(0, 0, 0), (1, 0, 1)]).unwrap().is_mismatch_free(&s));
        assert!(asm(&[(0, 0, 0), (1, 0, 3)]).unwrap().is_mismatch_free(&s));
        // null against null is fine, null against g1 is not
        assert!(asm(&[(0, 0, 2), (1, 0, 2)]).unwrap().is_mismatch_free(&s));
        assert!(!asm(&[(0, 0, 0), (1, 0, 2)]).unwrap().is_mismatch_free(&s));
    }

    #[test]
    fn occurrence_counts_sum_to_size() {
        let a = asm(&[(0, 0, 4), (1, 0, 4), (2, 0, 4)]).unwrap();
        assert_eq!(a.occurrence_counts().into_iter().collect::<Vec<_>>(), vec![(4, 3)]);
    }

    #[test]
    fn scale_examples() {
        let one = Shape::from_cells([Cell::new(0, 0)]);
        assert_eq!(
            one.scale(2).cells(),
            &[Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1), Cell::new(1, 1)]
        );
        let l = Shape::from_cells([Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1)]);
        let l2 = l.scale(2);
        assert_eq!(l2.len(), 12);
        // 4x4 block minus the north-east 2x2 quadrant
        let expected = Shape::from_cells(
            (0..4)
                .flat_map(|y| (0..4).map(move |x| Cell::new(x, y)))
                .filter(|c| !(c.x >= 2 && c.y >= 2)),
        );
        assert_eq!(l2, expected);
        assert_eq!(l.scale(1), l);
    }

    #[test]
    fn subassembly_detection() {
        let big = asm(&[(0, 0, 0), (1, 0, 1), (2, 0, 2)]).unwrap();
        assert!(asm(&[(0, 0, 1), (1, 0, 2)]).unwrap().is_subassembly_of(&big));
        assert!(!asm(&[(0, 0, 2), (1, 0, 1)]).unwrap().is_subassembly_of(&big));
    }

    fn connected_cells() -> impl Strategy<Value = Vec<Cell>> {
        // random walk keeps the domain connected
        proptest::collection::vec(0usize..4, 0..12).prop_map(|steps| {
            let mut c = Cell::new(0, 0);
            let mut out = vec![c];
            for s in steps {
                c = c.step(Side::ALL[s]);
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            out
        })
    }

    proptest! {
        #[test]
        fn canonicalize_is_translation_invariant(cells in connected_cells(), dx in -50i32..50, dy in -50i32..50) {
            let a = Assembly::canonicalize(cells.iter().enumerate().map(|(i, &c)| (c, i as TileId))).unwrap();
            let b = Assembly::canonicalize(cells.iter().enumerate().map(|(i, &c)| (c.offset(dx, dy), i as TileId))).unwrap();
            prop_assert_eq!(&a, &b);
            let again = Assembly::canonicalize(a.cells().iter().copied()).unwrap();
            prop_assert_eq!(a, again);
        }

        #[test]
        fn scaled_size_is_k_squared(cells in connected_cells(), k in 1u32..4) {
            let s = Shape::from_cells(cells);
            prop_assert_eq!(s.scale(k).len(), (k * k) as usize * s.len());
        }
    }
}
