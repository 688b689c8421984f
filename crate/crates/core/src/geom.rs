use std::cmp::Ordering;
use std::fmt;

/// A lattice location. Ordered row-major by `(y, x)`, which is the
/// canonical iteration order everywhere in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn step(self, side: Side) -> Cell {
        let (dx, dy) = side.delta();
        Cell::new(self.x + dx, self.y + dy)
    }

    pub fn offset(self, dx: i32, dy: i32) -> Cell {
        Cell::new(self.x + dx, self.y + dy)
    }

    /// The side of `self` that faces `other`, if the two are lattice neighbours.
    pub fn side_towards(self, other: Cell) -> Option<Side> {
        Side::ALL.into_iter().find(|&s| self.step(s) == other)
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    N,
    E,
    S,
    W,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::N, Side::E, Side::S, Side::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::N => Side::S,
            Side::E => Side::W,
            Side::S => Side::N,
            Side::W => Side::E,
        }
    }

    /// Unit step; north is +y.
    pub fn delta(self) -> (i32, i32) {
        match self {
            Side::N => (0, 1),
            Side::E => (1, 0),
            Side::S => (0, -1),
            Side::W => (-1, 0),
        }
    }

    /// Next side in counterclockwise order N -> W -> S -> E -> N.
    pub fn ccw(self) -> Side {
        match self {
            Side::N => Side::W,
            Side::W => Side::S,
            Side::S => Side::E,
            Side::E => Side::N,
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            Side::N | Side::S => Axis::Vertical,
            Side::E | Side::W => Axis::Horizontal,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::N => 'N',
            Side::E => 'E',
            Side::S => 'S',
            Side::W => 'W',
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Bond axis: `{E, W}` or `{N, S}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Horizontal => write!(f, "horizontal"),
            Axis::Vertical => write!(f, "vertical"),
        }
    }
}

/// Tile corner, also used as the quadrant of a unit tile inside a 2x2 macrotile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];

    /// The corner passed when sweeping counterclockwise from `side` to `side.ccw()`.
    pub fn after(side: Side) -> Corner {
        match side {
            Side::N => Corner::NW,
            Side::W => Corner::SW,
            Side::S => Corner::SE,
            Side::E => Corner::NE,
        }
    }

    /// Offset of this quadrant inside a 2x2 block whose south-west unit is (0,0).
    pub fn unit_offset(self) -> (i32, i32) {
        match self {
            Corner::SW => (0, 0),
            Corner::SE => (1, 0),
            Corner::NW => (0, 1),
            Corner::NE => (1, 1),
        }
    }

    pub fn from_unit_offset(dx: i32, dy: i32) -> Corner {
        match (dx.rem_euclid(2), dy.rem_euclid(2)) {
            (0, 0) => Corner::SW,
            (1, 0) => Corner::SE,
            (0, _) => Corner::NW,
            _ => Corner::NE,
        }
    }

    /// Whether this quadrant touches the macrotile side `side`.
    pub fn touches(self, side: Side) -> bool {
        matches!(
            (self, side),
            (Corner::NW, Side::N | Side::W)
                | (Corner::NE, Side::N | Side::E)
                | (Corner::SW, Side::S | Side::W)
                | (Corner::SE, Side::S | Side::E)
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Corner::NW => "NW",
            Corner::NE => "NE",
            Corner::SW => "SW",
            Corner::SE => "SE",
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ccw_cycles_through_all_sides() {
        let mut s = Side::N;
        let mut seen = vec![];
        for _ in 0..4 {
            seen.push(s);
            s = s.ccw();
        }
        assert_eq!(s, Side::N);
        assert_eq!(seen, vec![Side::N, Side::W, Side::S, Side::E]);
    }

    #[test]
    fn corner_between_consecutive_sides_touches_both() {
        for s in Side::ALL {
            let c = Corner::after(s);
            assert!(c.touches(s) && c.touches(s.ccw()));
        }
    }

    #[test]
    fn cell_order_is_row_major() {
        assert!(Cell::new(5, 0) < Cell::new(0, 1));
        assert!(Cell::new(0, 0) < Cell::new(1, 0));
    }
}
