//! Small hand-built systems used by the tests, the acceptance suite and the
//! Python smoke test. Each returns the system and its intended terminal
//! assembly.

use crate::analysis::DiagnosticCode;
use crate::assembly::Assembly;
use crate::geom::Cell;
use crate::system::TileSystem;

fn place(system: &TileSystem, cells: &[(i32, i32, &str)]) -> Assembly {
    Assembly::canonicalize(cells.iter().map(|&(x, y, name)| {
        let t = system
            .tile_by_name(name)
            .unwrap_or_else(|| panic!("fixture tile {name} missing"));
        (Cell::new(x, y), t)
    }))
    .expect("fixture assembly is connected")
}

/// `a` east-bonded to `b` through glue `g`.
pub fn domino() -> (TileSystem, Assembly) {
    let mut s = TileSystem::new(1);
    s.add_tile_named("a", ["-", "g", "-", "-"]);
    s.add_tile_named("b", ["-", "-", "-", "g"]);
    let a = place(&s, &[(0, 0, "a"), (1, 0, "b")]);
    (s, a)
}

/// Horizontal path `a - b - c`.
pub fn path3() -> (TileSystem, Assembly) {
    let mut s = TileSystem::new(1);
    s.add_tile_named("a", ["-", "g1", "-", "-"]);
    s.add_tile_named("b", ["-", "g2", "-", "g1"]);
    s.add_tile_named("c", ["-", "-", "-", "g2"]);
    let a = place(&s, &[(0, 0, "a"), (1, 0, "b"), (2, 0, "c")]);
    (s, a)
}

/// 2x2 square whose bond graph is a 4-cycle with distinct glues.
pub fn square4() -> (TileSystem, Assembly) {
    let mut s = TileSystem::new(1);
    s.add_tile_named("a", ["v1", "h1", "-", "-"]);
    s.add_tile_named("b", ["v2", "-", "-", "h1"]);
    s.add_tile_named("c", ["-", "-", "v2", "h2"]);
    s.add_tile_named("d", ["-", "h2", "v1", "-"]);
    let a = place(&s, &[(0, 0, "a"), (1, 0, "b"), (1, 1, "c"), (0, 1, "d")]);
    (s, a)
}

/// T-tetromino: centre `c` with leaves west (`l1`), east (`l2`) and north (`l3`).
pub fn star4() -> (TileSystem, Assembly) {
    let mut s = TileSystem::new(1);
    s.add_tile_named("l1", ["-", "w", "-", "-"]);
    s.add_tile_named("c", ["n", "e", "-", "w"]);
    s.add_tile_named("l2", ["-", "-", "-", "e"]);
    s.add_tile_named("l3", ["-", "-", "n", "-"]);
    let a = place(&s, &[(0, 0, "l1"), (1, 0, "c"), (2, 0, "l2"), (1, 1, "l3")]);
    (s, a)
}

/// L-tromino tree: corner `a`, east arm `b`, north arm `c`.
pub fn l_tromino() -> (TileSystem, Assembly) {
    let mut s = TileSystem::new(1);
    s.add_tile_named("a", ["v", "h", "-", "-"]);
    s.add_tile_named("b", ["-", "-", "-", "h"]);
    s.add_tile_named("c", ["-", "-", "v", "-"]);
    let a = place(&s, &[(0, 0, "a"), (1, 0, "b"), (0, 1, "c")]);
    (s, a)
}

/// Fully bonded block three cells wide and two tall, with a distinct glue
/// on each of its seven internal edges.
pub fn block2x3() -> (TileSystem, Assembly) {
    let mut s = TileSystem::new(1);
    let mut cells = Vec::new();
    let names: Vec<String> = (0..2)
        .flat_map(|y| (0..3).map(move |x| format!("t{x}{y}")))
        .collect();
    for y in 0..2i32 {
        for x in 0..3i32 {
            let h = |x: i32| {
                if (0..2).contains(&x) {
                    format!("h{x}{y}")
                } else {
                    "-".into()
                }
            };
            let n = if y == 0 { format!("v{x}") } else { "-".into() };
            let so = if y == 1 { format!("v{x}") } else { "-".into() };
            let glues = [n, h(x), so, h(x - 1)];
            s.add_tile_named(
                &format!("t{x}{y}"),
                [&glues[0], &glues[1], &glues[2], &glues[3]].map(String::as_str),
            );
        }
    }
    for y in 0..2 {
        for x in 0..3 {
            cells.push((x, y, names[(y * 3 + x) as usize].as_str()));
        }
    }
    let a = place(&s, &cells);
    (s, a)
}

/// One tile that stacks on itself vertically without bound.
pub fn stacking() -> TileSystem {
    let mut s = TileSystem::new(1);
    s.add_tile_named("t", ["g", "-", "g", "-"]);
    s
}

/// All named UMFTA fixtures with their names.
pub fn umfta_fixtures() -> Vec<(&'static str, TileSystem, Assembly)> {
    let mut v = Vec::new();
    for (name, f) in [
        ("domino", domino as fn() -> (TileSystem, Assembly)),
        ("path3", path3),
        ("square4", square4),
        ("star4", star4),
        ("l_tromino", l_tromino),
        ("block2x3", block2x3),
    ] {
        let (s, a) = f();
        v.push((name, s, a));
    }
    v
}

/// A system/assembly pair built to break exactly one structural lint check.
pub struct Adversarial {
    pub name: &'static str,
    pub expected: DiagnosticCode,
    pub system: TileSystem,
    pub assembly: Assembly,
}

fn system_of(tiles: &[(&str, [&str; 4])]) -> TileSystem {
    let mut s = TileSystem::new(1);
    for (name, glues) in tiles {
        s.add_tile_named(name, *glues);
    }
    s
}

fn adversarial(
    name: &'static str,
    expected: DiagnosticCode,
    tiles: &[(&str, [&str; 4])],
    cells: &[(i32, i32, &str)],
) -> Adversarial {
    let system = system_of(tiles);
    let assembly = place(&system, cells);
    Adversarial {
        name,
        expected,
        system,
        assembly,
    }
}

/// One fixture per structural lint code, in `DiagnosticCode::STRUCTURAL` order.
/// None of them is a UMFTA instance.
pub fn adversarial_fixtures() -> Vec<Adversarial> {
    use DiagnosticCode::*;
    vec![
        // t3 presents `a` to the null north side of t1.
        adversarial(
            "mismatch",
            Mismatch,
            &[
                ("t0", ["a", "c", "-", "-"]),
                ("t1", ["-", "-", "-", "c"]),
                ("t2", ["-", "b", "a", "-"]),
                ("t3", ["-", "-", "a", "b"]),
            ],
            &[(0, 0, "t0"), (1, 0, "t1"), (0, 1, "t2"), (1, 1, "t3")],
        ),
        adversarial(
            "repeated_pair_on_cycle",
            RepeatedPairOnCycle,
            &[
                ("t0", ["d", "b", "-", "-"]),
                ("t1", ["a", "-", "a", "b"]),
                ("t2", ["-", "b", "d", "-"]),
            ],
            &[(0, 0, "t0"), (1, 0, "t1"), (0, 1, "t2"), (1, 1, "t1")],
        ),
        adversarial(
            "pair_on_and_off_cycle",
            PairOnAndOffCycle,
            &[
                ("t0", ["-", "b", "d", "-"]),
                ("t1", ["d", "d", "-", "b"]),
                ("t2", ["b", "-", "-", "d"]),
                ("t3", ["-", "-", "b", "b"]),
            ],
            &[
                (0, 0, "t0"),
                (1, 0, "t1"),
                (2, 0, "t2"),
                (1, 1, "t0"),
                (2, 1, "t3"),
            ],
        ),
        adversarial(
            "too_few_one_occurrence",
            TooFewOneOccurrence,
            &[("t", ["-", "g", "-", "g"])],
            &[(0, 0, "t"), (1, 0, "t")],
        ),
        adversarial(
            "one_occ_disconnected",
            OneOccDisconnected,
            &[
                ("t0", ["c", "a", "-", "-"]),
                ("t1", ["b", "c", "c", "a"]),
                ("t2", ["-", "-", "b", "c"]),
            ],
            &[(0, 0, "t0"), (1, 0, "t1"), (0, 1, "t1"), (1, 1, "t2")],
        ),
        adversarial(
            "one_occ_pair_repeated",
            OneOccPairRepeated,
            &[
                ("t0", ["-", "b", "-", "-"]),
                ("t1", ["-", "b", "-", "b"]),
                ("t2", ["-", "-", "-", "b"]),
            ],
            &[(0, 0, "t0"), (1, 0, "t1"), (2, 0, "t2")],
        ),
        adversarial(
            "two_occ_different_glue_side",
            TwoOccDifferentGlueSide,
            &[
                ("t0", ["c", "-", "-", "-"]),
                ("t1", ["c", "-", "c", "-"]),
                ("t2", ["-", "b", "c", "-"]),
                ("t3", ["-", "-", "c", "b"]),
            ],
            &[
                (0, 0, "t0"),
                (0, 1, "t1"),
                (0, 2, "t1"),
                (1, 2, "t0"),
                (0, 3, "t2"),
                (1, 3, "t3"),
            ],
        ),
    ]
}
