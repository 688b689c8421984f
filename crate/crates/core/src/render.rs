//! Deterministic SVG drawings of assemblies.

use std::fmt::Write as _;

use crate::assembly::Assembly;
use crate::bond::BondGraph;
use crate::geom::Side;
use crate::system::TileSystem;

pub const CELL: i32 = 40;
const MARGIN: i32 = 10;
const TICK: i32 = 6;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One square per cell with the tile name in the middle and glue labels
/// along the sides; bonds are ticks across shared edges. With
/// `show_strengths`, strength-2 bonds get a double tick.
pub fn render_svg(assembly: &Assembly, system: &TileSystem, show_strengths: bool) -> String {
    let (w, h) = assembly.extent();
    let width = w * CELL + 2 * MARGIN;
    let height = h * CELL + 2 * MARGIN;
    // north is up: flip y
    let left = |x: i32| MARGIN + x * CELL;
    let top = |y: i32| MARGIN + (h - 1 - y) * CELL;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
    out.push_str("<g font-family=\"monospace\" text-anchor=\"middle\" dominant-baseline=\"central\">\n");
    for &(c, t) in assembly.cells() {
        let (x, y) = (left(c.x), top(c.y));
        let tile = system.tile(t);
        writeln!(
            out,
            r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="#f4f1e8" stroke="black" stroke-width="1"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="8">{}</text>"#,
            x + CELL / 2,
            y + CELL / 2,
            escape(&tile.name)
        )
        .unwrap();
        for side in Side::ALL {
            let g = tile.glue(side);
            if g.is_null() {
                continue;
            }
            let (lx, ly) = match side {
                Side::N => (x + CELL / 2, y + 6),
                Side::S => (x + CELL / 2, y + CELL - 6),
                Side::E => (x + CELL - 8, y + CELL / 2 + 9),
                Side::W => (x + 8, y + CELL / 2 - 9),
            };
            writeln!(
                out,
                r##"<text x="{lx}" y="{ly}" font-size="5" fill="#555">{}</text>"##,
                escape(system.glue_name(g))
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n<g stroke=\"#b00\" stroke-width=\"2\">\n");
    let g = BondGraph::new(assembly, system);
    for e in g.edges() {
        let double = show_strengths && e.strength >= 2;
        let offsets: &[i32] = if double { &[-3, 3] } else { &[0] };
        for &o in offsets {
            let (x1, y1, x2, y2) = match e.side {
                Side::E => {
                    let x = left(e.a.x) + CELL;
                    let y = top(e.a.y) + CELL / 2 + o;
                    (x - TICK, y, x + TICK, y)
                }
                Side::N => {
                    let x = left(e.a.x) + CELL / 2 + o;
                    let y = top(e.a.y);
                    (x, y - TICK, x, y + TICK)
                }
                _ => unreachable!("bond edges point east or north"),
            };
            writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}
