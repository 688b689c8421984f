//! Line-oriented text formats for tile systems, assemblies and pipeline
//! traces.
//!
//! ```text
//! temperature 1
//! glue g 1
//! tile a N=- E=g S=- W=-
//! tile b N=- E=- S=- W=g
//! ```
//!
//! `-` is the null glue. A token starting with `#` begins a comment, so
//! glue names may contain `#` after their first character. Assemblies are
//! `x y tilename` lines.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::assembly::Assembly;
use crate::geom::{Cell, Side};
use crate::system::{GlueId, TileSystem, NULL_GLUE_NAME};
use crate::transform::{EdgePolicy, PipelineTrace, Stage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// Tokens of one line with 1-based columns, comments stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            if ch == '#' {
                break;
            }
            start = Some(i);
        }
    }
    out
}

/// Parsed system plus warnings about undeclared glues.
#[derive(Debug, Clone)]
pub struct ParsedSystem {
    pub system: TileSystem,
    pub warnings: Vec<String>,
}

pub fn parse_system(text: &str) -> Result<ParsedSystem, ParseError> {
    parse_system_at(text, 0)
}

fn parse_system_at(text: &str, offset: usize) -> Result<ParsedSystem, ParseError> {
    let lines: Vec<(usize, Vec<(usize, &str)>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1 + offset, tokens(l)))
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let mut temperature = None;
    let mut system = TileSystem::new(1);
    for (ln, toks) in &lines {
        let (col, kw) = toks[0];
        match kw {
            "temperature" => {
                if temperature.is_some() {
                    return err(*ln, col, "temperature given twice");
                }
                let [_, (c, v)] = toks[..] else {
                    return err(*ln, col, "expected `temperature <n>`");
                };
                let t: u32 = v.parse().or_else(|_| err(*ln, c, format!("bad temperature `{v}`")))?;
                if t == 0 {
                    return err(*ln, c, "temperature must be positive");
                }
                temperature = Some(t);
            }
            "glue" => {
                let [_, (nc, name), (sc, strength)] = toks[..] else {
                    return err(*ln, col, "expected `glue <name> <strength>`");
                };
                if name == NULL_GLUE_NAME {
                    return err(*ln, nc, "the null glue cannot be declared");
                }
                let s: u32 = strength
                    .parse()
                    .or_else(|_| err(*ln, sc, format!("bad strength `{strength}`")))?;
                system
                    .add_glue(name, s)
                    .or_else(|e| err(*ln, nc, e.to_string()))?;
            }
            "tile" => {}
            other => return err(*ln, col, format!("unknown directive `{other}`")),
        }
    }
    let mut warnings = Vec::new();
    for (ln, toks) in &lines {
        if toks[0].1 != "tile" {
            continue;
        }
        let Some(&(nc, name)) = toks.get(1) else {
            return err(*ln, toks[0].0, "expected a tile name");
        };
        if system.tile_by_name(name).is_some() {
            return err(*ln, nc, format!("tile `{name}` declared twice"));
        }
        let mut glues: [Option<GlueId>; 4] = [None; 4];
        for &(c, tok) in &toks[2..] {
            let Some((side, glue)) = tok.split_once('=') else {
                return err(*ln, c, format!("expected `<side>=<glue>`, found `{tok}`"));
            };
            let side = match side {
                "N" => Side::N,
                "E" => Side::E,
                "S" => Side::S,
                "W" => Side::W,
                _ => return err(*ln, c, format!("unknown side `{side}`")),
            };
            if glues[side.index()].is_some() {
                return err(*ln, c, format!("side {side} given twice"));
            }
            if glue.is_empty() {
                return err(*ln, c + 2, "missing glue name");
            }
            if system.glue_id(glue).is_none() {
                warnings.push(format!(
                    "line {ln}: glue `{glue}` not declared, using strength 1"
                ));
            }
            glues[side.index()] = Some(system.intern_glue(glue));
        }
        let Some(glues) = glues.iter().copied().collect::<Option<Vec<_>>>() else {
            return err(*ln, nc, format!("tile `{name}` must give all of N, E, S, W"));
        };
        system.add_tile(name, [glues[0], glues[1], glues[2], glues[3]]);
    }
    let Some(t) = temperature else {
        return err(offset + 1, 1, "missing `temperature` line");
    };
    if system.size() == 0 {
        return err(offset + 1, 1, "no tiles");
    }
    system.set_temperature(t);
    Ok(ParsedSystem { system, warnings })
}

/// Canonical text: temperature, glues by id, tiles in declaration order.
pub fn write_system(system: &TileSystem) -> String {
    let mut out = String::new();
    writeln!(out, "temperature {}", system.temperature()).unwrap();
    for (id, g) in system.glues() {
        if !id.is_null() {
            writeln!(out, "glue {} {}", g.name, g.strength).unwrap();
        }
    }
    for t in system.tiles() {
        write!(out, "tile {}", t.name).unwrap();
        for side in Side::ALL {
            write!(out, " {}={}", side, system.glue_name(t.glue(side))).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_assembly(text: &str, system: &TileSystem) -> Result<Assembly, ParseError> {
    parse_assembly_at(text, system, 0)
}

fn parse_assembly_at(text: &str, system: &TileSystem, offset: usize) -> Result<Assembly, ParseError> {
    let mut cells: BTreeMap<Cell, u32> = BTreeMap::new();
    let mut last = offset + 1;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1 + offset;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        last = ln;
        let [(xc, x), (yc, y), (tc, name)] = toks[..] else {
            return err(ln, toks[0].0, "expected `<x> <y> <tile>`");
        };
        let x: i32 = x.parse().or_else(|_| err(ln, xc, format!("bad coordinate `{x}`")))?;
        let y: i32 = y.parse().or_else(|_| err(ln, yc, format!("bad coordinate `{y}`")))?;
        let Some(t) = system.tile_by_name(name) else {
            return err(ln, tc, format!("unknown tile `{name}`"));
        };
        if cells.insert(Cell::new(x, y), t).is_some() {
            return err(ln, xc, format!("cell ({x}, {y}) occupied twice"));
        }
    }
    if cells.is_empty() {
        return err(last, 1, "assembly has no cells");
    }
    Assembly::canonicalize(cells).or_else(|e| err(last, 1, e.to_string()))
}

/// `x y tilename` lines in canonical cell order.
pub fn write_assembly(assembly: &Assembly, system: &TileSystem) -> String {
    let mut out = String::new();
    for &(c, t) in assembly.cells() {
        writeln!(out, "{} {} {}", c.x, c.y, system.tile(t).name).unwrap();
    }
    out
}

fn cells_text(cells: &[Cell]) -> String {
    cells
        .iter()
        .map(|c| format!("{} {}", c.x, c.y))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_trace(trace: &PipelineTrace) -> String {
    let mut out = String::new();
    writeln!(out, "policy {}", trace.policy.name()).unwrap();
    writeln!(out, "imbalance {}", trace.imbalance).unwrap();
    writeln!(out, "halves {} {}", trace.halves.0, trace.halves.1).unwrap();
    writeln!(out, "e_prime {}", cells_text(&[trace.e_prime.0, trace.e_prime.1])).unwrap();
    writeln!(out, "first_endpoint {}", cells_text(&[trace.first_endpoint])).unwrap();
    writeln!(out, "e {}", cells_text(&[trace.e.0, trace.e.1])).unwrap();
    writeln!(out, "path {}", cells_text(&trace.path)).unwrap();
    writeln!(out, "cut_glues {} {}", trace.cut_glues[0], trace.cut_glues[1]).unwrap();
    for stage in &trace.stages {
        writeln!(out, "stage {}", stage.name).unwrap();
        out.push_str("begin system\n");
        out.push_str(&write_system(&stage.system));
        out.push_str("end system\nbegin assembly\n");
        out.push_str(&write_assembly(&stage.assembly, &stage.system));
        out.push_str("end assembly\n");
    }
    out
}

/// Line of a header key plus its `(column, token)` values.
type HeaderField<'a> = (usize, Vec<(usize, &'a str)>);

pub fn parse_trace(text: &str) -> Result<PipelineTrace, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut header: BTreeMap<&str, HeaderField> = BTreeMap::new();
    let mut stages = Vec::new();
    let mut i = 0;
    // block between `begin <what>` and `end <what>`, starting after line i
    let block = |i: &mut usize, what: &str| -> Result<(usize, String), ParseError> {
        let ln = *i + 1;
        if lines.get(*i).map(|l| l.trim()) != Some(&format!("begin {what}")) {
            return err(ln, 1, format!("expected `begin {what}`"));
        }
        let start = *i + 1;
        let end = (start..lines.len())
            .find(|&k| lines[k].trim() == format!("end {what}"))
            .map_or_else(|| err(ln, 1, format!("unterminated `{what}` block")), Ok)?;
        *i = end + 1;
        Ok((start, lines[start..end].join("\n")))
    };
    while i < lines.len() {
        let toks = tokens(lines[i]);
        if toks.is_empty() {
            i += 1;
            continue;
        }
        if toks[0].1 == "stage" {
            let Some(&(_, name)) = toks.get(1) else {
                return err(i + 1, toks[0].0, "expected a stage name");
            };
            i += 1;
            let (sys_off, sys_text) = block(&mut i, "system")?;
            let system = parse_system_at(&sys_text, sys_off)?.system;
            let (asm_off, asm_text) = block(&mut i, "assembly")?;
            let assembly = parse_assembly_at(&asm_text, &system, asm_off)?;
            stages.push(Stage {
                name: name.to_string(),
                system,
                assembly,
            });
        } else {
            header.insert(toks[0].1, (i + 1, toks[1..].to_vec()));
            i += 1;
        }
    }
    let field = |key: &str| -> Result<&HeaderField, ParseError> {
        header.get(key).map_or_else(|| err(1, 1, format!("missing `{key}` line")), Ok)
    };
    let ints = |key: &str| -> Result<Vec<i64>, ParseError> {
        let (ln, toks) = field(key)?;
        toks.iter()
            .map(|&(c, t)| t.parse::<i64>().or_else(|_| err(*ln, c, format!("bad number `{t}`"))))
            .collect()
    };
    let cells = |key: &str, n: Option<usize>| -> Result<Vec<Cell>, ParseError> {
        let v = ints(key)?;
        let (ln, _) = field(key)?;
        if v.len() % 2 != 0 || n.is_some_and(|n| v.len() != 2 * n) {
            return err(*ln, 1, format!("wrong number of coordinates for `{key}`"));
        }
        Ok(v.chunks(2).map(|p| Cell::new(p[0] as i32, p[1] as i32)).collect())
    };
    let (pln, ptoks) = field("policy")?;
    let policy = match ptoks.first().map(|t| t.1) {
        Some("balanced") => EdgePolicy::Balanced,
        Some("canonical") => EdgePolicy::Canonical,
        _ => return err(*pln, 1, "policy must be `balanced` or `canonical`"),
    };
    let imbalance = ints("imbalance")?;
    let halves = ints("halves")?;
    let (iln, _) = field("imbalance")?;
    if imbalance.len() != 1 || halves.len() != 2 {
        return err(*iln, 1, "malformed imbalance or halves");
    }
    let ep = cells("e_prime", Some(2))?;
    let first = cells("first_endpoint", Some(1))?;
    let e = cells("e", Some(2))?;
    let path = cells("path", None)?;
    let (cln, ctoks) = field("cut_glues")?;
    let [(_, c0), (_, c1)] = ctoks[..] else {
        return err(*cln, 1, "expected two cut glues");
    };
    if stages.is_empty() {
        return err(lines.len().max(1), 1, "trace has no stages");
    }
    Ok(PipelineTrace {
        policy,
        stages,
        e_prime: (ep[0], ep[1]),
        first_endpoint: first[0],
        e: (e[0], e[1]),
        path,
        cut_glues: [c0.to_string(), c1.to_string()],
        imbalance: imbalance[0],
        halves: (halves[0] as usize, halves[1] as usize),
    })
}

impl fmt::Display for ParsedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_system(&self.system))
    }
}
