//! Checks a compiled system against the size-separability guarantee, using
//! the closure as the oracle.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::assembly::Assembly;
use crate::bond::BondGraph;
use crate::geom::Cell;
use crate::sim::{self, Caps, ClosureResult, UmftaVerdict};
use crate::system::{GlueId, TileSystem};
use crate::transform::PipelineTrace;

/// Minimum terminal size over maximum non-terminal size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    Finite(Ratio<u64>),
    /// Every producible is terminal.
    Infinite,
    /// Unsaturated closure, or no terminal at all.
    Undefined,
}

impl Factor {
    pub fn at_least(&self, c: u64) -> bool {
        match self {
            Factor::Finite(r) => *r >= Ratio::from_integer(c),
            Factor::Infinite => true,
            Factor::Undefined => false,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Factor::Infinite => f.write_str("inf"),
            Factor::Undefined => f.write_str("undefined"),
        }
    }
}

pub fn separability_factor(closure: &ClosureResult) -> Factor {
    if !closure.saturated {
        return Factor::Undefined;
    }
    let Some(min_terminal) = closure.terminals.iter().map(|t| t.len()).min() else {
        return Factor::Undefined;
    };
    match closure.non_terminals().map(|p| p.len()).max() {
        None => Factor::Infinite,
        Some(m) => Factor::Finite(Ratio::new(min_terminal as u64, m as u64)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Ok,
    Fail,
    Unknown,
}

impl Check {
    fn from(ok: bool, known: bool) -> Check {
        match (known, ok) {
            (false, _) => Check::Unknown,
            (true, true) => Check::Ok,
            (true, false) => Check::Fail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Ok => "ok",
            Check::Fail => "FAIL",
            Check::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub umfta_verdict: UmftaVerdict,
    pub terminal_size: Option<usize>,
    pub max_nonterminal_size: Option<usize>,
    pub factor: Factor,
    pub factor_ok: Check,
    pub shape_ok: Check,
    pub tiles: usize,
    pub tile_bound: usize,
    pub tile_bound_ok: Check,
    pub temperature_ok: Check,
    pub mismatch_free_ok: Check,
    pub umfta_ok: Check,
    pub saturated: bool,
    pub imbalance: i64,
    pub producibles: usize,
}

impl VerificationReport {
    pub fn outcome(&self) -> Outcome {
        if !self.saturated {
            return Outcome::Unknown;
        }
        let checks = [
            self.factor_ok,
            self.shape_ok,
            self.tile_bound_ok,
            self.temperature_ok,
            self.mismatch_free_ok,
            self.umfta_ok,
        ];
        if checks.iter().all(|&c| c == Check::Ok) {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// Names of the failing checks.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("factor", self.factor_ok),
            ("shape", self.shape_ok),
            ("tiles", self.tile_bound_ok),
            ("temperature", self.temperature_ok),
            ("mismatch", self.mismatch_free_ok),
            ("umfta", self.umfta_ok),
        ]
        .into_iter()
        .filter(|(_, c)| *c == Check::Fail)
        .map(|(n, _)| n)
        .collect()
    }
}

impl fmt::Display for VerificationReport {
    /// `key: value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        match self.outcome() {
            Outcome::Fail => writeln!(f, "result: FAIL({})", self.failures().join(","))?,
            o => writeln!(f, "result: {o}")?,
        }
        writeln!(f, "umfta: {}", self.umfta_verdict.describe())?;
        writeln!(f, "saturated: {}", self.saturated)?;
        writeln!(f, "producibles: {}", self.producibles)?;
        writeln!(f, "terminal_size: {}", opt(self.terminal_size))?;
        writeln!(f, "max_nonterminal_size: {}", opt(self.max_nonterminal_size))?;
        writeln!(f, "factor: {}", self.factor)?;
        writeln!(f, "factor_ok: {}", self.factor_ok)?;
        writeln!(f, "imbalance: {}", self.imbalance)?;
        writeln!(f, "shape_ok: {}", self.shape_ok)?;
        writeln!(f, "tiles: {} <= {}", self.tiles, self.tile_bound)?;
        writeln!(f, "tile_bound_ok: {}", self.tile_bound_ok)?;
        writeln!(f, "temperature_ok: {}", self.temperature_ok)?;
        writeln!(f, "mismatch_free_ok: {}", self.mismatch_free_ok)
    }
}

/// Runs the closure of `compiled` and checks it against `original`.
pub fn verify_pipeline(
    original: &TileSystem,
    compiled: &TileSystem,
    trace: &PipelineTrace,
    caps: Caps,
) -> VerificationReport {
    let (orig_verdict, _) = sim::is_umfta(original, caps);
    let (verdict, closure) = sim::is_umfta(compiled, caps);
    report_from(original, compiled, trace, &orig_verdict, verdict, &closure)
}

pub(crate) fn report_from(
    original: &TileSystem,
    compiled: &TileSystem,
    trace: &PipelineTrace,
    orig_verdict: &UmftaVerdict,
    verdict: UmftaVerdict,
    closure: &ClosureResult,
) -> VerificationReport {
    let saturated = closure.saturated && !matches!(orig_verdict, UmftaVerdict::Unknown { .. });
    let factor = separability_factor(closure);
    let terminal = match &verdict {
        UmftaVerdict::Yes { terminal } => Some(terminal.clone()),
        _ => None,
    };
    let shape_ok = match (orig_verdict, &terminal) {
        (UmftaVerdict::Yes { terminal: a }, Some(b)) => a.shape().scale(2) == b.shape(),
        _ => false,
    };
    let mismatch_free = closure.producibles.iter().all(|p| p.is_mismatch_free(compiled));
    let tile_bound = 8 * original.size();
    VerificationReport {
        terminal_size: terminal.as_ref().map(|t| t.len()),
        max_nonterminal_size: closure.non_terminals().map(|p| p.len()).max(),
        factor,
        factor_ok: Check::from(factor.at_least(2), saturated),
        shape_ok: Check::from(shape_ok, saturated),
        tiles: compiled.size(),
        tile_bound,
        tile_bound_ok: Check::from(compiled.size() <= tile_bound, saturated),
        temperature_ok: Check::from(compiled.temperature() == 2, saturated),
        mismatch_free_ok: Check::from(mismatch_free, saturated),
        umfta_ok: Check::from(verdict.is_yes(), saturated),
        umfta_verdict: verdict,
        saturated,
        imbalance: trace.imbalance,
        producibles: closure.producibles.len(),
    }
}

/// Unit-cell pairs of the terminal joined by each named cut glue.
pub fn cut_edges(system: &TileSystem, terminal: &Assembly, cut_glues: &[String]) -> Vec<(Cell, Cell)> {
    let g = BondGraph::new(terminal, system);
    cut_glues
        .iter()
        .filter_map(|name| system.glue_id(name))
        .flat_map(|id| {
            g.edges()
                .iter()
                .filter(move |e| e.pair.glue == id)
                .map(|e| e.key())
        })
        .collect()
}

/// Producibles holding a tile from each cut edge, identified by tile type.
/// Cut-adjacent unit tiles occur once in the terminal, so a producible
/// holding the type holds that cell.
pub fn producibles_spanning_cut<'a>(
    closure: &'a ClosureResult,
    terminal: &Assembly,
    cuts: &[(Cell, Cell)],
) -> Vec<&'a Assembly> {
    let types: Vec<BTreeSet<u32>> = cuts
        .iter()
        .map(|&(a, b)| [terminal.get(a).unwrap(), terminal.get(b).unwrap()].into())
        .collect();
    closure
        .producibles
        .iter()
        .filter(|p| {
            let here: BTreeSet<u32> = p.cells().iter().map(|c| c.1).collect();
            types.iter().all(|t| !t.is_disjoint(&here))
        })
        .collect()
}

/// The system with the named glue removed from every tile.
pub fn without_glue(system: &TileSystem, name: &str) -> TileSystem {
    let mut out = system.clone();
    if let Some(id) = system.glue_id(name) {
        for t in 0..out.size() as u32 {
            for g in out.tile_mut(t).glues.iter_mut() {
                if *g == id {
                    *g = GlueId::NULL;
                }
            }
        }
    }
    out
}
