use crate::analysis::{lint_assembly, one_occurrence_edges};
use crate::assembly::Assembly;
use crate::bond::{BondEdge, BondGraph};
use crate::error::{Error, Result};
use crate::geom::Cell;
use crate::sim::{self, Caps, UmftaVerdict};
use crate::system::{GlueId, TileSystem};

use super::macrotile::{compile_macrotiles, weaken_cut};
use super::path::{bfs_orientation, tree_path_edges, uniquify_path};
use super::treeify::treeify;
use super::walk::{boundary_walk, halfway_edge, BoundaryWalk, Halfway};

/// How the starting edge of the walk is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgePolicy {
    /// Among all 1-occurrence edges and both starting endpoints, the one
    /// whose halfway crossing is nearest the exact middle; ties go to the
    /// canonically first candidate.
    #[default]
    Balanced,
    /// The canonically least 1-occurrence edge, walked from its larger cell.
    Canonical,
}

impl EdgePolicy {
    pub fn name(self) -> &'static str {
        match self {
            EdgePolicy::Balanced => "balanced",
            EdgePolicy::Canonical => "canonical",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WalkChoice {
    pub e_prime: BondEdge,
    pub first_endpoint: Cell,
    pub walk: BoundaryWalk,
    pub halfway: Halfway,
}

/// Candidates in canonical order: edges ascending, larger endpoint first.
pub fn choose_start(system: &TileSystem, assembly: &Assembly, policy: EdgePolicy) -> Result<WalkChoice> {
    let mut best: Option<WalkChoice> = None;
    for e in one_occurrence_edges(assembly, system)? {
        for first in [e.b, e.a] {
            let walk = boundary_walk(assembly, system, &e, first)?;
            let halfway = halfway_edge(&walk);
            let better = best
                .as_ref()
                .is_none_or(|b| halfway.imbalance.abs() < b.halfway.imbalance.abs());
            if better {
                best = Some(WalkChoice {
                    e_prime: e,
                    first_endpoint: first,
                    walk,
                    halfway,
                });
            }
            if policy == EdgePolicy::Canonical {
                return Ok(best.unwrap());
            }
        }
    }
    best.ok_or(Error::NoSuchEdge)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub name: String,
    pub system: TileSystem,
    pub assembly: Assembly,
}

/// Everything the pipeline decided, with a snapshot after each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineTrace {
    pub policy: EdgePolicy,
    /// `treeified`, `uniquified`, `compiled`, `weakened`.
    pub stages: Vec<Stage>,
    pub e_prime: (Cell, Cell),
    pub first_endpoint: Cell,
    pub e: (Cell, Cell),
    /// Cells on the path from `e_prime` to `e`.
    pub path: Vec<Cell>,
    /// Names of the two strength-1 glues across the cut, in the final system.
    pub cut_glues: [String; 2],
    pub imbalance: i64,
    /// Unit counts of the two halves.
    pub halves: (usize, usize),
}

impl PipelineTrace {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// The compiled terminal assembly, in the final system's tile ids.
    pub fn final_assembly(&self) -> &Assembly {
        &self.stages.last().unwrap().assembly
    }

    pub fn original_shape_len(&self) -> usize {
        self.stages[0].assembly.len()
    }
}

/// Compiles a temperature-1 system with a unique mismatch-free terminal
/// assembly into a scale-2 temperature-2 system whose terminal is at least
/// twice as large as any other producible, up to the reported imbalance.
pub fn size_separable_compile(
    system: &TileSystem,
    caps: Caps,
    policy: EdgePolicy,
) -> Result<(TileSystem, PipelineTrace)> {
    let (verdict, _) = sim::is_umfta(system, caps);
    let terminal = match verdict {
        UmftaVerdict::Yes { terminal } => terminal,
        UmftaVerdict::No { .. } => return Err(Error::NotUmfta(verdict.describe())),
        UmftaVerdict::Unknown { .. } => return Err(Error::UnknownUnderCaps(verdict.describe())),
    };
    compile_terminal(system, &terminal, policy)
}

/// The pipeline on a known terminal assembly, without the closure check.
pub(crate) fn compile_terminal(
    system: &TileSystem,
    terminal: &Assembly,
    policy: EdgePolicy,
) -> Result<(TileSystem, PipelineTrace)> {
    if terminal.len() == 1 {
        return Err(Error::TrivialAssembly);
    }
    let diags = lint_assembly(system, terminal);
    if !diags.is_empty() {
        return Err(Error::Lint(diags));
    }
    let mut stages = Vec::new();
    let (tsys, tasm) = treeify(system, terminal)?;
    stages.push(Stage {
        name: "treeified".into(),
        system: tsys.clone(),
        assembly: tasm.clone(),
    });

    let choice = choose_start(&tsys, &tasm, policy)?;
    let e = choice.halfway.edge;
    let (usys, uasm, path) = uniquify_path(&tsys, &tasm, &choice.e_prime, &e)?;
    stages.push(Stage {
        name: "uniquified".into(),
        system: usys.clone(),
        assembly: uasm.clone(),
    });

    let g = BondGraph::new(&uasm, &usys);
    let e_prime = *g.edge_between(choice.e_prime.a, choice.e_prime.b).unwrap();
    let e_now = *g.edge_between(e.a, e.b).unwrap();
    let path_edges = tree_path_edges(&g, &e_prime, &e_now);
    // glues changed, so walk the rewritten assembly
    let walk = boundary_walk(&uasm, &usys, &e_prime, choice.first_endpoint)?;
    let halfway = halfway_edge(&walk);
    debug_assert_eq!(halfway.edge.key(), e.key());
    let orientation = bfs_orientation(&uasm, &usys, choice.first_endpoint)?;
    let (csys, casm, _specs) = compile_macrotiles(&usys, &uasm, &walk, &orientation)?;
    stages.push(Stage {
        name: "compiled".into(),
        system: csys.clone(),
        assembly: casm.clone(),
    });

    let (wsys, wasm, cut) = weaken_cut(&csys, &casm, &walk, &halfway, &path_edges)?;
    let cut_names = cut.cut_glues.map(|g: GlueId| wsys.glue_name(g).to_string());
    let (fsys, remap) = wsys.dedup();
    let fasm = wasm.remap_tiles(&remap);
    stages.push(Stage {
        name: "weakened".into(),
        system: fsys.clone(),
        assembly: fasm,
    });

    let trace = PipelineTrace {
        policy,
        stages,
        e_prime: choice.e_prime.key(),
        first_endpoint: choice.first_endpoint,
        e: e.key(),
        path,
        cut_glues: cut_names,
        imbalance: halfway.imbalance,
        halves: cut.halves,
    };
    Ok((fsys, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn star4_canonical_start_matches_hand_trace() {
        let (s, a) = fixtures::star4();
        let c = choose_start(&s, &a, EdgePolicy::Canonical).unwrap();
        assert_eq!(c.e_prime.key(), (Cell::new(0, 0), Cell::new(1, 0)));
        assert_eq!(c.first_endpoint, Cell::new(1, 0));
        assert_eq!(c.halfway.imbalance, -2);
        let b = choose_start(&s, &a, EdgePolicy::Balanced).unwrap();
        assert_eq!(b.halfway.imbalance.abs(), 1);
    }

    #[test]
    fn single_tile_is_trivial() {
        let mut s = TileSystem::new(1);
        s.add_tile_named("t", ["-", "-", "-", "-"]);
        assert!(matches!(
            size_separable_compile(&s, Caps::default(), EdgePolicy::Balanced),
            Err(Error::TrivialAssembly)
        ));
    }
}
