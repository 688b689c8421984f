use crate::analysis::{find_simple_cycles, lint_assembly};
use crate::assembly::Assembly;
use crate::bond::{BondGraph, GlueSidePair};
use crate::error::{Error, Result};
use crate::geom::Side;
use crate::system::{GlueId, TileSystem};

/// Removes glue-side pairs lying on cycles of the bond graph until it is a
/// tree. Each round nulls the pair of the canonically least edge of the
/// first fundamental cycle on every tile side of that axis, then merges
/// identical tiles.
pub fn treeify(system: &TileSystem, assembly: &Assembly) -> Result<(TileSystem, Assembly)> {
    let diags = lint_assembly(system, assembly);
    if !diags.is_empty() {
        return Err(Error::PreconditionFailed(
            diags.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    let mut system = system.clone();
    let mut assembly = assembly.clone();
    loop {
        let g = BondGraph::new(&assembly, &system);
        if !g.is_connected() {
            return Err(Error::PreconditionFailed(
                "bond graph disconnected after removing a glue-side pair".into(),
            ));
        }
        let cycles = find_simple_cycles(&g);
        let Some(cycle) = cycles.first() else {
            break;
        };
        let edge = cycle.iter().min_by_key(|e| e.key()).unwrap();
        null_pair(&mut system, edge.pair);
        let (deduped, remap) = system.dedup();
        assembly = assembly.remap_tiles(&remap);
        system = deduped;
    }
    Ok((system, assembly))
}

fn null_pair(system: &mut TileSystem, pair: GlueSidePair) {
    for id in 0..system.size() as u32 {
        let tile = system.tile_mut(id);
        for side in Side::ALL {
            if side.axis() == pair.axis && tile.glues[side.index()] == pair.glue {
                tile.glues[side.index()] = GlueId::NULL;
            }
        }
    }
}
