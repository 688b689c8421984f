//! Tile sets, glue strengths and temperature.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geom::Side;

/// Index into a system's tile list.
pub type TileId = u32;

/// Interned glue symbol. Id 0 is always the null glue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlueId(pub u32);

impl GlueId {
    pub const NULL: GlueId = GlueId(0);

    pub fn is_null(self) -> bool {
        self.0 == 0
    }
}

pub const NULL_GLUE_NAME: &str = "-";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glue {
    pub name: String,
    pub strength: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub name: String,
    /// Glues indexed by [`Side::index`] (N, E, S, W).
    pub glues: [GlueId; 4],
}

impl Tile {
    pub fn glue(&self, side: Side) -> GlueId {
        self.glues[side.index()]
    }
}

/// A 2HAM system with a diagonal glue function: two coincident glue-sides
/// bond iff they carry the same non-null glue, with that glue's strength.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSystem {
    glues: Vec<Glue>,
    glue_index: HashMap<String, GlueId>,
    tiles: Vec<Tile>,
    temperature: u32,
}

impl TileSystem {
    pub fn new(temperature: u32) -> Self {
        let null = Glue {
            name: NULL_GLUE_NAME.to_string(),
            strength: 0,
        };
        let mut glue_index = HashMap::new();
        glue_index.insert(NULL_GLUE_NAME.to_string(), GlueId::NULL);
        TileSystem {
            glues: vec![null],
            glue_index,
            tiles: Vec::new(),
            temperature,
        }
    }

    pub fn temperature(&self) -> u32 {
        self.temperature
    }

    pub fn set_temperature(&mut self, temperature: u32) {
        self.temperature = temperature;
    }

    /// Declares a glue. Fails if the name is taken or the strength is zero.
    pub fn add_glue(&mut self, name: &str, strength: u32) -> Result<GlueId> {
        if self.glue_index.contains_key(name) {
            return Err(Error::DuplicateGlue(name.to_string()));
        }
        if strength == 0 {
            return Err(Error::ZeroStrength(name.to_string()));
        }
        Ok(self.push_glue(name, strength))
    }

    fn push_glue(&mut self, name: &str, strength: u32) -> GlueId {
        let id = GlueId(self.glues.len() as u32);
        self.glues.push(Glue {
            name: name.to_string(),
            strength,
        });
        self.glue_index.insert(name.to_string(), id);
        id
    }

    /// Looks up a glue, declaring it with strength 1 if unknown.
    pub fn intern_glue(&mut self, name: &str) -> GlueId {
        match self.glue_index.get(name) {
            Some(&id) => id,
            None => self.push_glue(name, 1),
        }
    }

    pub fn glue_id(&self, name: &str) -> Option<GlueId> {
        self.glue_index.get(name).copied()
    }

    pub fn glue(&self, id: GlueId) -> &Glue {
        &self.glues[id.0 as usize]
    }

    pub fn glue_name(&self, id: GlueId) -> &str {
        &self.glues[id.0 as usize].name
    }

    pub fn strength(&self, id: GlueId) -> u32 {
        self.glues[id.0 as usize].strength
    }

    pub fn set_strength(&mut self, id: GlueId, strength: u32) {
        assert!(!id.is_null(), "null glue strength is fixed at 0");
        assert!(strength > 0);
        self.glues[id.0 as usize].strength = strength;
    }

    /// All non-null glues, in declaration order.
    pub fn glues(&self) -> impl Iterator<Item = (GlueId, &Glue)> {
        self.glues
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, g)| (GlueId(i as u32), g))
    }

    pub fn add_tile(&mut self, name: &str, glues: [GlueId; 4]) -> TileId {
        for g in glues {
            assert!((g.0 as usize) < self.glues.len(), "glue id out of range");
        }
        self.tiles.push(Tile {
            name: name.to_string(),
            glues,
        });
        (self.tiles.len() - 1) as TileId
    }

    /// Adds a tile from glue names in N, E, S, W order, interning unknown glues.
    pub fn add_tile_named(&mut self, name: &str, glues: [&str; 4]) -> TileId {
        let ids = glues.map(|g| self.intern_glue(g));
        self.add_tile(name, ids)
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile(&self, id: TileId) -> &Tile {
        &self.tiles[id as usize]
    }

    pub fn tile_mut(&mut self, id: TileId) -> &mut Tile {
        &mut self.tiles[id as usize]
    }

    pub fn tile_by_name(&self, name: &str) -> Option<TileId> {
        self.tiles
            .iter()
            .position(|t| t.name == name)
            .map(|i| i as TileId)
    }

    /// System size |S|.
    pub fn size(&self) -> usize {
        self.tiles.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.tiles.is_empty() {
            return Err(Error::NoTiles);
        }
        if self.temperature == 0 {
            return Err(Error::ZeroTemperature);
        }
        Ok(())
    }

    /// Bond strength between `a`'s side `side` and the opposite side of `b`.
    pub fn bond_strength(&self, a: TileId, side: Side, b: TileId) -> u32 {
        let ga = self.tile(a).glue(side);
        let gb = self.tile(b).glue(side.opposite());
        if ga == gb {
            self.strength(ga)
        } else {
            0
        }
    }

    /// Merges tiles with identical glue 4-arrays (first name wins) and drops
    /// glues no tile references. Returns the new system and the old->new
    /// tile remapping.
    pub fn dedup(&self) -> (TileSystem, Vec<TileId>) {
        let mut out = TileSystem::new(self.temperature);
        let mut used = vec![false; self.glues.len()];
        for t in &self.tiles {
            for g in t.glues {
                used[g.0 as usize] = true;
            }
        }
        let mut glue_map = vec![GlueId::NULL; self.glues.len()];
        for (id, g) in self.glues() {
            if used[id.0 as usize] {
                glue_map[id.0 as usize] = out.push_glue(&g.name, g.strength);
            }
        }
        let mut seen: HashMap<[GlueId; 4], TileId> = HashMap::new();
        let mut remap = Vec::with_capacity(self.tiles.len());
        for t in &self.tiles {
            let glues = t.glues.map(|g| glue_map[g.0 as usize]);
            let id = *seen
                .entry(glues)
                .or_insert_with(|| out.add_tile(&t.name, glues));
            remap.push(id);
        }
        (out, remap)
    }

    /// Returns a glue name not yet used in this system, derived from `base`.
    pub fn fresh_glue_name(&self, base: &str) -> String {
        if !self.glue_index.contains_key(base) {
            return base.to_string();
        }
        (2..)
            .map(|i| format!("{base}'{i}"))
            .find(|n| !self.glue_index.contains_key(n))
            .unwrap()
    }

    pub fn fresh_tile_name(&self, base: &str) -> String {
        let taken = |n: &str| self.tiles.iter().any(|t| t.name == n);
        if !taken(base) {
            return base.to_string();
        }
        (2..)
            .map(|i| format!("{base}'{i}"))
            .find(|n| !taken(n))
            .unwrap()
    }
}
