use super::{valid_name, Cell, Pattern, Tile, TilingSystem};
use crate::error::{Error, Result};
use std::collections::HashSet;

/// A Wang tile with integer edge colours.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WangTile {
    pub name: String,
    pub north: u32,
    pub east: u32,
    pub south: u32,
    pub west: u32,
}

impl WangTile {
    pub fn new(name: impl Into<String>, north: u32, east: u32, south: u32, west: u32) -> Self {
        WangTile {
            name: name.into(),
            north,
            east,
            south,
            west,
        }
    }
}

/// The flat system forbidding every mismatched horizontal and vertical domino.
pub fn wang_to_patterns(tiles: &[WangTile]) -> Result<TilingSystem> {
    let mut names = HashSet::new();
    for t in tiles {
        if !valid_name(&t.name) {
            return Err(Error::Malformed(format!("invalid tile name {:?}", t.name)));
        }
        if !names.insert(&t.name) {
            return Err(Error::Malformed(format!("duplicate tile name {}", t.name)));
        }
    }
    let mut forbidden = Vec::new();
    for (i, a) in tiles.iter().enumerate() {
        for (j, b) in tiles.iter().enumerate() {
            if a.east != b.west {
                forbidden.push(domino(i, (1, 0), j));
            }
            if a.north != b.south {
                forbidden.push(domino(i, (0, 1), j));
            }
        }
    }
    TilingSystem::flat(tiles.iter().map(|t| t.name.clone()).collect(), &forbidden)
}

fn domino(a: usize, d: (i64, i64), b: usize) -> Pattern {
    [
        (Cell::new(0, 0), Tile::flat(a)),
        (Cell::new(d.0, d.1), Tile::flat(b)),
    ]
    .into_iter()
    .collect()
}
