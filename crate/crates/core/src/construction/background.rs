use crate::error::{Error, Result};
use crate::tiling::{check_east_deterministic, Cell, Pattern, Tile, TilingSystem};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determinism {
    East,
    North,
    None,
}

impl fmt::Display for Determinism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Determinism::East => "east",
            Determinism::North => "north",
            Determinism::None => "none",
        })
    }
}

/// The tiling carried by the white tiles of layer C. Any single-track
/// system can be plugged in; the layers copying it between columns need it
/// to be east-deterministic.
#[derive(Debug, Clone)]
pub struct Background {
    pub name: String,
    pub system: TilingSystem,
    pub determinism: Determinism,
}

impl Background {
    /// Checks that the system is single-track and, when east-determinism
    /// is claimed, that it holds.
    pub fn new(name: impl Into<String>, system: TilingSystem, determinism: Determinism) -> Result<Self> {
        if !system.is_flat() {
            return Err(Error::UnsupportedShape("a background must have a single track".into()));
        }
        if determinism == Determinism::East && !check_east_deterministic(&system)? {
            return Err(Error::NotEastDeterministic);
        }
        Ok(Background {
            name: name.into(),
            system,
            determinism,
        })
    }

    /// One tile, no rules.
    pub fn placeholder() -> Self {
        let system = TilingSystem::flat(vec!["bg".into()], &[]).expect("placeholder background");
        Background::new("placeholder-1", system, Determinism::East).expect("placeholder background")
    }

    /// Two tiles alternating along rows, free along columns.
    pub fn two_tile() -> Self {
        let t = Tile::flat;
        let pair = |a: usize| -> Pattern { [(Cell::new(0, 0), t(a)), (Cell::new(1, 0), t(a))].into_iter().collect() };
        let system =
            TilingSystem::flat(vec!["bg0".into(), "bg1".into()], &[pair(0), pair(1)]).expect("two-tile background");
        Background::new("placeholder-2", system, Determinism::East).expect("two-tile background")
    }

    pub fn symbols(&self) -> &[String] {
        &self.system.tracks()[0].symbols
    }

    pub fn len(&self) -> usize {
        self.symbols().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Fails unless the background is east-deterministic.
    pub fn require_east(&self) -> Result<()> {
        if self.determinism != Determinism::East {
            return Err(Error::NotEastDeterministic);
        }
        Ok(())
    }
}
