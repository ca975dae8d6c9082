//! Small reference systems used by tests, benches and the CLI.

use crate::tiling::{Cell, Pattern, Tile, TilingSystem, WangTile};

/// The two-colour system whose valid tilings are a lower yellow half-plane
/// under an upper blue one (or a single colour): rows are monochrome and
/// yellow never sits above blue.
pub fn yb() -> TilingSystem {
    let y = Tile::flat(0);
    let b = Tile::flat(1);
    let dom = |a: &Tile, da: (i64, i64), c: &Tile| -> Pattern {
        [(Cell::new(0, 0), a.clone()), (Cell::new(da.0, da.1), c.clone())]
            .into_iter()
            .collect()
    };
    let forbidden = [dom(&y, (1, 0), &b), dom(&b, (1, 0), &y), dom(&b, (0, 1), &y)];
    TilingSystem::flat(vec!["Y".into(), "B".into()], &forbidden).expect("fixture is well formed")
}

/// One tile, nothing forbidden.
pub fn single_tile() -> TilingSystem {
    TilingSystem::flat(vec!["W".into()], &[]).expect("fixture is well formed")
}

/// Two tiles, nothing forbidden.
pub fn free_pair() -> TilingSystem {
    TilingSystem::flat(vec!["a".into(), "b".into()], &[]).expect("fixture is well formed")
}

/// One tile that is itself forbidden.
pub fn dead_tile() -> TilingSystem {
    let p: Pattern = [(Cell::new(0, 0), Tile::flat(0))].into_iter().collect();
    TilingSystem::flat(vec!["X".into()], &[p]).expect("fixture is well formed")
}

/// Wang tiles with horizontal colours alternating `a b a b` and vertical
/// colours free: the valid tilings are columns of period 2.
pub fn alternating_wang() -> Vec<WangTile> {
    vec![
        WangTile::new("a", 0, 1, 0, 2),
        WangTile::new("b", 0, 2, 0, 1),
    ]
}
