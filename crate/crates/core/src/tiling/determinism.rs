use super::{Cell, Pattern, TilingSystem};
use crate::error::{Error, Result};

/// Whether each tile is determined by its west and north-west neighbours:
/// for every pair (west, north-west) at most one tile completes the L-shape
/// without a forbidden occurrence inside it.
pub fn check_east_deterministic(system: &TilingSystem) -> Result<bool> {
    if let Some(r) = system.rules().iter().find(|r| {
        let (w, h) = r.extent();
        w > 2 || h > 2
    }) {
        let (w, h) = r.extent();
        return Err(Error::UnsupportedShape(format!(
            "rule {} spans {w}×{h}, more than 2×2",
            r.label()
        )));
    }
    let alphabet = system.alphabet(1 << 16)?;
    let west = Cell::new(0, 0);
    let north_west = Cell::new(0, 1);
    let target = Cell::new(1, 0);
    for w in &alphabet {
        for nw in &alphabet {
            let mut completions = 0;
            for t in &alphabet {
                let p: Pattern = [(west, w.clone()), (north_west, nw.clone()), (target, t.clone())]
                    .into_iter()
                    .collect();
                if clean(system, &p) {
                    completions += 1;
                    if completions > 1 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn clean(system: &TilingSystem, p: &Pattern) -> bool {
    system.rules().iter().all(|r| {
        (-1..=1).all(|ax| {
            (-1..=1).all(|ay| r.occurs_at(Cell::new(ax, ay), |c| p.get(c)) != Some(true))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{free_pair, single_tile, yb};
    use crate::tiling::{validate_patch, Tile};

    #[test]
    fn single_tile_is_deterministic() {
        assert!(check_east_deterministic(&single_tile()).unwrap());
    }

    #[test]
    fn free_pair_is_not() {
        assert!(!check_east_deterministic(&free_pair()).unwrap());
    }

    /// Independent oracle: count completions with `validate_patch`.
    fn oracle(system: &TilingSystem) -> bool {
        let n = system.tracks()[0].len();
        for w in 0..n {
            for nw in 0..n {
                let ok = (0..n)
                    .filter(|&t| {
                        let p: Pattern = [
                            (Cell::new(0, 0), Tile::flat(w)),
                            (Cell::new(0, 1), Tile::flat(nw)),
                            (Cell::new(1, 0), Tile::flat(t)),
                        ]
                        .into_iter()
                        .collect();
                        validate_patch(system, &p).unwrap().is_empty()
                    })
                    .count();
                if ok > 1 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn yb_matches_oracle() {
        // Rows are monochrome, so the west neighbour alone fixes the tile.
        let s = yb();
        assert_eq!(check_east_deterministic(&s).unwrap(), oracle(&s));
        assert!(check_east_deterministic(&s).unwrap());
    }

    #[test]
    fn large_rules_are_unsupported() {
        let p: Pattern = [(Cell::new(0, 0), Tile::flat(0)), (Cell::new(2, 0), Tile::flat(0))]
            .into_iter()
            .collect();
        let s = TilingSystem::flat(vec!["a".into()], &[p]).unwrap();
        assert!(matches!(
            check_east_deterministic(&s),
            Err(Error::UnsupportedShape(_))
        ));
    }
}
