use super::{Cell, Pattern, TilingSystem};
use crate::error::{Error, Result};
use serde::Serialize;

/// An occurrence of forbidden pattern `rule` anchored at `anchor` (the
/// image of the rule's normalized origin).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub rule: usize,
    pub anchor: Cell,
}

/// Every occurrence of a forbidden pattern lying entirely inside the patch.
pub fn validate_patch(system: &TilingSystem, patch: &Pattern) -> Result<Vec<Violation>> {
    for (c, t) in patch.iter() {
        if !system.check_tile(t) {
            return Err(Error::Malformed(format!("unknown tile at {c}")));
        }
    }
    let Some((lo, hi)) = patch.bbox() else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (ri, rule) in system.rules().iter().enumerate() {
        let (w, h) = rule.extent();
        for ay in lo.y..=hi.y - (h as i64 - 1) {
            for ax in lo.x..=hi.x - (w as i64 - 1) {
                let anchor = Cell::new(ax, ay);
                if rule.occurs_at(anchor, |c| patch.get(c)) == Some(true) {
                    out.push(Violation { rule: ri, anchor });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{single_tile, yb};
    use crate::tiling::Tile;
    use proptest::prelude::*;

    fn y() -> Tile {
        Tile::flat(0)
    }
    fn b() -> Tile {
        Tile::flat(1)
    }

    #[test]
    fn all_yellow_square_is_valid() {
        let p = Pattern::from_rows(&[vec![y(), y()], vec![y(), y()]]);
        assert!(validate_patch(&yb(), &p).unwrap().is_empty());
    }

    #[test]
    fn single_cell_is_valid() {
        let p = Pattern::from_rows(&[vec![y()]]);
        assert!(validate_patch(&yb(), &p).unwrap().is_empty());
    }

    #[test]
    fn yellow_above_blue_is_one_violation() {
        let s = yb();
        let p = Pattern::from_rows(&[vec![y()], vec![b()]]);
        let v = validate_patch(&s, &p).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].anchor, Cell::new(0, 0));
        let r = &s.rules()[v[0].rule];
        assert_eq!(r.extent(), (1, 2));
    }

    #[test]
    fn vertical_pairs_oracle() {
        // Of the four vertical pairs only yellow above blue is forbidden.
        let s = yb();
        let mut bad = 0;
        for lower in [y(), b()] {
            for upper in [y(), b()] {
                let p = Pattern::from_rows(&[vec![upper.clone()], vec![lower.clone()]]);
                let n = validate_patch(&s, &p).unwrap().len();
                if lower == b() && upper == y() {
                    assert_eq!(n, 1);
                }
                bad += n;
            }
        }
        assert_eq!(bad, 1);
    }

    #[test]
    fn foreign_tile_is_an_error() {
        let p = Pattern::from_rows(&[vec![Tile::flat(4)]]);
        assert!(validate_patch(&single_tile(), &p).is_err());
    }

    proptest! {
        #[test]
        fn translation_invariance(bits in prop::collection::vec(any::<bool>(), 16), dx in -20i64..20, dy in -20i64..20) {
            let s = yb();
            let rows: Vec<Vec<Tile>> = bits.chunks(4).map(|r| r.iter().map(|&v| Tile::flat(v as usize)).collect()).collect();
            let p = Pattern::from_rows(&rows);
            let v0 = validate_patch(&s, &p).unwrap();
            let v1 = validate_patch(&s, &p.translate(dx, dy)).unwrap();
            prop_assert_eq!(v0.len(), v1.len());
            for (a, c) in v0.iter().zip(&v1) {
                prop_assert_eq!(a.rule, c.rule);
                prop_assert_eq!(a.anchor.offset(dx, dy), c.anchor);
            }
        }
    }
}
