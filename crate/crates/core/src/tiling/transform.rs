use super::{Cell, Pattern, PeriodVector, Rule, TilingSystem};
use crate::error::Result;

/// The eight symmetries of the square lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Identity,
    /// Quarter turn counter-clockwise.
    Rot90,
    Rot180,
    Rot270,
    /// `x ↦ -x`.
    MirrorX,
    /// `y ↦ -y`.
    MirrorY,
    /// Swap `x` and `y`.
    Transpose,
    /// `(x, y) ↦ (-y, -x)`.
    AntiTranspose,
}

impl Transform {
    pub const ALL: [Transform; 8] = [
        Transform::Identity,
        Transform::Rot90,
        Transform::Rot180,
        Transform::Rot270,
        Transform::MirrorX,
        Transform::MirrorY,
        Transform::Transpose,
        Transform::AntiTranspose,
    ];

    pub fn apply(self, x: i64, y: i64) -> (i64, i64) {
        match self {
            Transform::Identity => (x, y),
            Transform::Rot90 => (-y, x),
            Transform::Rot180 => (-x, -y),
            Transform::Rot270 => (y, -x),
            Transform::MirrorX => (-x, y),
            Transform::MirrorY => (x, -y),
            Transform::Transpose => (y, x),
            Transform::AntiTranspose => (-y, -x),
        }
    }

    pub fn cell(self, c: Cell) -> Cell {
        let (x, y) = self.apply(c.x, c.y);
        Cell::new(x, y)
    }

    pub fn vector(self, v: PeriodVector) -> PeriodVector {
        let (p, q) = self.apply(v.p, v.q);
        PeriodVector { p, q }
    }

    pub fn pattern(self, p: &Pattern) -> Pattern {
        p.iter().map(|(c, t)| (self.cell(*c), t.clone())).collect()
    }

    /// The system whose valid configurations are the images of the
    /// original ones.
    pub fn system(self, s: &TilingSystem) -> Result<TilingSystem> {
        let rules: Vec<Rule> = s
            .rules()
            .iter()
            .filter_map(|r| r.map_cells(|c| self.cell(c)))
            .collect();
        TilingSystem::layered(s.tracks().to_vec(), rules)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::yb;
    use crate::tiling::{validate_patch, Tile};
    use proptest::prelude::*;

    #[test]
    fn rotations_compose() {
        for (x, y) in [(1, 2), (-3, 0), (0, 5)] {
            let once = Transform::Rot90.apply(x, y);
            let twice = Transform::Rot90.apply(once.0, once.1);
            assert_eq!(twice, Transform::Rot180.apply(x, y));
        }
    }

    proptest! {
        #[test]
        fn validity_is_equivariant(bits in prop::collection::vec(any::<bool>(), 16), ti in 0usize..8) {
            let t = Transform::ALL[ti];
            let s = yb();
            let rows: Vec<Vec<Tile>> = bits.chunks(4).map(|r| r.iter().map(|&b| Tile::flat(b as usize)).collect()).collect();
            let p = Pattern::from_rows(&rows);
            let a = validate_patch(&s, &p).unwrap().len();
            let b = validate_patch(&t.system(&s).unwrap(), &t.pattern(&p)).unwrap().len();
            prop_assert_eq!(a, b);
        }
    }
}
