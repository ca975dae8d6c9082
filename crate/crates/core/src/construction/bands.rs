use super::assemble::{assemble_layers, DEFAULT_MAX_TILES};
use super::background::Background;
use super::components::{gen_component_c, gen_component_r, gen_component_w};
use super::layer::{CClass, ClassSet, LayerSpec, C_TRACK};
use super::region::LayeredRegion;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::tiling::{Cell, Pattern, TilingSystem};
use std::collections::BTreeSet;

/// Default step budget of one band search.
pub const DEFAULT_BAND_BUDGET: u64 = 20_000_000;

/// Which rules of layer C a band system keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CRules {
    All,
    /// Only the rules around black tiles; any column tile may follow any.
    BlackOnly,
}

/// Layer C over the placeholder background, with the chosen rules.
pub fn band_layer_c(rules: CRules) -> Result<LayerSpec> {
    let mut c = gen_component_c(&Background::placeholder())?;
    if rules == CRules::BlackOnly {
        c.rules.retain(|r| r.label.contains("black"));
    }
    Ok(c)
}

/// C × R, or C × R × W when `with_w`.
pub fn band_system(rules: CRules, with_w: bool) -> Result<TilingSystem> {
    let mut layers = vec![band_layer_c(rules)?, gen_component_r()];
    if with_w {
        layers.push(gen_component_w());
    }
    assemble_layers(&layers, DEFAULT_MAX_TILES)
}

/// Columns at `x = 0, spacing, …, strips·spacing`, rows `0..height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Band {
    pub spacing: i64,
    pub strips: i64,
    pub height: i64,
}

impl Band {
    pub fn width(self) -> i64 {
        self.strips * self.spacing + 1
    }

    pub fn is_column(self, x: i64) -> bool {
        x.rem_euclid(self.spacing) == 0
    }

    /// Region of `system` over the band with column cells restricted to
    /// column classes and interior cells to `interior(cell)`.
    pub fn region<'a>(
        self,
        system: &'a TilingSystem,
        interior: &dyn Fn(Cell) -> ClassSet,
    ) -> Result<LayeredRegion<'a>> {
        let ct = system
            .track_index(C_TRACK)
            .ok_or_else(|| Error::Domain("no track C".into()))?;
        let names = &system.tracks()[ct].symbols;
        let set = |cs: ClassSet| {
            BitSet::from_iter(
                names.len(),
                (0..names.len()).filter(|&i| CClass::of_symbol(&names[i]).is_some_and(|c| cs.contains(c))),
            )
        };
        let mut region = LayeredRegion::new(system, Cell::new(0, 0), self.width() as usize, self.height as usize)?;
        for y in 0..self.height {
            for x in 0..self.width() {
                let c = Cell::new(x, y);
                let allowed = if self.is_column(x) {
                    ClassSet::COLUMN
                } else {
                    interior(c) & !ClassSet::COLUMN
                };
                region.restrict(c, ct, &set(allowed))?;
            }
        }
        Ok(region)
    }

    /// Black rows of strip `k` (0-based) of a C pattern: rows whose interior
    /// cells are all black.
    pub fn black_rows(self, system: &TilingSystem, c_pattern: &Pattern, k: i64) -> Vec<i64> {
        let names = &system.tracks()[system.track_index(C_TRACK).unwrap_or(0)].symbols;
        (0..self.height)
            .filter(|&y| {
                (k * self.spacing + 1..(k + 1) * self.spacing).all(|x| {
                    c_pattern
                        .get(Cell::new(x, y))
                        .is_some_and(|t| CClass::of_symbol(&names[t.symbol(0)]) == Some(CClass::Black))
                })
            })
            .collect()
    }
}

impl std::ops::Not for ClassSet {
    type Output = ClassSet;
    fn not(self) -> ClassSet {
        self.complement()
    }
}

impl std::ops::BitAnd for ClassSet {
    type Output = ClassSet;
    fn bitand(self, rhs: ClassSet) -> ClassSet {
        self.complement().union(rhs.complement()).complement()
    }
}

/// Outcome of the square-forcing search at one spacing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareForcing {
    pub spacing: i64,
    pub height: i64,
    /// Distinct C contents of valid fills.
    pub fills: usize,
    /// Fills whose black rows are not exactly `spacing` apart.
    pub irregular: usize,
    /// Pinned black-row distances other than `spacing` that admitted a fill.
    pub unequal_accepted: Vec<i64>,
}

impl SquareForcing {
    pub fn holds(&self) -> bool {
        self.irregular == 0 && self.unequal_accepted.is_empty()
    }
}

fn spaced_evenly(rows: &[i64], spacing: i64) -> bool {
    rows.windows(2).all(|w| w[1] - w[0] == spacing)
}

/// Enumerates the interior C contents of all valid fills of a one-strip band of
/// height `2·spacing + 1` and checks that black rows come exactly every
/// `spacing` rows (and that at least two occur); then pins two black rows
/// any other distance up to `2·spacing` apart and checks that nothing fills.
pub fn square_forcing(rules: CRules, spacing: i64, step_budget: u64) -> Result<SquareForcing> {
    let system = band_system(rules, false)?;
    let band = Band {
        spacing,
        strips: 1,
        height: 2 * spacing + 1,
    };
    let region = band.region(&system, &|_| ClassSet::ALL)?;
    let ct = system.track_index(C_TRACK).unwrap();
    let mut fills = 0;
    let mut irregular = 0;
    region.for_each_projection_on(&[ct], &|c| !band.is_column(c.x), step_budget, |p| {
        fills += 1;
        let rows = band.black_rows(&system, p, 0);
        if rows.len() < 2 || !spaced_evenly(&rows, spacing) {
            irregular += 1;
        }
        true
    })?;
    let mut unequal_accepted = Vec::new();
    for gap in (2..=2 * spacing).filter(|&g| g != spacing) {
        let tall = Band {
            height: gap + 1,
            ..band
        };
        let pinned = tall.region(&system, &|c| {
            if c.y == 0 || c.y == gap {
                ClassSet::BLACK
            } else {
                ClassSet::WHITE
            }
        })?;
        if pinned.solve_first(step_budget)?.is_some() {
            unequal_accepted.push(gap);
        }
    }
    Ok(SquareForcing {
        spacing,
        height: band.height,
        fills,
        irregular,
        unequal_accepted,
    })
}

/// Outcome of the offset-synchronisation search at one spacing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetSync {
    pub spacing: i64,
    /// `(o1, o2, fill exists)` for every pair of offsets tried.
    pub cases: Vec<(i64, i64, bool)>,
}

impl OffsetSync {
    /// Fills exist exactly for equal offsets.
    pub fn iff_equal(&self) -> bool {
        self.cases.iter().all(|&(a, b, ok)| ok == (a == b))
    }

    pub fn any_fill(&self) -> bool {
        self.cases.iter().any(|c| c.2)
    }
}

/// For each pair `(o1, o2)` of offsets, pins the black rows of three
/// strips at phases `0, o1, o1 + o2` (mod `spacing`), leaves the column
/// tiles free, and searches for a C × R × W fill of a band
/// `3·spacing + 1` high.
pub fn offset_sync(spacing: i64, offsets: &[i64], step_budget: u64) -> Result<OffsetSync> {
    let system = band_system(CRules::All, true)?;
    let band = Band {
        spacing,
        strips: 3,
        height: 3 * spacing + 1,
    };
    let mut cases = Vec::new();
    for &o1 in offsets {
        for &o2 in offsets {
            let phases = [0, o1, o1 + o2];
            let region = band.region(&system, &|c| {
                let k = (c.x / spacing) as usize;
                if (c.y - phases[k]).rem_euclid(spacing) == 0 {
                    ClassSet::BLACK
                } else {
                    ClassSet::WHITE
                }
            })?;
            cases.push((o1, o2, region.solve_first(step_budget)?.is_some()));
        }
    }
    Ok(OffsetSync { spacing, cases })
}

/// Distinct black-row phases of the strips of a C pattern.
pub fn strip_phases(band: Band, system: &TilingSystem, c_pattern: &Pattern) -> Vec<BTreeSet<i64>> {
    (0..band.strips)
        .map(|k| {
            band.black_rows(system, c_pattern, k)
                .into_iter()
                .map(|y| y.rem_euclid(band.spacing))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_set_operators() {
        assert_eq!(!ClassSet::COLUMN, ClassSet::WHITE | ClassSet::BLACK);
        assert_eq!(ClassSet::ALL & ClassSet::LM, ClassSet::LM);
        assert!((ClassSet::WHITE & ClassSet::BLACK).is_empty());
    }

    #[test]
    fn spacing_four_forces_squares() {
        let r = square_forcing(CRules::All, 4, DEFAULT_BAND_BUDGET).unwrap();
        assert!(r.fills > 0);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn corner_rules_leave_no_fill_below_four() {
        for n in [2, 3] {
            let r = square_forcing(CRules::All, n, DEFAULT_BAND_BUDGET).unwrap();
            assert_eq!(r.fills, 0, "spacing {n}");
        }
    }

    #[test]
    fn r_forces_squares_without_corner_rules() {
        for n in [2, 3, 4] {
            let r = square_forcing(CRules::BlackOnly, n, DEFAULT_BAND_BUDGET).unwrap();
            assert!(r.fills > 0, "spacing {n}");
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn offsets_synchronise_at_six() {
        let r = offset_sync(6, &[2, 3, 4], DEFAULT_BAND_BUDGET).unwrap();
        assert!(r.iff_equal(), "{:?}", r.cases);
    }
}
