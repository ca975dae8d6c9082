use super::assemble::{assemble_layers, tau_layers, DEFAULT_MAX_TILES};
use super::background::Background;
use super::ptm::{DataPart, PKind, PtmLayout};
use super::region::LayeredRegion;
use super::skeleton::{BgFill, Colour, Colouring, Geometry, Skeleton};
use crate::error::{Error, Result};
use crate::machine::TuringMachine;
use crate::tiling::{Cell, Pattern, TilingSystem};

/// Default step budget of a square search.
pub const DEFAULT_SQUARE_BUDGET: u64 = 2_000_000;

/// One square of the construction restricted to the layers C, W, P and TM,
/// as a search problem: the square with its two columns and two black
/// rows, C and W fixed to the skeleton and the black row below fixed to
/// what the square underneath hands up.
#[derive(Debug, Clone)]
pub struct SquareProblem {
    pub geometry: Geometry,
    pub layout: PtmLayout,
    pub system: TilingSystem,
}

/// A filled square with the word the machine was started on.
#[derive(Debug, Clone)]
pub struct SquareSolution {
    pub pattern: Pattern,
    pub feed_row: usize,
    pub feed_word: Vec<usize>,
}

impl SquareProblem {
    pub fn new(machine: &TuringMachine, m: i64, o: i64) -> Result<Self> {
        let geometry = Geometry::new(m, o)?;
        let bg = Background::placeholder();
        let layers: Vec<_> = tau_layers(machine, &bg)?
            .into_iter()
            .filter(|l| ["C", "W", "P_TM"].contains(&l.name.as_str()))
            .collect();
        Ok(SquareProblem {
            geometry,
            layout: PtmLayout::new(machine)?,
            system: assemble_layers(&layers, DEFAULT_MAX_TILES)?,
        })
    }

    fn track(&self, name: &str) -> Result<usize> {
        self.system
            .track_index(name)
            .ok_or_else(|| Error::Domain(format!("no track {name}")))
    }

    /// The region with its fixed parts pinned.
    pub fn region(&self) -> Result<LayeredRegion<'_>> {
        let m = self.geometry.m;
        let bg = Background::placeholder();
        let sk = Skeleton::new(self.geometry, BgFill::Constant(0), Colouring::Uniform(Colour::Yellow));
        let mut region = LayeredRegion::new(&self.system, Cell::new(0, 0), (m + 1) as usize, (m + 1) as usize)?;
        let (ct, wt, pt) = (self.track("C")?, self.track("W")?, self.track("P")?);
        let below = self.layout.p_fill(m as usize, self.geometry.o as usize)?;
        for y in 0..=m {
            for x in 0..=m {
                let c = Cell::new(x, y);
                let names = sk.symbols_at(c, &|i| bg.symbols()[i].clone());
                for (t, key) in [(ct, "C"), (wt, "W")] {
                    let sym = self.system.tracks()[t]
                        .index_of(&names[key])
                        .ok_or_else(|| Error::Domain(format!("no {key} symbol {}", names[key])))?;
                    region.pin_symbol(c, t, sym)?;
                }
                if y == 0 && (1..m).contains(&x) {
                    region.pin_symbol(c, pt, below.p[0][(x - 1) as usize])?;
                }
            }
        }
        Ok(region)
    }

    /// The first filling, or `None` when the square cannot be filled.
    pub fn solve(&self, step_budget: u64) -> Result<Option<SquareSolution>> {
        let Some(pattern) = self.region()?.solve_first(step_budget)? else {
            return Ok(None);
        };
        let pt = self.track("P")?;
        let m = self.geometry.m;
        for y in 1..m {
            let kinds: Vec<PKind> = (1..m)
                .map(|x| self.layout.p_tiles()[pattern.get(Cell::new(x, y)).unwrap().symbol(pt)].kind)
                .collect();
            let reads: Option<Vec<usize>> = kinds
                .iter()
                .map(|k| match k {
                    PKind::Interior { d: DataPart::Feed { read, .. }, .. } => Some(*read),
                    _ => None,
                })
                .collect();
            if let Some(feed_word) = reads {
                return Ok(Some(SquareSolution {
                    pattern,
                    feed_row: y as usize,
                    feed_word,
                }));
            }
        }
        Err(Error::Domain("filled square has no feed row".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::render_pair_word;
    use crate::machine::corpus;
    use crate::tiling::validate_patch;

    #[test]
    fn filled_square_is_valid_and_matches_the_skeleton() {
        let tm = corpus::immediate_halt();
        let sq = SquareProblem::new(&tm, 6, 4).unwrap();
        let sol = sq.solve(DEFAULT_SQUARE_BUDGET).unwrap().unwrap();
        assert!(validate_patch(&sq.system, &sol.pattern).unwrap().is_empty());
        let fill = sq.layout.square_fill(6, 4).unwrap();
        assert_eq!(sol.feed_row, fill.feed_row);
        assert_eq!(sol.feed_word, fill.feed_word);
        assert_eq!(render_pair_word(&sol.feed_word), "11#10");
    }
}
