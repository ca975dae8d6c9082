use crate::bitset::BitSet;
use crate::csp::{Csp, SearchOptions};
use crate::error::{Error, Result};
use crate::tiling::WangTile;
use std::collections::BTreeMap;

/// Default limit on the number of cells of one rectangle search.
pub const DEFAULT_CELL_BUDGET: usize = 4096;
/// Default limit on search steps.
pub const DEFAULT_STEP_BUDGET: u64 = 50_000_000;

/// A rectangle of Wang tiles with per-cell candidate sets. Cells are
/// numbered row-major from the bottom row: `(x, y) ↦ y·width + x`.
#[derive(Debug, Clone)]
pub struct WangRegion<'a> {
    tiles: &'a [WangTile],
    width: usize,
    height: usize,
    domains: Vec<BitSet>,
}

impl<'a> WangRegion<'a> {
    pub fn new(tiles: &'a [WangTile], width: usize, height: usize) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::Malformed("empty tile list".into()));
        }
        if width * height > DEFAULT_CELL_BUDGET {
            return Err(Error::BudgetExceeded {
                resource: "cells",
                limit: DEFAULT_CELL_BUDGET as u64,
                bound: format!("{}^{}", tiles.len(), width * height),
            });
        }
        Ok(WangRegion {
            tiles,
            width,
            height,
            domains: vec![BitSet::full(tiles.len()); width * height],
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    /// Keeps only the tiles satisfying `keep` at `(x, y)`.
    pub fn restrict(&mut self, x: usize, y: usize, keep: impl Fn(&WangTile) -> bool) {
        let c = self.cell(x, y);
        let allowed = BitSet::from_iter(
            self.tiles.len(),
            (0..self.tiles.len()).filter(|&i| keep(&self.tiles[i])),
        );
        self.domains[c].intersect_with(&allowed);
    }

    fn model(&self) -> Csp {
        let n = self.tiles.len();
        let mut csp = Csp::new(self.domains.clone());
        let mut by_east: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        let mut by_north: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, t) in self.tiles.iter().enumerate() {
            by_east.entry(t.east).or_default().push(i);
            by_north.entry(t.north).or_default().push(i);
        }
        let east: Vec<(BitSet, BitSet)> = by_east
            .iter()
            .map(|(&l, ts)| {
                let bad = (0..n).filter(|&j| self.tiles[j].west != l);
                (BitSet::from_iter(n, ts.iter().copied()), BitSet::from_iter(n, bad))
            })
            .collect();
        let north: Vec<(BitSet, BitSet)> = by_north
            .iter()
            .map(|(&l, ts)| {
                let bad = (0..n).filter(|&j| self.tiles[j].south != l);
                (BitSet::from_iter(n, ts.iter().copied()), BitSet::from_iter(n, bad))
            })
            .collect();
        for y in 0..self.height {
            for x in 0..self.width {
                let c = self.cell(x, y);
                if x + 1 < self.width {
                    for (a, b) in &east {
                        csp.add_nogood([(c, a.clone()), (c + 1, b.clone())]);
                    }
                }
                if y + 1 < self.height {
                    for (a, b) in &north {
                        csp.add_nogood([(c, a.clone()), (c + self.width, b.clone())]);
                    }
                }
            }
        }
        csp
    }

    /// The first tiling in row-major cell order with tiles tried in list
    /// order, as tile indices.
    pub fn solve_first(&self, step_budget: u64) -> Result<Option<Vec<usize>>> {
        self.model()
            .solve_first(None, step_budget)
            .map_err(|hit| step_error(hit.steps))
    }

    /// Calls `f` on every tiling until it returns `false`.
    pub fn for_each(&self, step_budget: u64, f: impl FnMut(&[usize]) -> bool) -> Result<u64> {
        let stats = self
            .model()
            .search(
                SearchOptions {
                    step_budget,
                    ..Default::default()
                },
                f,
            )
            .map_err(|hit| step_error(hit.steps))?;
        Ok(stats.solutions)
    }
}

fn step_error(steps: u64) -> Error {
    Error::BudgetExceeded {
        resource: "steps",
        limit: steps,
        bound: "search tree".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiles() -> Vec<WangTile> {
        vec![WangTile::new("a", 0, 1, 0, 2), WangTile::new("b", 0, 2, 0, 1)]
    }

    /// Counts tilings by brute force over all assignments.
    fn brute(tiles: &[WangTile], w: usize, h: usize) -> u64 {
        let n = tiles.len();
        let cells = w * h;
        let mut count = 0;
        for code in 0..n.pow(cells as u32) {
            let a: Vec<usize> = (0..cells).map(|i| code / n.pow(i as u32) % n).collect();
            let ok = (0..h).all(|y| {
                (0..w).all(|x| {
                    let t = &tiles[a[y * w + x]];
                    (x + 1 == w || t.east == tiles[a[y * w + x + 1]].west)
                        && (y + 1 == h || t.north == tiles[a[(y + 1) * w + x]].south)
                })
            });
            count += ok as u64;
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        let mut ts = tiles();
        ts.push(WangTile::new("c", 1, 1, 0, 1));
        ts.push(WangTile::new("d", 0, 2, 1, 2));
        for w in 1..=3 {
            for h in 1..=3 {
                let r = WangRegion::new(&ts, w, h).unwrap();
                assert_eq!(r.for_each(u64::MAX, |_| true).unwrap(), brute(&ts, w, h), "{w}x{h}");
            }
        }
    }

    #[test]
    fn first_solution_is_lexicographic() {
        let ts = tiles();
        let r = WangRegion::new(&ts, 3, 1).unwrap();
        assert_eq!(r.solve_first(u64::MAX).unwrap(), Some(vec![0, 1, 0]));
        let mut r = WangRegion::new(&ts, 3, 1).unwrap();
        r.restrict(0, 0, |t| t.name == "b");
        assert_eq!(r.solve_first(u64::MAX).unwrap(), Some(vec![1, 0, 1]));
        r.restrict(1, 0, |t| t.name == "b");
        assert_eq!(r.solve_first(u64::MAX).unwrap(), None);
    }

    #[test]
    fn budgets_are_enforced() {
        let ts = tiles();
        assert!(WangRegion::new(&ts, 100, 100).unwrap_err().is_budget());
        let r = WangRegion::new(&ts, 8, 8).unwrap();
        assert!(r.for_each(3, |_| true).unwrap_err().is_budget());
    }
}
