use crate::bitset::BitSet;
use crate::csp::{Csp, SearchOptions};
use crate::error::{Error, Result};
use crate::tiling::{Cell, Pattern, Tile, TilingSystem};

/// A rectangle of a layered system as a constraint problem with one
/// variable per cell and track. Only rule occurrences lying entirely inside
/// the rectangle are enforced.
#[derive(Debug, Clone)]
pub struct LayeredRegion<'a> {
    system: &'a TilingSystem,
    origin: Cell,
    width: usize,
    height: usize,
    domains: Vec<BitSet>,
}

impl<'a> LayeredRegion<'a> {
    /// The rectangle `[origin.x, origin.x + width) × [origin.y, origin.y + height)`.
    pub fn new(system: &'a TilingSystem, origin: Cell, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Domain("region must be non-empty".into()));
        }
        let sizes = system.track_sizes();
        let domains = (0..width * height)
            .flat_map(|_| sizes.iter().map(|&n| BitSet::full(n)))
            .collect();
        Ok(LayeredRegion {
            system,
            origin,
            width,
            height,
            domains,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    fn tracks(&self) -> usize {
        self.system.tracks().len()
    }

    fn local(&self, c: Cell) -> Option<usize> {
        let x = c.x - self.origin.x;
        let y = c.y - self.origin.y;
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return None;
        }
        Some(y as usize * self.width + x as usize)
    }

    fn var(&self, cell: usize, track: usize) -> usize {
        cell * self.tracks() + track
    }

    /// Restricts one track at a cell to `allowed`.
    pub fn restrict(&mut self, c: Cell, track: usize, allowed: &BitSet) -> Result<()> {
        let cell = self
            .local(c)
            .ok_or_else(|| Error::Domain(format!("cell ({}, {}) outside the region", c.x, c.y)))?;
        let v = self.var(cell, track);
        self.domains[v].intersect_with(allowed);
        Ok(())
    }

    /// Pins one track at a cell to a symbol.
    pub fn pin_symbol(&mut self, c: Cell, track: usize, symbol: usize) -> Result<()> {
        let n = self.system.tracks()[track].len();
        self.restrict(c, track, &BitSet::singleton(n, symbol))
    }

    /// Pins all tracks at a cell.
    pub fn pin(&mut self, c: Cell, tile: &Tile) -> Result<()> {
        for t in 0..self.tracks() {
            self.pin_symbol(c, t, tile.symbol(t))?;
        }
        Ok(())
    }

    /// Pins the tracks of a tile of a subsystem with the given track names.
    pub fn pin_projected(&mut self, c: Cell, names: &[usize], tile: &Tile) -> Result<()> {
        for (k, &t) in names.iter().enumerate() {
            self.pin_symbol(c, t, tile.symbol(k))?;
        }
        Ok(())
    }

    /// The constraint model.
    pub fn model(&self) -> Csp {
        let mut csp = Csp::new(self.domains.clone());
        for rule in self.system.rules() {
            let (rw, rh) = rule.extent();
            let (rw, rh) = (rw as i64, rh as i64);
            for ay in 0..=(self.height as i64 - rh) {
                for ax in 0..=(self.width as i64 - rw) {
                    let lits: Vec<(usize, BitSet)> = rule
                        .cells()
                        .iter()
                        .flat_map(|rc| {
                            let cell = (ay + rc.offset.y) as usize * self.width + (ax + rc.offset.x) as usize;
                            rc.constraints
                                .iter()
                                .map(move |(t, s)| (cell * self.tracks() + *t as usize, s.clone()))
                        })
                        .collect();
                    csp.add_nogood(lits);
                }
            }
        }
        csp
    }

    /// Variable order: bottom row first, left to right; the variables in
    /// `lead` come before all others.
    fn order(&self, lead: &[usize]) -> Vec<usize> {
        let mut order = lead.to_vec();
        let mut seen = vec![false; self.domains.len()];
        for &v in lead {
            seen[v] = true;
        }
        order.extend((0..self.domains.len()).filter(|&v| !seen[v]));
        order
    }

    fn lead(&self, tracks: &[usize], cells: &dyn Fn(Cell) -> bool) -> (Vec<usize>, Vec<Cell>) {
        let mut vars = Vec::new();
        let mut kept = Vec::new();
        for y in 0..self.height {
            for x in 0..self.width {
                let c = self.origin.offset(x as i64, y as i64);
                if cells(c) {
                    kept.push(c);
                    vars.extend(tracks.iter().map(|&t| self.var(y * self.width + x, t)));
                }
            }
        }
        (vars, kept)
    }

    fn decode(&self, values: &[usize], tracks: &[usize], cells: &[Cell]) -> Pattern {
        let mut p = Pattern::new();
        for &c in cells {
            let cell = self.local(c).expect("cell inside the region");
            let syms: Vec<usize> = tracks.iter().map(|&t| values[self.var(cell, t)]).collect();
            p.insert(c, Tile::from_symbols(&syms));
        }
        p
    }

    /// The first filling in the default order.
    pub fn solve_first(&self, step_budget: u64) -> Result<Option<Pattern>> {
        let all: Vec<usize> = (0..self.tracks()).collect();
        let (_, cells) = self.lead(&[], &|_| true);
        Ok(self
            .model()
            .solve_first(None, step_budget)
            .map_err(|hit| step_error(hit.steps, step_budget))?
            .map(|v| self.decode(&v, &all, &cells)))
    }

    /// Calls `f` once per distinct restriction of a filling to `tracks`,
    /// given as a pattern over those tracks in the listed order; `f`
    /// returns `false` to stop. Returns the number of restrictions seen.
    pub fn for_each_projection(
        &self,
        tracks: &[usize],
        step_budget: u64,
        f: impl FnMut(&Pattern) -> bool,
    ) -> Result<u64> {
        self.for_each_projection_on(tracks, &|_| true, step_budget, f)
    }

    /// As [`Self::for_each_projection`], restricted to the cells selected
    /// by `cells`.
    pub fn for_each_projection_on(
        &self,
        tracks: &[usize],
        cells: &dyn Fn(Cell) -> bool,
        step_budget: u64,
        mut f: impl FnMut(&Pattern) -> bool,
    ) -> Result<u64> {
        let (lead_vars, kept) = self.lead(tracks, cells);
        let order = self.order(&lead_vars);
        let lead = lead_vars.len();
        let stats = self
            .model()
            .search(
                SearchOptions {
                    order: Some(&order),
                    project: Some(lead),
                    step_budget,
                },
                |values| f(&self.decode(values, tracks, &kept)),
            )
            .map_err(|hit| step_error(hit.steps, step_budget))?;
        Ok(stats.solutions)
    }
}

fn step_error(steps: u64, limit: u64) -> Error {
    Error::BudgetExceeded {
        resource: "search steps",
        limit,
        bound: format!("{steps} steps taken"),
    }
}
