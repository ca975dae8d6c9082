use super::Budget;
use crate::bitset::BitSet;
use crate::csp::{Csp, SearchOptions};
use crate::error::{Error, Result};
use crate::tiling::{Cell, Pattern, PeriodVector, Tile, TilingSystem, Transform};
use std::collections::HashMap;

/// Working frame for a period vector: vertical vectors are handled on the
/// transposed system so that the working vector always has `p > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub vector: PeriodVector,
    pub work: PeriodVector,
    pub transposed: bool,
}

impl Frame {
    pub fn new(vector: PeriodVector) -> Result<Self> {
        let v = PeriodVector::new(vector.p, vector.q)?.canonical();
        Ok(if v.p == 0 {
            Frame {
                vector,
                work: PeriodVector { p: v.q, q: 0 },
                transposed: true,
            }
        } else {
            Frame {
                vector,
                work: v,
                transposed: false,
            }
        })
    }

    pub fn system(&self, system: &TilingSystem) -> Result<TilingSystem> {
        if self.transposed {
            Transform::Transpose.system(system)
        } else {
            Ok(system.clone())
        }
    }

    /// Working-frame coordinates of an original cell.
    pub fn to_work(&self, c: Cell) -> Cell {
        if self.transposed {
            Cell::new(c.y, c.x)
        } else {
            c
        }
    }

    /// Block height for strip parameter `k`.
    pub fn block_height(&self, k: usize) -> usize {
        k * (self.work.q.unsigned_abs() as usize).max(1)
    }

    /// Maps a working-frame cell into the band `[0,p) × [0,height)` of the
    /// skewed extension.
    pub fn reduce(&self, c: Cell, height: usize) -> Option<(usize, usize)> {
        let PeriodVector { p, q } = self.work;
        let n = c.x.div_euclid(p);
        let j = c.y - n * q;
        (0..height as i64)
            .contains(&j)
            .then(|| ((c.x - n * p) as usize, j as usize))
    }
}

/// A valid block of the skewed periodic extension: `width` columns and
/// `height` rows in the working frame, stored row-major from the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub vector: PeriodVector,
    pub width: usize,
    pub height: usize,
    pub block: Vec<Tile>,
    pub hash: u64,
}

impl Strip {
    pub fn tile(&self, i: usize, j: usize) -> &Tile {
        &self.block[j * self.width + i]
    }

    /// The block as a pattern with its lower-left cell at the origin
    /// (working frame).
    pub fn pattern(&self) -> Pattern {
        let mut p = Pattern::new();
        for j in 0..self.height {
            for i in 0..self.width {
                p.insert(Cell::new(i as i64, j as i64), self.tile(i, j).clone());
            }
        }
        p
    }
}

/// FNV-1a over the symbol sequence.
pub(crate) fn block_hash(block: &[Tile]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for t in block {
        for &s in t.0.iter() {
            for b in s.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// The strip graph of a period vector.
#[derive(Debug, Clone)]
pub struct StripGraph {
    pub frame: Frame,
    pub k: usize,
    pub nodes: Vec<Strip>,
    pub edges: Vec<Vec<usize>>,
}

impl StripGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges[a].binary_search(&b).is_ok()
    }

    pub fn block_height(&self) -> usize {
        self.frame.block_height(self.k)
    }
}

struct Band {
    width: usize,
    tracks: usize,
    csp: Csp,
}

impl Band {
    fn var(&self, i: usize, j: usize, t: usize) -> usize {
        (j * self.width + i) * self.tracks + t
    }

    /// Column-major cell order, tracks innermost, over rows `rows`.
    fn order(&self, rows: std::ops::Range<usize>) -> Vec<usize> {
        let mut o = Vec::new();
        for i in 0..self.width {
            for j in rows.clone() {
                for t in 0..self.tracks {
                    o.push(self.var(i, j, t));
                }
            }
        }
        o
    }
}

/// Constraint model of the rows `[0,height)` of the skewed extension: one
/// nogood per occurrence of a rule lying entirely inside the band.
fn band_model(system: &TilingSystem, frame: &Frame, height: usize) -> Band {
    let PeriodVector { p, q } = frame.work;
    let width = p as usize;
    let sizes = system.track_sizes();
    let tracks = sizes.len();
    let domains = (0..width * height)
        .flat_map(|_| sizes.iter().map(|&n| BitSet::full(n)))
        .collect();
    let mut band = Band {
        width,
        tracks,
        csp: Csp::new(domains),
    };
    for rule in system.rules() {
        let (rw, rh) = rule.extent();
        let slack = q.abs() * (rw as i64 / p + 2);
        for ax in 0..p {
            for ay in (-(rh as i64) - slack)..(height as i64 + slack + 1) {
                let mut lits = Vec::new();
                let mut inside = true;
                for rc in rule.cells() {
                    let c = Cell::new(ax + rc.offset.x, ay + rc.offset.y);
                    let Some((i, j)) = frame.reduce(c, height) else {
                        inside = false;
                        break;
                    };
                    for (t, s) in &rc.constraints {
                        lits.push((band.var(i, j, *t as usize), s.clone()));
                    }
                }
                if inside {
                    band.csp.add_nogood(lits);
                }
            }
        }
    }
    band
}

fn budget_error(resource: &'static str, limit: u64, system: &TilingSystem, area: usize) -> Error {
    Error::BudgetExceeded {
        resource,
        limit,
        bound: format!("{}^{}", system.tile_count(), area),
    }
}

fn tiles_of(values: &[usize], tracks: usize, cells: std::ops::Range<usize>) -> Vec<Tile> {
    cells
        .map(|c| Tile::from_symbols(&values[c * tracks..(c + 1) * tracks]))
        .collect()
}

/// Valid blocks of `|p|` columns and `k·max(|q|,1)` rows whose skewed
/// extension contains no forbidden pattern, in lexicographic block order.
pub fn build_strip_nodes(system: &TilingSystem, vector: PeriodVector, k: usize) -> Result<Vec<Strip>> {
    build_strip_nodes_with(system, vector, k, &Budget::from_env())
}

pub fn build_strip_nodes_with(
    system: &TilingSystem,
    vector: PeriodVector,
    k: usize,
    budget: &Budget,
) -> Result<Vec<Strip>> {
    if k < system.k_min() {
        return Err(Error::Domain(format!(
            "k = {k} is below the system diameter {}",
            system.k_min()
        )));
    }
    let frame = Frame::new(vector)?;
    let work_sys = frame.system(system)?;
    let height = frame.block_height(k);
    let band = band_model(&work_sys, &frame, height);
    let order = band.order(0..height);
    let area = band.width * height;
    let mut nodes = Vec::new();
    let mut over = None;
    band.csp
        .search(
            SearchOptions {
                order: Some(&order),
                project: None,
                step_budget: budget.steps,
            },
            |sol| {
                if nodes.len() as u64 >= budget.nodes {
                    over = Some(("strip nodes", budget.nodes));
                    return false;
                }
                if ((nodes.len() + 1) * area) as u64 > budget.cells {
                    over = Some(("strip cells", budget.cells));
                    return false;
                }
                nodes.push(tiles_of(sol, band.tracks, 0..area));
                true
            },
        )
        .map_err(|_| budget_error("search steps", budget.steps, system, area))?;
    if let Some((resource, limit)) = over {
        return Err(budget_error(resource, limit, system, area));
    }
    nodes.sort();
    Ok(nodes
        .into_iter()
        .map(|block| Strip {
            vector,
            width: band.width,
            height,
            hash: block_hash(&block),
            block,
        })
        .collect())
}

/// Smallest `k ≥ diameter` such that every rule occurrence spans at most
/// `K + 1` consecutive rows of the skewed extension, so that it lies within
/// two stacked blocks.
pub fn choose_k(system: &TilingSystem, frame: &Frame) -> usize {
    let PeriodVector { p, q } = frame.work;
    let mut span = 1;
    for rule in system.rules() {
        for ax in 0..p {
            let js = rule.cells().iter().map(|rc| {
                let x = ax + rc.offset.x;
                rc.offset.y - x.div_euclid(p) * q
            });
            let (lo, hi) = js.fold((i64::MAX, i64::MIN), |(l, h), j| (l.min(j), h.max(j)));
            span = span.max((hi - lo + 1) as usize);
        }
    }
    let mut k = system.k_min();
    while frame.block_height(k) + 1 < span {
        k += 1;
    }
    k
}

/// The strip graph: nodes as in [`build_strip_nodes`] with `k` chosen by
/// [`choose_k`], and an edge `v → w` when `w` stacked on `v` is valid.
pub fn build_strip_graph(system: &TilingSystem, vector: PeriodVector) -> Result<StripGraph> {
    build_strip_graph_with(system, vector, &Budget::from_env())
}

pub fn build_strip_graph_with(
    system: &TilingSystem,
    vector: PeriodVector,
    budget: &Budget,
) -> Result<StripGraph> {
    let frame = Frame::new(vector)?;
    let work_sys = frame.system(system)?;
    let k = choose_k(&work_sys, &frame);
    let nodes = build_strip_nodes_with(system, vector, k, budget)?;
    let height = frame.block_height(k);
    let index: HashMap<&[Tile], usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.block.as_slice(), i))
        .collect();
    let band = band_model(&work_sys, &frame, 2 * height);
    let upper = band.order(height..2 * height);
    let area = band.width * height;
    let mut edges = vec![Vec::new(); nodes.len()];
    let mut total: u64 = 0;
    let mut steps_left = budget.steps;
    for (vi, v) in nodes.iter().enumerate() {
        let mut csp = band.csp.clone();
        for j in 0..height {
            for i in 0..band.width {
                let t = v.tile(i, j);
                for tr in 0..band.tracks {
                    let var = band.var(i, j, tr);
                    let n = csp.domain(var).universe();
                    csp.restrict(var, &BitSet::singleton(n, t.symbol(tr)));
                }
            }
        }
        let mut missing = false;
        let stats = csp
            .search(
                SearchOptions {
                    order: Some(&upper),
                    project: None,
                    step_budget: steps_left,
                },
                |sol| {
                    let block = tiles_of(sol, band.tracks, area..2 * area);
                    match index.get(block.as_slice()) {
                        Some(&w) => edges[vi].push(w),
                        None => missing = true,
                    }
                    true
                },
            )
            .map_err(|_| budget_error("search steps", budget.steps, system, 2 * area))?;
        debug_assert!(!missing, "upper block of a valid double block is a node");
        steps_left = steps_left.saturating_sub(stats.steps);
        total += edges[vi].len() as u64;
        if total > budget.nodes.saturating_mul(budget.nodes.min(64)) {
            return Err(budget_error("strip edges", budget.nodes, system, 2 * area));
        }
        edges[vi].sort_unstable();
        edges[vi].dedup();
    }
    Ok(StripGraph {
        frame,
        k,
        nodes,
        edges,
    })
}
