//! Tiles, patterns and tiling systems given by forbidden patterns.
//!
//! A system has one or more tracks. A tile carries one symbol per track, so
//! a flat system (one track) is an ordinary alphabet while product systems
//! such as the layered construction keep their layers apart. Forbidden
//! patterns are stored as [`Rule`]s whose cells constrain each track to a
//! set of symbols; a literal pattern is the special case of singleton sets.

mod determinism;
pub mod format;
mod periodic;
mod slope;
mod transform;
mod validate;
mod wang;

pub use determinism::check_east_deterministic;
pub use periodic::{validate_periodic, PeriodicConfig};
pub use slope::{slope_of, PeriodVector, Slope};
pub use transform::Transform;
pub use validate::{validate_patch, Violation};
pub use wang::{wang_to_patterns, WangTile};

use crate::bitset::BitSet;
use crate::csp::{Csp, SearchOptions};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    pub fn offset(self, dx: i64, dy: i64) -> Self {
        Cell::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// One symbol index per track.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile(pub SmallVec<[u16; 8]>);

impl Tile {
    pub fn flat(id: usize) -> Self {
        Tile(SmallVec::from_slice(&[id as u16]))
    }

    pub fn from_symbols(symbols: &[usize]) -> Self {
        Tile(symbols.iter().map(|&s| s as u16).collect())
    }

    pub fn symbol(&self, track: usize) -> usize {
        self.0[track] as usize
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Index of a tile of a flat system.
    pub fn id(&self) -> usize {
        self.0[0] as usize
    }
}

/// A named track with its symbol list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Track {
    pub name: String,
    pub symbols: Vec<String>,
}

impl Track {
    pub fn new(name: impl Into<String>, symbols: Vec<String>) -> Self {
        Track {
            name: name.into(),
            symbols,
        }
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Returns true when `name` may be used as a tile or symbol name in files.
pub fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || "|,{}&:;=()/".contains(c))
}

/// A finite partial map from cells to tiles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pattern {
    cells: BTreeMap<Cell, Tile>,
}

impl Pattern {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a pattern from rows listed top to bottom; row `rows.len()-1`
    /// sits at `y = 0`.
    pub fn from_rows(rows: &[Vec<Tile>]) -> Self {
        let h = rows.len() as i64;
        let mut p = Pattern::new();
        for (r, row) in rows.iter().enumerate() {
            for (x, t) in row.iter().enumerate() {
                p.insert(Cell::new(x as i64, h - 1 - r as i64), t.clone());
            }
        }
        p
    }

    pub fn insert(&mut self, cell: Cell, tile: Tile) {
        self.cells.insert(cell, tile);
    }

    pub fn get(&self, cell: Cell) -> Option<&Tile> {
        self.cells.get(&cell)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Cell, &Tile)> {
        self.cells.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.keys().copied()
    }

    /// Inclusive bounding box `(min, max)`.
    pub fn bbox(&self) -> Option<(Cell, Cell)> {
        let mut it = self.cells.keys();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            lo.x = lo.x.min(c.x);
            lo.y = lo.y.min(c.y);
            hi.x = hi.x.max(c.x);
            hi.y = hi.y.max(c.y);
        }
        Some((lo, hi))
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Pattern {
        Pattern {
            cells: self
                .cells
                .iter()
                .map(|(c, t)| (c.offset(dx, dy), t.clone()))
                .collect(),
        }
    }

    pub fn normalized(&self) -> Pattern {
        match self.bbox() {
            Some((lo, _)) => self.translate(-lo.x, -lo.y),
            None => self.clone(),
        }
    }

    /// Rows top to bottom over the bounding box; `None` marks holes.
    pub fn rows(&self) -> Vec<Vec<Option<Tile>>> {
        let Some((lo, hi)) = self.bbox() else {
            return Vec::new();
        };
        (lo.y..=hi.y)
            .rev()
            .map(|y| {
                (lo.x..=hi.x)
                    .map(|x| self.get(Cell::new(x, y)).cloned())
                    .collect()
            })
            .collect()
    }
}

impl FromIterator<(Cell, Tile)> for Pattern {
    fn from_iter<I: IntoIterator<Item = (Cell, Tile)>>(iter: I) -> Self {
        Pattern {
            cells: iter.into_iter().collect(),
        }
    }
}

/// A cell of a forbidden pattern: each listed track must hold a symbol of
/// the given set. Tracks not listed are unconstrained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleCell {
    pub offset: Cell,
    pub constraints: SmallVec<[(u16, BitSet); 2]>,
}

impl RuleCell {
    pub fn matches(&self, tile: &Tile) -> bool {
        self.constraints
            .iter()
            .all(|(t, s)| s.contains(tile.symbol(*t as usize)))
    }
}

/// A forbidden pattern over symbol sets, stored translation-normalized with
/// cells in lexicographic order.
#[derive(Debug, Clone)]
pub struct Rule {
    cells: Vec<RuleCell>,
    label: String,
}

impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for Rule {}

impl std::hash::Hash for Rule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.cells.hash(state);
    }
}

impl Rule {
    /// Builds a normalized rule. Constraints on the same cell and track are
    /// intersected; full sets are dropped. Returns `None` when some set is
    /// empty, since such a pattern can never occur.
    pub fn new(
        label: impl Into<String>,
        cells: impl IntoIterator<Item = (Cell, Vec<(usize, BitSet)>)>,
    ) -> Option<Rule> {
        let mut by_cell: BTreeMap<Cell, BTreeMap<u16, BitSet>> = BTreeMap::new();
        for (c, cons) in cells {
            let entry = by_cell.entry(c).or_default();
            for (t, s) in cons {
                match entry.get_mut(&(t as u16)) {
                    Some(existing) => existing.intersect_with(&s),
                    None => {
                        entry.insert(t as u16, s);
                    }
                }
            }
        }
        if by_cell.is_empty() {
            return None;
        }
        let min_x = by_cell.keys().map(|c| c.x).min().unwrap();
        let min_y = by_cell.keys().map(|c| c.y).min().unwrap();
        let mut out = Vec::with_capacity(by_cell.len());
        for (c, cons) in by_cell {
            if cons.values().any(|s| s.is_empty()) {
                return None;
            }
            out.push(RuleCell {
                offset: c.offset(-min_x, -min_y),
                constraints: cons.into_iter().filter(|(_, s)| !s.is_full()).collect(),
            });
        }
        Some(Rule {
            cells: out,
            label: label.into(),
        })
    }

    /// The literal pattern `pattern` as a rule of a system with the given
    /// track sizes.
    pub fn literal(label: impl Into<String>, pattern: &Pattern, track_sizes: &[usize]) -> Option<Rule> {
        Rule::new(
            label,
            pattern.iter().map(|(c, t)| {
                let cons = track_sizes
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| (k, BitSet::singleton(n, t.symbol(k))))
                    .collect();
                (*c, cons)
            }),
        )
    }

    pub fn cells(&self) -> &[RuleCell] {
        &self.cells
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Bounding-box width and height in cells.
    pub fn extent(&self) -> (u32, u32) {
        let w = self.cells.iter().map(|c| c.offset.x).max().unwrap_or(0) + 1;
        let h = self.cells.iter().map(|c| c.offset.y).max().unwrap_or(0) + 1;
        (w as u32, h as u32)
    }

    /// Whether the rule occurs at `anchor`; `None` if some cell is missing.
    pub fn occurs_at<'a>(&self, anchor: Cell, lookup: impl Fn(Cell) -> Option<&'a Tile>) -> Option<bool> {
        let mut all = true;
        for rc in &self.cells {
            let t = lookup(Cell::new(anchor.x + rc.offset.x, anchor.y + rc.offset.y))?;
            if all && !rc.matches(t) {
                all = false;
            }
        }
        Some(all)
    }

    pub(crate) fn map_cells(&self, f: impl Fn(Cell) -> Cell) -> Option<Rule> {
        Rule::new(
            self.label.clone(),
            self.cells.iter().map(|rc| {
                (
                    f(rc.offset),
                    rc.constraints
                        .iter()
                        .map(|(t, s)| (*t as usize, s.clone()))
                        .collect(),
                )
            }),
        )
    }

    /// Tracks mentioned by the rule.
    pub fn tracks(&self) -> impl Iterator<Item = usize> + '_ {
        let mut seen: Vec<usize> = self
            .cells
            .iter()
            .flat_map(|c| c.constraints.iter().map(|(t, _)| *t as usize))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter()
    }
}

/// A tiling system: tracks of symbols and forbidden patterns.
#[derive(Debug, Clone)]
pub struct TilingSystem {
    tracks: Vec<Track>,
    rules: Vec<Rule>,
    diameter: (u32, u32),
}

impl TilingSystem {
    /// A system over a single track whose forbidden set is given as literal patterns.
    pub fn flat(names: Vec<String>, forbidden: &[Pattern]) -> Result<Self> {
        let n = names.len();
        let mut rules = Vec::new();
        for (i, p) in forbidden.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::Malformed(format!("forbidden pattern {i} is empty")));
            }
            for (_, t) in p.iter() {
                if t.arity() != 1 || t.id() >= n {
                    return Err(Error::Malformed(format!(
                        "forbidden pattern {i} uses a tile outside the alphabet"
                    )));
                }
            }
            if let Some(r) = Rule::literal(format!("forbid#{i}"), p, &[n]) {
                rules.push(r);
            }
        }
        Self::layered(vec![Track::new("tile", names)], rules)
    }

    /// A multi-track system. Rules are deduplicated keeping the first label.
    pub fn layered(tracks: Vec<Track>, rules: Vec<Rule>) -> Result<Self> {
        if tracks.is_empty() {
            return Err(Error::Malformed("a system needs at least one track".into()));
        }
        let mut names = HashSet::new();
        for tr in &tracks {
            if !names.insert(tr.name.clone()) {
                return Err(Error::Malformed(format!("duplicate track {}", tr.name)));
            }
            if tr.symbols.len() > u16::MAX as usize {
                return Err(Error::Malformed(format!("track {} is too large", tr.name)));
            }
            let mut syms = HashSet::new();
            for s in &tr.symbols {
                if !syms.insert(s) {
                    return Err(Error::Malformed(format!("duplicate symbol {s} in track {}", tr.name)));
                }
            }
        }
        for r in &rules {
            for rc in r.cells() {
                for (t, s) in &rc.constraints {
                    let t = *t as usize;
                    if t >= tracks.len() || s.universe() != tracks[t].len() {
                        return Err(Error::Malformed(format!(
                            "rule {} does not match the track layout",
                            r.label()
                        )));
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        let rules: Vec<Rule> = rules.into_iter().filter(|r| seen.insert(r.clone())).collect();
        let mut diameter = (1, 1);
        for r in &rules {
            let (w, h) = r.extent();
            diameter.0 = diameter.0.max(w);
            diameter.1 = diameter.1.max(h);
        }
        Ok(TilingSystem {
            tracks,
            rules,
            diameter,
        })
    }

    pub fn tracks(&self) -> &[Track] {
        &self.tracks
    }

    pub fn track_index(&self, name: &str) -> Option<usize> {
        self.tracks.iter().position(|t| t.name == name)
    }

    pub fn track_sizes(&self) -> Vec<usize> {
        self.tracks.iter().map(|t| t.len()).collect()
    }

    pub fn is_flat(&self) -> bool {
        self.tracks.len() == 1
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Largest bounding-box width and height over the forbidden patterns.
    pub fn diameter(&self) -> (u32, u32) {
        self.diameter
    }

    /// Smallest admissible strip parameter: one more than the largest
    /// bounding-box extent, i.e. the larger diameter component.
    pub fn k_min(&self) -> usize {
        self.diameter.0.max(self.diameter.1) as usize
    }

    /// Whether `tile` has the right arity and in-range symbols.
    pub fn check_tile(&self, tile: &Tile) -> bool {
        tile.arity() == self.tracks.len()
            && tile
                .0
                .iter()
                .zip(&self.tracks)
                .all(|(&s, t)| (s as usize) < t.len())
    }

    pub fn tile_name(&self, tile: &Tile) -> String {
        tile.0
            .iter()
            .zip(&self.tracks)
            .map(|(&s, t)| t.symbols[s as usize].as_str())
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn tile_by_name(&self, name: &str) -> Option<Tile> {
        let parts: Vec<&str> = name.split('|').collect();
        if parts.len() != self.tracks.len() {
            return None;
        }
        let mut syms = SmallVec::new();
        for (p, t) in parts.iter().zip(&self.tracks) {
            syms.push(t.index_of(p)? as u16);
        }
        Some(Tile(syms))
    }

    /// Single-cell rules restrict which symbol tuples are tiles at all.
    pub fn unary_rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.cells().len() == 1)
    }

    /// Whether a tuple passes every single-cell rule.
    pub fn is_admissible(&self, tile: &Tile) -> bool {
        self.unary_rules().all(|r| !r.cells()[0].matches(tile))
    }

    /// The alphabet: for flat systems the declared list; for product systems
    /// the tuples admitted by the single-cell rules, in lexicographic order.
    pub fn alphabet(&self, limit: usize) -> Result<Vec<Tile>> {
        if self.is_flat() {
            return Ok((0..self.tracks[0].len()).map(Tile::flat).collect());
        }
        let csp = self.unary_csp(None);
        let mut out = Vec::new();
        let mut over = false;
        csp.search(SearchOptions::default(), |s| {
            if out.len() == limit {
                over = true;
                return false;
            }
            out.push(Tile::from_symbols(s));
            true
        })
        .expect("unbounded search");
        if over {
            return Err(Error::AlphabetTooLarge {
                count: self.tile_count(),
                bound: limit as u128,
            });
        }
        Ok(out)
    }

    fn unary_csp(&self, fixed: Option<(usize, usize)>) -> Csp {
        let mut csp = Csp::new(self.tracks.iter().map(|t| BitSet::full(t.len())).collect());
        if let Some((t, v)) = fixed {
            csp.restrict(t, &BitSet::singleton(self.tracks[t].len(), v));
        }
        for r in self.unary_rules() {
            let cons = &r.cells()[0].constraints;
            csp.add_nogood(cons.iter().map(|(t, s)| (*t as usize, s.clone())));
        }
        csp
    }

    /// Number of tiles, counted without materializing the product alphabet.
    ///
    /// Flat systems count their declared list. Product systems are counted
    /// by conditioning on the first track's symbol; the remaining tracks then
    /// split into groups not linked by any single-cell rule, and the count is
    /// the sum over first-track symbols of the product of the group counts.
    pub fn tile_count(&self) -> u128 {
        if self.is_flat() {
            return self.tracks[0].len() as u128;
        }
        let n = self.tracks.len();
        let mut total: u128 = 0;
        for c in 0..self.tracks[0].len() {
            let mut active: Vec<Vec<(usize, BitSet)>> = Vec::new();
            let mut dead = false;
            for r in self.unary_rules() {
                let cons = &r.cells()[0].constraints;
                let mut fires = true;
                let mut rest = Vec::new();
                for (t, s) in cons {
                    if *t == 0 {
                        fires &= s.contains(c);
                    } else {
                        rest.push((*t as usize, s.clone()));
                    }
                }
                if !fires {
                    continue;
                }
                if rest.is_empty() {
                    dead = true;
                    break;
                }
                active.push(rest);
            }
            if dead {
                continue;
            }
            // Group tracks 1..n linked by the active rules.
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            for cons in &active {
                let a = find(&mut parent, cons[0].0);
                for (t, _) in &cons[1..] {
                    let b = find(&mut parent, *t);
                    parent[b] = a;
                }
            }
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for t in 1..n {
                let r = find(&mut parent, t);
                groups.entry(r).or_default().push(t);
            }
            let mut prod: u128 = 1;
            for members in groups.values() {
                let local: HashMap<usize, usize> =
                    members.iter().enumerate().map(|(i, &t)| (t, i)).collect();
                let mut csp = Csp::new(
                    members
                        .iter()
                        .map(|&t| BitSet::full(self.tracks[t].len()))
                        .collect(),
                );
                for cons in &active {
                    if local.contains_key(&cons[0].0) {
                        csp.add_nogood(cons.iter().map(|(t, s)| (local[t], s.clone())));
                    }
                }
                let stats = csp
                    .search(SearchOptions::default(), |_| true)
                    .expect("unbounded search");
                prod *= stats.solutions as u128;
                if prod == 0 {
                    break;
                }
            }
            total += prod;
        }
        total
    }

    /// The system restricted to the named tracks: rules that mention any
    /// other track are dropped.
    pub fn restrict_tracks(&self, keep: &[&str]) -> Result<TilingSystem> {
        let mut map = HashMap::new();
        let mut tracks = Vec::new();
        for name in keep {
            let i = self
                .track_index(name)
                .ok_or_else(|| Error::Malformed(format!("unknown track {name}")))?;
            map.insert(i, tracks.len());
            tracks.push(self.tracks[i].clone());
        }
        let mut rules = Vec::new();
        for r in &self.rules {
            if r.tracks().all(|t| map.contains_key(&t)) {
                let cells = r.cells().iter().map(|rc| {
                    (
                        rc.offset,
                        rc.constraints
                            .iter()
                            .map(|(t, s)| (map[&(*t as usize)], s.clone()))
                            .collect(),
                    )
                });
                if let Some(nr) = Rule::new(r.label().to_string(), cells) {
                    rules.push(nr);
                }
            }
        }
        TilingSystem::layered(tracks, rules)
    }

    /// Projects a tile onto the tracks of `sub`, matching tracks by name.
    pub fn project_tile(&self, tile: &Tile, sub: &TilingSystem) -> Option<Tile> {
        let mut syms = SmallVec::new();
        for t in sub.tracks() {
            syms.push(tile.0[self.track_index(&t.name)?]);
        }
        Some(Tile(syms))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn yb() -> TilingSystem {
        crate::fixtures::yb()
    }

    pub fn tile(id: usize) -> Tile {
        Tile::flat(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixtures::*;

    #[test]
    fn yb_has_three_rules_and_diameter_two() {
        let s = yb();
        assert_eq!(s.rules().len(), 3);
        assert_eq!(s.diameter(), (2, 2));
        assert_eq!(s.k_min(), 2);
    }

    #[test]
    fn rules_are_normalized_and_deduplicated() {
        let p1: Pattern = [(Cell::new(5, 7), tile(0)), (Cell::new(6, 7), tile(1))]
            .into_iter()
            .collect();
        let p2 = p1.translate(-3, 2);
        let s = TilingSystem::flat(vec!["a".into(), "b".into()], &[p1, p2]).unwrap();
        assert_eq!(s.rules().len(), 1);
        assert_eq!(s.rules()[0].cells()[0].offset, Cell::new(0, 0));
        assert_eq!(s.rules()[0].cells()[1].offset, Cell::new(1, 0));
    }

    #[test]
    fn unknown_tile_is_rejected() {
        let p: Pattern = [(Cell::new(0, 0), tile(3))].into_iter().collect();
        assert!(TilingSystem::flat(vec!["a".into()], &[p]).is_err());
    }

    #[test]
    fn factored_count_matches_enumeration() {
        let tracks = vec![
            Track::new("A", vec!["a0".into(), "a1".into(), "a2".into()]),
            Track::new("B", vec!["b0".into(), "b1".into()]),
            Track::new("C", vec!["c0".into(), "c1".into(), "c2".into()]),
        ];
        // a0 forbids b1; (a1, c2) forbidden; (b0, c0) forbidden.
        let r1 = Rule::new(
            "r1",
            [(Cell::new(0, 0), vec![(0, BitSet::singleton(3, 0)), (1, BitSet::singleton(2, 1))])],
        )
        .unwrap();
        let r2 = Rule::new(
            "r2",
            [(Cell::new(0, 0), vec![(0, BitSet::singleton(3, 1)), (2, BitSet::singleton(3, 2))])],
        )
        .unwrap();
        let r3 = Rule::new(
            "r3",
            [(Cell::new(0, 0), vec![(1, BitSet::singleton(2, 0)), (2, BitSet::singleton(3, 0))])],
        )
        .unwrap();
        let s = TilingSystem::layered(tracks, vec![r1, r2, r3]).unwrap();
        let mut brute = 0;
        for a in 0..3 {
            for b in 0..2 {
                for c in 0..3 {
                    let bad = (a == 0 && b == 1) || (a == 1 && c == 2) || (b == 0 && c == 0);
                    if !bad {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(s.tile_count(), brute);
        assert_eq!(s.alphabet(1000).unwrap().len() as u128, brute);
    }

    #[test]
    fn names_round_trip() {
        let s = yb();
        let t = s.tile_by_name("B").unwrap();
        assert_eq!(s.tile_name(&t), "B");
        assert!(s.tile_by_name("W").is_none());
        assert!(valid_name("s0.1"));
        assert!(!valid_name("a b"));
    }
}
