use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::tiling::{Cell, Rule, Track};
use std::collections::HashMap;
use std::fmt;

/// The structural roles of symbols of layer C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CClass {
    /// A background tile.
    White,
    /// Horizontal breaking tile.
    Black,
    /// Vertical breaking tile where a row of the right strip starts.
    Leftmost,
    /// Vertical breaking tile where a row of the left strip ends.
    Rightmost,
    /// Column tile above a leftmost tile, up to the next rightmost one.
    BetweenRl,
    /// Column tile above a rightmost tile, up to the next leftmost one.
    BetweenLr,
}

impl CClass {
    pub const ALL: [CClass; 6] = [
        CClass::White,
        CClass::Black,
        CClass::Leftmost,
        CClass::Rightmost,
        CClass::BetweenRl,
        CClass::BetweenLr,
    ];

    fn bit(self) -> u8 {
        1 << self as u8
    }

    /// Symbol name of a structural tile; white symbols are named after the
    /// background tile they carry.
    pub fn symbol(self) -> Option<&'static str> {
        match self {
            CClass::White => None,
            CClass::Black => Some("black"),
            CClass::Leftmost => Some("lm"),
            CClass::Rightmost => Some("rm"),
            CClass::BetweenRl => Some("brl"),
            CClass::BetweenLr => Some("blr"),
        }
    }

    pub fn is_column(self) -> bool {
        !matches!(self, CClass::White | CClass::Black)
    }

    /// The class of a C symbol name.
    pub fn of_symbol(name: &str) -> Option<CClass> {
        if name.starts_with(WHITE_PREFIX) {
            return Some(CClass::White);
        }
        CClass::ALL.into_iter().find(|c| c.symbol() == Some(name))
    }
}

/// Prefix of white C symbols.
pub const WHITE_PREFIX: &str = "w.";

/// A set of C classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassSet(u8);

impl ClassSet {
    pub const EMPTY: ClassSet = ClassSet(0);
    pub const ALL: ClassSet = ClassSet(0b11_1111);
    pub const WHITE: ClassSet = ClassSet(1);
    pub const BLACK: ClassSet = ClassSet(2);
    pub const LM: ClassSet = ClassSet(4);
    pub const RM: ClassSet = ClassSet(8);
    pub const BRL: ClassSet = ClassSet(16);
    pub const BLR: ClassSet = ClassSet(32);
    pub const COLUMN: ClassSet = ClassSet(4 | 8 | 16 | 32);

    pub fn contains(self, c: CClass) -> bool {
        self.0 & c.bit() != 0
    }

    pub const fn union(self, other: ClassSet) -> ClassSet {
        ClassSet(self.0 | other.0)
    }

    pub const fn complement(self) -> ClassSet {
        ClassSet(!self.0 & Self::ALL.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl std::ops::BitOr for ClassSet {
    type Output = ClassSet;
    fn bitor(self, rhs: ClassSet) -> ClassSet {
        self.union(rhs)
    }
}

impl fmt::Display for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = CClass::ALL
            .into_iter()
            .filter(|c| self.contains(*c))
            .map(|c| c.symbol().unwrap_or("white"))
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// One constraint of a layer rule cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    /// The named track holds a symbol of the set.
    Track(String, BitSet),
    /// Layer C holds a symbol of one of the classes.
    Class(ClassSet),
}

/// A forbidden pattern written against track names and C classes, resolved
/// to track indices when layers are assembled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerRule {
    pub label: String,
    pub cells: Vec<(Cell, Vec<Literal>)>,
}

impl LayerRule {
    pub fn new(label: impl Into<String>) -> Self {
        LayerRule {
            label: label.into(),
            cells: Vec::new(),
        }
    }

    /// Adds constraints at `(dx, dy)`; repeated cells are conjoined.
    pub fn at(mut self, dx: i64, dy: i64, lits: impl IntoIterator<Item = Literal>) -> Self {
        self.cells.push((Cell::new(dx, dy), lits.into_iter().collect()));
        self
    }

    /// Track names mentioned, C excluded when only classes are used.
    pub fn tracks(&self) -> impl Iterator<Item = &str> {
        self.cells.iter().flat_map(|(_, lits)| {
            lits.iter().filter_map(|l| match l {
                Literal::Track(t, _) => Some(t.as_str()),
                Literal::Class(_) => None,
            })
        })
    }

    pub fn uses_classes(&self) -> bool {
        self.cells
            .iter()
            .any(|(_, lits)| lits.iter().any(|l| matches!(l, Literal::Class(_))))
    }

    /// Resolves names against `index` (track name → position and size) and
    /// C classes against `classes` (the class of each C symbol). Returns
    /// `Ok(None)` when a mentioned track is absent or the pattern can never
    /// occur.
    pub(crate) fn resolve(
        &self,
        index: &HashMap<String, (usize, usize)>,
        classes: &[CClass],
    ) -> Result<Option<Rule>> {
        let mut cells = Vec::with_capacity(self.cells.len());
        for (c, lits) in &self.cells {
            let mut cons = Vec::with_capacity(lits.len());
            for l in lits {
                match l {
                    Literal::Track(name, set) => {
                        let Some(&(t, n)) = index.get(name) else {
                            return Ok(None);
                        };
                        if set.universe() != n {
                            return Err(Error::Malformed(format!(
                                "rule {} uses a set of the wrong size on track {name}",
                                self.label
                            )));
                        }
                        cons.push((t, set.clone()));
                    }
                    Literal::Class(cs) => {
                        let Some(&(t, n)) = index.get(C_TRACK) else {
                            return Ok(None);
                        };
                        cons.push((t, BitSet::from_iter(n, (0..n).filter(|&i| cs.contains(classes[i])))));
                    }
                }
            }
            cells.push((*c, cons));
        }
        Ok(Rule::new(self.label.clone(), cells))
    }
}

/// Name of the structural track.
pub const C_TRACK: &str = "C";

/// One component of the construction: its tracks, the rules among its own
/// symbols, the superposition constraints tying its symbols to C's classes,
/// and links to other components.
#[derive(Debug, Clone)]
pub struct LayerSpec {
    pub name: String,
    pub tracks: Vec<Track>,
    pub rules: Vec<LayerRule>,
    pub superposition: Vec<LayerRule>,
    pub links: Vec<LayerRule>,
}

impl LayerSpec {
    pub fn new(name: impl Into<String>, tracks: Vec<Track>) -> Self {
        LayerSpec {
            name: name.into(),
            tracks,
            rules: Vec::new(),
            superposition: Vec::new(),
            links: Vec::new(),
        }
    }

    pub fn track(&self, name: &str) -> Option<&Track> {
        self.tracks.iter().find(|t| t.name == name)
    }

    /// Number of symbols over all tracks of the layer.
    pub fn symbol_count(&self) -> usize {
        self.tracks.iter().map(|t| t.len()).sum()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len() + self.superposition.len() + self.links.len()
    }

    pub fn all_rules(&self) -> impl Iterator<Item = &LayerRule> {
        self.rules.iter().chain(&self.superposition).chain(&self.links)
    }
}

/// Set of the symbols of `track` satisfying `keep`.
pub fn symbol_set(track: &Track, keep: impl Fn(usize, &str) -> bool) -> BitSet {
    BitSet::from_iter(
        track.len(),
        track.symbols.iter().enumerate().filter(|(i, s)| keep(*i, s)).map(|(i, _)| i),
    )
}

pub fn track_lit(track: &Track, keep: impl Fn(usize, &str) -> bool) -> Literal {
    Literal::Track(track.name.clone(), symbol_set(track, keep))
}

pub fn class(cs: ClassSet) -> Literal {
    Literal::Class(cs)
}
