//! Generators for the structural components: the skeleton of breaking
//! tiles (C), square forcing (R), offset synchronisation (W), background
//! transmission (S) and colouring (A).

use super::background::Background;
use super::layer::{class, track_lit, ClassSet, LayerRule, LayerSpec, Literal, C_TRACK, WHITE_PREFIX};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::tiling::{Cell, Track};
use std::collections::BTreeSet;

const WHITE: ClassSet = ClassSet::WHITE;
const BLACK: ClassSet = ClassSet::BLACK;
const LM: ClassSet = ClassSet::LM;
const RM: ClassSet = ClassSet::RM;
const BRL: ClassSet = ClassSet::BRL;
const BLR: ClassSet = ClassSet::BLR;
const COL: ClassSet = ClassSet::COLUMN;

fn not(cs: ClassSet) -> Literal {
    class(cs.complement())
}

/// Layer C: one white symbol per background tile, the horizontal breaking
/// tile and the four vertical breaking tiles.
///
/// Background rules apply to white symbols; rules spanning two adjacent
/// rows also get a variant with a black row inserted between them, so
/// that the background continues across horizontal breaks.
pub fn gen_component_c(bg: &Background) -> Result<LayerSpec> {
    let mut symbols: Vec<String> = bg.symbols().iter().map(|s| format!("{WHITE_PREFIX}{s}")).collect();
    symbols.extend(["black", "lm", "rm", "brl", "blr"].map(String::from));
    let track = Track::new(C_TRACK, symbols);
    let mut layer = LayerSpec::new("C", vec![track.clone()]);
    layer.rules = vec![
        LayerRule::new("C.left-of-black").at(0, 0, [not(BLACK | LM)]).at(1, 0, [class(BLACK)]),
        LayerRule::new("C.right-of-black").at(0, 0, [class(BLACK)]).at(1, 0, [not(BLACK | RM)]),
        LayerRule::new("C.above-black").at(0, 0, [class(BLACK)]).at(0, 1, [not(WHITE)]),
        LayerRule::new("C.below-black").at(0, 0, [not(WHITE)]).at(0, 1, [class(BLACK)]),
        LayerRule::new("C.above-lm").at(0, 0, [class(LM)]).at(0, 1, [not(BRL)]),
        LayerRule::new("C.above-brl").at(0, 0, [class(BRL)]).at(0, 1, [not(RM | BRL)]),
        LayerRule::new("C.above-rm").at(0, 0, [class(RM)]).at(0, 1, [not(BLR)]),
        LayerRule::new("C.above-blr").at(0, 0, [class(BLR)]).at(0, 1, [not(LM | BLR)]),
    ];
    let lift = |set: &BitSet| Literal::Track(C_TRACK.into(), BitSet::from_iter(track.len(), set.iter()));
    for rule in bg.system.rules() {
        let cells: Vec<(Cell, Literal)> = rule
            .cells()
            .iter()
            .map(|rc| {
                let set = rc
                    .constraints
                    .iter()
                    .map(|(_, s)| s.clone())
                    .next()
                    .unwrap_or_else(|| BitSet::full(bg.len()));
                (rc.offset, lift(&set))
            })
            .collect();
        let mut base = LayerRule::new(format!("C.bg.{}", rule.label()));
        for (c, l) in &cells {
            base = base.at(c.x, c.y, [l.clone(), class(WHITE)]);
        }
        layer.rules.push(base);
        let rows: BTreeSet<i64> = cells.iter().map(|(c, _)| c.y).collect();
        let xs: BTreeSet<i64> = cells.iter().map(|(c, _)| c.x).collect();
        for &gap in rows.iter().filter(|&&y| rows.contains(&(y + 1))) {
            let mut jump = LayerRule::new(format!("C.bg.{}.jump{}", rule.label(), gap));
            for (c, l) in &cells {
                let y = if c.y > gap { c.y + 1 } else { c.y };
                jump = jump.at(c.x, y, [l.clone(), class(WHITE)]);
            }
            for &x in &xs {
                jump = jump.at(x, gap + 1, [class(BLACK)]);
            }
            layer.rules.push(jump);
        }
    }
    Ok(layer)
}

/// Edge colours of the R tiles, listed north, east, south, west.
const R_TILES: [(&str, [char; 4], ClassSet); 7] = [
    ("r.vert", ['V', 'R', 'V', 'L'], BRL.union(BLR)),
    ("r.horiz", ['R', 'H', 'L', 'H'], BLACK),
    ("r.diag", ['L', 'L', 'R', 'R'], WHITE),
    ("r.left", ['L', 'L', 'L', 'L'], WHITE),
    ("r.right", ['R', 'R', 'R', 'R'], WHITE),
    ("r.joinl", ['V', 'H', 'V', 'L'], LM),
    ("r.joinr", ['V', 'R', 'V', 'H'], RM),
];

/// Layer R: Wang tiles whose diagonal forces every region between two
/// black rows and two columns to be a square.
///
/// Inside a square the tiles below the anti-diagonal carry `R` on every
/// edge, those above it `L`; the diagonal tile turns one into the other.
/// Black rows show `R` above and `L` below, columns `R` to their right and
/// `L` to their left, so each row and each column of the interior meets
/// the diagonal exactly once.
pub fn gen_component_r() -> LayerSpec {
    let track = Track::new("R", R_TILES.iter().map(|t| t.0.to_string()).collect());
    let mut layer = LayerSpec::new("R", vec![track.clone()]);
    let colours = ['V', 'R', 'L', 'H'];
    for c in colours {
        let east = track_lit(&track, |i, _| R_TILES[i].1[1] == c);
        let bad_west = track_lit(&track, |i, _| R_TILES[i].1[3] != c);
        if R_TILES.iter().any(|t| t.1[1] == c) {
            layer.rules.push(LayerRule::new(format!("R.h.{c}")).at(0, 0, [east]).at(1, 0, [bad_west]));
        }
        let north = track_lit(&track, |i, _| R_TILES[i].1[0] == c);
        let bad_south = track_lit(&track, |i, _| R_TILES[i].1[2] != c);
        if R_TILES.iter().any(|t| t.1[0] == c) {
            layer.rules.push(LayerRule::new(format!("R.v.{c}")).at(0, 0, [north]).at(0, 1, [bad_south]));
        }
    }
    for (i, (name, _, on)) in R_TILES.iter().enumerate() {
        layer.superposition.push(
            LayerRule::new(format!("R.on.{name}")).at(0, 0, [track_lit(&track, |j, _| j == i), not(*on)]),
        );
    }
    layer
}

/// Signal flags of layer W.
pub mod flag {
    /// Row prolonging a leftmost tile to the left.
    pub const L: u8 = 1;
    /// Row prolonging a rightmost tile to the right.
    pub const R: u8 = 2;
    /// Diagonal leaving a rightmost tile upwards.
    pub const D1: u8 = 4;
    /// Vertical signal from the point where D1 meets a black row.
    pub const V: u8 = 8;
    /// Diagonal leaving a leftmost tile upwards.
    pub const D2: u8 = 16;
    /// Diagonal leaving a rightmost tile downwards.
    pub const E: u8 = 32;
    pub const NAMES: [(u8, &str); 6] = [(L, "L"), (R, "R"), (D1, "D1"), (V, "V"), (D2, "D2"), (E, "E")];
}

/// Name of the W symbol with the given flags.
pub fn w_symbol(flags: u8) -> String {
    if flags == 0 {
        return "sig.-".into();
    }
    let parts: Vec<&str> = flag::NAMES.iter().filter(|(f, _)| flags & f != 0).map(|(_, n)| *n).collect();
    format!("sig.{}", parts.join("+"))
}

pub fn w_track() -> Track {
    Track::new("W", (0..64u8).map(w_symbol).collect())
}

/// Literal: the W flags satisfy `keep`.
pub fn w_lit(keep: impl Fn(u8) -> bool) -> Literal {
    track_lit(&w_track(), |i, _| keep(i as u8))
}

fn has(f: u8) -> Literal {
    w_lit(move |s| s & f != 0)
}

fn lacks(f: u8) -> Literal {
    w_lit(move |s| s & f == 0)
}

/// Layer W: six independent signal flags.
///
/// `L` marks the row from a leftmost tile back to the previous column and
/// `R` the row from a rightmost tile on to the next column. `D1` climbs
/// diagonally from a rightmost tile until it meets the next black row,
/// where `V` starts and climbs until the `L` row; `D2` climbs from a
/// leftmost tile to the same `L` row. On that row `V` and `D2` must meet,
/// so the offsets at the two columns of a square agree. `E` descends from
/// a rightmost tile through the next strip and must reach its far column
/// on an `R` row, tying the spacing of neighbouring strips.
pub fn gen_component_w() -> LayerSpec {
    use flag::*;
    let mut layer = LayerSpec::new("W", vec![w_track()]);
    layer.superposition = vec![
        LayerRule::new("W.on-white").at(0, 0, [has(L | R | D1 | V | D2), not(WHITE)]),
        LayerRule::new("W.E-on-white-or-black").at(0, 0, [has(E), not(WHITE | BLACK)]),
    ];
    let non_col = not(COL);
    layer.rules = vec![
        LayerRule::new("W.L.start").at(-1, 0, [lacks(L)]).at(0, 0, [class(LM)]),
        LayerRule::new("W.L.left").at(-1, 0, [lacks(L), non_col.clone()]).at(0, 0, [has(L)]),
        LayerRule::new("W.L.right").at(0, 0, [has(L)]).at(1, 0, [lacks(L), not(LM)]),
        LayerRule::new("W.R.start").at(0, 0, [class(RM)]).at(1, 0, [lacks(R)]),
        LayerRule::new("W.R.right").at(0, 0, [has(R)]).at(1, 0, [lacks(R), non_col.clone()]),
        LayerRule::new("W.R.left").at(-1, 0, [lacks(R), not(RM)]).at(0, 0, [has(R)]),
        LayerRule::new("W.D1.start").at(0, 0, [class(RM)]).at(1, 1, [lacks(D1)]),
        LayerRule::new("W.D1.column").at(0, 0, [has(D1)]).at(1, 1, [class(COL)]),
        LayerRule::new("W.D1.next").at(0, 0, [has(D1)]).at(1, 1, [class(WHITE), lacks(D1)]),
        LayerRule::new("W.D1.prev").at(-1, -1, [lacks(D1), not(RM)]).at(0, 0, [has(D1)]),
        LayerRule::new("W.D1.hit")
            .at(0, 0, [has(D1)])
            .at(1, 1, [class(BLACK)])
            .at(1, 2, [lacks(V)]),
        LayerRule::new("W.V.up").at(0, 0, [w_lit(|s| s & V != 0 && s & L == 0)]).at(0, 1, [lacks(V)]),
        LayerRule::new("W.V.prev")
            .at(0, -1, [w_lit(|s| s & V == 0 || s & L != 0), not(BLACK)])
            .at(0, 0, [has(V)]),
        LayerRule::new("W.V.source")
            .at(-1, -2, [lacks(D1)])
            .at(0, -1, [class(BLACK)])
            .at(0, 0, [has(V)]),
        LayerRule::new("W.D2.start").at(0, 0, [class(LM)]).at(1, 1, [lacks(D2)]),
        LayerRule::new("W.D2.next").at(0, 0, [w_lit(|s| s & D2 != 0 && s & L == 0)]).at(1, 1, [lacks(D2)]),
        LayerRule::new("W.D2.prev")
            .at(-1, -1, [w_lit(|s| s & D2 == 0 || s & L != 0), not(LM)])
            .at(0, 0, [has(D2)]),
        LayerRule::new("W.meet").at(0, 0, [w_lit(|s| s & L != 0 && (s & V != 0) != (s & D2 != 0))]),
        LayerRule::new("W.E.start").at(0, 0, [class(RM)]).at(1, -1, [lacks(E)]),
        LayerRule::new("W.E.next").at(0, 0, [has(E)]).at(1, -1, [non_col, lacks(E)]),
        LayerRule::new("W.E.end")
            .at(0, 0, [has(E)])
            .at(0, -1, [lacks(R)])
            .at(1, -1, [class(COL)]),
        LayerRule::new("W.E.prev").at(-1, 1, [lacks(E), not(RM)]).at(0, 0, [has(E)]),
    ];
    layer
}

/// A symbol of layer S: an arrow, a gray mark and a transported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SSymbol {
    /// `true` for the diagonal arrow, `false` for the horizontal one.
    pub diagonal: bool,
    pub gray: bool,
    /// A background tile index, or `None` for a black cell's copy.
    pub value: Option<usize>,
}

impl SSymbol {
    fn index(self, values: usize) -> usize {
        let v = self.value.map_or(0, |v| v + 1);
        ((self.diagonal as usize) * 2 + self.gray as usize) * (values + 1) + v
    }

    fn from_index(i: usize, values: usize) -> SSymbol {
        let v = i % (values + 1);
        let head = i / (values + 1);
        SSymbol {
            diagonal: head >= 2,
            gray: head % 2 == 1,
            value: if v == 0 { None } else { Some(v - 1) },
        }
    }

    pub fn name(self, bg: &Background) -> String {
        format!(
            "s.{}.{}.{}",
            if self.diagonal { "ne" } else { "e" },
            if self.gray { "g" } else { "p" },
            self.value.map_or("none", |v| bg.symbols()[v].as_str())
        )
    }
}

pub fn s_track(bg: &Background) -> Track {
    let n = bg.len();
    Track::new("S", (0..4 * (n + 1)).map(|i| SSymbol::from_index(i, n).name(bg)).collect())
}

/// Index of an S symbol in [`s_track`].
pub fn s_index(sym: SSymbol, bg: &Background) -> usize {
    sym.index(bg.len())
}

/// Layer S: transmission of the background from one strip to the next.
///
/// In each strip the last `o` interior columns carry diagonal arrows and
/// the others horizontal ones, `o` being the offset to the next strip.
/// The boundary is pinned by a gray diagonal from the cell left of a
/// leftmost tile down to the bottom row of the square, continued by a gray
/// horizontal run back to the left column. Values follow the arrows: a
/// horizontal arrow hands its value to the right, a diagonal one to the
/// upper right, and the first cell right of a column must hold its own
/// background tile (or `none` on a black cell). The first column of every
/// strip is thus the first column of the strip to its left, shifted up by
/// the offset.
pub fn gen_component_s(bg: &Background) -> Result<LayerSpec> {
    bg.require_east()?;
    let n = bg.len();
    let track = s_track(bg);
    let sym = |i: usize| SSymbol::from_index(i, n);
    let s = |keep: &dyn Fn(SSymbol) -> bool| track_lit(&track, |i, _| keep(sym(i)));
    let mut layer = LayerSpec::new("S", vec![track.clone()]);
    layer.superposition = vec![
        LayerRule::new("S.column-arrow").at(0, 0, [class(COL), s(&|x| x.diagonal || x.gray)]),
        LayerRule::new("S.gray-on-white").at(0, 0, [s(&|x| x.gray), not(WHITE)]),
    ];
    let interior = not(COL);
    layer.rules = vec![
        LayerRule::new("S.zone-order")
            .at(0, 0, [s(&|x| x.diagonal)])
            .at(1, 0, [interior.clone(), s(&|x| !x.diagonal)]),
        LayerRule::new("S.uniform.e")
            .at(0, 0, [interior.clone(), s(&|x| !x.diagonal)])
            .at(0, 1, [interior.clone(), s(&|x| x.diagonal)]),
        LayerRule::new("S.uniform.ne")
            .at(0, 0, [interior.clone(), s(&|x| x.diagonal)])
            .at(0, 1, [interior.clone(), s(&|x| !x.diagonal)]),
        LayerRule::new("S.left-of-lm")
            .at(0, 0, [s(&|x| !(x.diagonal && x.gray))])
            .at(1, 0, [class(LM)]),
        LayerRule::new("S.gray-diagonal")
            .at(-1, -1, [class(WHITE), s(&|x| !(x.diagonal && x.gray))])
            .at(0, 0, [s(&|x| x.diagonal && x.gray)]),
        LayerRule::new("S.gray-diagonal-column")
            .at(-1, -1, [class(COL)])
            .at(0, 0, [s(&|x| x.diagonal && x.gray)]),
        LayerRule::new("S.gray-diagonal-foot")
            .at(-1, -1, [class(BLACK)])
            .at(-1, 0, [interior.clone(), s(&|x| x.diagonal || !x.gray)])
            .at(0, 0, [s(&|x| x.diagonal && x.gray)]),
        LayerRule::new("S.gray-run-floor")
            .at(0, -1, [not(BLACK)])
            .at(0, 0, [s(&|x| !x.diagonal && x.gray)]),
        LayerRule::new("S.gray-run-left")
            .at(-1, 0, [interior.clone(), s(&|x| x.diagonal || !x.gray)])
            .at(0, 0, [s(&|x| !x.diagonal && x.gray)]),
        LayerRule::new("S.gray-run-right")
            .at(0, 0, [s(&|x| !x.diagonal && x.gray)])
            .at(1, 0, [class(WHITE), s(&|x| !x.diagonal && !x.gray)]),
        LayerRule::new("S.corner")
            .at(-1, 0, [class(COL)])
            .at(0, -1, [class(BLACK)])
            .at(0, 0, [s(&|x| x.diagonal || !x.gray)]),
    ];
    let values: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    for &v in &values {
        let label = v.map_or("none", |v| bg.symbols()[v].as_str()).to_string();
        layer.rules.push(
            LayerRule::new(format!("S.copy.e.{label}"))
                .at(0, 0, [s(&|x| !x.diagonal && x.value == v)])
                .at(1, 0, [s(&|x| x.value != v)]),
        );
        layer.rules.push(
            LayerRule::new(format!("S.copy.ne.{label}"))
                .at(0, 0, [s(&|x| x.diagonal && x.value == v)])
                .at(1, 1, [s(&|x| x.value != v)]),
        );
    }
    layer.rules.push(
        LayerRule::new("S.source.black")
            .at(-1, 0, [class(COL)])
            .at(0, 0, [class(BLACK), s(&|x| x.value.is_some())]),
    );
    for (b, name) in bg.symbols().iter().enumerate() {
        let white_b = Literal::Track(C_TRACK.into(), BitSet::singleton(n + 5, b));
        layer.rules.push(
            LayerRule::new(format!("S.source.{name}"))
                .at(-1, 0, [class(COL)])
                .at(0, 0, [white_b, s(&|x| x.value != Some(b))]),
        );
    }
    Ok(layer)
}

/// Layer A: colour on white and `brl` tiles, equal between neighbours.
pub fn gen_component_a() -> LayerSpec {
    let track = Track::new("A", vec!["a.none".into(), "a.Y".into(), "a.B".into()]);
    let one = |k: usize| track_lit(&track, move |i, _| i == k);
    let mut layer = LayerSpec::new("A", vec![track.clone()]);
    layer.superposition = vec![
        LayerRule::new("A.colour-on").at(0, 0, [one(0), class(WHITE | BRL)]),
        LayerRule::new("A.colour-off").at(0, 0, [track_lit(&track, |i, _| i != 0), not(WHITE | BRL)]),
    ];
    for (a, b) in [(1, 2), (2, 1)] {
        let tag = if a == 1 { "YB" } else { "BY" };
        layer.rules.push(LayerRule::new(format!("A.h.{tag}")).at(0, 0, [one(a)]).at(1, 0, [one(b)]));
        layer.rules.push(LayerRule::new(format!("A.v.{tag}")).at(0, 0, [one(a)]).at(0, 1, [one(b)]));
    }
    layer
}
