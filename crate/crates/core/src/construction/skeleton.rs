use super::components::{flag, s_index, w_symbol, SSymbol};
use super::layer::{CClass, C_TRACK, WHITE_PREFIX};
use super::ptm::{PKind, PtmLayout, SquareFill};
use super::Background;
use crate::error::{Error, Result};
use crate::tiling::{Cell, Pattern, PeriodVector, PeriodicConfig, Tile, TilingSystem};
use std::collections::BTreeMap;
use std::fmt;

/// Square size and offset of a regular skeleton.
///
/// Columns of vertical breaking tiles stand at `x ≡ 0 (mod m)`. Strip `k`
/// lies between the columns `km` and `(k+1)m` and has its black rows at
/// `y ≡ k·o (mod m)`, so each square is its left neighbour shifted by
/// `(m, o)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Geometry {
    pub m: i64,
    pub o: i64,
}

/// Position of a cell relative to the skeleton: its strip `k`, its column
/// `u ∈ [0, m)` inside the strip (0 for the column on the strip's left),
/// its row `v ∈ [0, m)` above the strip's last black row, and the index
/// `j` of that black row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Local {
    pub k: i64,
    pub u: i64,
    pub v: i64,
    pub j: i64,
}

impl Geometry {
    /// The C rules need a `brl` and a `blr` tile between corners, hence
    /// `2 ≤ o ≤ m - 2`.
    pub fn new(m: i64, o: i64) -> Result<Self> {
        if m < 4 || o < 2 || o > m - 2 {
            return Err(Error::Domain(format!(
                "squares of size {m} with offset {o} violate the corner rules (need m ≥ 4, 2 ≤ o ≤ m-2)"
            )));
        }
        Ok(Geometry { m, o })
    }

    pub fn period(self) -> PeriodVector {
        PeriodVector { p: self.m, q: self.o }
    }

    pub fn local(self, c: Cell) -> Local {
        let k = c.x.div_euclid(self.m);
        let u = c.x.rem_euclid(self.m);
        let rel = c.y - k * self.o;
        Local {
            k,
            u,
            v: rel.rem_euclid(self.m),
            j: rel.div_euclid(self.m),
        }
    }

    pub fn class(self, c: Cell) -> CClass {
        let Local { u, v, .. } = self.local(c);
        let (m, o) = (self.m, self.o);
        match (u, v) {
            (0, 0) => CClass::Leftmost,
            (0, v) if v == m - o => CClass::Rightmost,
            (0, v) if v < m - o => CClass::BetweenRl,
            (0, _) => CClass::BetweenLr,
            (_, 0) => CClass::Black,
            _ => CClass::White,
        }
    }

    /// The R tile name.
    pub fn r_tile(self, c: Cell) -> &'static str {
        let Local { u, v, .. } = self.local(c);
        match self.class(c) {
            CClass::Leftmost => "r.joinl",
            CClass::Rightmost => "r.joinr",
            CClass::BetweenRl | CClass::BetweenLr => "r.vert",
            CClass::Black => "r.horiz",
            CClass::White if u + v == self.m => "r.diag",
            CClass::White if u + v < self.m => "r.right",
            CClass::White => "r.left",
        }
    }

    /// The W flags.
    pub fn w_flags(self, c: Cell) -> u8 {
        let Local { u, v, .. } = self.local(c);
        let (m, o) = (self.m, self.o);
        let class = self.class(c);
        if class.is_column() {
            return 0;
        }
        let mut f = 0;
        if (u + v) % m == m - o {
            f |= flag::E;
        }
        if class == CClass::Black {
            return f;
        }
        let mut set = |cond: bool, bit: u8| {
            if cond {
                f |= bit
            }
        };
        set(v == o, flag::L);
        set(v == m - o, flag::R);
        set(v - u == m - o && u < o, flag::D1);
        set(u == o && v <= o, flag::V);
        set(u == v && v <= o, flag::D2);
        f
    }

    /// The S symbol, `content` giving the background index of a white cell.
    pub fn s_symbol(self, c: Cell, content: &dyn Fn(Cell) -> Option<usize>) -> SSymbol {
        let Local { k, u, v, .. } = self.local(c);
        let (m, o) = (self.m, self.o);
        if u == 0 {
            return SSymbol {
                diagonal: false,
                gray: false,
                value: content(c.offset(1, 0)),
            };
        }
        let first = k * m + 1;
        let white = v != 0;
        if u < m - o {
            SSymbol {
                diagonal: false,
                gray: white && v == 1,
                value: content(Cell::new(first, c.y)),
            }
        } else {
            SSymbol {
                diagonal: true,
                gray: white && u - v == m - o - 1 && v <= o,
                value: content(Cell::new(first, c.y - (u - (m - o)))),
            }
        }
    }
}

/// Background contents of white cells, by position inside the strip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BgFill {
    /// The same tile everywhere.
    Constant(usize),
    /// Tile `tiles[u - 1]` in column `u` of every strip.
    ByColumn(Vec<usize>),
}

impl BgFill {
    /// A fill valid for `bg` on squares of size `m`, where one exists
    /// among the two built-in backgrounds.
    pub fn for_background(bg: &Background, m: i64) -> BgFill {
        if bg.len() == 2 {
            BgFill::ByColumn((1..m).map(|u| (u % 2) as usize).collect())
        } else {
            BgFill::Constant(0)
        }
    }

    fn tile(&self, u: i64) -> usize {
        match self {
            BgFill::Constant(t) => *t,
            BgFill::ByColumn(v) => v[(u - 1) as usize],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Colour {
    Yellow,
    Blue,
}

impl Colour {
    pub fn symbol(self) -> &'static str {
        match self {
            Colour::Yellow => "a.Y",
            Colour::Blue => "a.B",
        }
    }

    pub fn other(self) -> Colour {
        match self {
            Colour::Yellow => Colour::Blue,
            Colour::Blue => Colour::Yellow,
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Colour::Yellow => "yellow",
            Colour::Blue => "blue",
        })
    }
}

/// Colours of the squares of layer A, by the index of their black row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colouring {
    Uniform(Colour),
    /// `first` on even rows of squares, the other colour on odd ones.
    Alternating(Colour),
}

impl Colouring {
    pub fn colour(self, j: i64) -> Colour {
        match self {
            Colouring::Uniform(c) => c,
            Colouring::Alternating(c) if j.rem_euclid(2) == 0 => c,
            Colouring::Alternating(c) => c.other(),
        }
    }

    /// Vertical period of the colouring in squares.
    pub fn period(self) -> i64 {
        match self {
            Colouring::Uniform(_) => 1,
            Colouring::Alternating(_) => 2,
        }
    }
}

/// The intended tiling of a regular skeleton, on whatever subset of the
/// tracks C, R, W, S, P, TM, A a system carries.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub geometry: Geometry,
    pub bg: BgFill,
    pub colouring: Colouring,
    fill: Option<(PtmLayout, SquareFill)>,
}

impl Skeleton {
    pub fn new(geometry: Geometry, bg: BgFill, colouring: Colouring) -> Self {
        Skeleton {
            geometry,
            bg,
            colouring,
            fill: None,
        }
    }

    /// Adds the machine layers; fails when the machine does not halt
    /// inside a square.
    pub fn with_machine(mut self, layout: PtmLayout) -> Result<Self> {
        let fill = layout.square_fill(self.geometry.m as usize, self.geometry.o as usize)?;
        self.fill = Some((layout, fill));
        Ok(self)
    }

    pub fn square_fill(&self) -> Option<&SquareFill> {
        self.fill.as_ref().map(|(_, f)| f)
    }

    fn content(&self, c: Cell) -> Option<usize> {
        match self.geometry.class(c) {
            CClass::White => Some(self.bg.tile(self.geometry.local(c).u)),
            _ => None,
        }
    }

    /// Symbol names of every known track at a cell.
    pub fn symbols_at(&self, c: Cell, bg: &dyn Fn(usize) -> String) -> BTreeMap<&'static str, String> {
        let g = self.geometry;
        let class = g.class(c);
        let l = g.local(c);
        let mut out = BTreeMap::new();
        out.insert(
            C_TRACK,
            match class.symbol() {
                Some(s) => s.to_string(),
                None => format!("{WHITE_PREFIX}{}", bg(self.bg.tile(l.u))),
            },
        );
        out.insert("R", g.r_tile(c).to_string());
        out.insert("W", w_symbol(g.w_flags(c)));
        out.insert("A", match class {
            CClass::White | CClass::BetweenRl => self.colouring.colour(l.j).symbol().to_string(),
            _ => "a.none".to_string(),
        });
        out
    }

    /// The tile of `system` at a cell.
    pub fn tile_at(&self, system: &TilingSystem, bgs: &Background, c: Cell) -> Result<Tile> {
        let names = self.symbols_at(c, &|i| bgs.symbols()[i].clone());
        let g = self.geometry;
        let mut syms = Vec::with_capacity(system.tracks().len());
        for track in system.tracks() {
            let idx = match track.name.as_str() {
                "S" => Some(s_index(g.s_symbol(c, &|d| self.content(d)), bgs)),
                "P" | "TM" => Some(self.machine_symbol(&track.name, c)?),
                name => names.get(name).and_then(|s| track.index_of(s)),
            };
            syms.push(idx.ok_or_else(|| Error::Domain(format!("no symbol for track {} at {c}", track.name)))?);
        }
        Ok(Tile::from_symbols(&syms))
    }

    fn machine_symbol(&self, track: &str, c: Cell) -> Result<usize> {
        let (layout, fill) = self
            .fill
            .as_ref()
            .ok_or_else(|| Error::Domain("the skeleton has no machine".into()))?;
        let g = self.geometry;
        let l = g.local(c);
        if l.u > 0 {
            let (v, i) = (l.v as usize, (l.u - 1) as usize);
            return Ok(if track == "P" { fill.p[v][i] } else { fill.tm[v][i] });
        }
        if track == "TM" {
            return Ok(0);
        }
        let w = fill.p[0].len();
        let right = &layout.p_tiles()[fill.p[l.v as usize][0]];
        let left_v = (l.v + g.o).rem_euclid(g.m) as usize;
        let left = &layout.p_tiles()[fill.p[left_v][w - 1]];
        layout
            .p_index(PKind::Column {
                start: right.west,
                accept: left.east,
            })
            .ok_or_else(|| Error::Domain(format!("no column tile at {c}")))
    }

    /// The rectangle `[origin.x, origin.x + width) × [origin.y, origin.y + height)`.
    pub fn patch(
        &self,
        system: &TilingSystem,
        bg: &Background,
        origin: Cell,
        width: i64,
        height: i64,
    ) -> Result<Pattern> {
        let mut p = Pattern::new();
        for y in origin.y..origin.y + height {
            for x in origin.x..origin.x + width {
                let c = Cell::new(x, y);
                p.insert(c, self.tile_at(system, bg, c)?);
            }
        }
        Ok(p)
    }

    /// A band periodic along `(m, o)`, `squares` squares high.
    pub fn periodic_band(&self, system: &TilingSystem, bg: &Background, squares: i64) -> Result<PeriodicConfig> {
        let g = self.geometry;
        let band = self.patch(system, bg, Cell::new(0, 0), g.m, squares * g.m)?;
        PeriodicConfig::new(g.period(), band)
    }
}

/// Squares, offsets and colours read off a patch.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SkeletonReport {
    /// Lower-left corner (the `lm` tile) and size of each complete square.
    pub squares: Vec<(Cell, i64)>,
    /// Offset between each square and its right neighbour, in square order.
    pub offsets: Vec<i64>,
    pub colors: BTreeMap<Cell, Colour>,
    pub violations: Vec<String>,
    /// No complete square lies in the patch.
    pub inconclusive: bool,
}

/// Reads squares off the C track of a patch and checks that they have one
/// size and one offset, that each square has one colour and that it
/// equals the colour of its right neighbour.
pub fn check_skeleton(patch: &Pattern, system: &TilingSystem) -> Result<SkeletonReport> {
    let ct = system
        .track_index(C_TRACK)
        .ok_or_else(|| Error::Domain("the system has no track C".into()))?;
    let at = system.track_index("A");
    let c_names = &system.tracks()[ct].symbols;
    let class = |c: Cell| {
        patch
            .get(c)
            .and_then(|t| CClass::of_symbol(&c_names[t.symbol(ct)]))
    };
    let mut report = SkeletonReport::default();
    let Some((lo, hi)) = patch.bbox() else {
        report.inconclusive = true;
        return Ok(report);
    };
    let corners: Vec<Cell> = (lo.y..=hi.y)
        .flat_map(|y| (lo.x..=hi.x).map(move |x| Cell::new(x, y)))
        .filter(|&c| class(c) == Some(CClass::Leftmost))
        .collect();
    let next_up = |c: Cell| (c.y + 1..=hi.y).find(|&y| class(Cell::new(c.x, y)) == Some(CClass::Leftmost));
    let next_right = |c: Cell| (c.x + 1..=hi.x).find(|&x| class(Cell::new(x, c.y)).is_some_and(|k| k.is_column()));
    let mut colour_of = BTreeMap::new();
    for &c in &corners {
        let (Some(top), Some(right)) = (next_up(c), next_right(c)) else {
            continue;
        };
        let (h, w) = (top - c.y, right - c.x);
        if h != w {
            report.violations.push(format!("square at {c} is {w} wide and {h} high"));
        }
        report.squares.push((c, h));
        if let Some(at) = at {
            let mut seen: Vec<Colour> = Vec::new();
            for y in c.y + 1..top {
                for x in c.x + 1..right {
                    let sym = &system.tracks()[at].symbols[patch.get(Cell::new(x, y)).unwrap().symbol(at)];
                    let col = match sym.as_str() {
                        "a.Y" => Colour::Yellow,
                        "a.B" => Colour::Blue,
                        _ => continue,
                    };
                    if !seen.contains(&col) {
                        seen.push(col);
                    }
                }
            }
            match seen.as_slice() {
                [one] => {
                    colour_of.insert(c, *one);
                }
                [] => {}
                _ => report.violations.push(format!("square at {c} has two colours")),
            }
        }
    }
    let complete: Vec<(Cell, i64)> = report.squares.clone();
    for &(c, size) in &complete {
        let x = c.x + size;
        let Some(y) = (c.y + 1..=hi.y).find(|&y| class(Cell::new(x, y)) == Some(CClass::Leftmost)) else {
            continue;
        };
        if y - c.y >= size {
            report.violations.push(format!("no corner of the right neighbour of {c} within one square"));
            continue;
        }
        report.offsets.push(y - c.y);
        let n = Cell::new(x, y);
        if let (Some(a), Some(b)) = (colour_of.get(&c), colour_of.get(&n)) {
            if a != b {
                report.violations.push(format!("square at {c} is {a} but its neighbour at {n} is {b}"));
            }
        }
    }
    if let Some(&(_, s0)) = complete.first() {
        if complete.iter().any(|&(_, s)| s != s0) {
            report.violations.push("squares of different sizes".into());
        }
    }
    if let Some(&o0) = report.offsets.first() {
        if report.offsets.iter().any(|&o| o != o0) {
            report.violations.push(format!("offsets differ: {:?}", report.offsets));
        }
    }
    report.colors = colour_of;
    report.inconclusive = report.squares.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{assemble_layers, assemble_tau, tau_layers, DEFAULT_MAX_TILES};
    use crate::machine::corpus;
    use crate::tiling::{validate_patch, validate_periodic};

    fn crwa(bg: &Background) -> TilingSystem {
        let layers = tau_layers(&corpus::immediate_halt(), bg).unwrap();
        let keep: Vec<_> = layers.into_iter().filter(|l| ["C", "R", "W", "A"].contains(&l.name.as_str())).collect();
        assemble_layers(&keep, DEFAULT_MAX_TILES).unwrap()
    }

    #[test]
    fn corner_rules_bound_the_offset() {
        assert!(Geometry::new(4, 2).is_ok());
        assert!(Geometry::new(4, 1).is_err());
        assert!(Geometry::new(3, 1).is_err());
        assert!(Geometry::new(6, 5).is_err());
    }

    #[test]
    fn six_by_six_patch_is_valid_on_c_r_a() {
        let bg = Background::placeholder();
        let layers = tau_layers(&corpus::immediate_halt(), &bg).unwrap();
        let keep: Vec<_> = layers.into_iter().filter(|l| ["C", "R", "A"].contains(&l.name.as_str())).collect();
        let sys = assemble_layers(&keep, DEFAULT_MAX_TILES).unwrap();
        let sk = Skeleton::new(Geometry::new(4, 2).unwrap(), BgFill::Constant(0), Colouring::Uniform(Colour::Yellow));
        let p = sk.patch(&sys, &bg, Cell::new(0, 0), 6, 6).unwrap();
        assert_eq!(validate_patch(&sys, &p).unwrap(), vec![]);
    }

    #[test]
    fn skeleton_is_valid_on_c_r_w_a() {
        let bg = Background::placeholder();
        let sys = crwa(&bg);
        for (m, o) in [(4, 2), (5, 2), (5, 3), (6, 3), (7, 2)] {
            for colouring in [Colouring::Uniform(Colour::Blue), Colouring::Alternating(Colour::Yellow)] {
                let sk = Skeleton::new(Geometry::new(m, o).unwrap(), BgFill::Constant(0), colouring);
                let p = sk.patch(&sys, &bg, Cell::new(-m, -m), 3 * m + 1, 3 * m + 1).unwrap();
                assert_eq!(validate_patch(&sys, &p).unwrap(), vec![], "m={m} o={o}");
            }
        }
    }

    #[test]
    fn full_skeleton_is_valid() {
        let tm = corpus::immediate_halt();
        for bg in [Background::placeholder(), Background::two_tile()] {
            let sys = assemble_tau(&tm, &bg).unwrap().system;
            for (m, o) in [(4, 2), (5, 2), (6, 4), (8, 4)] {
                let sk = Skeleton::new(
                    Geometry::new(m, o).unwrap(),
                    BgFill::for_background(&bg, m),
                    Colouring::Alternating(Colour::Blue),
                )
                .with_machine(crate::construction::PtmLayout::new(&tm).unwrap())
                .unwrap();
                let p = sk.patch(&sys, &bg, Cell::new(-1, -1), 2 * m + 2, 2 * m + 2).unwrap();
                let bad = validate_patch(&sys, &p).unwrap();
                assert!(bad.is_empty(), "{} m={m} o={o}: {:?}", bg.name, &bad[..bad.len().min(5)]);
            }
        }
    }

    #[test]
    fn periodic_band_is_valid() {
        let tm = corpus::immediate_halt();
        let bg = Background::placeholder();
        let sys = assemble_tau(&tm, &bg).unwrap().system;
        let sk = Skeleton::new(Geometry::new(4, 2).unwrap(), BgFill::Constant(0), Colouring::Uniform(Colour::Yellow))
            .with_machine(crate::construction::PtmLayout::new(&tm).unwrap())
            .unwrap();
        let band = sk.periodic_band(&sys, &bg, 3).unwrap();
        assert!(validate_periodic(&sys, &band).unwrap());
    }

    #[test]
    fn report_reads_the_skeleton() {
        let bg = Background::placeholder();
        let sys = crwa(&bg);
        let sk = Skeleton::new(Geometry::new(4, 2).unwrap(), BgFill::Constant(0), Colouring::Alternating(Colour::Yellow));
        let p = sk.patch(&sys, &bg, Cell::new(0, 0), 13, 13).unwrap();
        let r = check_skeleton(&p, &sys).unwrap();
        assert!(!r.inconclusive);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.squares.len() >= 4);
        assert!(r.squares.iter().all(|&(_, s)| s == 4));
        assert!(!r.offsets.is_empty() && r.offsets.iter().all(|&o| o == 2));
        assert!(r.colors.values().any(|&c| c == Colour::Yellow));
        assert!(r.colors.values().any(|&c| c == Colour::Blue));
    }

    #[test]
    fn mixed_offsets_are_reported() {
        let bg = Background::placeholder();
        let sys = crwa(&bg);
        let a = Skeleton::new(Geometry::new(5, 2).unwrap(), BgFill::Constant(0), Colouring::Uniform(Colour::Yellow));
        let b = Skeleton::new(Geometry::new(5, 3).unwrap(), BgFill::Constant(0), Colouring::Uniform(Colour::Yellow));
        let mut p = Pattern::new();
        for y in 0..16 {
            for x in 0..16 {
                let c = Cell::new(x, y);
                let t = if x <= 5 { a.tile_at(&sys, &bg, c) } else { b.tile_at(&sys, &bg, c.offset(0, 1)) };
                p.insert(c, t.unwrap());
            }
        }
        let r = check_skeleton(&p, &sys).unwrap();
        assert!(r.offsets.contains(&2) && r.offsets.contains(&3), "{:?}", r.offsets);
        assert!(r.violations.iter().any(|v| v.starts_with("offsets differ")));
    }

    #[test]
    fn white_patch_is_inconclusive() {
        let bg = Background::placeholder();
        let sys = crwa(&bg);
        let sk = Skeleton::new(Geometry::new(6, 3).unwrap(), BgFill::Constant(0), Colouring::Uniform(Colour::Yellow));
        let p = sk.patch(&sys, &bg, Cell::new(1, 1), 4, 4).unwrap();
        assert!(check_skeleton(&p, &sys).unwrap().inconclusive);
    }
}
