use super::region::{WangRegion, DEFAULT_STEP_BUDGET};
use crate::error::{Error, Result};
use crate::machine::{run_tm, Configuration, Move, TuringMachine, Word};
use crate::tiling::WangTile;
use std::fmt;

/// Label on a north or south edge: the tape cell content, with the head's
/// state when the head sits on the cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VLabel {
    /// Outer frame below the first row and above the last one.
    White,
    /// Between two cells of a border column.
    Frame,
    Tape(usize),
    Head(usize, usize),
}

/// Label on an east or west edge: a state on its way to the next head cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HLabel {
    /// Outer frame left of the left border and right of the right border.
    White,
    Quiet,
    State(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileClass {
    ComputeL,
    ComputeS,
    ComputeR,
    PassLeft,
    PassRight,
    Tape,
    InitHead,
    InitTape,
    BorderCorner,
    BorderEdge,
    Halt,
}

impl TileClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TileClass::ComputeL => "compute-L",
            TileClass::ComputeS => "compute-S",
            TileClass::ComputeR => "compute-R",
            TileClass::PassLeft => "pass-left",
            TileClass::PassRight => "pass-right",
            TileClass::Tape => "tape",
            TileClass::InitHead => "init-head",
            TileClass::InitTape => "init-tape",
            TileClass::BorderCorner => "border-corner",
            TileClass::BorderEdge => "border-edge",
            TileClass::Halt => "halt",
        }
    }
}

impl fmt::Display for TileClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmTile {
    pub name: String,
    pub class: TileClass,
    pub north: VLabel,
    pub east: HLabel,
    pub south: VLabel,
    pub west: HLabel,
}

impl TmTile {
    /// Whether the tile belongs to the left border column.
    pub fn is_left_border(&self) -> bool {
        self.west == HLabel::White
    }

    pub fn is_right_border(&self) -> bool {
        self.east == HLabel::White
    }
}

/// Tiles simulating one machine. Row `r` of a rectangle shows the
/// configuration after `r` steps on its north edges; the head enters the
/// first row from the left border in the initial state, a computation tile
/// hands the new state sideways to a passing tile on a move, and halting
/// states are copied upwards unchanged.
///
/// With states `S`, halting states `H`, letters `Σ` and transitions `δ` the
/// list has `3|Σ| + |δ| + 2|S||Σ| + |H||Σ| + 4` tiles: tape, initial tape
/// and initial head tiles per letter, one computation tile per transition,
/// left and right passing tiles per state and letter, halting tiles per
/// halting state and letter, and four border tiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmTileSet {
    machine: TuringMachine,
    tiles: Vec<TmTile>,
}

/// The documented tile count for a machine.
pub fn tm_tile_count(tm: &TuringMachine) -> usize {
    let s = tm.states().len();
    let l = tm.letters().len();
    let h = tm.halting_states().count();
    3 * l + tm.transitions().count() + 2 * s * l + h * l + 4
}

pub fn compile_tm(tm: &TuringMachine) -> TmTileSet {
    let st = |s: usize| tm.states()[s].as_str();
    let lt = |a: usize| tm.letters()[a].as_str();
    let letters = 0..tm.letters().len();
    let mut tiles = Vec::new();
    let mut push = |name: String, class, north, east, south, west| {
        tiles.push(TmTile {
            name,
            class,
            north,
            east,
            south,
            west,
        })
    };
    use HLabel::{Quiet, State};
    use VLabel::{Frame, Head, Tape, White};
    for a in letters.clone() {
        push(format!("tape.{}", lt(a)), TileClass::Tape, Tape(a), Quiet, Tape(a), Quiet);
    }
    for t in tm.transitions() {
        let name = |k: &str| format!("{k}.{}.{}", st(t.state), lt(t.letter));
        let south = Head(t.state, t.letter);
        match t.mv {
            Move::L => push(name("cL"), TileClass::ComputeL, Tape(t.write), Quiet, south, State(t.next)),
            Move::S => push(
                name("cS"),
                TileClass::ComputeS,
                Head(t.next, t.write),
                Quiet,
                south,
                Quiet,
            ),
            Move::R => push(name("cR"), TileClass::ComputeR, Tape(t.write), State(t.next), south, Quiet),
        }
    }
    for s in 0..tm.states().len() {
        for a in letters.clone() {
            push(
                format!("pL.{}.{}", st(s), lt(a)),
                TileClass::PassLeft,
                Head(s, a),
                State(s),
                Tape(a),
                Quiet,
            );
            push(
                format!("pR.{}.{}", st(s), lt(a)),
                TileClass::PassRight,
                Head(s, a),
                Quiet,
                Tape(a),
                State(s),
            );
        }
    }
    for h in tm.halting_states() {
        for a in letters.clone() {
            push(format!("halt.{}.{}", st(h), lt(a)), TileClass::Halt, Head(h, a), Quiet, Head(h, a), Quiet);
        }
    }
    let s0 = tm.initial();
    for a in letters.clone() {
        push(format!("init.{}", lt(a)), TileClass::InitTape, Tape(a), Quiet, White, Quiet);
        push(format!("start.{}", lt(a)), TileClass::InitHead, Head(s0, a), Quiet, White, State(s0));
    }
    push("border.L0".into(), TileClass::BorderCorner, Frame, State(s0), White, HLabel::White);
    push("border.L".into(), TileClass::BorderEdge, Frame, Quiet, Frame, HLabel::White);
    push("border.R0".into(), TileClass::BorderCorner, Frame, HLabel::White, White, Quiet);
    push("border.R".into(), TileClass::BorderEdge, Frame, HLabel::White, Frame, Quiet);
    TmTileSet {
        machine: tm.clone(),
        tiles,
    }
}

impl TmTileSet {
    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    pub fn tiles(&self) -> &[TmTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn count_class(&self, class: TileClass) -> usize {
        self.tiles.iter().filter(|t| t.class == class).count()
    }

    fn v_code(&self, l: VLabel) -> u32 {
        let nl = self.machine.letters().len() as u32;
        match l {
            VLabel::White => 0,
            VLabel::Frame => 1,
            VLabel::Tape(a) => 2 + a as u32,
            VLabel::Head(s, a) => 2 + nl + s as u32 * nl + a as u32,
        }
    }

    fn h_code(&self, l: HLabel) -> u32 {
        match l {
            HLabel::White => 0,
            HLabel::Quiet => 1,
            HLabel::State(s) => 2 + s as u32,
        }
    }

    /// Plain Wang tiles with numeric edge colours.
    pub fn to_wang(&self) -> Vec<WangTile> {
        self.tiles
            .iter()
            .map(|t| {
                WangTile::new(
                    t.name.clone(),
                    self.v_code(t.north),
                    self.h_code(t.east),
                    self.v_code(t.south),
                    self.h_code(t.west),
                )
            })
            .collect()
    }
}

/// A `(w+2) × t` rectangle with the input in its first row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleInstance {
    pub width: usize,
    pub height: usize,
    pub input: Word,
}

impl RectangleInstance {
    pub fn new(width: usize, height: usize, input: Word) -> Result<Self> {
        if width < 2 || height == 0 {
            return Err(Error::Malformed(format!("rectangle {width}x{height} has no room for the border")));
        }
        if input.len() + 2 > width {
            return Err(Error::Malformed(format!(
                "input of length {} does not fit in width {width}",
                input.len()
            )));
        }
        Ok(RectangleInstance { width, height, input })
    }

    /// The instance for `w` tape cells and `t` rows.
    pub fn for_bounds(w: usize, t: usize, input: Word) -> Result<Self> {
        Self::new(w + 2, t, input)
    }

    pub fn tape_cells(&self) -> usize {
        self.width - 2
    }
}

/// A tiled rectangle: tile indices row-major from the bottom row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleAssignment {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<usize>,
}

impl RectangleAssignment {
    pub fn tile(&self, x: usize, y: usize) -> usize {
        self.cells[y * self.width + x]
    }

    /// Tile names, top row first.
    pub fn to_grid(&self, set: &TmTileSet) -> String {
        let mut out = String::new();
        for y in (0..self.height).rev() {
            let row: Vec<&str> = (0..self.width)
                .map(|x| set.tiles[self.tile(x, y)].name.as_str())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Searches for a tiling of the instance with the frame pinned: border
/// columns on both sides, initial tiles spelling the input in the first row
/// and only halting heads on the top edge.
pub fn rectangle_tileable(set: &TmTileSet, inst: &RectangleInstance) -> Result<Option<RectangleAssignment>> {
    rectangle_tileable_with(set, inst, DEFAULT_STEP_BUDGET)
}

pub fn rectangle_tileable_with(
    set: &TmTileSet,
    inst: &RectangleInstance,
    step_budget: u64,
) -> Result<Option<RectangleAssignment>> {
    let tm = &set.machine;
    for &a in &inst.input {
        if a >= tm.letters().len() || a == tm.blank() {
            return Err(Error::Domain(format!("input letter {a} is blank or unknown")));
        }
    }
    let wang = set.to_wang();
    let (w, h) = (inst.width, inst.height);
    let mut region = WangRegion::new(&wang, w, h)?;
    let tile_of = |t: &WangTile| &set.tiles[wang.iter().position(|u| u.name == t.name).unwrap()];
    let letter = |x: usize| inst.input.get(x - 1).copied().unwrap_or(tm.blank());
    for y in 0..h {
        for x in 0..w {
            let (left, right) = (x == 0, x + 1 == w);
            region.restrict(x, y, |t| {
                let t = tile_of(t);
                t.is_left_border() == left && t.is_right_border() == right
            });
        }
    }
    for x in 1..w - 1 {
        let want = if x == 1 {
            VLabel::Head(tm.initial(), letter(x))
        } else {
            VLabel::Tape(letter(x))
        };
        region.restrict(x, 0, |t| tile_of(t).north == want);
    }
    for x in 0..w {
        region.restrict(x, 0, |t| tile_of(t).south == VLabel::White);
        region.restrict(x, h - 1, |t| match tile_of(t).north {
            VLabel::White => false,
            VLabel::Frame | VLabel::Tape(_) => true,
            VLabel::Head(s, _) => tm.is_halting(s),
        });
    }
    Ok(region.solve_first(step_budget)?.map(|cells| RectangleAssignment {
        width: w,
        height: h,
        cells,
    }))
}

/// Reads the configuration on the north edges of each row, up to and
/// including the first one in a halting state.
pub fn extract_trace(set: &TmTileSet, a: &RectangleAssignment) -> Result<Vec<Configuration>> {
    let tm = &set.machine;
    let mut out = Vec::new();
    for y in 0..a.height {
        let mut tape = Vec::new();
        let mut head = None;
        for x in 1..a.width - 1 {
            match set.tiles[a.tile(x, y)].north {
                VLabel::Tape(l) => tape.push(l),
                VLabel::Head(s, l) => {
                    if head.is_some() {
                        return Err(Error::Domain(format!("two heads in row {y}")));
                    }
                    head = Some((x - 1, s));
                    tape.push(l);
                }
                _ => return Err(Error::Domain(format!("frame label inside row {y}"))),
            }
        }
        let (head, state) = head.ok_or_else(|| Error::Domain(format!("no head in row {y}")))?;
        out.push(Configuration { tape, head, state });
        if tm.is_halting(state) {
            break;
        }
    }
    Ok(out)
}

/// Whether the machine halts within `t − 1` steps on `w` cells exactly when
/// the `(w+2) × t` rectangle is tileable: `t` rows show `t` configurations.
/// An input longer than `w` fits in no rectangle and never runs.
pub fn check_simulation_equivalence(tm: &TuringMachine, input: &[usize], t: usize, w: usize) -> Result<bool> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let run = run_tm(tm, input, t - 1, w)?;
    let tiled = if input.len() > w {
        false
    } else {
        let set = compile_tm(tm);
        let inst = RectangleInstance::for_bounds(w, t, input.to_vec())?;
        rectangle_tileable(&set, &inst)?.is_some()
    };
    Ok(run.halted() == tiled)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::corpus;
    use crate::tiling::{validate_patch, wang_to_patterns, Cell, Pattern, Tile};

    fn eq(tm: &TuringMachine, input: &str, t: usize, w: usize) -> bool {
        check_simulation_equivalence(tm, &tm.word(input).unwrap(), t, w).unwrap()
    }

    #[test]
    fn tile_count_formula() {
        for (name, tm) in corpus::all() {
            let set = compile_tm(&tm);
            assert_eq!(set.len(), tm_tile_count(&tm), "{name}");
            let mut names: Vec<&str> = set.tiles().iter().map(|t| t.name.as_str()).collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), set.len(), "{name}");
        }
        let set = compile_tm(&corpus::immediate_halt());
        let compute = [TileClass::ComputeL, TileClass::ComputeS, TileClass::ComputeR]
            .iter()
            .map(|&c| set.count_class(c))
            .sum::<usize>();
        assert_eq!(compute, 1);
        // 3·1 + 1 + 2·2·1 + 1·1 + 4
        assert_eq!(set.len(), 13);
    }

    #[test]
    fn class_filters() {
        let set = compile_tm(&corpus::no_transitions());
        assert_eq!(set.count_class(TileClass::ComputeS), 0);
        let set = compile_tm(&corpus::right_scanner());
        assert_eq!(set.count_class(TileClass::ComputeL), 0);
        assert_eq!(set.count_class(TileClass::ComputeR), 1);
    }

    #[test]
    fn state_edges_follow_classes() {
        let set = compile_tm(&corpus::writer());
        for t in set.tiles() {
            let carries_side_state = matches!(t.east, HLabel::State(_)) || matches!(t.west, HLabel::State(_));
            let expected = matches!(
                t.class,
                TileClass::ComputeL
                    | TileClass::ComputeR
                    | TileClass::PassLeft
                    | TileClass::PassRight
                    | TileClass::InitHead
                    | TileClass::BorderCorner
            );
            if t.name != "border.R0" {
                assert_eq!(carries_side_state, expected, "{}", t.name);
            }
        }
    }

    #[test]
    fn forbidden_dominoes_are_label_mismatches() {
        let set = compile_tm(&corpus::immediate_halt());
        let wang = set.to_wang();
        let sys = wang_to_patterns(&wang).unwrap();
        for (i, a) in set.tiles().iter().enumerate() {
            for (j, b) in set.tiles().iter().enumerate() {
                let pat = |dx, dy| -> Pattern {
                    [(Cell::new(0, 0), Tile::flat(i)), (Cell::new(dx, dy), Tile::flat(j))]
                        .into_iter()
                        .collect()
                };
                assert_eq!(validate_patch(&sys, &pat(1, 0)).unwrap().is_empty(), a.east == b.west);
                assert_eq!(validate_patch(&sys, &pat(0, 1)).unwrap().is_empty(), a.north == b.south);
            }
        }
    }

    #[test]
    fn immediate_halt_fills_small_rectangle() {
        let tm = corpus::immediate_halt();
        let set = compile_tm(&tm);
        let inst = RectangleInstance::new(3, 2, Vec::new()).unwrap();
        let a = rectangle_tileable(&set, &inst).unwrap().expect("tileable");
        assert_eq!(a.to_grid(&set), "border.L cS.s0._ border.R\nborder.L0 start._ border.R0\n");
        assert!(eq(&tm, "", 2, 1));
    }

    #[test]
    fn looper_never_fills() {
        let tm = corpus::looper();
        let set = compile_tm(&tm);
        for t in 1..=8 {
            for w in 1..=3 {
                let inst = RectangleInstance::for_bounds(w, t, Vec::new()).unwrap();
                assert!(rectangle_tileable(&set, &inst).unwrap().is_none());
            }
        }
        assert!(eq(&tm, "", 6, 2));
    }

    #[test]
    fn stuck_machine_never_fills_tall_rectangles() {
        let tm = corpus::no_transitions();
        let set = compile_tm(&tm);
        for t in 2..=5 {
            let inst = RectangleInstance::for_bounds(3, t, Vec::new()).unwrap();
            assert!(rectangle_tileable(&set, &inst).unwrap().is_none());
        }
    }

    #[test]
    fn right_scanner_equivalence() {
        let tm = corpus::right_scanner();
        assert!(eq(&tm, "11", 4, 3));
        let set = compile_tm(&tm);
        let inst = RectangleInstance::for_bounds(3, 4, tm.word("11").unwrap()).unwrap();
        assert!(rectangle_tileable(&set, &inst).unwrap().is_some());
        let inst = RectangleInstance::for_bounds(2, 4, tm.word("11").unwrap()).unwrap();
        assert!(rectangle_tileable(&set, &inst).unwrap().is_none());
    }

    #[test]
    fn malformed_instances() {
        assert!(RectangleInstance::new(1, 3, Vec::new()).is_err());
        assert!(RectangleInstance::new(3, 3, vec![1, 1]).is_err());
        assert!(RectangleInstance::new(2, 0, Vec::new()).is_err());
    }

    #[test]
    fn traces_match_runs() {
        for (name, tm) in corpus::all() {
            let set = compile_tm(&tm);
            for input in tm.inputs_up_to(3) {
                for w in input.len().max(1)..=4 {
                    let inst = RectangleInstance::for_bounds(w, 8, input.clone()).unwrap();
                    if let Some(a) = rectangle_tileable(&set, &inst).unwrap() {
                        let run = run_tm(&tm, &input, 7, w).unwrap();
                        assert!(run.halted(), "{name}");
                        assert_eq!(extract_trace(&set, &a).unwrap(), run.configurations, "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn equivalence_on_corpus() {
        for (name, tm) in corpus::all() {
            for input in tm.inputs_up_to(3) {
                for t in 1..=8 {
                    for w in 1..=4 {
                        let ok = check_simulation_equivalence(&tm, &input, t, w).unwrap();
                        assert!(ok, "{name} {} t={t} w={w}", tm.format_word(&input));
                    }
                }
            }
        }
    }
}
