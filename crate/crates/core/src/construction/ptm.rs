//! Components P and TM: inside every square, binary counters measure the
//! square's size and offset row by row; the black row above hands the pair
//! to the next square, which strips common trailing zeros and runs the
//! machine on it. The machine must halt inside the square.
//!
//! Each row of a square interior is one application of a transducer read
//! left to right, with the input on the south edges and the output on the
//! north edges; column tiles supply the initial state on their east side
//! and demand an accepting one on their west side.
//!
//! * Counter `a` applies the increment transducer on every interior row,
//!   starting from zero above each black row, so the top row holds `m-1`
//!   for squares of size `m`. The black row applies it once more and emits
//!   `m`.
//! * Counter `b` increments on the rows up to and including the row marked
//!   `L` by layer W (the row at the next column's offset `o`) and copies
//!   above it, so it holds `o`. The black row copies it.
//! * The data track carries the pair word, one cell per bit position with
//!   the most significant bit on the left. Above a black row come strip
//!   rows, each shifting both numbers right by one bit and allowed only
//!   while both end in zero; then one feed row hands the word to the
//!   machine's initial row; the remaining rows are idle on this track.
//!
//! The machine reads a two-track tape: the letter of a cell is the pair of
//! bits `ab` (size bit, offset bit), `00` being the blank. Letters `01`,
//! `10`, `11` are added to the machine's alphabet when missing.

use super::components::{flag, w_lit};
use super::layer::{class, track_lit, ClassSet, LayerRule, LayerSpec, Literal};
use crate::error::{Error, Result};
use crate::machine::{increment, Move, Transducer, TuringMachine};
use crate::tiling::Track;
use crate::tm_tiles::{compile_tm, HLabel, TileClass, TmTile, TmTileSet, VLabel};

/// Letters of the two-track tape, by pair code `2a + b`.
pub const PAIR_LETTERS: [&str; 4] = ["00", "01", "10", "11"];

type KindTest = fn(&PKind) -> bool;

/// Shifts a word over pair letters one cell to the right, accepting only
/// when the dropped letter is `00`.
pub fn strip_transducer() -> Transducer {
    let states: Vec<String> = PAIR_LETTERS.iter().map(|p| format!("s{p}")).collect();
    let st: Vec<&str> = states.iter().map(String::as_str).collect();
    let mut rules = Vec::new();
    for x in 0..4 {
        for y in 0..4 {
            rules.push((st[x], PAIR_LETTERS[y], PAIR_LETTERS[x], st[y]));
        }
    }
    Transducer::new(&st, &PAIR_LETTERS, &[st[0]], &[st[0]], &rules).expect("strip transducer")
}

/// Counter `b` on one row: an increment rule or a copied bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CounterB {
    Inc(usize),
    Copy(usize),
}

/// The data track on one interior row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DataPart {
    /// A strip transducer rule: `prev` is output, `read` comes from below.
    Strip { prev: usize, read: usize },
    /// The row handing `read` to the machine; `seen` records whether the
    /// cell to the left held a nonzero pair.
    Feed { seen: bool, read: usize },
    Idle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PKind {
    Interior { a: usize, b: CounterB, d: DataPart },
    Black { a: usize, b: usize },
    Column { start: HState, accept: HState },
}

/// Horizontal label: states of the two counters and of the data track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HState {
    pub a: usize,
    /// 0, 1: increment states; 2: copying.
    pub b: usize,
    /// 0..4: strip states; 4, 5: feed (nothing nonzero yet / last cell
    /// nonzero); 6: idle; 7: black row.
    pub d: usize,
}

const B_COPY: usize = 2;
const D_FEED: usize = 4;
const D_IDLE: usize = 6;
const D_BLACK: usize = 7;

impl HState {
    fn code(self) -> u32 {
        (self.a * 24 + self.b * 8 + self.d) as u32
    }

    fn name(self) -> String {
        if self.d == D_BLACK {
            return "blk".into();
        }
        let b = ["q0", "q1", "id"][self.b];
        let d = match self.d {
            0..=3 => format!("s{}", PAIR_LETTERS[self.d]),
            4 => "f0".into(),
            5 => "f1".into(),
            _ => "idle".into(),
        };
        format!("{b}-{d}")
    }
}

/// Vertical label: counter bits and the data pair (4 for none).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VState {
    Column,
    Data { a: usize, b: usize, d: usize },
}

const D_NONE: usize = 4;

impl VState {
    fn code(self) -> u32 {
        match self {
            VState::Column => 100,
            VState::Data { a, b, d } => ((a * 2 + b) * 5 + d) as u32,
        }
    }
}

/// A tile of track P with its edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PTile {
    pub name: String,
    pub kind: PKind,
    pub north: VState,
    pub east: HState,
    pub south: VState,
    pub west: HState,
}

/// The P and TM tracks for one machine, with the metadata needed to read
/// solutions back.
#[derive(Debug, Clone)]
pub struct PtmLayout {
    machine: TuringMachine,
    tm_tiles: TmTileSet,
    /// Indices into `tm_tiles` of the tiles used by track TM (borders are
    /// replaced by the columns); TM symbol `i + 1` is `tm_tiles[tm_used[i]]`.
    tm_used: Vec<usize>,
    p_tiles: Vec<PTile>,
}

impl PtmLayout {
    pub fn new(machine: &TuringMachine) -> Result<Self> {
        let machine = machine.with_letters(&PAIR_LETTERS[1..])?;
        let tm_tiles = compile_tm(&machine);
        let tm_used = (0..tm_tiles.len())
            .filter(|&i| !matches!(tm_tiles.tiles()[i].class, TileClass::BorderCorner | TileClass::BorderEdge))
            .collect();
        Ok(PtmLayout {
            p_tiles: p_tiles(),
            machine,
            tm_tiles,
            tm_used,
        })
    }

    /// The machine over the extended alphabet.
    pub fn machine(&self) -> &TuringMachine {
        &self.machine
    }

    pub fn p_tiles(&self) -> &[PTile] {
        &self.p_tiles
    }

    /// TM tile of TM symbol `s`, `None` for the empty symbol 0.
    pub fn tm_tile(&self, s: usize) -> Option<&TmTile> {
        (s > 0).then(|| &self.tm_tiles.tiles()[self.tm_used[s - 1]])
    }

    pub fn tm_symbol_count(&self) -> usize {
        self.tm_used.len() + 1
    }

    /// Machine letter carried by pair code `y`.
    pub fn pair_letter(&self, y: usize) -> usize {
        if y == 0 {
            self.machine.blank()
        } else {
            self.machine.letter_index(PAIR_LETTERS[y]).expect("pair letter")
        }
    }

    pub fn p_track(&self) -> Track {
        Track::new("P", self.p_tiles.iter().map(|t| t.name.clone()).collect())
    }

    pub fn tm_track(&self) -> Track {
        let mut names = vec!["tm.none".to_string()];
        names.extend(self.tm_used.iter().map(|&i| format!("tm.{}", self.tm_tiles.tiles()[i].name)));
        Track::new("TM", names)
    }

    fn p_lit(&self, keep: impl Fn(&PTile) -> bool) -> Literal {
        track_lit(&self.p_track(), |i, _| keep(&self.p_tiles[i]))
    }

    fn tm_lit(&self, keep: impl Fn(Option<&TmTile>) -> bool) -> Literal {
        track_lit(&self.tm_track(), |i, _| keep(self.tm_tile(i)))
    }

    /// The layer: tracks P and TM, Wang matching on each, superposition on
    /// C's classes, and links to W's `L` flag and between P and TM.
    pub fn layer(&self) -> LayerSpec {
        let p = self.p_track();
        let mut layer = LayerSpec::new("P_TM", vec![p.clone(), self.tm_track()]);
        let mut east: Vec<HState> = self.p_tiles.iter().map(|t| t.east).collect();
        east.sort();
        east.dedup();
        for l in east {
            layer.rules.push(
                LayerRule::new(format!("P.h.{}", l.code()))
                    .at(0, 0, [self.p_lit(|t| t.east == l)])
                    .at(1, 0, [self.p_lit(|t| t.west != l)]),
            );
        }
        let mut north: Vec<u32> = self.p_tiles.iter().map(|t| t.north.code()).collect();
        north.sort();
        north.dedup();
        for l in north {
            layer.rules.push(
                LayerRule::new(format!("P.v.{l}"))
                    .at(0, 0, [self.p_lit(|t| t.north.code() == l)])
                    .at(0, 1, [self.p_lit(|t| t.south.code() != l)]),
            );
        }
        let groups: [(&str, ClassSet, KindTest); 5] = [
            ("interior", ClassSet::WHITE, |k| matches!(k, PKind::Interior { .. })),
            ("black", ClassSet::BLACK, |k| matches!(k, PKind::Black { .. })),
            ("lm", ClassSet::LM, |k| matches!(k, PKind::Column { start, .. } if start.d == D_BLACK)),
            ("rm", ClassSet::RM, |k| matches!(k, PKind::Column { accept, .. } if accept.d == D_BLACK)),
            ("between", ClassSet::BRL.union(ClassSet::BLR), |k| {
                matches!(k, PKind::Column { start, accept } if start.d != D_BLACK && accept.d != D_BLACK)
            }),
        ];
        for (name, on, member) in groups {
            layer.superposition.push(
                LayerRule::new(format!("P.on.{name}"))
                    .at(0, 0, [self.p_lit(|t| member(&t.kind)), class(on.complement())]),
            );
        }
        let b_inc = || self.p_lit(|t| matches!(t.kind, PKind::Interior { b: CounterB::Inc(_), .. }));
        let b_copy = || self.p_lit(|t| matches!(t.kind, PKind::Interior { b: CounterB::Copy(_), .. }));
        let has_l = || w_lit(|s| s & flag::L != 0);
        let lacks_l = || w_lit(|s| s & flag::L == 0);
        layer.superposition.push(
            LayerRule::new("P.b.first-row")
                .at(0, 0, [class(ClassSet::BLACK)])
                .at(0, 1, [b_copy()]),
        );
        layer.links = vec![
            LayerRule::new("P.b.on-L").at(0, 0, [has_l(), b_copy()]),
            LayerRule::new("P.b.above-L").at(0, 0, [has_l()]).at(0, 1, [b_inc()]),
            LayerRule::new("P.b.below-L").at(0, 0, [lacks_l(), b_inc()]).at(0, 1, [b_copy()]),
            LayerRule::new("P.b.copy-up").at(0, 0, [b_copy()]).at(0, 1, [b_inc()]),
        ];
        self.add_tm_rules(&mut layer);
        layer
    }

    fn add_tm_rules(&self, layer: &mut LayerSpec) {
        let tiles: Vec<&TmTile> = self.tm_used.iter().map(|&i| &self.tm_tiles.tiles()[i]).collect();
        let mut easts: Vec<HLabel> = tiles.iter().map(|t| t.east).collect();
        easts.sort();
        easts.dedup();
        for l in easts {
            layer.rules.push(
                LayerRule::new(format!("TM.h.{}", h_name(l)))
                    .at(0, 0, [self.tm_lit(|t| t.is_some_and(|t| t.east == l))])
                    .at(1, 0, [self.tm_lit(|t| t.is_some_and(|t| t.west != l))]),
            );
        }
        let mut norths: Vec<VLabel> = tiles.iter().map(|t| t.north).collect();
        norths.sort();
        norths.dedup();
        for l in norths {
            layer.rules.push(
                LayerRule::new(format!("TM.v.{}", v_name(l)))
                    .at(0, 0, [self.tm_lit(|t| t.is_some_and(|t| t.north == l))])
                    .at(0, 1, [self.tm_lit(|t| t.is_some_and(|t| t.south != l))]),
            );
        }
        let none = || self.tm_lit(|t| t.is_none());
        let some = || self.tm_lit(|t| t.is_some());
        let is_init = |t: &TmTile| matches!(t.class, TileClass::InitHead | TileClass::InitTape);
        let tm = &self.machine;
        layer.rules.push(
            LayerRule::new("TM.floor")
                .at(0, 0, [none()])
                .at(0, 1, [self.tm_lit(|t| t.is_some_and(|t| !is_init(t)))]),
        );
        layer.rules.push(
            LayerRule::new("TM.ceiling")
                .at(
                    0,
                    0,
                    [self.tm_lit(|t| {
                        t.is_some_and(|t| match t.north {
                            VLabel::Head(s, _) => !tm.is_halting(s),
                            VLabel::White => true,
                            _ => false,
                        })
                    })],
                )
                .at(0, 1, [none()]),
        );
        layer.superposition = layer
            .superposition
            .drain(..)
            .chain([
                LayerRule::new("TM.on-white").at(0, 0, [some(), class(ClassSet::WHITE.complement())]),
                LayerRule::new("TM.left-wall").at(0, 0, [class(ClassSet::COLUMN)]).at(
                    1,
                    0,
                    [self.tm_lit(|t| {
                        t.is_some_and(|t| {
                            t.class == TileClass::InitTape || (t.west != HLabel::Quiet && t.class != TileClass::InitHead)
                        })
                    })],
                ),
                LayerRule::new("TM.right-wall")
                    .at(0, 0, [self.tm_lit(|t| t.is_some_and(|t| t.east != HLabel::Quiet))])
                    .at(1, 0, [class(ClassSet::COLUMN)]),
            ])
            .collect();
        for (y, name) in PAIR_LETTERS.iter().enumerate() {
            let letter = self.pair_letter(y);
            layer.links.push(LayerRule::new(format!("TM.feed.{name}")).at(
                0,
                0,
                [
                    self.p_lit(|t| matches!(t.kind, PKind::Interior { d: DataPart::Feed { read, .. }, .. } if read == y)),
                    self.tm_lit(|t| {
                        !t.is_some_and(|t| {
                            is_init(t) && matches!(t.north, VLabel::Tape(a) | VLabel::Head(_, a) if a == letter)
                        })
                    }),
                ],
            ));
        }
        let feed = |t: &PTile| matches!(t.kind, PKind::Interior { d: DataPart::Feed { .. }, .. });
        let idle = |t: &PTile| matches!(t.kind, PKind::Interior { d: DataPart::Idle, .. });
        layer.links.push(
            LayerRule::new("TM.init-on-feed")
                .at(0, 0, [self.p_lit(|t| !feed(t)), self.tm_lit(|t| t.is_some_and(is_init))]),
        );
        layer
            .links
            .push(LayerRule::new("TM.on-idle").at(0, 0, [self.p_lit(idle), none()]));
        layer.links.push(
            LayerRule::new("TM.off-elsewhere").at(0, 0, [self.p_lit(|t| !feed(t) && !idle(t)), some()]),
        );
    }
}

/// The P and TM tracks of one square of size `m` whose right neighbour
/// sits `o` rows higher, row `v` above the square's black row at index
/// `v`, cell `u` at index `u - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFill {
    pub p: Vec<Vec<usize>>,
    pub tm: Vec<Vec<usize>>,
    /// Row of the feed row.
    pub feed_row: usize,
    /// Pair codes handed to the machine.
    pub feed_word: Vec<usize>,
}

/// Bits of `n` on `width` cells, most significant first; `None` on overflow.
pub fn bits_msb(n: usize, width: usize) -> Option<Vec<usize>> {
    if width < usize::BITS as usize && n >> width != 0 {
        return None;
    }
    Some((0..width).rev().map(|i| if i < usize::BITS as usize { (n >> i) & 1 } else { 0 }).collect())
}

/// `bin(a)#bin(b)` for a word of pair codes `2a + b`, most significant
/// pair first.
pub fn render_pair_word(word: &[usize]) -> String {
    let track = |shift: usize| -> String {
        let bits: String = word.iter().map(|&y| if (y >> shift) & 1 == 1 { '1' } else { '0' }).collect();
        let trimmed = bits.trim_start_matches('0');
        if trimmed.is_empty() { "0".into() } else { trimmed.into() }
    };
    format!("{}#{}", track(1), track(0))
}

/// Rule indices of a run of `t` reading `input` and writing `output`.
fn transducer_run(t: &Transducer, input: &[usize], output: &[usize]) -> Option<Vec<usize>> {
    fn go(t: &Transducer, input: &[usize], output: &[usize], state: usize, path: &mut Vec<usize>) -> bool {
        let i = path.len();
        if i == input.len() {
            return t.is_accepting(state);
        }
        for (k, r) in t.rules().iter().enumerate() {
            if r.from == state && r.input == input[i] && r.output == output[i] {
                path.push(k);
                if go(t, input, output, r.to, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..t.states().len()).filter(|&s| t.is_initial(s)).find_map(|s| {
        let mut path = Vec::new();
        go(t, input, output, s, &mut path).then_some(path)
    })
}

impl PtmLayout {
    /// Index of the P tile of a kind.
    pub fn p_index(&self, kind: PKind) -> Option<usize> {
        self.p_tiles.iter().position(|t| t.kind == kind)
    }

    /// TM symbol of the tile with the given name.
    pub fn tm_index(&self, name: &str) -> Option<usize> {
        self.tm_used
            .iter()
            .position(|&i| self.tm_tiles.tiles()[i].name == name)
            .map(|i| i + 1)
    }

    /// The intended P and TM contents of a square. Fails when the machine
    /// does not halt inside the square.
    pub fn square_fill(&self, m: usize, o: usize) -> Result<SquareFill> {
        let mut fill = self.p_fill(m, o)?;
        fill.tm = self.tm_rows(&fill.feed_word, fill.feed_row, m)?;
        Ok(fill)
    }

    /// The P contents of a square, with the TM rows left empty.
    pub fn p_fill(&self, m: usize, o: usize) -> Result<SquareFill> {
        if m < 4 || o < 2 || o + 2 > m {
            return Err(Error::Domain(format!("no square of size {m} with offset {o}")));
        }
        let w = m - 1;
        let inc = increment();
        let overflow = || Error::Overflow(format!("{m} does not fit on {w} cells"));
        let step = |from: usize, to: usize| -> Result<Vec<usize>> {
            let (a, b) = (bits_msb(from, w).ok_or_else(overflow)?, bits_msb(to, w).ok_or_else(overflow)?);
            transducer_run(&inc, &a, &b).ok_or_else(|| Error::Domain("increment run".into()))
        };
        let o_bits = bits_msb(o, w).ok_or_else(overflow)?;
        let m_bits = bits_msb(m, w).ok_or_else(overflow)?;
        let mut words = vec![m_bits.iter().zip(&o_bits).map(|(a, b)| 2 * a + b).collect::<Vec<_>>()];
        while words.last().unwrap()[w - 1] == 0 {
            let last = words.last().unwrap();
            let mut next = vec![0];
            next.extend_from_slice(&last[..w - 1]);
            words.push(next);
        }
        let strips = words.len() - 1;
        let feed_row = strips + 1;
        if feed_row > w {
            return Err(Error::Domain("no room for the feed row".into()));
        }
        let feed_word = words[strips].clone();
        let missing = || Error::Domain("tile missing from track P".into());
        let mut p = Vec::with_capacity(m);
        let black_a = step(m - 1, m)?;
        p.push(
            (0..w)
                .map(|i| self.p_index(PKind::Black { a: black_a[i], b: o_bits[i] }).ok_or_else(missing))
                .collect::<Result<Vec<_>>>()?,
        );
        for v in 1..m {
            let a = step(v - 1, v)?;
            let b: Vec<CounterB> = if v <= o {
                step(v - 1, v)?.into_iter().map(CounterB::Inc).collect()
            } else {
                o_bits.iter().map(|&bit| CounterB::Copy(bit)).collect()
            };
            let row = (0..w)
                .map(|i| {
                    let d = if v <= strips {
                        let below = &words[v - 1];
                        DataPart::Strip {
                            prev: if i == 0 { 0 } else { below[i - 1] },
                            read: below[i],
                        }
                    } else if v == feed_row {
                        DataPart::Feed {
                            seen: i > 0 && feed_word[i - 1] != 0,
                            read: feed_word[i],
                        }
                    } else {
                        DataPart::Idle
                    };
                    self.p_index(PKind::Interior { a: a[i], b: b[i], d }).ok_or_else(missing)
                })
                .collect::<Result<Vec<_>>>()?;
            p.push(row);
        }
        Ok(SquareFill {
            p,
            tm: Vec::new(),
            feed_row,
            feed_word,
        })
    }

    /// TM symbols of all rows of a square: empty below the feed row, then
    /// the run started on the feed word.
    fn tm_rows(&self, feed_word: &[usize], feed_row: usize, m: usize) -> Result<Vec<Vec<usize>>> {
        let tm = &self.machine;
        let w = m - 1;
        let name = |n: String| self.tm_index(&n).ok_or_else(|| Error::Domain(format!("no TM tile {n}")));
        let st = |s: usize| tm.states()[s].clone();
        let lt = |a: usize| tm.letters()[a].clone();
        let mut rows = vec![vec![0; w]; feed_row];
        let mut tape: Vec<usize> = feed_word.iter().map(|&y| self.pair_letter(y)).collect();
        let (mut head, mut state) = (0usize, tm.initial());
        rows.push(
            (0..w)
                .map(|i| name(format!("{}.{}", if i == 0 { "start" } else { "init" }, lt(tape[i]))))
                .collect::<Result<_>>()?,
        );
        for _ in feed_row + 1..m {
            let mut row: Vec<String> = tape.iter().map(|&a| format!("tape.{}", lt(a))).collect();
            if tm.is_halting(state) {
                row[head] = format!("halt.{}.{}", st(state), lt(tape[head]));
            } else {
                let (next, write, mv) = tm
                    .delta(state, tape[head])
                    .ok_or_else(|| Error::Domain("machine is stuck inside the square".into()))?;
                let (s, a) = (st(state), lt(tape[head]));
                tape[head] = write;
                let target = match mv {
                    Move::L => head.checked_sub(1),
                    Move::S => Some(head),
                    Move::R => Some(head + 1).filter(|&h| h < w),
                };
                let target = target.ok_or_else(|| Error::Domain("head leaves the square".into()))?;
                match mv {
                    Move::L => {
                        row[head] = format!("cL.{s}.{a}");
                        row[target] = format!("pL.{}.{}", st(next), lt(tape[target]));
                    }
                    Move::S => row[head] = format!("cS.{s}.{a}"),
                    Move::R => {
                        row[head] = format!("cR.{s}.{a}");
                        row[target] = format!("pR.{}.{}", st(next), lt(tape[target]));
                    }
                }
                head = target;
                state = next;
            }
            rows.push(row.into_iter().map(name).collect::<Result<_>>()?);
        }
        if !tm.is_halting(state) {
            return Err(Error::Domain("machine does not halt inside the square".into()));
        }
        Ok(rows)
    }
}

fn h_name(l: HLabel) -> String {
    match l {
        HLabel::White => "w".into(),
        HLabel::Quiet => "q".into(),
        HLabel::State(s) => format!("s{s}"),
    }
}

fn v_name(l: VLabel) -> String {
    match l {
        VLabel::White => "w".into(),
        VLabel::Frame => "f".into(),
        VLabel::Tape(a) => format!("t{a}"),
        VLabel::Head(s, a) => format!("h{s}.{a}"),
    }
}

fn p_tiles() -> Vec<PTile> {
    let inc = increment();
    let rules = inc.rules();
    let mut out = Vec::new();
    let data = |a, b, d| VState::Data { a, b, d };
    let h = |a, b, d| HState { a, b, d };
    let parts: Vec<(DataPart, usize, usize, usize, usize)> = {
        let mut v = Vec::new();
        for prev in 0..4 {
            for read in 0..4 {
                v.push((DataPart::Strip { prev, read }, read, prev, prev, read));
            }
        }
        for seen in [false, true] {
            for read in 0..4 {
                v.push((DataPart::Feed { seen, read }, read, D_NONE, D_FEED + seen as usize, D_FEED + (read != 0) as usize));
            }
        }
        v.push((DataPart::Idle, D_NONE, D_NONE, D_IDLE, D_IDLE));
        v
    };
    let b_parts: Vec<(CounterB, usize, usize, usize, usize)> = rules
        .iter()
        .enumerate()
        .map(|(k, r)| (CounterB::Inc(k), r.input, r.output, r.from, r.to))
        .chain((0..2).map(|bit| (CounterB::Copy(bit), bit, bit, B_COPY, B_COPY)))
        .collect();
    let bname = |b: CounterB| match b {
        CounterB::Inc(k) => format!("b{k}"),
        CounterB::Copy(bit) => format!("c{bit}"),
    };
    let dname = |d: DataPart| match d {
        DataPart::Strip { prev, read } => format!("s{}{}", PAIR_LETTERS[prev], PAIR_LETTERS[read]),
        DataPart::Feed { seen, read } => format!("f{}{}", seen as u8, PAIR_LETTERS[read]),
        DataPart::Idle => "idle".into(),
    };
    for (ka, ra) in rules.iter().enumerate() {
        for &(b, b_in, b_out, b_from, b_to) in &b_parts {
            for &(d, d_in, d_out, d_from, d_to) in &parts {
                out.push(PTile {
                    name: format!("p.i.a{ka}.{}.{}", bname(b), dname(d)),
                    kind: PKind::Interior { a: ka, b, d },
                    north: data(ra.output, b_out, d_out),
                    east: h(ra.to, b_to, d_to),
                    south: data(ra.input, b_in, d_in),
                    west: h(ra.from, b_from, d_from),
                });
            }
        }
    }
    for (ka, ra) in rules.iter().enumerate() {
        for b in 0..2 {
            out.push(PTile {
                name: format!("p.b.a{ka}.{b}"),
                kind: PKind::Black { a: ka, b },
                north: data(0, 0, ra.output * 2 + b),
                east: h(ra.to, B_COPY, D_BLACK),
                south: data(ra.input, b, D_NONE),
                west: h(ra.from, B_COPY, D_BLACK),
            });
        }
    }
    let q0 = (0..inc.states().len()).find(|&s| inc.is_initial(s)).expect("initial state");
    let q1 = (0..inc.states().len()).find(|&s| inc.is_accepting(s)).expect("accepting state");
    let interior_starts: Vec<HState> = [q0, B_COPY]
        .iter()
        .flat_map(|&b| [0, D_FEED, D_IDLE].map(|d| h(q0, b, d)))
        .collect();
    let interior_accepts: Vec<HState> = [q1, B_COPY]
        .iter()
        .flat_map(|&b| [0, D_FEED + 1, D_IDLE].map(|d| h(q1, b, d)))
        .collect();
    let black_start = h(q0, B_COPY, D_BLACK);
    let black_accept = h(q1, B_COPY, D_BLACK);
    let mut column = |start: HState, accept: HState| {
        out.push(PTile {
            name: format!("p.c.{}.{}", start.name(), accept.name()),
            kind: PKind::Column { start, accept },
            north: VState::Column,
            east: start,
            south: VState::Column,
            west: accept,
        })
    };
    for &a in &interior_accepts {
        column(black_start, a);
    }
    for &s in &interior_starts {
        column(s, black_accept);
    }
    for &s in &interior_starts {
        for &a in &interior_accepts {
            column(s, a);
        }
    }
    out
}

/// The P and TM components for a machine.
pub fn gen_component_p_tm(machine: &TuringMachine) -> Result<LayerSpec> {
    Ok(PtmLayout::new(machine)?.layer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{apply_transducer, corpus};
    use std::collections::HashSet;

    #[test]
    fn strip_transducer_halves_even_pairs() {
        let t = strip_transducer();
        for p in 0..16usize {
            for q in 0..16usize {
                let word: Vec<usize> = (0..4).rev().map(|i| ((p >> i) & 1) * 2 + ((q >> i) & 1)).collect();
                let out = apply_transducer(&t, &word);
                if p % 2 == 0 && q % 2 == 0 {
                    let want: Vec<usize> =
                        (0..4).rev().map(|i| (((p / 2) >> i) & 1) * 2 + (((q / 2) >> i) & 1)).collect();
                    assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![want]);
                } else {
                    assert!(out.is_empty());
                }
            }
        }
    }

    #[test]
    fn p_track_shape() {
        let layout = PtmLayout::new(&corpus::immediate_halt()).unwrap();
        let tiles = layout.p_tiles();
        assert_eq!(tiles.len(), 4 * 6 * 25 + 8 + 48);
        let names: HashSet<&str> = tiles.iter().map(|t| t.name.as_str()).collect();
        assert_eq!(names.len(), tiles.len());
        assert!(names.iter().all(|n| crate::tiling::valid_name(n)));
    }

    #[test]
    fn tm_track_excludes_borders_and_lifts_alphabet() {
        let layout = PtmLayout::new(&corpus::immediate_halt()).unwrap();
        assert_eq!(layout.machine().letters(), ["_", "01", "10", "11"]);
        let n = crate::tm_tiles::tm_tile_count(layout.machine());
        assert_eq!(layout.tm_symbol_count(), n - 4 + 1);
        assert_eq!(layout.pair_letter(0), layout.machine().blank());
        assert!(layout.tm_track().symbols.iter().all(|s| !s.contains("border")));
    }
}
