use crate::error::{Error, Result};
use crate::tiling::valid_name;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

/// Head movement of one transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    L,
    S,
    R,
}

impl Move {
    pub fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "S" => Some(Move::S),
            "R" => Some(Move::R),
            _ => None,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::L => "L",
            Move::S => "S",
            Move::R => "R",
        })
    }
}

/// `δ(state, letter) = (next, write, mv)`, all by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub state: usize,
    pub letter: usize,
    pub next: usize,
    pub write: usize,
    pub mv: Move,
}

/// A deterministic single-tape machine. Halting states have no outgoing
/// transitions; acceptance means reaching one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    initial: usize,
    halting: Vec<bool>,
    letters: Vec<String>,
    blank: usize,
    delta: BTreeMap<(usize, usize), (usize, usize, Move)>,
}

/// A symbol sequence over some alphabet, by index.
pub type Word = Vec<usize>;

fn check_names(kind: &str, names: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !valid_name(n) || n.contains('.') {
            return Err(Error::Malformed(format!("invalid {kind} name {n:?}")));
        }
        if !seen.insert(n) {
            return Err(Error::Malformed(format!("duplicate {kind} {n}")));
        }
    }
    if names.is_empty() {
        return Err(Error::Malformed(format!("no {kind}s")));
    }
    Ok(())
}

fn lookup(kind: &str, names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::Malformed(format!("unknown {kind} {name}")))
}

impl TuringMachine {
    /// Builds a machine from names. Transitions are `(state, letter, next,
    /// write, move)`.
    pub fn new(
        states: &[&str],
        initial: &str,
        halting: &[&str],
        letters: &[&str],
        blank: &str,
        transitions: &[(&str, &str, &str, &str, Move)],
    ) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let letters: Vec<String> = letters.iter().map(|s| s.to_string()).collect();
        check_names("state", &states)?;
        check_names("letter", &letters)?;
        let initial = lookup("state", &states, initial)?;
        let blank = lookup("letter", &letters, blank)?;
        let mut halt = vec![false; states.len()];
        for h in halting {
            halt[lookup("state", &states, h)?] = true;
        }
        let mut tm = TuringMachine {
            states,
            initial,
            halting: halt,
            letters,
            blank,
            delta: BTreeMap::new(),
        };
        for &(s, a, n, w, mv) in transitions {
            let t = Transition {
                state: lookup("state", &tm.states, s)?,
                letter: lookup("letter", &tm.letters, a)?,
                next: lookup("state", &tm.states, n)?,
                write: lookup("letter", &tm.letters, w)?,
                mv,
            };
            tm.add(t)?;
        }
        Ok(tm)
    }

    pub(crate) fn add(&mut self, t: Transition) -> Result<()> {
        if self.halting[t.state] {
            return Err(Error::Malformed(format!(
                "transition from halting state {}",
                self.states[t.state]
            )));
        }
        if self
            .delta
            .insert((t.state, t.letter), (t.next, t.write, t.mv))
            .is_some()
        {
            return Err(Error::Malformed(format!(
                "two transitions for ({}, {})",
                self.states[t.state], self.letters[t.letter]
            )));
        }
        Ok(())
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn is_halting(&self, state: usize) -> bool {
        self.halting[state]
    }

    pub fn halting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(|&s| self.halting[s])
    }

    pub fn delta(&self, state: usize, letter: usize) -> Option<(usize, usize, Move)> {
        self.delta.get(&(state, letter)).copied()
    }

    /// Transitions sorted by `(state, letter)`.
    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.delta.iter().map(|(&(state, letter), &(next, write, mv))| Transition {
            state,
            letter,
            next,
            write,
            mv,
        })
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|s| s == name)
    }

    /// Parses an input word: one character per letter when every letter is
    /// a single character, whitespace-separated names otherwise.
    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(&self.letters, text)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        format_word(&self.letters, word)
    }

    /// Every non-blank word of length at most `max_len`, shortest first and
    /// lexicographic by letter index within a length.
    pub fn inputs_up_to(&self, max_len: usize) -> Vec<Word> {
        let non_blank: Vec<usize> = (0..self.letters.len()).filter(|&a| a != self.blank).collect();
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &a in &non_blank {
                    let mut v: Word = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// The same machine over a larger alphabet: letters of `extra` not yet
    /// present are appended without transitions.
    pub fn with_letters(&self, extra: &[&str]) -> Result<TuringMachine> {
        let mut tm = self.clone();
        for &l in extra {
            if tm.letter_index(l).is_none() {
                tm.letters.push(l.to_string());
            }
        }
        check_names("letter", &tm.letters)?;
        Ok(tm)
    }
}

pub(crate) fn parse_word(letters: &[String], text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let find = |t: &str| {
        lookup("letter", letters, t)
    };
    if letters.iter().all(|l| l.chars().count() == 1) && !text.contains(char::is_whitespace) {
        text.chars().map(|c| find(&c.to_string())).collect()
    } else {
        text.split_whitespace().map(find).collect()
    }
}

pub(crate) fn format_word(letters: &[String], word: &[usize]) -> String {
    let sep = if letters.iter().all(|l| l.chars().count() == 1) { "" } else { " " };
    word.iter()
        .map(|&a| letters[a].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Tape window, head position and state at one instant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub tape: Word,
    pub head: usize,
    pub state: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Halted,
    TimeExceeded,
    /// The head tried to leave the allowed window, or the input did not fit.
    SpaceExceeded,
    /// No transition for the current state and letter.
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    pub configurations: Vec<Configuration>,
    pub status: RunStatus,
    /// Steps taken.
    pub time: usize,
    /// Cells visited by the head.
    pub space: usize,
}

impl RunTrace {
    pub fn halted(&self) -> bool {
        self.status == RunStatus::Halted
    }
}

/// Runs on a tape window of `max_space` cells with the input at the left
/// end and the head on cell 0, for at most `max_time` steps.
pub fn run_tm(tm: &TuringMachine, input: &[usize], max_time: usize, max_space: usize) -> Result<RunTrace> {
    for &a in input {
        if a >= tm.letters.len() || a == tm.blank {
            return Err(Error::Domain(format!("input letter {a} is blank or unknown")));
        }
    }
    let mut tape = vec![tm.blank; max_space.max(input.len())];
    tape[..input.len()].copy_from_slice(input);
    let mut cfg = Configuration {
        tape,
        head: 0,
        state: tm.initial,
    };
    let mut trace = RunTrace {
        configurations: vec![cfg.clone()],
        status: RunStatus::Halted,
        time: 0,
        space: 1,
    };
    if input.len() > max_space || max_space == 0 {
        trace.status = RunStatus::SpaceExceeded;
        return Ok(trace);
    }
    trace.status = loop {
        if tm.halting[cfg.state] {
            break RunStatus::Halted;
        }
        if trace.time == max_time {
            break RunStatus::TimeExceeded;
        }
        let Some((next, write, mv)) = tm.delta(cfg.state, cfg.tape[cfg.head]) else {
            break RunStatus::Stuck;
        };
        let head = match mv {
            Move::L => cfg.head.checked_sub(1),
            Move::S => Some(cfg.head),
            Move::R => Some(cfg.head + 1).filter(|&h| h < max_space),
        };
        let Some(head) = head else {
            break RunStatus::SpaceExceeded;
        };
        cfg.tape[cfg.head] = write;
        cfg.head = head;
        cfg.state = next;
        trace.time += 1;
        trace.space = trace.space.max(head + 1);
        trace.configurations.push(cfg.clone());
    };
    Ok(trace)
}

/// Checks a trace independently of [`run_tm`]: the first configuration is
/// the initial one, each later one follows from its predecessor by exactly
/// the transition for the scanned letter, and the counters and status agree
/// with the configurations.
pub fn validate_trace(tm: &TuringMachine, input: &[usize], trace: &RunTrace) -> Result<()> {
    let bad = |m: String| Err(Error::Domain(m));
    let Some(first) = trace.configurations.first() else {
        return bad("empty trace".into());
    };
    let width = first.tape.len();
    let mut expect = vec![tm.blank; width];
    if input.len() > width {
        return bad("input longer than the tape".into());
    }
    expect[..input.len()].copy_from_slice(input);
    if first.tape != expect || first.head != 0 || first.state != tm.initial {
        return bad("first configuration is not initial".into());
    }
    for (i, pair) in trace.configurations.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        let applicable: Vec<Transition> = tm
            .transitions()
            .filter(|t| t.state == a.state && t.letter == a.tape[a.head])
            .collect();
        let [t] = applicable.as_slice() else {
            return bad(format!("step {i}: {} applicable transitions", applicable.len()));
        };
        let head = match t.mv {
            Move::L => a.head as i64 - 1,
            Move::S => a.head as i64,
            Move::R => a.head as i64 + 1,
        };
        let mut tape = a.tape.clone();
        tape[a.head] = t.write;
        if b.state != t.next || b.head as i64 != head || b.tape != tape {
            return bad(format!("step {i} does not follow the transition"));
        }
    }
    if trace.time + 1 != trace.configurations.len() {
        return bad("time does not match the number of steps".into());
    }
    let space = trace.configurations.iter().map(|c| c.head + 1).max().unwrap_or(1);
    if trace.space != space {
        return bad("space does not match the visited cells".into());
    }
    let last = trace.configurations.last().unwrap();
    if trace.halted() != tm.is_halting(last.state) {
        return bad("status disagrees with the final state".into());
    }
    Ok(())
}
