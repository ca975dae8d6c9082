//! Small machines used by tests, acceptance runs and the CLI.

use super::tm::{Move, TuringMachine};

fn build(
    states: &[&str],
    halting: &[&str],
    letters: &[&str],
    rules: &[(&str, &str, &str, &str, Move)],
) -> TuringMachine {
    TuringMachine::new(states, states[0], halting, letters, "_", rules).expect("corpus machine")
}

/// `δ(s0,□) = (h,□,S)` over the blank-only alphabet.
pub fn immediate_halt() -> TuringMachine {
    build(&["s0", "h"], &["h"], &["_"], &[("s0", "_", "h", "_", Move::S)])
}

/// `δ(s0,□) = (s0,□,S)`: never halts.
pub fn looper() -> TuringMachine {
    build(&["s0"], &[], &["_", "1"], &[("s0", "_", "s0", "_", Move::S)])
}

/// Scans right over `1`s and halts on the first blank.
pub fn right_scanner() -> TuringMachine {
    build(
        &["s0", "h"],
        &["h"],
        &["_", "1"],
        &[("s0", "1", "s0", "1", Move::R), ("s0", "_", "h", "_", Move::S)],
    )
}

/// Accepts inputs with an even number of `1`s; gets stuck on odd ones.
pub fn parity() -> TuringMachine {
    build(
        &["s0", "s1", "h"],
        &["h"],
        &["_", "1"],
        &[
            ("s0", "1", "s1", "1", Move::R),
            ("s1", "1", "s0", "1", Move::R),
            ("s0", "_", "h", "_", Move::S),
        ],
    )
}

/// Writes a `1` over the first cell when it is blank, steps right, then
/// steps back left and halts.
pub fn writer() -> TuringMachine {
    build(
        &["s0", "s1", "h"],
        &["h"],
        &["_", "1"],
        &[
            ("s0", "_", "s1", "1", Move::R),
            ("s0", "1", "s1", "1", Move::R),
            ("s1", "_", "h", "_", Move::L),
            ("s1", "1", "h", "1", Move::L),
        ],
    )
}

/// Runs to the end of the input, steps back and erases the last `1`.
pub fn erase_last() -> TuringMachine {
    build(
        &["s0", "s1", "h"],
        &["h"],
        &["_", "1"],
        &[
            ("s0", "1", "s0", "1", Move::R),
            ("s0", "_", "s1", "_", Move::L),
            ("s1", "1", "h", "_", Move::S),
        ],
    )
}

/// A non-halting initial state with no transitions.
pub fn no_transitions() -> TuringMachine {
    build(&["s0", "h"], &["h"], &["_", "1"], &[])
}

/// The toy corpus, by name.
pub fn all() -> Vec<(&'static str, TuringMachine)> {
    vec![
        ("immediate-halt", immediate_halt()),
        ("looper", looper()),
        ("right-scanner", right_scanner()),
        ("parity", parity()),
        ("writer", writer()),
        ("erase-last", erase_last()),
        ("no-transitions", no_transitions()),
    ]
}

pub fn by_name(name: &str) -> Option<TuringMachine> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, m)| m)
}
