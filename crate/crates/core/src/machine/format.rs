//! Text format for machines:
//!
//! ```text
//! slopekit-tm v1
//! state s0 initial
//! state h halting
//! letter _ blank
//! letter 1
//! s0 1 -> s0 1 R
//! s0 _ -> h _ S
//! ```

use super::tm::{Move, Transition, TuringMachine};
use crate::error::{Error, Result};

pub const TM_HEADER: &str = "slopekit-tm v1";

pub fn parse_tm(text: &str) -> Result<TuringMachine> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split("//").next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, h)) if h == TM_HEADER => {}
        Some((n, _)) => return Err(Error::parse(n, format!("expected header {TM_HEADER:?}"))),
        None => return Err(Error::parse(1, "empty machine file")),
    }
    let mut states: Vec<String> = Vec::new();
    let mut initial: Option<String> = None;
    let mut halting: Vec<String> = Vec::new();
    let mut letters: Vec<String> = Vec::new();
    let mut blank: Option<String> = None;
    let mut rules: Vec<(usize, [String; 4], Move)> = Vec::new();
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["state", name, flags @ ..] => {
                states.push(name.to_string());
                for f in flags {
                    match *f {
                        "initial" if initial.is_none() => initial = Some(name.to_string()),
                        "initial" => return Err(Error::parse(n, "second initial state")),
                        "halting" => halting.push(name.to_string()),
                        other => return Err(Error::parse(n, format!("unknown state flag {other}"))),
                    }
                }
            }
            ["letter", name, flags @ ..] => {
                letters.push(name.to_string());
                match flags {
                    [] => {}
                    ["blank"] if blank.is_none() => blank = Some(name.to_string()),
                    ["blank"] => return Err(Error::parse(n, "second blank letter")),
                    _ => return Err(Error::parse(n, "unknown letter flag")),
                }
            }
            [s, a, "->", t, b, m] => {
                let mv = Move::parse(m).ok_or_else(|| Error::parse(n, format!("bad move {m}")))?;
                rules.push((n, [s, a, t, b].map(|x| x.to_string()), mv));
            }
            _ => return Err(Error::parse(n, format!("unrecognized line {line:?}"))),
        }
    }
    let initial = initial.ok_or_else(|| Error::parse(0, "no initial state"))?;
    let blank = blank.ok_or_else(|| Error::parse(0, "no blank letter"))?;
    let st: Vec<&str> = states.iter().map(String::as_str).collect();
    let hl: Vec<&str> = halting.iter().map(String::as_str).collect();
    let lt: Vec<&str> = letters.iter().map(String::as_str).collect();
    let mut tm = TuringMachine::new(&st, &initial, &hl, &lt, &blank, &[])
        .map_err(|e| Error::parse(0, e.to_string()))?;
    for (n, [s, a, t, b], mv) in rules {
        let idx = |x: Option<usize>, what: &str, name: &str| {
            x.ok_or_else(|| Error::parse(n, format!("unknown {what} {name}")))
        };
        let tr = Transition {
            state: idx(tm.state_index(&s), "state", &s)?,
            letter: idx(tm.letter_index(&a), "letter", &a)?,
            next: idx(tm.state_index(&t), "state", &t)?,
            write: idx(tm.letter_index(&b), "letter", &b)?,
            mv,
        };
        tm.add(tr).map_err(|e| Error::parse(n, e.to_string()))?;
    }
    Ok(tm)
}

pub fn write_tm(tm: &TuringMachine) -> String {
    let mut out = format!("{TM_HEADER}\n");
    for (i, s) in tm.states().iter().enumerate() {
        out.push_str(&format!("state {s}"));
        if i == tm.initial() {
            out.push_str(" initial");
        }
        if tm.is_halting(i) {
            out.push_str(" halting");
        }
        out.push('\n');
    }
    for (i, a) in tm.letters().iter().enumerate() {
        out.push_str(&format!("letter {a}"));
        if i == tm.blank() {
            out.push_str(" blank");
        }
        out.push('\n');
    }
    for t in tm.transitions() {
        out.push_str(&format!(
            "{} {} -> {} {} {}\n",
            tm.states()[t.state],
            tm.letters()[t.letter],
            tm.states()[t.next],
            tm.letters()[t.write],
            t.mv
        ));
    }
    out
}

/// FNV-1a over the serialized machine.
pub fn fingerprint(tm: &TuringMachine) -> u64 {
    write_tm(tm).bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::corpus;

    #[test]
    fn corpus_round_trips() {
        for (name, tm) in corpus::all() {
            let text = write_tm(&tm);
            assert_eq!(parse_tm(&text).unwrap(), tm, "{name}");
        }
    }

    #[test]
    fn parses_documented_example() {
        let tm = parse_tm(
            "slopekit-tm v1\n// scanner\nstate s0 initial\nstate h halting\nletter _ blank\nletter 1\ns0 1 -> s0 1 R\ns0 _ -> h _ S\n",
        )
        .unwrap();
        assert_eq!(tm, corpus::right_scanner());
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_tm("slopekit-tm v1\nstate s0 initial\nletter _ blank\ns0 _ -> s0 _ X\n").unwrap_err();
        assert_eq!(e, Error::parse(4, "bad move X"));
        let e = parse_tm("slopekit-tm v1\nstate s0 initial\nletter _ blank\ns0 x -> s0 _ S\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        assert!(matches!(parse_tm("nope"), Err(Error::Parse { line: 1, .. })));
        let e = parse_tm("slopekit-tm v1\nstate s0 initial\nletter _ blank\ns0 _ -> s0 _ S\ns0 _ -> s0 _ R\n")
            .unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }));
    }

    #[test]
    fn fingerprints_differ() {
        assert_ne!(fingerprint(&corpus::looper()), fingerprint(&corpus::right_scanner()));
    }
}
