use super::tm::{format_word, parse_word, Word};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// One rule `from --input|output--> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransducerRule {
    pub from: usize,
    pub input: usize,
    pub output: usize,
    pub to: usize,
}

/// A nondeterministic letter-to-letter transducer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transducer {
    states: Vec<String>,
    letters: Vec<String>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
    rules: Vec<TransducerRule>,
}

impl Transducer {
    /// Rules are `(from, input, output, to)` by name.
    pub fn new(
        states: &[&str],
        letters: &[&str],
        initial: &[&str],
        accepting: &[&str],
        rules: &[(&str, &str, &str, &str)],
    ) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let letters: Vec<String> = letters.iter().map(|s| s.to_string()).collect();
        let st = |n: &str| {
            states
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::Malformed(format!("unknown state {n}")))
        };
        let lt = |n: &str| {
            letters
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::Malformed(format!("unknown letter {n}")))
        };
        let mut init = vec![false; states.len()];
        for s in initial {
            init[st(s)?] = true;
        }
        let mut acc = vec![false; states.len()];
        for s in accepting {
            acc[st(s)?] = true;
        }
        let mut rs = BTreeSet::new();
        for &(f, i, o, t) in rules {
            rs.insert(TransducerRule {
                from: st(f)?,
                input: lt(i)?,
                output: lt(o)?,
                to: st(t)?,
            });
        }
        Ok(Transducer {
            states,
            letters,
            initial: init,
            accepting: acc,
            rules: rs.into_iter().collect(),
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn rules(&self) -> &[TransducerRule] {
        &self.rules
    }

    pub fn is_initial(&self, s: usize) -> bool {
        self.initial[s]
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(&self.letters, text)
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        format_word(&self.letters, w)
    }
}

/// Binary successor, most significant bit first: copy a prefix, turn the
/// guessed last `0` into `1`, then turn the trailing `1`s into `0`s.
pub fn increment() -> Transducer {
    Transducer::new(
        &["q0", "q1"],
        &["0", "1"],
        &["q0"],
        &["q1"],
        &[
            ("q0", "0", "0", "q0"),
            ("q0", "1", "1", "q0"),
            ("q0", "0", "1", "q1"),
            ("q1", "1", "0", "q1"),
        ],
    )
    .expect("increment transducer")
}

/// Copies its input over the given letters.
pub fn identity(letters: &[&str]) -> Transducer {
    let rules: Vec<(&str, &str, &str, &str)> = letters.iter().map(|&a| ("q", a, a, "q")).collect();
    Transducer::new(&["q"], letters, &["q"], &["q"], &rules).expect("identity transducer")
}

/// All outputs of accepting runs on `input`; empty when rejected.
pub fn apply_transducer(t: &Transducer, input: &[usize]) -> BTreeSet<Word> {
    let mut frontier: BTreeSet<(usize, Word)> = (0..t.states.len())
        .filter(|&s| t.initial[s])
        .map(|s| (s, Vec::new()))
        .collect();
    for &a in input {
        let mut next = BTreeSet::new();
        for (s, out) in &frontier {
            for r in t.rules.iter().filter(|r| r.from == *s && r.input == a) {
                let mut o = out.clone();
                o.push(r.output);
                next.insert((r.to, o));
            }
        }
        frontier = next;
    }
    frontier
        .into_iter()
        .filter(|(s, _)| t.accepting[*s])
        .map(|(_, o)| o)
        .collect()
}

/// The word reached from `0^width` after `count` increments, as `0`/`1`
/// characters.
pub fn increment_iterate(width: usize, count: u64) -> Result<String> {
    if width < 64 && count >= 1u64 << width {
        return Err(Error::Overflow(format!("{count} does not fit in {width} bits")));
    }
    let inc = increment();
    let mut w: Word = vec![0; width];
    for i in 0..count {
        let out = apply_transducer(&inc, &w);
        let mut it = out.into_iter();
        match (it.next(), it.next()) {
            (Some(o), None) => w = o,
            _ => return Err(Error::Overflow(format!("increment {i} has no unique image"))),
        }
    }
    Ok(inc.format_word(&w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(t: &Transducer, s: &str) -> Vec<String> {
        apply_transducer(t, &t.word(s).unwrap())
            .iter()
            .map(|w| t.format_word(w))
            .collect()
    }

    #[test]
    fn increment_examples() {
        let t = increment();
        assert_eq!(apply(&t, "0011"), vec!["0100"]);
        assert!(apply(&t, "1111").is_empty());
        assert_eq!(apply(&t, "0000"), vec!["0001"]);
    }

    #[test]
    fn increment_matches_integers_exhaustively() {
        let t = increment();
        for width in 1..=10usize {
            for n in 0..(1u64 << width) {
                let w: Word = (0..width).rev().map(|b| ((n >> b) & 1) as usize).collect();
                let out = apply_transducer(&t, &w);
                if n + 1 == 1 << width {
                    assert!(out.is_empty());
                } else {
                    let s = format!("{:0width$b}", n + 1);
                    assert_eq!(out.iter().map(|o| t.format_word(o)).collect::<Vec<_>>(), vec![s]);
                }
            }
        }
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(increment_iterate(4, 5).unwrap(), "0101");
        assert_eq!(increment_iterate(3, 0).unwrap(), "000");
        assert_eq!(increment_iterate(8, 200).unwrap(), format!("{:08b}", 200));
        assert!(matches!(increment_iterate(3, 8), Err(Error::Overflow(_))));
    }

    #[test]
    fn identity_copies() {
        let t = identity(&["a", "b"]);
        assert_eq!(apply(&t, "abba"), vec!["abba"]);
    }

    #[test]
    fn iteration_steps_are_single_applications() {
        let t = increment();
        for c in 0..63u64 {
            let cur = increment_iterate(6, c).unwrap();
            let next = increment_iterate(6, c + 1).unwrap();
            assert_eq!(apply(&t, &cur), vec![next]);
        }
    }
}
