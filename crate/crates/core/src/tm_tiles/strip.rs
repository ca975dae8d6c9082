use super::region::{WangRegion, DEFAULT_STEP_BUDGET};
use crate::error::{Error, Result};
use crate::machine::{Transducer, Word};
use crate::tiling::WangTile;
use std::collections::BTreeSet;

const WALL: u32 = 0;
const DELIM: u32 = 0;

fn state_code(s: usize) -> u32 {
    1 + s as u32
}

fn letter_code(a: usize) -> u32 {
    1 + a as u32
}

/// Tiles running a transducer along rows: one tile per rule with the input
/// letter below, the output letter above and the states on the sides, a
/// left delimiter per initial state and a right delimiter per accepting
/// state. A strip between delimiters with `h` rows of tiles stacks `h`
/// applications.
pub fn transducer_to_tiles(t: &Transducer) -> Vec<WangTile> {
    let st = |s: usize| t.states()[s].as_str();
    let lt = |a: usize| t.letters()[a].as_str();
    let mut out: Vec<WangTile> = t
        .rules()
        .iter()
        .map(|r| {
            WangTile::new(
                format!("rule.{}.{}.{}.{}", st(r.from), lt(r.input), lt(r.output), st(r.to)),
                letter_code(r.output),
                state_code(r.to),
                letter_code(r.input),
                state_code(r.from),
            )
        })
        .collect();
    for s in 0..t.states().len() {
        if t.is_initial(s) {
            out.push(WangTile::new(format!("begin.{}", st(s)), DELIM, state_code(s), DELIM, WALL));
        }
    }
    for s in 0..t.states().len() {
        if t.is_accepting(s) {
            out.push(WangTile::new(format!("end.{}", st(s)), DELIM, WALL, DELIM, state_code(s)));
        }
    }
    out
}

/// Every stack of `applications` rows above `bottom`; each result lists the
/// words from the bottom up, starting with `bottom`.
pub fn transducer_strips(t: &Transducer, bottom: &[usize], applications: usize) -> Result<Vec<Vec<Word>>> {
    if applications == 0 {
        return Ok(vec![vec![bottom.to_vec()]]);
    }
    if bottom.iter().any(|&a| a >= t.letters().len()) {
        return Err(Error::Domain("letter outside the transducer alphabet".into()));
    }
    let tiles = transducer_to_tiles(t);
    let n = bottom.len();
    let width = n + 2;
    let mut region = WangRegion::new(&tiles, width, applications)?;
    for y in 0..applications {
        region.restrict(0, y, |w| w.name.starts_with("begin."));
        region.restrict(width - 1, y, |w| w.name.starts_with("end."));
        for x in 1..=n {
            region.restrict(x, y, |w| w.name.starts_with("rule."));
        }
    }
    for (i, &a) in bottom.iter().enumerate() {
        region.restrict(i + 1, 0, |w| w.south == letter_code(a));
    }
    let mut seen = BTreeSet::new();
    region.for_each(DEFAULT_STEP_BUDGET, |cells| {
        let mut rows = vec![bottom.to_vec()];
        for y in 0..applications {
            rows.push(
                (1..=n)
                    .map(|x| tiles[cells[y * width + x]].north as usize - 1)
                    .collect(),
            );
        }
        seen.insert(rows);
        true
    })?;
    Ok(seen.into_iter().collect())
}
