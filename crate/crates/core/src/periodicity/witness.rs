use super::strip::{Frame, StripGraph};
use crate::error::{Error, Result};
use crate::tiling::{valid_name, Cell, Pattern, PeriodVector, Tile, TilingSystem};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    BiperiodicPossible,
    DirectionOnly,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::BiperiodicPossible => "biperiodic-possible",
            WitnessKind::DirectionOnly => "direction-only",
        }
    }
}

/// A bi-infinite walk in the strip graph: `cycle_a` repeated downwards,
/// then `connector`, then `cycle_b` repeated upwards.
///
/// `cycle_a[0] == connector[0]` and `cycle_b[0] == connector.last()`. An
/// empty `cycle_b` means the walk is `cycle_a` alone. Blocks are stored in
/// the working frame of the vector (transposed for vertical vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicWitness {
    pub vector: PeriodVector,
    pub kind: WitnessKind,
    pub transposed: bool,
    pub work: PeriodVector,
    pub k: usize,
    pub block_height: usize,
    pub blocks: BTreeMap<usize, Vec<Tile>>,
    pub cycle_a: Vec<usize>,
    pub connector: Vec<usize>,
    pub cycle_b: Vec<usize>,
}

impl PeriodicWitness {
    pub(crate) fn from_graph(
        graph: &StripGraph,
        kind: WitnessKind,
        cycle_a: Vec<usize>,
        connector: Vec<usize>,
        cycle_b: Vec<usize>,
    ) -> Self {
        let blocks = cycle_a
            .iter()
            .chain(&connector)
            .chain(&cycle_b)
            .map(|&i| (i, graph.nodes[i].block.clone()))
            .collect();
        PeriodicWitness {
            vector: graph.frame.vector,
            kind,
            transposed: graph.frame.transposed,
            work: graph.frame.work,
            k: graph.k,
            block_height: graph.block_height(),
            blocks,
            cycle_a,
            connector,
            cycle_b,
        }
    }

    fn frame(&self) -> Frame {
        Frame {
            vector: self.vector,
            work: self.work,
            transposed: self.transposed,
        }
    }

    /// Node at walk position `t`.
    pub fn walk(&self, t: i64) -> usize {
        let l = self.connector.len() as i64;
        if t < 0 {
            let la = self.cycle_a.len() as i64;
            self.cycle_a[t.rem_euclid(la) as usize]
        } else if t < l {
            self.connector[t as usize]
        } else {
            let b = if self.cycle_b.is_empty() {
                &self.cycle_a
            } else {
                &self.cycle_b
            };
            b[(t - l + 1).rem_euclid(b.len() as i64) as usize]
        }
    }

    /// Tile at an original-frame cell of the realized tiling.
    pub fn tile_at(&self, c: Cell) -> &Tile {
        let w = self.frame().to_work(c);
        let PeriodVector { p, q } = self.work;
        let n = w.x.div_euclid(p);
        let (i, j) = ((w.x - n * p) as usize, w.y - n * q);
        let h = self.block_height as i64;
        let t = j.div_euclid(h);
        let r = j.rem_euclid(h) as usize;
        &self.blocks[&self.walk(t)][r * p as usize + i]
    }

    /// Structural consistency: walk edges exist in `graph` and the cycles
    /// close up.
    pub fn check_against(&self, graph: &StripGraph) -> bool {
        let cyc_ok = |c: &[usize]| {
            !c.is_empty()
                && (0..c.len()).all(|i| graph.has_edge(c[i], c[(i + 1) % c.len()]))
        };
        let path_ok = self.connector.windows(2).all(|w| graph.has_edge(w[0], w[1]));
        let b_ok = self.cycle_b.is_empty()
            || (cyc_ok(&self.cycle_b) && self.cycle_b[0] == *self.connector.last().unwrap());
        cyc_ok(&self.cycle_a)
            && !self.connector.is_empty()
            && self.cycle_a[0] == self.connector[0]
            && path_ok
            && b_ok
    }
}

/// A `width × height` window of the realized tiling with its lower-left
/// cell at `origin`.
pub fn realize_witness_window(
    witness: &PeriodicWitness,
    origin: Cell,
    width: i64,
    height: i64,
) -> Result<Pattern> {
    if width <= 0 || height <= 0 {
        return Err(Error::Domain("window dimensions must be positive".into()));
    }
    let mut p = Pattern::new();
    for y in origin.y..origin.y + height {
        for x in origin.x..origin.x + width {
            let c = Cell::new(x, y);
            p.insert(c, witness.tile_at(c).clone());
        }
    }
    Ok(p)
}

/// A `width × height` window at the origin. The origin sits at the start
/// of the connector, so the window straddles it in the direction-only case.
pub fn realize_witness_patch(
    system: &TilingSystem,
    witness: &PeriodicWitness,
    width: i64,
    height: i64,
) -> Result<Pattern> {
    for b in witness.blocks.values() {
        if b.iter().any(|t| !system.check_tile(t)) {
            return Err(Error::Malformed("witness uses tiles outside the system".into()));
        }
    }
    realize_witness_window(witness, Cell::new(0, 0), width, height)
}

pub const WITNESS_HEADER: &str = "slopekit-witness v1";

fn list(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

/// Serializes a witness; block rows are listed top to bottom and
/// separated by `/`.
pub fn write_witness(system: &TilingSystem, w: &PeriodicWitness) -> String {
    let mut out = String::new();
    out.push_str(WITNESS_HEADER);
    out.push('\n');
    out.push_str(&format!("vector {} {}\n", w.vector.p, w.vector.q));
    out.push_str(&format!("kind {}\n", w.kind.as_str()));
    out.push_str(&format!("frame {} {} {}\n", w.work.p, w.work.q, if w.transposed { "transposed" } else { "direct" }));
    out.push_str(&format!("k {}\n", w.k));
    out.push_str(&format!("height {}\n", w.block_height));
    let width = w.work.p as usize;
    for (i, b) in &w.blocks {
        let rows: Vec<String> = (0..w.block_height)
            .rev()
            .map(|r| {
                b[r * width..(r + 1) * width]
                    .iter()
                    .map(|t| system.tile_name(t))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        out.push_str(&format!("node {} {}\n", i, rows.join(" / ")));
    }
    out.push_str(&format!("cycle_a {}\n", list(&w.cycle_a)));
    out.push_str(&format!("connector {}\n", list(&w.connector)));
    out.push_str(&format!("cycle_b {}\n", list(&w.cycle_b)));
    out
}

/// Parses a witness. Tiles are resolved against `system`, or, when it is
/// `None`, against a flat alphabet built from the names in the file (in
/// order of first appearance), which is returned alongside.
pub fn parse_witness(
    text: &str,
    system: Option<&TilingSystem>,
) -> Result<(PeriodicWitness, TilingSystem)> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with("//")).then_some((i + 1, l))
    });
    match lines.next() {
        Some((_, l)) if l == WITNESS_HEADER => {}
        Some((n, _)) => return Err(Error::parse(n, format!("expected header `{WITNESS_HEADER}`"))),
        None => return Err(Error::parse(1, "empty witness file")),
    }
    let mut vector = None;
    let mut kind = None;
    let mut frame = None;
    let mut k = None;
    let mut height = None;
    let mut raw_nodes: Vec<(usize, usize, Vec<Vec<String>>)> = Vec::new();
    let mut cycles: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (n, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let ints = |s: &str| -> Result<Vec<i64>> {
            s.split_whitespace()
                .map(|x| x.parse().map_err(|_| Error::parse(n, format!("invalid integer `{x}`"))))
                .collect()
        };
        match kw {
            "vector" => {
                let v = ints(rest)?;
                if v.len() != 2 {
                    return Err(Error::parse(n, "expected `vector P Q`"));
                }
                vector = Some(PeriodVector::new(v[0], v[1]).map_err(|e| Error::parse(n, e.to_string()))?);
            }
            "kind" => {
                kind = Some(match rest {
                    "biperiodic-possible" => WitnessKind::BiperiodicPossible,
                    "direction-only" => WitnessKind::DirectionOnly,
                    _ => return Err(Error::parse(n, format!("unknown kind `{rest}`"))),
                })
            }
            "frame" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 3 {
                    return Err(Error::parse(n, "expected `frame P Q direct|transposed`"));
                }
                let v = ints(&f[..2].join(" "))?;
                if v[0] <= 0 {
                    return Err(Error::parse(n, "working vector needs p > 0"));
                }
                let transposed = match f[2] {
                    "direct" => false,
                    "transposed" => true,
                    _ => return Err(Error::parse(n, "expected `direct` or `transposed`")),
                };
                frame = Some((PeriodVector { p: v[0], q: v[1] }, transposed));
            }
            "k" | "height" => {
                let v = ints(rest)?;
                if v.len() != 1 || v[0] < 1 {
                    return Err(Error::parse(n, format!("expected `{kw} N` with N ≥ 1")));
                }
                if kw == "k" {
                    k = Some(v[0] as usize);
                } else {
                    height = Some(v[0] as usize);
                }
            }
            "node" => {
                let (idx, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::parse(n, format!("invalid node index `{idx}`")))?;
                let rows: Vec<Vec<String>> = body
                    .split('/')
                    .map(|r| r.split_whitespace().map(str::to_string).collect())
                    .collect();
                raw_nodes.push((n, idx, rows));
            }
            "cycle_a" | "connector" | "cycle_b" => {
                let v = ints(rest)?;
                if v.iter().any(|&x| x < 0) {
                    return Err(Error::parse(n, "negative node index"));
                }
                let key = match kw {
                    "cycle_a" => "cycle_a",
                    "connector" => "connector",
                    _ => "cycle_b",
                };
                cycles.insert(key, v.into_iter().map(|x| x as usize).collect());
            }
            _ => return Err(Error::parse(n, format!("unknown directive `{kw}`"))),
        }
    }
    let missing = |what: &str| Error::parse(0, format!("missing `{what}` line"));
    let vector = vector.ok_or_else(|| missing("vector"))?;
    let kind = kind.ok_or_else(|| missing("kind"))?;
    let (work, transposed) = frame.ok_or_else(|| missing("frame"))?;
    let k = k.ok_or_else(|| missing("k"))?;
    let block_height = height.ok_or_else(|| missing("height"))?;
    let width = work.p as usize;

    let owned;
    let sys = match system {
        Some(s) => s,
        None => {
            let mut names: Vec<String> = Vec::new();
            for (n, _, rows) in &raw_nodes {
                for name in rows.iter().flatten() {
                    if !valid_name(name) {
                        return Err(Error::parse(*n, format!("invalid tile name `{name}`")));
                    }
                    if !names.contains(name) {
                        names.push(name.clone());
                    }
                }
            }
            owned = TilingSystem::flat(names, &[])?;
            &owned
        }
    };
    let mut blocks = BTreeMap::new();
    for (n, idx, rows) in raw_nodes {
        if rows.len() != block_height || rows.iter().any(|r| r.len() != width) {
            return Err(Error::parse(n, format!("node block must be {width}×{block_height}")));
        }
        let mut block = Vec::with_capacity(width * block_height);
        for row in rows.iter().rev() {
            for name in row {
                block.push(
                    sys.tile_by_name(name)
                        .ok_or_else(|| Error::parse(n, format!("unknown tile `{name}`")))?,
                );
            }
        }
        blocks.insert(idx, block);
    }
    let take = |key: &str| cycles.get(key).cloned().unwrap_or_default();
    let w = PeriodicWitness {
        vector,
        kind,
        transposed,
        work,
        k,
        block_height,
        blocks,
        cycle_a: take("cycle_a"),
        connector: take("connector"),
        cycle_b: take("cycle_b"),
    };
    let referenced = w.cycle_a.iter().chain(&w.connector).chain(&w.cycle_b);
    if w.cycle_a.is_empty() || w.connector.is_empty() {
        return Err(Error::Malformed("witness needs cycle_a and connector".into()));
    }
    if let Some(i) = referenced.clone().find(|i| !w.blocks.contains_key(i)) {
        return Err(Error::Malformed(format!("node {i} is referenced but not listed")));
    }
    if w.cycle_a[0] != w.connector[0]
        || (!w.cycle_b.is_empty() && w.cycle_b[0] != *w.connector.last().unwrap())
    {
        return Err(Error::Malformed("cycles must meet the connector ends".into()));
    }
    let sys_out = sys.clone();
    Ok((w, sys_out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{single_tile, yb};
    use crate::periodicity::{build_strip_graph, decide_periodic, Decision};
    use crate::tiling::{validate_patch, Tile};
    use proptest::prelude::*;

    fn v(p: i64, q: i64) -> PeriodVector {
        PeriodVector::new(p, q).unwrap()
    }

    fn yb_witness() -> PeriodicWitness {
        decide_periodic(&yb(), v(1, 0)).unwrap().witness().unwrap().clone()
    }

    #[test]
    fn window_below_connector_is_yellow() {
        let w = yb_witness();
        let p = realize_witness_window(&w, Cell::new(0, -10), 4, 4).unwrap();
        assert!(p.iter().all(|(_, t)| *t == Tile::flat(0)));
    }

    #[test]
    fn window_across_connector_is_yellow_then_blue() {
        let s = yb();
        let w = yb_witness();
        let p = realize_witness_window(&w, Cell::new(0, -4), 3, 12).unwrap();
        assert!(validate_patch(&s, &p).unwrap().is_empty());
        assert_eq!(p.get(Cell::new(0, -4)), Some(&Tile::flat(0)));
        assert_eq!(p.get(Cell::new(0, 7)), Some(&Tile::flat(1)));
    }

    #[test]
    fn biperiodic_unit_window() {
        let s = single_tile();
        let d = decide_periodic(&s, v(1, 0)).unwrap();
        let w = d.witness().unwrap();
        let p = realize_witness_patch(&s, w, 1, 1).unwrap();
        assert_eq!(p.get(Cell::new(0, 0)), Some(&w.blocks[&w.cycle_a[0]][0]));
    }

    #[test]
    fn nonpositive_dimensions_are_rejected() {
        assert!(realize_witness_patch(&yb(), &yb_witness(), 0, 3).is_err());
    }

    #[test]
    fn serialization_round_trips() {
        let s = yb();
        for vec in [v(1, 0), v(0, 2), v(1, 1)] {
            let w = decide_periodic(&s, vec).unwrap().witness().unwrap().clone();
            let text = write_witness(&s, &w);
            let (back, _) = parse_witness(&text, Some(&s)).unwrap();
            assert_eq!(back, w);
            assert_eq!(write_witness(&s, &back), text);
            let (loose, names) = parse_witness(&text, None).unwrap();
            let a = realize_witness_window(&w, Cell::new(-2, -2), 5, 5).unwrap();
            let b = realize_witness_window(&loose, Cell::new(-2, -2), 5, 5).unwrap();
            for ((ca, ta), (cb, tb)) in a.iter().zip(b.iter()) {
                assert_eq!(ca, cb);
                assert_eq!(s.tile_name(ta), names.tile_name(tb));
            }
        }
    }

    #[test]
    fn witnesses_are_walks_of_their_graph() {
        let s = yb();
        for vec in [v(1, 0), v(2, 0), v(1, 1), v(0, 1), v(2, -1)] {
            let g = build_strip_graph(&s, vec).unwrap();
            if let Decision::DirectionOnly(w) | Decision::BiperiodicOnly(w) =
                crate::periodicity::decide::decide_on_graph(&g)
            {
                assert!(w.check_against(&g));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn realized_windows_are_valid(
            p in -2i64..=2, q in -2i64..=2,
            ox in -12i64..12, oy in -12i64..12, ww in 1i64..=8, wh in 1i64..=8,
        ) {
            prop_assume!((p, q) != (0, 0));
            let s = yb();
            if let Some(w) = decide_periodic(&s, v(p, q)).unwrap().witness() {
                let pat = realize_witness_window(w, Cell::new(ox, oy), ww, wh).unwrap();
                prop_assert!(validate_patch(&s, &pat).unwrap().is_empty());
            }
        }
    }
}
