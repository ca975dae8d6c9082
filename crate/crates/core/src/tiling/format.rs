//! Text formats for tilesets and patches.
//!
//! Tileset:
//!
//! ```text
//! slopekit-tileset v1
//! // comment
//! tile Y B
//! forbid (0,0)=Y; (1,0)=B
//! forbid (0,0)={Y,B}; (0,1)=Y -- optional label
//! ```
//!
//! or Wang tiles, one per line: `wang NAME N E S W`. Product systems
//! declare `track NAME SYMBOL...` lines instead of `tile` and write cells as
//! `TRACK:SET&TRACK:SET` or `*` for an unconstrained cell.
//!
//! Patch: `slopekit-patch v1`, an optional `origin X Y` line (the lower
//! left cell), then `row` lines from top to bottom whose entries are tile
//! names, `()` marking a hole.

use super::{valid_name, wang_to_patterns, Cell, Pattern, Rule, Tile, TilingSystem, Track, WangTile};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::HashMap;

pub const TILESET_HEADER: &str = "slopekit-tileset v1";
pub const PATCH_HEADER: &str = "slopekit-patch v1";

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with("//")).then_some((i + 1, l))
    })
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    header: &str,
) -> Result<()> {
    match lines.next() {
        Some((_, l)) if l == header => Ok(()),
        Some((n, l)) => Err(Error::parse(n, format!("expected header `{header}`, found `{l}`"))),
        None => Err(Error::parse(1, format!("missing header `{header}`"))),
    }
}

/// Parses a tileset file.
pub fn parse_tileset(text: &str) -> Result<TilingSystem> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, TILESET_HEADER)?;
    let mut names: Vec<String> = Vec::new();
    let mut tracks: Vec<Track> = Vec::new();
    let mut wang: Vec<WangTile> = Vec::new();
    let mut forbids: Vec<(usize, String)> = Vec::new();
    for (n, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "tile" => {
                for name in rest.split_whitespace() {
                    if !valid_name(name) {
                        return Err(Error::parse(n, format!("invalid tile name `{name}`")));
                    }
                    if names.iter().any(|x| x == name) {
                        return Err(Error::parse(n, format!("duplicate tile name `{name}`")));
                    }
                    names.push(name.to_string());
                }
            }
            "wang" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 5 {
                    return Err(Error::parse(n, "expected `wang NAME N E S W`"));
                }
                if !valid_name(f[0]) {
                    return Err(Error::parse(n, format!("invalid tile name `{}`", f[0])));
                }
                if wang.iter().any(|t| t.name == f[0]) {
                    return Err(Error::parse(n, format!("duplicate tile name `{}`", f[0])));
                }
                let mut col = [0u32; 4];
                for (k, s) in f[1..].iter().enumerate() {
                    col[k] = s
                        .parse()
                        .map_err(|_| Error::parse(n, format!("invalid colour `{s}`")))?;
                }
                wang.push(WangTile::new(f[0], col[0], col[1], col[2], col[3]));
            }
            "track" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                let Some((&tname, syms)) = f.split_first() else {
                    return Err(Error::parse(n, "expected `track NAME SYMBOL...`"));
                };
                if tracks.iter().any(|t| t.name == tname) {
                    return Err(Error::parse(n, format!("duplicate track `{tname}`")));
                }
                let mut symbols: Vec<String> = Vec::new();
                for s in syms {
                    if !valid_name(s) || symbols.iter().any(|x| x == s) {
                        return Err(Error::parse(n, format!("invalid or duplicate symbol `{s}`")));
                    }
                    symbols.push(s.to_string());
                }
                if symbols.is_empty() {
                    return Err(Error::parse(n, format!("track `{tname}` has no symbols")));
                }
                tracks.push(Track::new(tname, symbols));
            }
            "forbid" => forbids.push((n, rest.to_string())),
            _ => return Err(Error::parse(n, format!("unknown directive `{kw}`"))),
        }
    }
    let modes = [!names.is_empty(), !wang.is_empty(), !tracks.is_empty()];
    if modes.iter().filter(|&&m| m).count() > 1 {
        return Err(Error::parse(1, "mix of `tile`, `wang` and `track` declarations"));
    }
    let base = if !wang.is_empty() {
        wang_to_patterns(&wang)?
    } else if !tracks.is_empty() {
        TilingSystem::layered(tracks, Vec::new())?
    } else {
        TilingSystem::flat(names, &[])?
    };
    let mut rules = base.rules().to_vec();
    for (n, body) in forbids {
        if let Some(r) = parse_rule(&base, n, &body)? {
            rules.push(r);
        }
    }
    TilingSystem::layered(base.tracks().to_vec(), rules)
}

fn parse_rule(sys: &TilingSystem, n: usize, body: &str) -> Result<Option<Rule>> {
    let (body, label) = match body.split_once(" -- ") {
        Some((b, l)) => (b, l.trim().to_string()),
        None => (body, format!("line {n}")),
    };
    let mut cells = Vec::new();
    for part in body.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (pos, spec) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(n, format!("expected `(dx,dy)=...` in `{part}`")))?;
        let pos = pos.trim();
        let inner = pos
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| Error::parse(n, format!("invalid offset `{pos}`")))?;
        let (dx, dy) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(n, format!("invalid offset `{pos}`")))?;
        let parse_i = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::parse(n, format!("invalid offset `{pos}`")))
        };
        let cell = Cell::new(parse_i(dx)?, parse_i(dy)?);
        cells.push((cell, parse_cell_spec(sys, n, spec.trim())?));
    }
    if cells.is_empty() {
        return Err(Error::parse(n, "empty forbidden pattern"));
    }
    Ok(Rule::new(label, cells))
}

fn parse_set(track: &Track, n: usize, s: &str) -> Result<BitSet> {
    let items: Vec<&str> = match s.strip_prefix('{').and_then(|x| x.strip_suffix('}')) {
        Some(inner) => inner.split(',').map(str::trim).collect(),
        None => vec![s],
    };
    let mut set = BitSet::empty(track.len());
    for it in items {
        let i = track
            .index_of(it)
            .ok_or_else(|| Error::parse(n, format!("unknown name `{it}`")))?;
        set.insert(i);
    }
    Ok(set)
}

fn parse_cell_spec(sys: &TilingSystem, n: usize, spec: &str) -> Result<Vec<(usize, BitSet)>> {
    if spec == "*" {
        return Ok(Vec::new());
    }
    if sys.is_flat() {
        return Ok(vec![(0, parse_set(&sys.tracks()[0], n, spec)?)]);
    }
    let mut out = Vec::new();
    for c in spec.split('&') {
        let (t, set) = c
            .split_once(':')
            .ok_or_else(|| Error::parse(n, format!("expected `TRACK:SET` in `{c}`")))?;
        let ti = sys
            .track_index(t.trim())
            .ok_or_else(|| Error::parse(n, format!("unknown track `{}`", t.trim())))?;
        out.push((ti, parse_set(&sys.tracks()[ti], n, set.trim())?));
    }
    Ok(out)
}

fn write_set(track: &Track, s: &BitSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| track.symbols[i].as_str()).collect();
    if names.len() == 1 {
        names[0].to_string()
    } else {
        format!("{{{}}}", names.join(","))
    }
}

/// Serializes a system; `comments` become leading `//` lines.
pub fn write_tileset(sys: &TilingSystem, comments: &[String]) -> String {
    let mut out = String::new();
    out.push_str(TILESET_HEADER);
    out.push('\n');
    for c in comments {
        out.push_str("// ");
        out.push_str(c);
        out.push('\n');
    }
    if sys.is_flat() {
        out.push_str("tile ");
        out.push_str(&sys.tracks()[0].symbols.join(" "));
        out.push('\n');
    } else {
        for t in sys.tracks() {
            out.push_str(&format!("track {} {}\n", t.name, t.symbols.join(" ")));
        }
    }
    for r in sys.rules() {
        let cells: Vec<String> = r
            .cells()
            .iter()
            .map(|rc| {
                let spec = if rc.constraints.is_empty() {
                    "*".to_string()
                } else if sys.is_flat() {
                    write_set(&sys.tracks()[0], &rc.constraints[0].1)
                } else {
                    rc.constraints
                        .iter()
                        .map(|(t, s)| {
                            let tr = &sys.tracks()[*t as usize];
                            format!("{}:{}", tr.name, write_set(tr, s))
                        })
                        .collect::<Vec<_>>()
                        .join("&")
                };
                format!("({},{})={}", rc.offset.x, rc.offset.y, spec)
            })
            .collect();
        out.push_str(&format!("forbid {} -- {}\n", cells.join("; "), r.label()));
    }
    out
}

/// Writes Wang tiles in the tileset format.
pub fn write_wang(tiles: &[WangTile], comments: &[String]) -> String {
    let mut out = String::from(TILESET_HEADER);
    out.push('\n');
    for c in comments {
        out.push_str(&format!("// {c}\n"));
    }
    for t in tiles {
        out.push_str(&format!(
            "wang {} {} {} {} {}\n",
            t.name, t.north, t.east, t.south, t.west
        ));
    }
    out
}

/// Parses a patch for the given system.
pub fn parse_patch(sys: &TilingSystem, text: &str) -> Result<Pattern> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, PATCH_HEADER)?;
    let mut origin = Cell::new(0, 0);
    let mut rows: Vec<(usize, Vec<Option<Tile>>)> = Vec::new();
    let mut cache: HashMap<String, Tile> = HashMap::new();
    for (n, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "origin" => {
                let f: Vec<i64> = rest
                    .split_whitespace()
                    .map(|s| s.parse().map_err(|_| Error::parse(n, "expected `origin X Y`")))
                    .collect::<Result<_>>()?;
                if f.len() != 2 {
                    return Err(Error::parse(n, "expected `origin X Y`"));
                }
                origin = Cell::new(f[0], f[1]);
            }
            "row" => {
                let mut row = Vec::new();
                for name in rest.split_whitespace() {
                    if name == "()" {
                        row.push(None);
                        continue;
                    }
                    let t = match cache.get(name) {
                        Some(t) => t.clone(),
                        None => {
                            let t = sys
                                .tile_by_name(name)
                                .ok_or_else(|| Error::parse(n, format!("unknown tile `{name}`")))?;
                            cache.insert(name.to_string(), t.clone());
                            t
                        }
                    };
                    row.push(Some(t));
                }
                rows.push((n, row));
            }
            _ => return Err(Error::parse(n, format!("unknown directive `{kw}`"))),
        }
    }
    let h = rows.len() as i64;
    let mut p = Pattern::new();
    for (r, (_, row)) in rows.iter().enumerate() {
        for (x, t) in row.iter().enumerate() {
            if let Some(t) = t {
                p.insert(Cell::new(origin.x + x as i64, origin.y + h - 1 - r as i64), t.clone());
            }
        }
    }
    if p.is_empty() {
        return Err(Error::parse(rows.first().map_or(1, |r| r.0), "patch has no cells"));
    }
    Ok(p)
}

/// Serializes a patch over its bounding box.
pub fn write_patch(sys: &TilingSystem, patch: &Pattern) -> String {
    let mut out = String::from(PATCH_HEADER);
    out.push('\n');
    if let Some((lo, _)) = patch.bbox() {
        out.push_str(&format!("origin {} {}\n", lo.x, lo.y));
    }
    for row in patch.rows() {
        let names: Vec<String> = row
            .iter()
            .map(|t| t.as_ref().map_or("()".to_string(), |t| sys.tile_name(t)))
            .collect();
        out.push_str(&format!("row {}\n", names.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::yb;
    use crate::tiling::validate_patch;

    const YB_TEXT: &str = "slopekit-tileset v1
// yellow below blue
tile Y B
forbid (0,0)=Y; (1,0)=B
forbid (0,0)=B; (1,0)=Y
forbid (0,0)=B; (0,1)=Y
";

    #[test]
    fn parses_the_yb_fixture() {
        let s = parse_tileset(YB_TEXT).unwrap();
        assert_eq!(s.rules(), yb().rules());
    }

    #[test]
    fn round_trips() {
        let s = yb();
        let back = parse_tileset(&write_tileset(&s, &["c".into()])).unwrap();
        assert_eq!(back.rules(), s.rules());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = "slopekit-tileset v1\ntile A\ntile A\n";
        assert_eq!(
            parse_tileset(dup).unwrap_err(),
            Error::Parse {
                line: 3,
                message: "duplicate tile name `A`".into()
            }
        );
        let unknown = "slopekit-tileset v1\ntile A\nforbid (0,0)=Z\n";
        assert!(matches!(parse_tileset(unknown), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_tileset("tile A\n"), Err(Error::Parse { line: 1, .. })));
        let dup_wang = "slopekit-tileset v1\nwang a 0 0 0 0\nwang a 1 1 1 1\n";
        assert!(matches!(parse_tileset(dup_wang), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn wang_section() {
        let text = "slopekit-tileset v1\nwang a 0 1 0 2\nwang b 0 2 0 1\n";
        let s = parse_tileset(text).unwrap();
        let ab = Pattern::from_rows(&[vec![Tile::flat(0), Tile::flat(1)]]);
        let aa = Pattern::from_rows(&[vec![Tile::flat(0), Tile::flat(0)]]);
        assert!(validate_patch(&s, &ab).unwrap().is_empty());
        assert_eq!(validate_patch(&s, &aa).unwrap().len(), 1);
    }

    #[test]
    fn layered_round_trip() {
        let text = "slopekit-tileset v1
track C w k
track A none y b
forbid (0,0)=C:k&A:{y,b} -- colour only on white
forbid (0,0)=A:y; (1,0)=A:b
forbid (0,0)=*; (0,1)=C:k; (0,2)=C:k
";
        let s = parse_tileset(text).unwrap();
        assert_eq!(s.rules().len(), 3);
        assert_eq!(s.rules()[0].label(), "colour only on white");
        assert_eq!(s.tile_count(), 4);
        let back = parse_tileset(&write_tileset(&s, &[])).unwrap();
        assert_eq!(back.rules(), s.rules());
    }

    #[test]
    fn patch_round_trip() {
        let s = yb();
        let text = "slopekit-patch v1\norigin 2 -1\nrow B ()\nrow Y Y\n";
        let p = parse_patch(&s, text).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.get(Cell::new(2, 0)), Some(&Tile::flat(1)));
        assert_eq!(write_patch(&s, &p), text);
    }
}
