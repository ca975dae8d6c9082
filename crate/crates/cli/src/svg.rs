use slopekit::{Pattern, TilingSystem};
use std::fmt::Write;

const YELLOW: &str = "#e8d44d";
const BLUE: &str = "#4d7be8";
const BLACK: &str = "#1f1f1f";
const GRAY: &str = "#8c8c8c";

const PALETTE: [&str; 12] = [
    "#c0504d", "#9bbb59", "#8064a2", "#4bacc6", "#f79646", "#2c4d75", "#772c2a", "#5f7530", "#4d3b62", "#276a7c",
    "#b65708", "#a5a5a5",
];

fn fnv1a(text: &str) -> u64 {
    text.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Fill colour of a tile name: breaking tiles black or gray, yellow and blue
/// fixed, anything else from the palette by name hash.
pub fn colour(name: &str) -> &'static str {
    let parts: Vec<&str> = name.split('|').collect();
    if parts.contains(&"black") {
        return BLACK;
    }
    if parts.iter().any(|p| matches!(*p, "lm" | "rm" | "brl" | "blr")) {
        return GRAY;
    }
    if parts.iter().any(|p| matches!(*p, "Y" | "a.Y")) {
        return YELLOW;
    }
    if parts.iter().any(|p| matches!(*p, "B" | "a.B")) {
        return BLUE;
    }
    PALETTE[(fnv1a(name) % PALETTE.len() as u64) as usize]
}

/// One `rect` per cell of the patch, the top row of the patch at the top of
/// the picture.
pub fn render(system: &TilingSystem, patch: &Pattern, cell_size: u32) -> String {
    let s = cell_size as i64;
    let Some((lo, hi)) = patch.bbox() else {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\" viewBox=\"0 0 0 0\"></svg>\n".to_string();
    };
    let (w, h) = ((hi.x - lo.x + 1) * s, (hi.y - lo.y + 1) * s);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let mut cells: Vec<_> = patch.iter().collect();
    cells.sort_by_key(|(c, _)| (-c.y, c.x));
    for (c, t) in cells {
        let name = system.tile_name(t);
        let _ = writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{s}\" height=\"{s}\" fill=\"{}\"><title>{}</title></rect>",
            (c.x - lo.x) * s,
            (hi.y - c.y) * s,
            colour(&name),
            escape(&name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use slopekit::fixtures::yb;
    use slopekit::{Cell, Tile};

    #[test]
    fn fixed_colours() {
        assert_eq!(colour("Y"), YELLOW);
        assert_eq!(colour("B"), BLUE);
        assert_eq!(colour("w.bg|r.diag|a.B"), BLUE);
        assert_eq!(colour("black|r.horiz|a.none"), BLACK);
        assert_eq!(colour("brl|r.vert|a.Y"), GRAY);
        assert_eq!(colour("zz"), colour("zz"));
    }

    #[test]
    fn one_rect_per_cell() {
        let p: Pattern = [(Cell::new(0, 0), Tile::flat(0)), (Cell::new(2, 1), Tile::flat(1))]
            .into_iter()
            .collect();
        let doc = render(&yb(), &p, 4);
        assert_eq!(doc.matches("<rect").count(), 2);
        assert!(doc.contains("width=\"12\" height=\"8\""));
        assert!(doc.contains("<rect x=\"8\" y=\"0\" width=\"4\" height=\"4\" fill=\"#4d7be8\">"));
    }
}
