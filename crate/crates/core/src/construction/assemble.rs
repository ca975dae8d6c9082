use super::background::Background;
use super::components::{gen_component_a, gen_component_c, gen_component_r, gen_component_s, gen_component_w};
use super::layer::{CClass, LayerSpec, C_TRACK};
use super::ptm::{PtmLayout, PAIR_LETTERS};
use crate::error::{Error, Result};
use crate::machine::{fingerprint, TuringMachine};
use crate::tiling::format::write_tileset;
use crate::tiling::TilingSystem;
use std::collections::HashMap;

/// Default bound on the number of tiles of an assembled system.
pub const DEFAULT_MAX_TILES: u128 = 1 << 40;

/// Per-layer statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerStats {
    pub name: String,
    pub symbols: usize,
    pub rules: usize,
}

/// An assembled product system with its provenance.
#[derive(Debug, Clone)]
pub struct Assembled {
    pub system: TilingSystem,
    pub tile_count: u128,
    pub layers: Vec<LayerStats>,
    pub machine_fingerprint: Option<u64>,
    pub background: String,
}

impl Assembled {
    /// Comment lines for the serialized system.
    pub fn provenance(&self) -> Vec<String> {
        let mut out = vec![
            format!(
                "machine fingerprint: {}",
                self.machine_fingerprint.map_or("none".into(), |f| format!("{f:016x}"))
            ),
            format!("background: {}", self.background),
            format!("tiles: {}", self.tile_count),
            format!("rules: {}", self.system.rules().len()),
        ];
        for l in &self.layers {
            out.push(format!("layer {}: {} symbols, {} rules", l.name, l.symbols, l.rules));
        }
        out
    }

    /// The system in the tileset format, provenance first.
    pub fn to_text(&self) -> String {
        write_tileset(&self.system, &self.provenance())
    }
}

/// Stacks layers into one product system. Rules mentioning a track absent
/// from `layers` are dropped. Layer C must be present.
pub fn assemble_layers(layers: &[LayerSpec], max_tiles: u128) -> Result<TilingSystem> {
    let mut tracks = Vec::new();
    let mut index = HashMap::new();
    for l in layers {
        for t in &l.tracks {
            if index.insert(t.name.clone(), (tracks.len(), t.len())).is_some() {
                return Err(Error::Malformed(format!("track {} declared twice", t.name)));
            }
            tracks.push(t.clone());
        }
    }
    let c = layers
        .iter()
        .find_map(|l| l.track(C_TRACK))
        .ok_or_else(|| Error::Malformed("layer C is required".into()))?;
    let classes: Vec<CClass> = c
        .symbols
        .iter()
        .map(|s| CClass::of_symbol(s).ok_or_else(|| Error::Malformed(format!("C symbol {s} has no class"))))
        .collect::<Result<_>>()?;
    let mut rules = Vec::new();
    for l in layers {
        for r in l.all_rules() {
            if let Some(rule) = r.resolve(&index, &classes)? {
                rules.push(rule);
            }
        }
    }
    let system = TilingSystem::layered(tracks, rules)?;
    let count = system.tile_count();
    if count > max_tiles {
        return Err(Error::AlphabetTooLarge {
            count,
            bound: max_tiles,
        });
    }
    Ok(system)
}

/// The six generated components in track order C, R, W, S, P, TM, A.
pub fn tau_layers(machine: &TuringMachine, bg: &Background) -> Result<Vec<LayerSpec>> {
    Ok(vec![
        gen_component_c(bg)?,
        gen_component_r(),
        gen_component_w(),
        gen_component_s(bg)?,
        PtmLayout::new(machine)?.layer(),
        gen_component_a(),
    ])
}

/// The full construction for a machine over a background.
pub fn assemble_tau(machine: &TuringMachine, bg: &Background) -> Result<Assembled> {
    assemble_tau_with(machine, bg, DEFAULT_MAX_TILES)
}

pub fn assemble_tau_with(machine: &TuringMachine, bg: &Background, max_tiles: u128) -> Result<Assembled> {
    let layers = tau_layers(machine, bg)?;
    let system = assemble_layers(&layers, max_tiles)?;
    let tile_count = system.tile_count();
    Ok(Assembled {
        layers: layers
            .iter()
            .map(|l| LayerStats {
                name: l.name.clone(),
                symbols: l.symbol_count(),
                rules: l.rule_count(),
            })
            .collect(),
        tile_count,
        system,
        machine_fingerprint: Some(fingerprint(machine)),
        background: bg.name.clone(),
    })
}

/// Tile count of the full construction, by C class.
///
/// With `n` background tiles, `T` TM tiles without borders over the
/// extended alphabet `Σ'`, and `I = 2|Σ'|` initial TM tiles:
///
/// * white (`n` symbols): 3 R × 4(n+1) S × 2 A × (W·P·TM), where the 48
///   admissible W symbols split into 32 without `L`, carrying any of the 24
///   counter pairs, and 16 with `L`, carrying one of the 16 pairs whose
///   second counter increments; each counter pair takes 16 strip and 8
///   feed tiles over empty and initial TM tiles respectively, and idle
///   tiles under the other `T − I` TM tiles;
/// * black: 1 R × 2 W × 2(n+1) S × 8 P;
/// * `lm`, `rm`: (n+1) S × 6 P;
/// * `brl`: (n+1) S × 36 P × 2 A; `blr`: (n+1) S × 36 P.
pub fn tau_tile_count_formula(machine: &TuringMachine, bg_len: usize) -> u128 {
    let tm = machine
        .with_letters(&PAIR_LETTERS[1..])
        .expect("pair letters are valid names");
    let sigma = tm.letters().len() as u128;
    let states = tm.states().len() as u128;
    let halting = tm.halting_states().count() as u128;
    let delta = tm.transitions().count() as u128;
    let t = 3 * sigma + delta + 2 * states * sigma + halting * sigma;
    let init = 2 * sigma;
    let n = bg_len as u128;
    let data = 16 + 8 * 2 + (t - init);
    let white = n * 3 * 4 * (n + 1) * 2 * (32 * 24 + 16 * 16) * data;
    let black = 2 * 2 * (n + 1) * 8;
    let corners = 2 * (n + 1) * 6;
    let between = (n + 1) * 36 * 2 + (n + 1) * 36;
    white + black + corners + between
}
