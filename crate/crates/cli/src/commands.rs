use crate::{svg, CliError, Outcome};
use slopekit::construction::{
    assemble_tau_with, plan_slope, Background, BgFill, Colour, Colouring, Geometry, PtmLayout, Skeleton, SlopePlan,
    DEFAULT_MAX_TILES,
};
use slopekit::machine::{corpus, fingerprint, parse_tm, TuringMachine};
use slopekit::periodicity::{
    decide_periodic_with, parse_witness, realize_witness_patch, write_witness, Budget, WITNESS_HEADER,
};
use slopekit::slopes::{enumerate_slopes, SlopeLimits};
use slopekit::tiling::format::{parse_patch, parse_tileset, write_patch, write_wang, PATCH_HEADER};
use slopekit::tm_tiles::{compile_tm as compile, rectangle_tileable_with, RectangleInstance, DEFAULT_STEP_BUDGET};
use slopekit::{validate_patch, Cell, Error, PeriodVector, Slope, TilingSystem};
use std::fs;
use std::path::Path;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file<T>(path: &Path, r: slopekit::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_tileset(path: &Path) -> Result<TilingSystem, CliError> {
    let text = read(path)?;
    in_file(path, parse_tileset(&text))
}

/// A machine file, or the name of a bundled machine.
fn load_machine(source: &str) -> Result<TuringMachine, CliError> {
    let path = Path::new(source);
    if path.exists() {
        let text = read(path)?;
        return in_file(path, parse_tm(&text));
    }
    corpus::by_name(source).ok_or_else(|| {
        let names: Vec<&str> = corpus::all().into_iter().map(|(n, _)| n).collect();
        CliError::Usage(format!("`{source}` is neither a file nor a bundled machine ({})", names.join(", ")))
    })
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map_or_else(Budget::from_env, Budget::with_nodes)
}

pub fn validate(tileset: &Path, patch: Option<&Path>) -> Result<Outcome, CliError> {
    let sys = load_tileset(tileset)?;
    let Some(patch) = patch else {
        return Ok(Outcome::ok(format!(
            "OK tracks={} tiles={} rules={}\n",
            sys.tracks().len(),
            sys.tile_count(),
            sys.rules().len()
        )));
    };
    let text = read(patch)?;
    let p = in_file(patch, parse_patch(&sys, &text))?;
    let violations = validate_patch(&sys, &p)?;
    if violations.is_empty() {
        return Ok(Outcome::ok(format!("VALID cells={}\n", p.len())));
    }
    let mut out = format!("INVALID violations={}\n", violations.len());
    for v in &violations {
        out.push_str(&format!("VIOLATION {} at {}\n", sys.rules()[v.rule].label(), v.anchor));
    }
    Ok(Outcome::ok(out))
}

pub fn periodic(
    tileset: &Path,
    p: i64,
    q: i64,
    nodes: Option<u64>,
    witness_out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let sys = load_tileset(tileset)?;
    let vector = PeriodVector::new(p, q)?;
    let decision = decide_periodic_with(&sys, vector, &budget(nodes))?;
    let mut out = format!("{}\n", decision.label());
    if let Some(w) = decision.witness() {
        let dump = write_witness(&sys, w);
        if let Some(path) = witness_out {
            write(path, &dump)?;
        }
        out.push_str(&dump);
    }
    Ok(Outcome::ok(out))
}

pub fn slopes(
    tileset: &Path,
    slope_bound: u32,
    multiple_bound: u32,
    nodes: Option<u64>,
    json: bool,
) -> Result<Outcome, CliError> {
    if slope_bound == 0 || multiple_bound == 0 {
        return Err(CliError::Usage("bounds must be at least 1".into()));
    }
    let sys = load_tileset(tileset)?;
    let report = enumerate_slopes(
        &sys,
        SlopeLimits {
            slope_bound,
            max_multiple: multiple_bound,
            node_budget: budget(nodes).nodes,
        },
    );
    let stdout = if json {
        let mut s = serde_json::to_string_pretty(&report.to_json()).map_err(|e| CliError::Usage(e.to_string()))?;
        s.push('\n');
        s
    } else {
        let found: Vec<String> = report.found_slopes().iter().map(|s| s.to_string()).collect();
        format!("{}FOUND {{{}}}\n", report.to_lines(), found.join(", "))
    };
    Ok(Outcome {
        stdout,
        code: if report.unknown.is_empty() { 0 } else { 2 },
    })
}

pub fn compile_tm(machine: &str, out: Option<&Path>) -> Result<Outcome, CliError> {
    let tm = load_machine(machine)?;
    let set = compile(&tm);
    let comments = vec![
        format!("machine fingerprint: {:016x}", fingerprint(&tm)),
        format!("tiles: {}", set.len()),
    ];
    let text = write_wang(&set.to_wang(), &comments);
    match out {
        Some(path) => {
            write(path, &text)?;
            Ok(Outcome::ok(format!("WROTE {} tiles={}\n", path.display(), set.len())))
        }
        None => Ok(Outcome::ok(text)),
    }
}

pub fn rect(machine: &str, input: &str, width: usize, time: usize, steps: Option<u64>) -> Result<Outcome, CliError> {
    let tm = load_machine(machine)?;
    let word = tm.word(input)?;
    let set = compile(&tm);
    let inst = RectangleInstance::for_bounds(width, time, word)?;
    match rectangle_tileable_with(&set, &inst, steps.unwrap_or(DEFAULT_STEP_BUDGET))? {
        Some(a) => Ok(Outcome::ok(format!("TILEABLE\n{}", a.to_grid(&set)))),
        None => Ok(Outcome::ok("NONE\n".into())),
    }
}

pub struct ConstructArgs<'a> {
    pub machine: &'a str,
    pub two_tile: bool,
    pub max_tiles: Option<u128>,
    pub slope: Option<&'a str>,
    pub out: Option<&'a Path>,
    pub patch_out: Option<&'a Path>,
    pub square: i64,
    pub offset: i64,
    pub size: i64,
}

fn parse_slope(text: &str) -> Result<Slope, CliError> {
    let bad = || CliError::Usage(format!("invalid slope `{text}`; expected P/Q, N or inf"));
    if text == "inf" {
        return Ok(Slope::INFINITY);
    }
    let (n, d) = text.split_once('/').unwrap_or((text, "1"));
    let n: i64 = n.trim().parse().map_err(|_| bad())?;
    let d: i64 = d.trim().parse().map_err(|_| bad())?;
    Slope::new(n, d).map_err(|_| bad())
}

pub fn construct(args: ConstructArgs<'_>) -> Result<Outcome, CliError> {
    let tm = load_machine(args.machine)?;
    let bg = if args.two_tile {
        Background::two_tile()
    } else {
        Background::placeholder()
    };
    let transform = match args.slope.map(parse_slope).transpose()? {
        None => None,
        Some(s) => match plan_slope(s) {
            SlopePlan::Quadrant { transform, .. } => Some(transform),
            SlopePlan::Special(case) => return Err(Error::SpecialCase(case.to_string()).into()),
        },
    };
    let assembled = assemble_tau_with(&tm, &bg, args.max_tiles.unwrap_or(DEFAULT_MAX_TILES))?;
    let mut summary = assembled.provenance().join("\n");
    summary.push('\n');
    let system = match transform {
        Some(t) => t.system(&assembled.system)?,
        None => assembled.system.clone(),
    };
    let text = slopekit::tiling::format::write_tileset(&system, &assembled.provenance());
    if let Some(path) = args.patch_out {
        let geometry = Geometry::new(args.square, args.offset)?;
        let skeleton = Skeleton::new(
            geometry,
            BgFill::for_background(&bg, args.square),
            Colouring::Alternating(Colour::Yellow),
        )
        .with_machine(PtmLayout::new(&tm)?)?;
        let mut patch = skeleton.patch(&assembled.system, &bg, Cell::new(0, 0), args.size, args.size)?;
        if let Some(t) = transform {
            patch = t.pattern(&patch);
        }
        write(path, &write_patch(&system, &patch))?;
        summary.push_str(&format!("patch: {} ({}x{})\n", path.display(), args.size, args.size));
    }
    match args.out {
        Some(path) => {
            write(path, &text)?;
            summary.push_str(&format!("tileset: {}\n", path.display()));
            Ok(Outcome::ok(summary))
        }
        None => Ok(Outcome::ok(text)),
    }
}

pub fn render(
    input: &Path,
    out: &Path,
    cell_size: u32,
    tileset: Option<&Path>,
    width: i64,
    height: i64,
) -> Result<Outcome, CliError> {
    if cell_size == 0 {
        return Err(CliError::Usage("cell size must be at least 1".into()));
    }
    let text = read(input)?;
    let sys = tileset.map(load_tileset).transpose()?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with("//"))
        .unwrap_or("");
    let (system, patch) = if header == WITNESS_HEADER {
        let (w, parsed) = in_file(input, parse_witness(&text, sys.as_ref()))?;
        let system = sys.unwrap_or(parsed);
        let patch = realize_witness_patch(&system, &w, width, height)?;
        (system, patch)
    } else if header == PATCH_HEADER {
        let system = sys.ok_or_else(|| CliError::Usage("rendering a patch needs --tileset".into()))?;
        let patch = in_file(input, parse_patch(&system, &text))?;
        (system, patch)
    } else {
        return Err(CliError::Usage(format!(
            "{}: expected `{WITNESS_HEADER}` or `{PATCH_HEADER}`",
            input.display()
        )));
    };
    let doc = svg::render(&system, &patch, cell_size);
    write(out, &doc)?;
    Ok(Outcome::ok(format!("WROTE {} cells={}\n", out.display(), patch.len())))
}
