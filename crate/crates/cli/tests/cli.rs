use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn slopekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slopekit"))
        .args(args)
        .env_remove("SLOPEKIT_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn exit_code_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let yb = data("yb.tiles");
    let malformed = dir.path().join("bad.tiles");
    std::fs::write(&malformed, "slopekit-tileset v1\ntile Y B\nforbid (0,0)=Q\n").unwrap();
    let witness = dir.path().join("w.txt");
    let missing = dir.path().join("missing.tiles");
    let svg = dir.path().join("out.svg");
    let patch = dir.path().join("patch.txt");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["validate", p(&yb)], 0),
        (vec!["validate", p(&malformed)], 1),
        (vec!["validate", p(&missing)], 1),
        (vec!["periodic", p(&yb), "1", "0", "--witness-out", p(&witness)], 0),
        (vec!["periodic", p(&yb), "1", "0", "--budget", "1"], 2),
        (vec!["periodic", p(&yb), "0", "0"], 1),
        (vec!["periodic", p(&malformed), "1", "0"], 1),
        (vec!["slopes", p(&yb), "--slope-bound", "2", "--multiple-bound", "2"], 0),
        (vec!["slopes", p(&yb), "--budget", "1"], 2),
        (vec!["slopes", p(&yb), "--slope-bound", "0"], 1),
        (vec!["compile-tm", "parity"], 0),
        (vec!["compile-tm", "no-such-machine"], 1),
        (vec!["rect", "parity", "--input", "11", "--width", "3", "--time", "6"], 0),
        (vec!["rect", "parity", "--input", "11", "--width", "3", "--time", "6", "--budget", "1"], 2),
        (vec!["rect", "parity", "--input", "1111", "--width", "2", "--time", "6"], 1),
        (vec!["construct", "immediate-halt", "--max-tiles", "10"], 2),
        (vec!["construct", "immediate-halt", "--slope", "inf"], 1),
        (vec!["construct", "immediate-halt", "--square", "4", "--offset", "2", "--patch-out", p(&patch)], 0),
        (vec!["construct", "immediate-halt", "--square", "4", "--offset", "1", "--patch-out", p(&patch)], 1),
        (vec!["render", p(&witness), p(&svg), "--cell-size", "0"], 1),
        (vec!["render", p(&yb), p(&svg)], 1),
        (vec!["frobnicate"], 1),
        (vec!["--help"], 0),
    ];
    for (args, expected) in cases {
        let out = slopekit(&args);
        assert_eq!(code(&out), expected, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn periodic_reports_the_three_outcomes() {
    let out = slopekit(&["periodic", p(&data("yb.tiles")), "1", "0"]);
    assert!(stdout(&out).starts_with("DIRECTION-ONLY\n"));
    let out = slopekit(&["periodic", p(&data("single.tiles")), "1", "0"]);
    assert!(stdout(&out).starts_with("BIPERIODIC-ONLY\n"));
    let out = slopekit(&["periodic", p(&data("dead.tiles")), "1", "0"]);
    assert_eq!(stdout(&out), "NONE\n");
}

#[test]
fn malformed_tileset_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tiles");
    std::fs::write(&bad, "slopekit-tileset v1\ntile Y B\nforbid (0,0)=Q\n").unwrap();
    let out = slopekit(&["periodic", p(&bad), "1", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn slopes_of_yb_are_zero() {
    let out = slopekit(&["slopes", p(&data("yb.tiles"))]);
    assert!(stdout(&out).ends_with("FOUND {0}\n"), "{}", stdout(&out));
    let out = slopekit(&["slopes", p(&data("yb.tiles")), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["found"][0]["slope"], "0/1");
    let out = slopekit(&["slopes", p(&data("single.tiles"))]);
    assert!(stdout(&out).ends_with("FOUND {}\n"));
}

#[test]
fn render_draws_one_rect_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.txt");
    slopekit(&["periodic", p(&data("yb.tiles")), "1", "0", "--witness-out", p(&witness)]);
    let svg = dir.path().join("w.svg");
    assert_eq!(code(&slopekit(&["render", p(&witness), p(&svg), "--cell-size", "4"])), 0);
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(doc.matches("<rect").count(), 64);
    let bottom = doc.lines().filter(|l| l.contains("y=\"28\"")).collect::<Vec<_>>();
    assert_eq!(bottom.len(), 8);
    let first = bottom[0].split("fill=").nth(1).unwrap().to_string();
    assert!(bottom.iter().all(|l| l.contains(&first)));

    let patch = dir.path().join("one.txt");
    std::fs::write(&patch, "slopekit-patch v1\nrow Y\n").unwrap();
    let one = dir.path().join("one.svg");
    let out = slopekit(&["render", p(&patch), p(&one), "--tileset", p(&data("yb.tiles"))]);
    assert_eq!(code(&out), 0);
    let doc = std::fs::read_to_string(&one).unwrap();
    assert_eq!(doc.matches("<rect").count(), 1);
    assert!(doc.contains("#e8d44d"));
}

#[test]
fn constructed_patch_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let (tiles, patch) = (dir.path().join("tau.tiles"), dir.path().join("p.txt"));
    for slope in [None, Some("5/2"), Some("-1/3")] {
        let mut args = vec!["construct", "immediate-halt", "--out", p(&tiles), "--patch-out", p(&patch)];
        args.extend(["--square", "6", "--offset", "2", "--size", "13"]);
        if let Some(s) = slope {
            args.extend(["--slope", s]);
        }
        assert_eq!(code(&slopekit(&args)), 0, "{slope:?}");
        let out = slopekit(&["validate", p(&tiles), p(&patch)]);
        assert_eq!(stdout(&out), "VALID cells=169\n", "{slope:?}");
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let yb = data("yb.tiles");
    let runs: Vec<Vec<&str>> = vec![
        vec!["periodic", p(&yb), "1", "0"],
        vec!["slopes", p(&yb), "--format", "json"],
        vec!["slopes", p(&yb)],
        vec!["compile-tm", "writer"],
        vec!["rect", "parity", "--input", "11", "--width", "3", "--time", "6"],
        vec!["construct", "immediate-halt"],
    ];
    for args in runs {
        assert_eq!(slopekit(&args).stdout, slopekit(&args).stdout, "{args:?}");
    }
    let witness = dir.path().join("w.txt");
    slopekit(&["periodic", p(&yb), "1", "0", "--witness-out", p(&witness)]);
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    slopekit(&["render", p(&witness), p(&a)]);
    slopekit(&["render", p(&witness), p(&b)]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn budget_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_slopekit"))
        .args(["periodic", p(&data("yb.tiles")), "1", "0"])
        .env("SLOPEKIT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
