use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigUint;
use serde_json::Value;

fn lcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn gen(dir: &Path, args: &[&str]) -> std::path::PathBuf {
    let prefix = dir.join("inst");
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", p(&prefix)]);
    let out = lcolor(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    prefix
}

fn file(prefix: &Path, ext: &str) -> String {
    format!("{}.{ext}", prefix.display())
}

#[test]
fn gen_trigrid_writes_certified_files() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = gen(dir.path(), &["trigrid", "--n", "10"]);
    let gr = fs::read_to_string(file(&prefix, "gr")).unwrap();
    assert!(gr.starts_with("p tw 100 261\n"));
    let td = fs::read_to_string(file(&prefix, "td")).unwrap();
    assert!(td.starts_with("s td 9 20 100\n"));
    let layers = fs::read_to_string(file(&prefix, "layers")).unwrap();
    assert_eq!(layers.lines().count(), 10);
    assert_eq!(layers.lines().next().unwrap(), "1 2 3 4 5 6 7 8 9 10");
    assert!(!Path::new(&file(&prefix, "apex")).exists());
}

#[test]
fn gen_kst_and_apexed_grid() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = gen(dir.path(), &["kst", "--s", "2", "--t", "3"]);
    let gr = fs::read_to_string(file(&prefix, "gr")).unwrap();
    assert!(gr.starts_with("p tw 5 6\n"));

    let prefix = gen(dir.path(), &["apexed-grid", "--n", "3", "--apex", "2"]);
    let apex = fs::read_to_string(file(&prefix, "apex")).unwrap();
    assert_eq!(apex, "10\n11\n");
    let gr = fs::read_to_string(file(&prefix, "gr")).unwrap();
    assert!(gr.starts_with("p tw 11 30\n"));
}

#[test]
fn gen_unknown_family_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = lcolor(&["gen", "hexagon", "--out", p(&dir.path().join("x"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid value"));
}

#[test]
fn color3_report_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = gen(dir.path(), &["trigrid", "--n", "10"]);
    let col = dir.path().join("colors.txt");
    let out = lcolor(&[
        "color3",
        "--graph",
        &file(&prefix, "gr"),
        "--td",
        &file(&prefix, "td"),
        "--layers",
        &file(&prefix, "layers"),
        "--coloring-out",
        p(&col),
        "--seed",
        "7",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 7);
    assert_eq!(report["delta"], 6);
    assert_eq!(report["coloring"].as_array().unwrap().len(), 100);
    assert_eq!(report["stages"].as_array().unwrap().len(), 3);
    let k = report["clustering"].as_u64().unwrap();
    let g: BigUint = report["g"].as_str().unwrap().parse().unwrap();
    assert!(g >= BigUint::from(k));

    let ks = k.to_string();
    let verify = |k: &str| {
        lcolor(&[
            "verify",
            "--graph",
            &file(&prefix, "gr"),
            "--coloring",
            p(&col),
            "--k",
            k,
        ])
    };
    let ok = verify(&ks);
    assert_eq!(ok.status.code(), Some(0));
    let detail: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(detail["clustering"].as_u64(), Some(k));
    assert!(k >= 1);
    assert_eq!(verify(&(k - 1).to_string()).status.code(), Some(1));
}

#[test]
fn color3_is_deterministic() {
    let run = || lcolor(&["color3", "--family", "trigrid", "--n", "8", "--seed", "3"]).stdout;
    assert_eq!(run(), run());
}

#[test]
fn color3_empty_graph_and_small_delta() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("e.gr"), "p tw 0 0\n").unwrap();
    fs::write(d.join("e.td"), "s td 0 0 0\n").unwrap();
    fs::write(d.join("e.layers"), "").unwrap();
    let out = lcolor(&[
        "color3",
        "--graph",
        p(&d.join("e.gr")),
        "--td",
        p(&d.join("e.td")),
        "--layers",
        p(&d.join("e.layers")),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["clustering"], 0);

    let out = lcolor(&["color3", "--family", "trigrid", "--n", "5", "--delta", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn color3_text_format_names_stages() {
    let out = lcolor(&[
        "color3", "--family", "path", "--n", "12", "--format", "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for stage in ["stage 1:", "stage 2:", "stage 3:"] {
        assert!(text.contains(stage), "{text}");
    }
}

#[test]
fn color3_requires_one_source() {
    let out = lcolor(&["color3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lcolor(&[
        "color3", "--graph", "a.gr", "--td", "a.td", "--layers", "a.l", "--family", "grid",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_trigrid_plateau() {
    let out = lcolor(&["bench", "trigrid", "--sizes", "10,20,30,40"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 4);
    let sizes: Vec<&str> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(sizes, ["10", "20", "30", "40"]);
    assert!(rows.iter().all(|r| r[1] == rows[0][1]));

    let one = lcolor(&["bench", "grid", "--sizes", "6"]);
    assert!(one.status.success());
    assert_eq!(String::from_utf8(one.stdout).unwrap().lines().count(), 2);
}

#[test]
fn verify_lists_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("g.gr"), "p tw 3 2\n1 2\n2 3\n").unwrap();
    fs::write(d.join("c.txt"), "1 1\n2 2\n3 1\n").unwrap();
    fs::write(d.join("l.txt"), "1 1 2\n2 2\n3 2 3\n").unwrap();
    let (gr, col, lists) = (d.join("g.gr"), d.join("c.txt"), d.join("l.txt"));
    let base = ["verify", "--graph", p(&gr), "--coloring", p(&col)];

    let mut args = base.to_vec();
    args.extend_from_slice(&["--k", "1"]);
    assert_eq!(lcolor(&args).status.code(), Some(0));

    args.extend_from_slice(&["--lists", p(&lists)]);
    let out = lcolor(&args);
    assert_eq!(out.status.code(), Some(1));
    let detail: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(detail["list_conformant"], false);
    assert_eq!(detail["list_witness"], 3);

    fs::write(d.join("c.txt"), "1 1\n3 1\n").unwrap();
    let mut args = base.to_vec();
    args.extend_from_slice(&["--k", "1"]);
    let out = lcolor(&args);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 3") && err.contains("vertex 2 has no color"),
        "{err}"
    );
}
