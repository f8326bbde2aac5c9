use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planarstat")).arg("--out").arg(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn planes_census() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["planes", "--solid", "dodecahedron"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("319 planes, 10 types"), "{text}");
    assert!(text.contains("PASS") && text.contains("= 1140"));
    let v = json(&dir.path().join("planes.json"));
    assert_eq!(v["planes"].as_array().unwrap().len(), 319);
    assert_eq!(v["types"].as_array().unwrap().len(), 10);
    let plane = &v["planes"][0];
    assert!(plane["incidence"].is_array() && plane["type_key"].is_array());
    let csv = fs::read_to_string(dir.path().join("plane_types.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);

    let o = run(dir.path(), &["planes", "--solid", "tetrahedron"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4 planes, 1 types"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["planes", "--solid", "prism"],
        vec!["stats", "--subset", "0,25"],
        vec!["stats", "--subset", "a"],
        vec!["stats", "--solid", "cube"],
        vec!["search", "--size", "21"],
        vec!["search", "--size", "3", "--all-sizes"],
        vec!["sections", "--n", "100"],
        vec!["sections", "--n", "20000", "--epsilon", "5"],
        vec!["sections", "--n", "20000", "--radius", "0.5"],
        vec!["sections", "--n", "20000", "--ball-epsilon", "0"],
        vec!["verify", "--alpha", "2"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(dir.path(), &args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_planarstat"))
        .env("PLANARSTAT_THREADS", "many")
        .args(["--out", dir.path().to_str().unwrap(), "planes"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stats_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["stats", "--subset", "0,1,2,3,4,11,17"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&dir.path().join("stats.json"));
    assert_eq!(v["class_count"], 63);
    assert_eq!(v["classes"].as_array().unwrap().len(), 63);
    assert!(v["classes"][0]["class"]["P"].is_array() && v["classes"][0]["class"]["Z"].is_array());
    let strata = fs::read_to_string(dir.path().join("strata.csv")).unwrap();
    assert!(strata.starts_with("plane_size,marked,count\n"));
    assert!(strata.contains("\n3,1,92\n") && strata.contains("\n6,4,1\n"));
    assert_eq!(strata.lines().count(), 19);

    run(dir.path(), &["stats", "--subset", ""]);
    assert_eq!(json(&dir.path().join("stats.json"))["class_count"], 10);
    run(dir.path(), &["stats", "--subset", "0..19"]);
    assert_eq!(json(&dir.path().join("stats.json"))["total"], 319);
    run(dir.path(), &["stats", "--subset", "T"]);
    assert_eq!(json(&dir.path().join("stats.json"))["subset"], serde_json::json!([0, 1, 3, 4, 5, 11, 17]));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 3);

    let o = run(dir.path(), &["verify", "--t-subset", "0,1,2,3,4,11,17"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("PASS statistics equal") && text.contains("FAIL not congruent"), "{text}");

    let o = run(dir.path(), &["verify", "--s-subset", "0", "--t-subset", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL not congruent"));
    assert_eq!(json(&dir.path().join("verify.json"))["passed"], false);
}

#[test]
fn search_counts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["search", "--size", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&dir.path().join("pairs.json"));
    assert_eq!(v["total_pairs"], 1);
    assert_eq!(v["sizes"][0]["pairs"][0]["first"], serde_json::json!([0, 2, 4, 6, 7, 8, 12]));

    run(dir.path(), &["search", "--solid", "icosahedron", "--all-sizes"]);
    let v = json(&dir.path().join("pairs.json"));
    assert_eq!(v["total_pairs"], 0);
    assert_eq!(v["sizes"].as_array().unwrap().len(), 13);

    run(dir.path(), &["search", "--size", "3"]);
    assert_eq!(json(&dir.path().join("pairs.json"))["total_pairs"], 0);
}

#[test]
fn sections_exit_reflects_the_test() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["sections", "--n", "20000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&dir.path().join("sections_report.json"));
    assert_eq!(v["rejects"], false);
    assert_eq!(v["x"]["subset"], serde_json::json!([0, 1, 2, 3, 4, 11, 17]));
    assert!(v["comparison"]["overall"]["p_value"].as_f64().unwrap() > 0.01);

    let o = run(dir.path(), &["sections", "--n", "500000", "--y-subset", "2,3,6,7,8,12,13"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert_eq!(json(&dir.path().join("sections_report.json"))["rejects"], true);
}

#[test]
fn figures_content() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["figures"]).status.code(), Some(0));
    let read = |name: &str| fs::read_to_string(dir.path().join(name)).unwrap();
    let full = read("schlegel.svg");
    assert_eq!(full.matches("class=\"vertex\"").count(), 20);
    assert_eq!(full.matches("class=\"edge\"").count(), 30);
    for label in 0..20 {
        assert!(full.contains(&format!("\n{label}\n</text>")), "label {label}");
    }
    let s = read("subset_s.svg");
    assert_eq!(s.matches("class=\"vertex marked\"").count(), 7);
    assert_eq!(read("classes_s.svg").matches("class=\"cell\"").count(), 63);
    assert!(read("classes_s.svg").contains("class=\"roof\""));
    assert_eq!(read("classes_t.svg").matches("class=\"cell\"").count(), 63);
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let runs = [
        vec!["planes"],
        vec!["stats", "--subset", "S"],
        vec!["verify"],
        vec!["search", "--size", "8"],
        vec!["sections", "--n", "30000", "--seed", "7"],
        vec!["figures"],
    ];
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for args in &runs {
        run(a.path(), args);
        Command::new(env!("CARGO_BIN_EXE_planarstat"))
            .env("PLANARSTAT_THREADS", "3")
            .arg("--out")
            .arg(b.path())
            .args(args)
            .output()
            .unwrap();
    }
    let (sa, sb) = (snapshot(a.path()), snapshot(b.path()));
    assert_eq!(sa.len(), 14);
    for ((na, ca), (nb, cb)) in sa.iter().zip(&sb) {
        assert_eq!(na, nb);
        assert!(ca == cb, "{na} differs");
    }
}

#[test]
fn format_flag_restricts_tables() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["--format", "csv", "stats"]);
    assert!(dir.path().join("strata.csv").exists());
    assert!(!dir.path().join("stats.json").exists());
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["stats", "--format", "json"]);
    assert!(!dir.path().join("strata.csv").exists());
    assert!(dir.path().join("stats.json").exists());
}
