use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use inkfeat::cdt::{synthetic_clock, ClockDefect};
use inkfeat::geometry::count_crossings;
use inkfeat::io::{read_document, write_document, InkDocument};
use inkfeat::recognizer::{synthesize, SymbolClass};
use inkfeat::{Gesture, Sample};
use serde_json::Value;
use tempfile::TempDir;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/fixtures.json")
}

fn inkfeat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inkfeat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn save(dir: &TempDir, name: &str, doc: &InkDocument) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, write_document(doc)).unwrap();
    p.to_str().unwrap().to_string()
}

fn line(n: usize, dt: f64) -> Gesture {
    Gesture::from_samples((0..n).map(|i| Sample::new(i as f64, 0.0, 0.5, dt * i as f64)).collect()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = inkfeat(&["validate", fixtures().to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stdout.is_empty());

    let dir = TempDir::new().unwrap();
    let text = r#"{"version":1,"test":"t","regions":[],"gestures":[{"id":"late","region":null,
        "strokes":[[[0,0,0.5,10],[1,0,0.5,5]]]}],"labels":{}}"#;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text).unwrap();
    let o = inkfeat(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("late"));

    assert_eq!(inkfeat(&["validate", "/definitely/missing.json"]).status.code(), Some(2));
}

#[test]
fn extract_rubine_shape() {
    let dir = TempDir::new().unwrap();
    let mut doc = InkDocument::new("t");
    for id in ["a", "b", "c"] {
        doc.push(id, line(10, 5.0));
    }
    let p = save(&dir, "three.json", &doc);
    let o = inkfeat(&["extract", &p, "--set", "rubine"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0].split(',').filter(|c| c.starts_with("rubine.") && !c.ends_with(".degenerate")).count(), 13);
    assert!(lines[1].starts_with("three.json#a,"));
}

#[test]
fn extract_single_feature_on_x() {
    let o = inkfeat(&["extract", fixtures().to_str().unwrap(), "--features", "willems.f54"]);
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("fixtures.json#x,")).unwrap();
    assert_eq!(row, "fixtures.json#x,1.000000000000");
    assert_eq!(inkfeat(&["extract", fixtures().to_str().unwrap(), "--features", "willems.f999"]).status.code(), Some(1));
}

#[test]
fn extract_matches_golden_csv() {
    let o = inkfeat(&["extract", fixtures().to_str().unwrap(), "--set", "all"]);
    let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/golden_all.csv")).unwrap();
    assert!(o.stdout == golden);
}

#[test]
fn extract_writes_out_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.json");
    let o = inkfeat(&["extract", fixtures().to_str().unwrap(), "--set", "sonntag", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(out).unwrap()).unwrap();
    assert_eq!(v["features"].as_array().unwrap().len(), 15);
}

#[test]
fn catalog_listing() {
    let o = inkfeat(&["catalog", "--category", "pressure"]);
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert_eq!(ids, ["willems.f22", "willems.f23"]);
    let all = stdout(&inkfeat(&["catalog"]));
    assert_eq!(all.lines().count(), 15 + 13 + 89 + 49 + 19);
    assert_eq!(all, stdout(&inkfeat(&["catalog"])));
    assert_eq!(inkfeat(&["catalog", "--category", "bogus"]).status.code(), Some(1));
}

fn symbol_doc(classes: &[SymbolClass], seeds: std::ops::Range<u64>) -> InkDocument {
    let mut doc = InkDocument::new("symbols");
    for &c in classes {
        for s in seeds.clone() {
            let id = format!("{c}-{s}");
            doc.push(id.clone(), synthesize(c, s, 0.05));
            doc.labels.insert(id, c.name().to_string());
        }
    }
    doc
}

#[test]
fn train_then_predict() {
    let dir = TempDir::new().unwrap();
    let classes = [SymbolClass::Circle, SymbolClass::Arrow, SymbolClass::Triangle, SymbolClass::Checkmark];
    let train = save(&dir, "train.json", &symbol_doc(&classes, 0..40));
    let mut held = InkDocument::new("symbols");
    held.push("probe", synthesize(SymbolClass::Circle, 1000, 0.05));
    let held = save(&dir, "held.json", &held);
    let model = dir.path().join("model.json");
    let t = inkfeat(&["train", &train, "--out", model.to_str().unwrap()]);
    assert_eq!(t.status.code(), Some(0), "{}", String::from_utf8_lossy(&t.stderr));

    let p = inkfeat(&["predict", "--model", model.to_str().unwrap(), &held]);
    assert_eq!(p.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&p.stdout).unwrap();
    assert_eq!(v["held.json#probe"]["label"], "circle");
    assert!(v["held.json#probe"]["margin"].as_f64().unwrap() > 0.0);
    assert!(v["held.json#probe"]["rejected"].is_boolean());

    let m: Value = serde_json::from_slice(&std::fs::read(&model).unwrap()).unwrap();
    for key in ["features", "classes", "standardizer", "reject_threshold"] {
        assert!(m.get(key).is_some(), "{key}");
    }
    assert_eq!(inkfeat(&["predict", "--model", "/missing/model.json", &held]).status.code(), Some(2));
}

#[test]
fn train_one_class_fails() {
    let dir = TempDir::new().unwrap();
    let p = save(&dir, "one.json", &symbol_doc(&[SymbolClass::Cube], 0..5));
    assert_eq!(inkfeat(&["train", &p]).status.code(), Some(1));
}

#[test]
fn cdt_reports() {
    let dir = TempDir::new().unwrap();
    let perfect = save(&dir, "clock.json", &synthetic_clock(None));
    let o = inkfeat(&["cdt", &perfect]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["score"], 6);
    assert_eq!(v["findings"].as_array().unwrap().len(), 0);

    let swapped = save(&dir, "swapped.json", &synthetic_clock(Some(ClockDefect::SwappedHands)));
    let v: Value = serde_json::from_slice(&inkfeat(&["cdt", &swapped]).stdout).unwrap();
    assert_eq!(v["findings"], serde_json::json!(["hand_ratio"]));

    let mut doc = synthetic_clock(None);
    doc.labels.remove("face");
    let faceless = save(&dir, "faceless.json", &doc);
    assert_eq!(inkfeat(&["cdt", &faceless]).status.code(), Some(1));

    // roles from a separate annotation file
    let ann = dir.path().join("ann.json");
    std::fs::write(&ann, serde_json::to_vec(&synthetic_clock(None).labels).unwrap()).unwrap();
    let v: Value = serde_json::from_slice(&inkfeat(&["cdt", &faceless, "--annotations", ann.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(v["score"], 6);
}

#[test]
fn synth_documents() {
    let a = inkfeat(&["synth", "--class", "circle", "--n", "100", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    let doc = read_document(&a.stdout).unwrap();
    assert_eq!(doc.gestures.len(), 100);
    assert_eq!(doc.labels.len(), 100);
    assert!(doc.labels.values().all(|l| l == "circle"));
    let b = inkfeat(&["synth", "--class", "circle", "--n", "100", "--seed", "7"]);
    assert!(a.stdout == b.stdout);

    let star = inkfeat(&["synth", "--class", "pentagrams", "--n", "1"]);
    let doc = read_document(&star.stdout).unwrap();
    assert!(count_crossings(&doc.gestures[0].gesture) >= 5);

    assert_eq!(inkfeat(&["synth", "--class", "hexagon"]).status.code(), Some(1));
    assert_eq!(inkfeat(&["synth", "--class", "circle", "--jitter", "0.5"]).status.code(), Some(1));
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_inkfeat"))
            .env("INKFEAT_THREADS", threads)
            .args(["extract", fixtures().to_str().unwrap(), "--set", "all"])
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(one.status.code(), Some(0));
    assert!(one.stdout == run("8").stdout);
    assert_eq!(run("zero").status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(inkfeat(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(inkfeat(&["extract"]).status.code(), Some(1));
    assert_eq!(inkfeat(&["--help"]).status.code(), Some(0));
}
