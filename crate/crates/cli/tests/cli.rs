use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ldtopo::connect::Schema;
use ldtopo::io::{parse_complex, parse_glue_spec, parse_map, write_complex, write_exhaustion, write_glue_spec, write_map};
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ldtopo"));
    for var in ["LDTOPO_COSETS", "LDTOPO_STAGES", "LDTOPO_GRAMMAR_K"] {
        c.env_remove(var);
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    v.sort();
    v
}

#[test]
fn corpus_matches_builtins() {
    let listed = String::from_utf8(run(&["fixture", "--list"]).stdout).unwrap();
    let names: Vec<&str> = listed.lines().collect();
    assert_eq!(names.len(), fixture_files().len());
    for name in names {
        let on_disk = std::fs::read_to_string(fixtures_dir().join(name)).unwrap();
        let printed = String::from_utf8(run(&["fixture", name]).stdout).unwrap();
        assert_eq!(on_disk, printed, "{name}");
    }
}

#[test]
fn corpus_round_trips() {
    for path in fixture_files() {
        let text = std::fs::read_to_string(&path).unwrap();
        let again = match path.extension().and_then(|e| e.to_str()) {
            Some("cx") => {
                let f = parse_complex(&text).unwrap();
                if f.is_staged() {
                    write_exhaustion(&f.exhaustion().unwrap())
                } else {
                    write_complex(f.complex())
                }
            }
            Some("schema") => Schema::parse(&text).unwrap().to_string(),
            Some("map") => write_map(&parse_map(&text).unwrap()),
            Some("glue") => write_glue_spec(&parse_glue_spec(&text).unwrap()),
            other => panic!("unexpected fixture type {other:?}"),
        };
        assert_eq!(again, text, "{}", path.display());
    }
}

#[test]
fn homology_examples() {
    let v = json(&["homology", "circle", "--dim", "1"]);
    assert_eq!(v["results"]["rank"], 1);
    assert_eq!(v["results"]["torsion"], serde_json::json!([]));
    let v = json(&["homology", "point", "--dim", "3"]);
    assert_eq!(v["results"]["rank"], 0);
    let v = json(&["homology", "line", "--colimit", "--dim", "0"]);
    let c = &v["results"]["colimit"][0];
    assert_eq!(c["group"]["rank"], 1);
    assert_eq!(c["stable"], true);
    assert_eq!(v["verdicts"]["stable"], true);
    let v = json(&["homology", "projective-plane"]);
    assert_eq!(v["results"][1]["torsion"], serde_json::json!([2]));
}

#[test]
fn relative_homology_of_a_disk() {
    let v = json(&["homology", "disk", "--relative", "circle", "--dim", "2"]);
    assert_eq!(v["results"]["relative"][0]["group"]["rank"], 1);
    assert_eq!(v["verdicts"]["exact"], true);
}

#[test]
fn double_cover_of_circle() {
    let v = json(&["cover", "circle", "--subgroup", "a a"]);
    assert_eq!(v["results"]["sheets"], 2);
    assert_eq!(v["results"]["verified"], true);
    assert_eq!(v["results"]["euler_multiplicative"], true);
}

#[test]
fn emitted_cover_is_readable() {
    let dir = std::env::temp_dir().join(format!("ldtopo-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cover.cx");
    let out = run(&["cover", "wedge-of-circles", "--subgroup", "a", "--subgroup", "b b", "--subgroup", "b a B", "--emit", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# sheet 0:"));
    let total = parse_complex(&text).unwrap();
    assert_eq!(total.complex().euler_characteristic(), -2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn connect_examples() {
    let v = json(&["connect", "punctured-line"]);
    assert_eq!(v["results"]["connected"], false);
    assert_eq!(v["results"]["components"], 2);
    assert_eq!(v["results"]["ps"]["witness"], "(0,+inf)");
    assert_eq!(v["results"]["e"]["none"], 3);
    assert_eq!(v["results"]["op"]["connected"], false);
    assert_eq!(v["results"]["definability"][1]["obstructions"][0]["point_outside"], "eps");
    let v = json(&["connect", "zigzag-pair", "--grammar-k", "2"]);
    assert_eq!(v["results"]["connected"], false);
    assert_eq!(v["results"]["ps"]["none"], 2);
}

#[test]
fn whitehead_examples() {
    let v = json(&["whitehead", "disk-to-point"]);
    assert_eq!(v["verdicts"]["whitehead"], "equivalence-certified");
    let v = json(&["whitehead", "hexagon-double-wrap"]);
    assert_eq!(v["verdicts"]["whitehead"], "not-an-equivalence");
    assert_eq!(v["verdicts"]["failing_degree"], 1);
    assert_eq!(v["results"]["induced"][1]["matrix"], serde_json::json!([[2]]));
    let v = json(&["whitehead", "torus-identity"]);
    assert_eq!(v["verdicts"]["whitehead"], "undetermined");
}

#[test]
fn gluing_two_circles() {
    let v = json(&["glue", "two-circles"]);
    assert_eq!(v["results"]["euler_characteristic"], -1);
    assert_eq!(v["results"]["homology"][1]["rank"], 2);
    assert_eq!(v["verdicts"]["parts_embedded"], true);
}

#[test]
fn pi1_and_hurewicz() {
    let v = json(&["pi1", "projective-plane"]);
    assert_eq!(v["verdicts"]["order"], 2);
    let v = json(&["hurewicz", "sphere"]);
    assert_eq!(v["verdicts"]["agrees"], true);
    assert_eq!(v["results"]["pi2"]["rank"], 1);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["homology", "torus"][..],
        &["connect", "punctured-line"],
        &["cover", "circle", "--subgroup", "a a a"],
        &["pi1", "klein-bottle"],
    ] {
        let a = run(args).stdout;
        let b = run(args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn files_and_builtins_agree() {
    let path = fixtures_dir().join("torus.cx");
    let a = json(&["homology", path.to_str().unwrap()]);
    let b = json(&["homology", "torus"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["inputs"][0]["sha256"], b["inputs"][0]["sha256"]);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("ldtopo-exit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cx");
    std::fs::write(&bad, "S 0 x\n").unwrap();
    assert_eq!(run(&["homology", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["homology", "no-such-input"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "circle", "--relative", "sphere"]).status.code(), Some(3));
    assert_eq!(run(&["cover", "wedge-of-circles", "--cosets", "5"]).status.code(), Some(4));
    let shrinking = dir.join("s.schema");
    std::fs::write(&shrinking, "STAGE n >= 1: (0, 1/n)\n").unwrap();
    assert_eq!(run(&["connect", shrinking.to_str().unwrap()]).status.code(), Some(3));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn budget_from_environment() {
    let out = bin()
        .env("LDTOPO_COSETS", "3")
        .args(["cover", "wedge-of-circles", "--subgroup", "a"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = bin()
        .env("LDTOPO_COSETS", "3")
        .args(["cover", "wedge-of-circles", "--subgroup", "a", "--subgroup", "b b", "--subgroup", "b a B", "--cosets", "100"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn text_format() {
    let out = run(&["homology", "klein-bottle", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("H_1 = Z + Z/2"), "{text}");
}
