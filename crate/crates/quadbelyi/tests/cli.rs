//! End-to-end tests of the command-line interface: exit codes, JSON reports,
//! and round trips of emitted output through the library parsers.

use std::path::PathBuf;
use std::process::{Command, Output};

use quadbelyi::dessin::{enumerate_dessins, Dessin};
use quadbelyi::passport::Passport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadbelyi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(stdout_of(o).trim()).expect("stdout is one JSON object")
}

fn temp_file(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("quadbelyi-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn correspondent_passports_of_the_degree_ten_torus_passport() {
    let out = run(&["--json", "passport", "correspond", "[3^2 4/3^2 4/3^2 2^2]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["count"], 2);
    let entries = v["entries"].as_array().unwrap();
    let mut passports: Vec<String> =
        entries.iter().map(|e| e["passport"].as_str().unwrap().to_string()).collect();
    passports.sort();
    assert_eq!(
        passports,
        vec!["[4 3^2 / 2^3 1^4 / 6 4]".to_string(), "[4 3^2 / 2^4 1^2 / 4 3^2]".to_string()]
    );
    // the reported passports parse back
    for p in &passports {
        let parsed: Passport = p.parse().unwrap();
        assert_eq!(parsed.genus().unwrap(), 0);
    }
}

#[test]
fn passport_genus_reports_and_rejects() {
    let out = run(&["passport", "genus", "[3^2 4/3^2 4/3^2 2^2]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out).trim(), "genus 1");

    let out = run(&["passport", "genus", "[3/2 2/3]"]);
    assert_eq!(out.status.code(), Some(2), "unequal fiber degrees are a parse error");

    let out = run(&["--json", "passport", "genus", "[2 1/2 1/2 1]"]);
    assert_eq!(out.status.code(), Some(1), "odd total ramification");
    assert_eq!(json_of(&out)["error"], "NonIntegerGenus");
}

#[test]
fn the_full_catalog_replays_through_the_cli() {
    let out = run(&["--json", "corpus", "check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["flagged"], 2);
    assert_eq!(v["count"].as_u64().unwrap(), v["entries"].as_array().unwrap().len() as u64);
}

#[test]
fn painleve_entries_replay_through_the_cli() {
    let out = run(&["--json", "painleve", "verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["count"], 2);
    assert_eq!(v["failed"], 0);
}

#[test]
fn catalog_failures_exit_nonzero() {
    // a filter that matches nothing still reports, with nothing failed
    let out = run(&["corpus", "check", "no-such-entry"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("0 passed"));
}

#[test]
fn enumerate_lift_detect_quotient_round_trip() {
    let out = run(&["--json", "dessin", "enumerate", "[3^3/2^3 1^3/5 4]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["count"], 1);
    let entry = v["entries"][0].to_string();
    // emitted entries round-trip through the dessin file parser
    let (d0, label) = Dessin::from_file_string(&entry).unwrap();
    assert_eq!(d0.genus(), 0);
    assert!(label.unwrap().contains("#0"));

    let path = temp_file("roundtrip.dessin", &entry);
    let out = run(&["dessin", "lift", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lifted_text = stdout_of(&out);
    let (d1, _) = Dessin::from_file_string(lifted_text.trim()).unwrap();
    assert_eq!(d1.genus(), 1);
    assert_eq!(d1.passport().to_string(), "[3^3 / 3^3 / 5 2^2]");

    let lifted_path = temp_file("roundtrip-lifted.dessin", &lifted_text);
    let out = run(&["dessin", "detect", lifted_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("classification: AntiSymmetric"));

    let out = run(&["dessin", "quotient", lifted_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (back, _) = Dessin::from_file_string(stdout_of(&out).trim()).unwrap();
    assert!(back.is_isomorphic(&d0), "quotient undoes the lift");

    for p in [&path, &lifted_path] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn the_impossible_cut_choice_is_a_structural_obstruction() {
    let p: Passport = "[5 3/2^3 1^2/4 2^2]".parse().unwrap();
    let ds = enumerate_dessins(&p).unwrap();
    let d = &ds[0];
    let faces = d.faces();
    let twos: Vec<String> =
        (0..faces.len()).filter(|&i| faces[i].len() == 2).map(|i| i.to_string()).collect();
    assert_eq!(twos.len(), 2);
    let path = temp_file("bad.dessin", &d.to_file_string(Some("bad")));

    // the strict branch set is too small: also structural, exit 3
    let out = run(&["--json", "dessin", "lift", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"], "BranchCountError");

    // cutting along the two 2-gons is impossible
    let out =
        run(&["--json", "dessin", "lift", path.to_str().unwrap(), "--faces", &twos.join(",")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout_of(&out).trim(), r#"{"error":"ParityObstruction"}"#);

    let _ = std::fs::remove_file(&path);
}

#[test]
fn map_files_verify_and_correspond() {
    let path = temp_file(
        "deg7.map",
        "field r : r^2-7\n\
         map : -(9x-4r-29)^3(x-2r-4)^4 / (4r+29)(7x-10r-32)^4\n\
         passport : [4 3/2^2 1^3/4 3]\n",
    );
    let out = run(&["--json", "map", "verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["degree"], 7);
    assert_eq!(v["passport"], "[4 3 / 2^2 1^3 / 4 3]");

    let out = run(&["--json", "map", "correspond", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["passport"], "[4 3 / 4 3 / 3 2^2]");
    assert_eq!(v["identity"], true);
    assert!(v["j"].as_str().unwrap().contains('r'), "j lives in the quadratic field");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn a_wrong_recorded_passport_is_a_verification_failure() {
    let path = temp_file("wrongpass.map", "map : 4x(1-x) / 1\npassport : [2/1^2/2]\n");
    let out = run(&["--json", "map", "verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "PassportMismatch");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn the_all_even_map_degenerates_to_a_rational_transform() {
    let path = temp_file(
        "alleven.map",
        "map : -(x^2-1)^4 / 16x^2(x^2+1)^2\npassport : [4^2/2^4/2^4]\n",
    );
    let out = run(&["--json", "map", "correspond", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "DegenerateRational");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1/8*x^4"), "reports the rational transform: {err}");
    let _ = std::fs::remove_file(&path);
}

#[test]
fn render_emits_svg_and_rejects_higher_genus() {
    let single = temp_file("single.dessin", r#"{"degree":1,"sigma0":[1],"sigma1":[1]}"#);
    let out = run(&["render", single.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout_of(&out);
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<circle").count(), 2);
    assert_eq!(svg.matches("<polyline").count(), 1);

    let genus2 = temp_file(
        "genus2.dessin",
        r#"{"degree":5,"sigma0":[2,3,4,5,1],"sigma1":[3,4,5,1,2]}"#,
    );
    let out = run(&["--json", "render", genus2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], "UnsupportedGenus");

    for p in [&single, &genus2] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn usage_problems_exit_two_with_a_synopsis() {
    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("usage: quadbelyi"));

    let out = run(&["dessin", "teleport", "x"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("corpus check"));
}
