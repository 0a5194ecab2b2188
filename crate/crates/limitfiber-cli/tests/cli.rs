use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_limitfiber")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn tmp(name: &str, body: &str) -> String {
    let p = std::env::temp_dir().join(format!("limitfiber-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn stab_on_example() {
    let v = report(&["stab", &path("five_lines.json")]);
    assert_eq!(v["count"], 2);
    assert_eq!(v["simplex"], true);
    assert_eq!(v["edges"].as_array().unwrap().len(), 1);
    let psis: Vec<&Value> = v["classes"].as_array().unwrap().iter().map(|c| &c["psi"]).collect();
    assert!(psis.contains(&&serde_json::json!([0, 0, 0, 0, -1])));
}

#[test]
fn json_flag_and_positional_agree() {
    let a = run(&["stab", &path("octahedron_2_4.json")]);
    let b = run(&["stab", "--json", &path("octahedron_2_4.json")]);
    assert_eq!(a.stdout, b.stdout);
    let both = run(&["stab", &path("octahedron_2_4.json"), "--json", &path("octahedron_2_4.json")]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["gitstab", "generic_3_5.json"],
        vec!["surface", "five_lines.json"],
        vec!["fiber", "octahedron_2_4.json"],
        vec!["central", "fano_f2.json"],
    ] {
        let p = path(args[1]);
        let a = run(&[args[0], &p]);
        let b = run(&[args[0], &p]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{}", args[0]);
    }
}

#[test]
fn out_flag_writes_the_report() {
    let target = std::env::temp_dir().join(format!("limitfiber-cli-{}-out.json", std::process::id()));
    let t = target.to_string_lossy().into_owned();
    let out = run(&["stab", &path("five_lines.json"), "--out", &t]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let direct = run(&["stab", &path("five_lines.json")]);
    assert_eq!(std::fs::read(&target).unwrap(), direct.stdout);
}

#[test]
fn emitted_classes_round_trip_through_hull() {
    let v = report(&["stab", &path("generic_3_5.json")]);
    let classes: Vec<Value> = v["classes"].as_array().unwrap().iter().map(|c| c["class"].clone()).collect();
    let input = serde_json::json!({ "r": v["r"], "classes": classes });
    let h = report(&["hull", &tmp("hull.json", &input.to_string())]);
    let size = h["size"].as_u64().unwrap() as usize;
    assert!(size >= classes.len());
    let given: Vec<&Value> =
        h["hull"].as_array().unwrap().iter().filter(|c| c["given"] == true).map(|c| &c["class"]).collect();
    assert_eq!(given.len(), classes.len());
    for c in &classes {
        assert!(given.contains(&c));
    }
    let all: Vec<Value> = h["hull"].as_array().unwrap().iter().map(|c| c["class"].clone()).collect();
    let again = report(&["hull", &tmp("hull2.json", &serde_json::json!({ "r": v["r"], "classes": all }).to_string())]);
    assert_eq!(again["convex"], true);
    assert_eq!(again["size"].as_u64().unwrap() as usize, size);
}

#[test]
fn cohomology_reports() {
    let t = report(&["cohomology", &path("trivial_2_4.json")]);
    assert_eq!(t["cohomology"]["h1_rank"], 0);
    assert_eq!(t["cohomology"]["h0"], 4);
    assert_eq!(t["verdicts"]["tiles"], true);
    let s = report(&["cohomology", &path("split_2_4.json")]);
    assert_eq!(s["cohomology"]["h1_vanishes"], true);
    assert_eq!(s["verdicts"]["tiles"], true);
    let c = report(&["cohomology", &path("crossing_pair_3_6.json")]);
    assert_eq!(c["cohomology"]["h1_rank"], 4);
    assert_eq!(c["verdicts"]["tiles"], false);
}

#[test]
fn audit_brianchon_pascal() {
    let v = report(&["audit", &path("brianchon_pascal.json")]);
    assert_eq!((v["lhs"].as_i64(), v["rhs"].as_i64(), v["violates"].as_bool()), (Some(11), Some(10), Some(true)));
}

#[test]
fn gitstab_six_planes() {
    let v = report(&["gitstab", &path("six_planes_r4.json")]);
    let cs = v["classes"].as_array().unwrap();
    assert!(cs.iter().any(|c| c["git_stable"] == true && c["stable"] == false));
    assert_eq!(v["hypersimplex"], false);
}

#[test]
fn surface_germ_fixtures() {
    for (name, kind) in
        [("cycle3_germ.json", "cycle_3"), ("cycle5_germ.json", "cycle_5"), ("generic_3_6.json", "cycle_4")]
    {
        let v = report(&["surface", &path(name)]);
        assert!(v["germs"].as_array().unwrap().iter().any(|g| g["kind"] == kind), "{name}");
    }
}

#[test]
fn crossratio_and_lax() {
    let cr = report(&[
        "crossratio",
        &tmp("cr.json", r#"{"r":2,"vectors":[["1","0"],["0","1"],["1","1"],["1","z"]],"indices":[1,2,3,4]}"#),
    ]);
    assert!(cr.get("limit").is_some());
    let grid = r#"{"covectors":[["1","0","0"],["1","0","-1"],["0","1","0"],["0","1","-1"],["1","-1","0"]]}"#;
    let l = report(&["lax", &tmp("lax.json", grid)]);
    assert!(l.get("lax").is_some());
}

#[test]
fn domain_errors_exit_with_one() {
    let f = tmp("nostable.json", r#"{"r":2,"vectors":[["1","0"],["0","1"]]}"#);
    let out = run(&["stab", &f]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "NoStableLattice");
    let bad = tmp("overlap.json", r#"{"r":3,"n":5,"central":[[1,2,3],[2,3,4]]}"#);
    let out = run(&["cohomology", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "OverlapViolation");
}

#[test]
fn input_errors_exit_with_two() {
    let out = run(&["stab", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "Io");
    for body in ["{", r#"{"r":2}"#, r#"{"r":2,"vectors":[["1","0"],["q","1"]]}"#, r#"{"r":2,"vectors":[["1"]]}"#] {
        let out = run(&["stab", &tmp("bad.json", body)]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "Parse", "{body}");
    }
    let out = run(&["stab", &path("five_lines.json"), "--field", "F4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["stab"]);
    assert_eq!(out.status.code(), Some(2));
}
