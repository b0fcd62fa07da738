use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn gpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpd")).args(args).output().expect("gpd runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn open_edge_degree_one_has_a_single_bar() {
    let out = gpd(&["diagram", &fixture("open_edge_cofiltration.json"), "--degree", "1", "--field", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let d = stdout_json(&out);
    assert_eq!(d["kind"], "cohomology");
    let entries = d["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["birth"], "a");
    assert_eq!(entries[0]["death"], "b");
    assert_eq!(entries[0]["multiplicity"], 1);
}

#[test]
fn all_degrees_of_a_two_complex() {
    let out = gpd(&["diagram", &fixture("torus_cofiltration.json"), "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let degrees: Vec<u64> = stdout_json(&out).as_array().unwrap().iter().map(|d| d["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [0, 1, 2]);
}

#[test]
fn hollow_triangle_loop_is_born_and_never_dies() {
    let out = gpd(&["diagram", &fixture("hollow_triangle_filtration.json"), "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let d = stdout_json(&out);
    let total: i64 = d["entries"].as_array().unwrap().iter().map(|e| e["multiplicity"].as_i64().unwrap()).sum::<i64>()
        + d["diagonal"].as_array().unwrap().iter().map(|e| e["multiplicity"].as_i64().unwrap()).sum::<i64>();
    assert_eq!(total, 1);
}

#[test]
fn cyclic_covers_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.json");
    std::fs::write(&path, r#"{"elements":["a","b"],"covers":[["a","b"],["b","a"]]}"#).unwrap();
    let out = gpd(&["hasse", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("CycleDetected"), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_one() {
    let out = gpd(&["diagram", "/nonexistent/family.json", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_prime_field_exits_two() {
    let out = gpd(&["diagram", &fixture("open_edge_cofiltration.json"), "--degree", "1", "--field", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

fn dot_counts(text: &str) -> (usize, usize) {
    let edges = text.lines().filter(|l| l.contains("->")).count();
    let nodes = text.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->") && !l.contains('=')).count();
    (nodes, edges)
}

#[test]
fn hasse_of_diamond_and_its_intervals() {
    let out = gpd(&["hasse", &fixture("diamond.json"), "--dot"]);
    assert_eq!(dot_counts(&String::from_utf8(out.stdout).unwrap()), (4, 4));
    let out = gpd(&["hasse", &fixture("diamond.json"), "--interval", "--dot"]);
    assert_eq!(dot_counts(&String::from_utf8(out.stdout).unwrap()), (9, 12));
}

#[test]
fn hasse_of_singleton() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.json");
    std::fs::write(&path, r#"{"elements":["x"],"covers":[]}"#).unwrap();
    let out = gpd(&["hasse", path.to_str().unwrap(), "--dot"]);
    assert_eq!(dot_counts(&String::from_utf8(out.stdout).unwrap()), (1, 0));
}

#[test]
fn dualize_edge_gives_path_of_three_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dual.json");
    let out = gpd(&["dualize", &fixture("open_edge_cofiltration.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dual: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(dual["kind"], "filtration");
    assert_eq!(dual["complex"]["vertices"].as_array().unwrap().len(), 3);
    // the output is itself a valid input
    let again = gpd(&["diagram", path.to_str().unwrap(), "--all"]);
    assert_eq!(again.status.code(), Some(0), "{}", stderr(&again));
}

#[test]
fn dualize_sphere_filtration_lives_on_fourteen_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("sphere.json");
    std::fs::write(
        &input,
        r#"{"kind":"filtration","poset":{"elements":["a","b"],"covers":[["a","b"]]},
            "complex":"builtin:sphere2",
            "assignment":{"a":[["0"],["1"],["0","1"]],
                           "b":[["0"],["1"],["2"],["3"],["0","1"],["0","2"],["1","2"],["0","3"],["1","3"],
                                ["0","1","2"],["0","1","3"]]}}"#,
    )
    .unwrap();
    let out = gpd(&["dualize", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dual = stdout_json(&out);
    assert_eq!(dual["kind"], "cofiltration");
    assert_eq!(dual["complex"]["vertices"].as_array().unwrap().len(), 14);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| gpd(&["dualize", &fixture("torus_cofiltration.json")]).stdout)
        .collect();
    assert_eq!(runs[0], runs[1]);
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| gpd(&["check", "equivalence", "--trials", "12", "--seed", "5"]).stdout)
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn subdivide_sphere_counts() {
    let out = gpd(&["subdivide", "builtin:sphere2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let k = stdout_json(&out);
    assert_eq!(k["vertices"].as_array().unwrap().len(), 14);
    let simplices = k["simplices"].as_array().unwrap();
    let count = |n: usize| simplices.iter().filter(|s| s.as_array().unwrap().len() == n).count();
    assert_eq!((count(1), count(2), count(3)), (14, 36, 24));
}

#[test]
fn rota_check_passes_with_seed() {
    let out = gpd(&["check", "rota", "--trials", "200", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = stdout_json(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["seed"], 1);
    assert_eq!(r["trials"], 200);
}

#[test]
fn random_checks_pass() {
    for what in ["functoriality", "equivalence", "module-equivalence"] {
        for field in ["2", "3"] {
            let out = gpd(&["check", what, "--trials", "20", "--seed", "7", "--field", field]);
            assert_eq!(out.status.code(), Some(0), "{what} over {field}: {}", stderr(&out));
        }
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let par = gpd(&["check", "functoriality", "--trials", "16", "--seed", "9"]).stdout;
    let seq = gpd(&["check", "functoriality", "--trials", "16", "--seed", "9", "--sequential"]).stdout;
    assert_eq!(par, seq);
}

#[test]
fn duality_on_torus_fixture() {
    let out = gpd(&["check", "duality", "--input", &fixture("torus_cofiltration.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = gpd(&["check", "duality", "--complex", "builtin:torus", "--trials", "6", "--seed", "2", "--field", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn duality_refuses_a_non_manifold() {
    let out = gpd(&["check", "duality", "--complex", "builtin:simplex1", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("HypothesisNotMet"));
}

#[test]
fn failed_checks_exit_three_with_a_repro_command() {
    // the closed edge is no manifold, so advisory duality fails on it
    let out = gpd(&["check", "duality", "--complex", "builtin:simplex1", "--advisory", "--trials", "4", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(3));
    let r = stdout_json(&out);
    assert_eq!(r["passed"], false);
    let first = &r["failures"][0];
    let seed = first["seed"].as_u64().unwrap();
    let repro = first["repro"].as_str().unwrap();
    assert!(repro.contains(&format!("--seed {seed} --trials 1")), "{repro}");
    let args: Vec<&str> = repro.split_whitespace().skip(1).collect();
    assert_eq!(gpd(&args).status.code(), Some(3));
}

#[test]
fn module_equivalence_on_diamond_fixture() {
    let out = gpd(&[
        "check",
        "module-equivalence",
        "--input",
        &fixture("diamond_module.json"),
        "--galois",
        &fixture("diamond_to_point.json"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn equivalence_on_hexagon_fixture() {
    let out = gpd(&["check", "equivalence", "--input", &fixture("hexagon_cofiltration.json"), "--field", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}
