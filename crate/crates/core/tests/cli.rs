use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn spectra(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

#[test]
fn ep_example_dot_matches_golden() {
    let r = spectra(&["example", "EPExample", "--format", "dot"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        std::fs::read_to_string(data("ep_example.dot")).unwrap()
    );
}

#[test]
fn to_graph_of_diamond_matches_golden() {
    let r = spectra(&["to-graph", &data("diamond.json"), "--format", "dot"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        std::fs::read_to_string(data("ep_example.dot")).unwrap()
    );
}

#[test]
fn two_ray_fails_dc_under_assert() {
    let r = spectra(&[
        "check",
        "rayposet",
        &data("twoRay.json"),
        "--props",
        "dc",
        "--assert",
    ]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_eq!(v[0]["holds"], false);
    assert_eq!(v[0]["witness"]["reason"], "detached");
    assert!(r.stderr.contains("dc"));
}

#[test]
fn check_without_assert_exits_zero() {
    let r = spectra(&["check", "rayposet", &data("twoRay.json")]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn finite_check() {
    let r = spectra(&[
        "check",
        "poset",
        &data("diamond.json"),
        "--props",
        "glb,dcc",
        "--assert",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn verify_bergman_exits_zero() {
    let r = spectra(&["verify", "bergman", "--count", "200", "--seed", "7"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["suite"], "bergman");
    assert_eq!(v["corpus"]["count"], 200);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn apply_a_then_r_on_chain_with_ray() {
    let a = spectra(&["apply", "a", "rayposet", &data("chain_with_ray.json")]);
    assert_eq!(a.code, 0);
    let v = json(&a);
    assert_eq!(v["added"][0]["below"], "S");
    let r = spectra(&["apply", "r", "rayposet", &data("chain_with_ray.json")]);
    assert_eq!(json(&r)["removed"], serde_json::json!(["0"]));
}

#[test]
fn apply_r_refuses_ray_top_glbs() {
    let dir = std::env::temp_dir().join(format!("spectra-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ray_top.json");
    std::fs::write(
        &path,
        r#"{"nodes":[{"id":"A","kind":"ray"},{"id":"B","kind":"ray"}],
            "relations":[{"lo":"A","hi":"B","kind":"all"}]}"#,
    )
    .unwrap();
    let r = spectra(&["apply", "r", "rayposet", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not representable"));
}

#[test]
fn iso_of_r_a_round_trip() {
    let dir = std::env::temp_dir().join(format!("spectra-iso-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = spectra(&["apply", "a", "rayposet", &data("dc_vs_strong_dc.json")]);
    let ra_in = dir.join("a.json");
    std::fs::write(&ra_in, json(&a)["result"].to_string()).unwrap();
    let ra = spectra(&["apply", "r", "rayposet", ra_in.to_str().unwrap()]);
    let back = dir.join("ra.json");
    std::fs::write(&back, json(&ra)["result"].to_string()).unwrap();
    let iso = spectra(&[
        "iso",
        "rayposet",
        back.to_str().unwrap(),
        &data("dc_vs_strong_dc.json"),
        "--assert",
    ]);
    assert_eq!(iso.code, 0, "{}", iso.stdout);
    assert_eq!(json(&iso)["isomorphic"], true);
}

#[test]
fn graph_commands() {
    let tails = spectra(&["graph-tails", &data("union_eg.json")]);
    assert_eq!(json(&tails)["maximal_tails"].as_array().unwrap().len(), 5);
    let primes = spectra(&["graph-primes", &data("one_loop.json")]);
    let v = json(&primes);
    let variants: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["variant"].as_str().unwrap())
        .collect();
    assert_eq!(variants, ["Graded", "CycleFamily"]);
    let spec = spectra(&["spec", &data("union_eg.json")]);
    assert_eq!(spec.code, 0);
    let refused = spectra(&["spec", &data("one_loop.json")]);
    assert_eq!(refused.code, 2);
    assert!(refused.stderr.contains("graded regime"));
}

#[test]
fn export_round_trips() {
    for (kind, file) in [
        ("poset", "diamond.json"),
        ("rayposet", "dc_vs_strong_dc.json"),
        ("graph", "union_eg.json"),
    ] {
        let once = spectra(&["export", kind, &data(file)]);
        assert_eq!(once.code, 0);
        let dir = std::env::temp_dir().join(format!("spectra-export-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(file);
        std::fs::write(&path, &once.stdout).unwrap();
        let twice = spectra(&["export", kind, path.to_str().unwrap()]);
        assert_eq!(once.stdout, twice.stdout, "{kind}");
    }
}

#[test]
fn truncation_export() {
    let r = spectra(&[
        "export",
        "rayposet",
        &data("chain_with_ray.json"),
        "--truncate",
        "--depth",
        "3",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(
        json(&r)["elements"],
        serde_json::json!(["0", "S[0]", "S[1]", "S[2]"])
    );
    let bad = spectra(&["export", "graph", &data("union_eg.json"), "--truncate"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(spectra(&["check", "poset", &data("missing.json")]).code, 2);
    assert_eq!(spectra(&["check", "poset", &data("union_eg.json")]).code, 2);
    assert_eq!(
        spectra(&[
            "check",
            "rayposet",
            &data("twoRay.json"),
            "--props",
            "bogus"
        ])
        .code,
        2
    );
    assert_eq!(spectra(&["example", "Unknown"]).code, 2);
    assert_eq!(spectra(&[]).code, 2);
}

#[test]
fn examples_hold_under_assert() {
    for name in spectra::catalog::EXAMPLE_NAMES {
        let r = spectra(&["example", name, "--assert"]);
        assert_eq!(r.code, 0, "{name}: {}", r.stderr);
        assert_eq!(json(&r)["name"], name);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "all", "--count", "30", "--seed", "11"];
    let a = spectra(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, spectra(&args).stdout);
}
