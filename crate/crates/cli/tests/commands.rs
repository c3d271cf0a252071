use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gaia-kit"));
    cmd.current_dir(fixture("")).args(args).env_remove("GAIA_KIT_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_with(args, &[])
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn validate_poset() {
    let out = run(&["validate", "poset2.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn validate_reports_missing_composite() {
    let out = run(&["validate", "broken_category.json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn validate_rejects_bad_distance_table() {
    let out = run(&["validate", "bad_table.json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn missing_file_is_an_input_error() {
    let out = run(&["validate", "no_such_file.json"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_such_file.json"));
}

#[test]
fn parse_errors_carry_position() {
    let dir = std::env::temp_dir().join(format!("gaia-kit-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\n  \"objects\": [\"a\",\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("line"), "{err}");
    assert!(err.contains("column"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unknown_flag_rejected() {
    let out = run(&["nerve", "poset2.json", "--no-such-flag"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn nerve_counts_of_two_arrow_poset() {
    let out = run(&["nerve", "poset2.json", "--truncation", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["counts"], serde_json::json!([3, 6, 10, 15]));
    assert_eq!(v["nondegenerate"], serde_json::json!([3, 3, 1, 0]));
    assert_eq!(v["identities_hold"], true);
}

#[test]
fn nerve_emit_reloads_as_simplicial_set() {
    let out = run(&["nerve", "interval.json", "--truncation", "2", "--emit"]);
    assert_eq!(code(&out), 0);
    let file: gaia_core::simplicial::SimplicialFile = serde_json::from_slice(&out.stdout).unwrap();
    let x = file.build().unwrap();
    assert!(x.validate().is_empty());
    assert_eq!((x.len(0), x.len(1), x.len(2)), (2, 3, 4));
}

#[test]
fn inner_horn_has_one_filler() {
    let out = run(&["fill-horn", "poset2.json", "--n", "2", "--k", "1", "--face", "0=g", "--face", "2=f"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["fillers"], 1);
    assert_eq!(v["filler_names"].as_array().unwrap().len(), 1);
}

#[test]
fn outer_horn_without_filler() {
    let args = ["fill-horn", "interval.json", "--n", "2", "--k", "0", "--face", "1=id0", "--face", "2=u"];
    let out = run(&args);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["fillers"], 0);
    let mut strict = args.to_vec();
    strict.push("--expect-solution");
    assert_eq!(code(&run(&strict)), 1);
}

#[test]
fn kan_checks() {
    let out = run(&["kan-check", "z2.json", "--truncation", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["kan"], true);

    let out = run(&["kan-check", "interval.json", "--truncation", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["kan"], false);
    let out = run(&["kan-check", "interval.json", "--truncation", "2", "--expect-solution"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn homology_of_boundary_triangle() {
    let out = run(&["homology", "--input", "boundary2.json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
    assert_eq!(v["boundary_squares_to_zero"], true);
}

#[test]
fn homology_torsion_and_components() {
    let v = json(&run(&["homology", "z2.json", "--truncation", "3"]));
    assert_eq!(v["torsion"][1], serde_json::json!(["2"]));
    assert_eq!(v["betti"][0], 1);
    assert_eq!(v["betti"][1], 0);
    let v = json(&run(&["homology", "discrete3.json"]));
    assert_eq!(v["betti"][0], 3);
}

#[test]
fn homology_writes_triplets() {
    let dir = std::env::temp_dir().join(format!("gaia-kit-triplets-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.txt");
    let out = run(&["homology", "boundary2.json", "--triplets", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn set_lifting() {
    let out = run(&["lift", "--f", "lift_f.json", "--p", "lift_p.json", "--mu", "lift_mu.json", "--nu", "lift_nu.json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], 2);
    for h in v["diagonals"].as_array().unwrap() {
        assert_eq!(h["a"], "x");
    }
}

#[test]
fn unsolvable_lifting_with_expectation_fails() {
    let args = ["lift", "--f", "lift_f.json", "--p", "lift_p_not_onto.json", "--mu", "lift_mu_point.json", "--nu", "lift_nu.json"];
    let out = run(&args);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["count"], 0);
    let mut strict = args.to_vec();
    strict.push("--expect-solution");
    assert_eq!(code(&run(&strict)), 1);
}

#[test]
fn query_edge_sources() {
    let out = run(&["query", "--instance", "graph_instance.json", "--pattern", "source_query.json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], 2);
    assert_eq!(v["unsolved"].as_array().unwrap().len(), 1);
}

#[test]
fn migrations() {
    let delta = json(&run(&["migrate", "--mode", "delta", "--functor", "vertex_functor.json", "--instance", "graph_instance.json"]));
    assert_eq!(delta["sizes"]["p"], 3);
    let sigma = json(&run(&["migrate", "--mode", "sigma", "--functor", "vertex_functor.json", "--instance", "point_instance.json"]));
    assert_eq!(sigma["sizes"], serde_json::json!({"E": 0, "V": 2}));
    let pi = json(&run(&["migrate", "--mode", "pi", "--functor", "vertex_functor.json", "--instance", "point_instance.json"]));
    assert_eq!(pi["sizes"], serde_json::json!({"E": 4, "V": 2}));
}

#[test]
fn migrate_rejects_unknown_mode() {
    let out = run(&["migrate", "--mode", "kappa", "--functor", "vertex_functor.json", "--instance", "point_instance.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn backprop_training_reduces_loss() {
    let v = json(&run(&["train", "line_fit.json", "--data", "line.csv", "--epochs", "30"]));
    let initial = v["initial_loss"].as_f64().unwrap();
    let last = v["final_loss"].as_f64().unwrap();
    assert!(last < initial * 1e-3, "{initial} -> {last}");
    assert!((v["params"][0].as_f64().unwrap() - 2.0).abs() < 0.05);
}

#[test]
fn zeroth_order_training_needs_seed() {
    let out = run(&["train", "zeroth.json", "--data", "line.csv"]);
    assert_eq!(code(&out), 2);
    let out = run(&["train", "zeroth.json", "--data", "line.csv", "--seed", "3", "--epochs", "5"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn pipeline_functoriality() {
    let out = run(&["check-functoriality", "pipeline.json", "--samples", "50"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["gradients_ok"], true);
}

#[test]
fn equivariance_exhaustive_and_sampled() {
    let v = json(&run(&["equivariance", "--seed", "7", "--tokens", "4", "--dim", "3", "--heads", "2"]));
    assert_eq!(v["permutations_checked"], 24);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["passed"], true);
    let v = json(&run(&["equivariance", "--seed", "7", "--tokens", "16", "--permutations", "50"]));
    assert_eq!(v["permutations_checked"], 50);
    assert_eq!(v["passed"], true);
}

#[test]
fn equivariance_requires_seed() {
    assert_eq!(code(&run(&["equivariance"])), 2);
}

#[test]
fn bisimulation_of_three_and_two_states() {
    let v = json(&run(&["bisim", "lts_s.json", "lts_t.json"]));
    assert_eq!(v["pairs"], serde_json::json!([["s0", "t0"], ["s1", "t1"], ["s2", "t1"]]));
    assert_eq!(v["verified"], true);
}

#[test]
fn affine_fixed_point() {
    let out = run(&["coinductive-solve", "affine.json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!((v["fixed_point"][0].as_f64().unwrap() - 2.0).abs() <= 1e-9);
    assert!(v["iterations"].as_u64().unwrap() <= 40);
    assert_eq!(v["invariant"], true);
}

#[test]
fn averaging_fixed_point() {
    let v = json(&run(&["coinductive-solve", "averaging.json"]));
    let v1 = 1.0 / 0.2125;
    assert!((v["fixed_point"][0].as_f64().unwrap() - v1).abs() <= 1e-8);
    assert!((v["fixed_point"][1].as_f64().unwrap() - 0.75 * v1).abs() <= 1e-8);
}

#[test]
fn expanding_map_is_a_domain_failure() {
    let out = run(&["coinductive-solve", "expanding.json"]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["error"].as_str().unwrap().contains("contraction"));
}

#[test]
fn yoneda_isometry() {
    for f in ["halfline.json", "asym_table.json"] {
        let out = run(&["yoneda-check", f]);
        assert_eq!(code(&out), 0, "{f}");
        let v = json(&out);
        assert_eq!(v["isometric"], true);
        assert_eq!(v["max_deviation"], "0");
    }
}

#[test]
fn budget_from_environment() {
    let args = ["lift", "--f", "lift_f.json", "--p", "lift_p.json", "--mu", "lift_mu.json", "--nu", "lift_nu.json"];
    let out = run_with(&args, &[("GAIA_KIT_BUDGET", "1")]);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(json(&out)["error"].as_str().unwrap().contains("budget"));
    let mut explicit = args.to_vec();
    explicit.extend(["--budget", "1000"]);
    assert_eq!(code(&run_with(&explicit, &[("GAIA_KIT_BUDGET", "1")])), 0);
    assert_eq!(code(&run_with(&args, &[("GAIA_KIT_BUDGET", "many")])), 2);
}

#[test]
fn outputs_are_byte_stable() {
    let commands: [&[&str]; 6] = [
        &["nerve", "z2.json"],
        &["homology", "z2.json"],
        &["train", "zeroth.json", "--data", "line.csv", "--seed", "11", "--epochs", "4"],
        &["equivariance", "--seed", "5", "--tokens", "9", "--permutations", "10"],
        &["migrate", "--mode", "pi", "--functor", "vertex_functor.json", "--instance", "point_instance.json"],
        &["yoneda-check", "halfline.json"],
    ];
    for args in commands {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
