mod common;

use common::*;
use floodlab::{EXIT_BUDGET, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use floodlab_core::io::{random_instance, serialize_instance};
use floodlab_core::solver::{solve_free_exact, SearchBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const P5: &str = r#"{"vertices":5,"edges":[[0,1],[1,2],[2,3],[3,4]],"colors":[1,2,1,2,1]}"#;
const YES_K2: &str = r#"{"universe":3,"collections":[[[0],[0,1]],[[1],[2]]]}"#;

fn code(run: &Run) -> u8 {
    run.code as u8
}

#[test]
fn tight_path_pipes_into_fixed_solve() {
    let tp = floodlab(&["tight-path", "--n", "2"], "");
    assert_eq!(code(&tp), EXIT_OK);
    assert_schema("instance-doc", &tp.json);
    let solved = floodlab(
        &["solve", "--mode", "fixed", "--pivot", "0"],
        &tp.json.to_string(),
    );
    assert_eq!(code(&solved), EXIT_OK, "{}", solved.stderr);
    assert_schema("solve", &solved.json);
    assert_eq!(solved.json["value"], 4);
    assert_eq!(solved.json["status"], "optimal");
    // the instance carries its pivot, so the flag is optional
    let solved = floodlab(&["solve", "--mode", "fixed"], &tp.json.to_string());
    assert_eq!(solved.json["value"], 4);
    let free = floodlab(&["solve"], &tp.json.to_string());
    assert_eq!(free.json["value"], 2);
}

#[test]
fn every_output_matches_its_schema() {
    let dir = tempfile::tempdir().unwrap();
    let free_sol = floodlab(&["solve"], P5).json;
    let sol_path = write_temp(dir.path(), "sol.json", &free_sol);
    let sol = sol_path.to_str().unwrap();
    let spec = write_temp(
        dir.path(),
        "spec.json",
        &json!({"kind":"reduction","k":2,"universe":3,"sets_per_collection":2,"seed":1}),
    );
    let cases: Vec<(Vec<&str>, &str, &str)> = vec![
        (vec!["solve"], P5, "solve"),
        (
            vec!["solve", "--mode", "fixed", "--pivot", "2"],
            P5,
            "solve",
        ),
        (vec!["decide", "--k", "2"], P5, "decide"),
        (vec!["decide", "--k", "1"], P5, "decide"),
        (vec!["approx"], P5, "approx"),
        (
            vec!["convert-free-to-fixed", "--solution", sol, "--pivot", "0"],
            P5,
            "convert",
        ),
        (vec!["kernelize"], P5, "kernelize"),
        (vec!["twins"], P5, "twins"),
        (vec!["reduce-mcsc"], YES_K2, "instance-doc"),
        (vec!["tight-path", "--n", "3"], "", "instance-doc"),
        (vec!["find-witness", "--max-len", "8"], "", "witness"),
        (
            vec!["find-witness", "--max-len", "5", "--merging-only"],
            "",
            "witness",
        ),
        (vec!["verify", "--solution", sol], P5, "verify"),
        (
            vec!["gen", "--spec", spec.to_str().unwrap()],
            "",
            "instance-doc",
        ),
        (vec!["solve"], "{", "error"),
        (vec!["tight-path", "--n", "0"], "", "error"),
    ];
    for (args, stdin, schema) in cases {
        let r = floodlab(&args, stdin);
        assert_schema(schema, &r.json);
        assert!(!r.stderr.trim().is_empty(), "{args:?} printed no summary");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&floodlab(&["decide", "--k", "2"], P5)), EXIT_OK);
    assert_eq!(code(&floodlab(&["decide", "--k", "1"], P5)), EXIT_NEGATIVE);
    let w = floodlab(&["find-witness", "--max-len", "5", "--merging-only"], "");
    assert_eq!(code(&w), EXIT_NEGATIVE);
    assert_eq!(w.json["found"], false);

    let bad = floodlab(&["solve"], "not json");
    assert_eq!(code(&bad), EXIT_INPUT);
    assert_eq!(bad.json["error"]["code"], "malformed-json");
    let fixed = floodlab(&["solve", "--mode", "fixed"], P5);
    assert_eq!(fixed.json["error"]["code"], "pivot-required");
    let asym = floodlab(&["twins"], r#"{"adjacency":[[1],[]],"colors":[1,2]}"#);
    assert_eq!(asym.json["error"]["code"], "asymmetric-edges");
    let range = floodlab(&["twins"], r#"{"vertices":1,"colors":[5],"c_max":2}"#);
    assert_eq!(range.json["error"]["code"], "color-out-of-range");
    assert_eq!(code(&range), EXIT_INPUT);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let big = serialize_instance(&random_instance(&mut rng, 60, 0.05, 6));
    let r = floodlab(&["solve", "--budget", "20states"], &big);
    assert_eq!(code(&r), EXIT_BUDGET);
    assert_eq!(r.json["status"], "budget_exhausted");
    assert!(r.json["solution"].is_object(), "incumbent kept");
    // at the lower bound the search cannot answer from the bound alone
    let k = r.json["lower_bound"].to_string();
    let d = floodlab(&["decide", "--k", &k, "--budget", "20states"], &big);
    assert_eq!(code(&d), EXIT_BUDGET);
    assert_eq!(d.json["answer"], "unknown");
}

#[test]
fn verify_reports_the_tampered_move() {
    let dir = tempfile::tempdir().unwrap();
    let tp = floodlab(&["tight-path", "--n", "2"], "").json;
    let solved = floodlab(&["solve", "--mode", "fixed"], &tp.to_string()).json;
    let good = write_temp(dir.path(), "good.json", &solved);
    let ok = floodlab(
        &["verify", "--solution", good.to_str().unwrap()],
        &tp.to_string(),
    );
    assert_eq!(code(&ok), EXIT_OK);
    assert_eq!(ok.json["valid"], true);
    assert_eq!(ok.json["length"], 4);

    let mut tampered = solved["solution"].clone();
    tampered["moves"][2]["v"] = json!(3);
    let bad = write_temp(dir.path(), "bad.json", &tampered);
    let r = floodlab(
        &["verify", "--solution", bad.to_str().unwrap()],
        &tp.to_string(),
    );
    assert_eq!(code(&r), EXIT_INPUT);
    assert_eq!(r.json["valid"], false);
    assert_eq!(r.json["failure"]["index"], 2);
    assert!(r.stderr.contains("move 2"), "{}", r.stderr);

    let mut short = solved["solution"].clone();
    short["moves"].as_array_mut().unwrap().pop();
    let short = write_temp(dir.path(), "short.json", &short);
    let r = floodlab(
        &["verify", "--solution", short.to_str().unwrap()],
        &tp.to_string(),
    );
    assert_eq!(code(&r), EXIT_INPUT);
    assert_eq!(r.json["failure"]["index"], Value::Null);
}

#[test]
fn kernelize_then_solve_matches_direct_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut shrunk = 0;
    for _ in 0..25 {
        let n = rng.gen_range(4..=12);
        let p = rng.gen_range(0.3..0.9);
        let inst = random_instance(&mut rng, n, p, 3);
        let text = serialize_instance(&inst);
        let direct = floodlab(&["solve"], &text).json;
        let kernel = floodlab(&["kernelize"], &text).json;
        if kernel["trace"].as_array().is_some_and(|t| !t.is_empty()) {
            shrunk += 1;
        }
        let via = floodlab(&["solve", "--mode", "free"], &kernel.to_string()).json;
        assert_eq!(via["value"], direct["value"], "{text}");
        let exact = solve_free_exact(&inst, &SearchBudget::unlimited()).unwrap();
        assert_eq!(direct["value"], json!(exact.value));
    }
    assert!(shrunk >= 5, "only {shrunk} instances had a twin to remove");
}

#[test]
fn free_to_fixed_output_replays_at_the_pivot() {
    let dir = tempfile::tempdir().unwrap();
    let mut pinned: Value = serde_json::from_str(P5).unwrap();
    pinned["pivot"] = json!(0);
    let free = floodlab(&["solve"], P5).json;
    let path = write_temp(dir.path(), "free.json", &free);
    let conv = floodlab(
        &[
            "convert-free-to-fixed",
            "--solution",
            path.to_str().unwrap(),
        ],
        &pinned.to_string(),
    );
    assert_eq!(code(&conv), EXIT_OK, "{}", conv.stderr);
    let fixed = conv.json["fixed"].clone();
    assert_eq!(fixed["mode"], "fixed");
    assert!(fixed["moves"].as_array().unwrap().len() <= 4);
    let fpath = write_temp(dir.path(), "fixed.json", &fixed);
    let v = floodlab(
        &["verify", "--solution", fpath.to_str().unwrap()],
        &pinned.to_string(),
    );
    assert_eq!(v.json["valid"], true);
    let spath = write_temp(dir.path(), "subset.json", &conv.json["subset_fixed"]);
    let v = floodlab(
        &["verify", "--solution", spath.to_str().unwrap()],
        &pinned.to_string(),
    );
    assert_eq!(v.json["valid"], true);
}

#[test]
fn gen_is_deterministic_and_seed_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_temp(
        dir.path(),
        "grid.json",
        &json!({"kind":"grid","width":8,"height":8,"colors":4,"seed":1}),
    );
    let s = spec.to_str().unwrap();
    let a = floodlab(&["gen", "--spec", s], "").json;
    let b = floodlab(&["gen", "--spec", s], "").json;
    assert_eq!(a, b);
    let c = floodlab(&["gen", "--spec", s, "--seed", "2"], "").json;
    assert_ne!(a["fingerprint"], c["fingerprint"]);
    assert_eq!(c["spec"]["seed"], 2);
    let d = floodlab(&["--seed", "2", "gen", "--spec", s], "").json;
    assert_eq!(c, d);
    // output pipes back in
    let t = floodlab(&["twins"], &a.to_string());
    assert_eq!(code(&t), EXIT_OK);
}

#[test]
fn reduction_decides_the_cover() {
    let doc = floodlab(&["reduce-mcsc"], YES_K2).json;
    assert_eq!(doc["target"], 4);
    assert_eq!(doc["layout"]["padding"], 6);
    let d = floodlab(&["decide", "--k", "4", "--budget", "30s"], &doc.to_string());
    assert_eq!(code(&d), EXIT_OK);
    let no = r#"{"universe":3,"collections":[[[0,1],[2]],[[0],[1]]]}"#;
    let doc = floodlab(&["reduce-mcsc"], no).json;
    let d = floodlab(&["decide", "--k", "4", "--budget", "30s"], &doc.to_string());
    assert_eq!(code(&d), EXIT_NEGATIVE);
    // element 2 is in no set: the graph is disconnected
    let gap = r#"{"universe":3,"collections":[[[0],[1]],[[0,1],[1]]]}"#;
    let doc = floodlab(&["reduce-mcsc"], gap).json;
    let d = floodlab(&["decide", "--k", "4", "--budget", "30s"], &doc.to_string());
    assert_eq!(d.json["error"]["code"], "disconnected");
    let bad = floodlab(&["reduce-mcsc"], r#"{"universe":2,"collections":[[[5]]]}"#);
    assert_eq!(bad.json["error"]["code"], "invalid-mcsc");
}
