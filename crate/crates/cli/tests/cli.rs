//! The `rainbowlab` binary: exit codes, file formats and report agreement.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rainbowlab"));
    c.env_remove("RAINBOWLAB_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

/// Scalar leaves of a text report as `key -> value` pairs.
fn text_fields(args: &[&str]) -> Vec<(String, String)> {
    let out = run(args);
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .filter_map(|l| {
            l.split_once(": ")
                .map(|(k, v)| (k.to_string(), v.to_string()))
        })
        .collect()
}

fn lookup<'a>(v: &'a Value, dotted: &str) -> &'a Value {
    dotted.split('.').fold(v, |v, k| match k.parse::<usize>() {
        Ok(i) if v.is_array() => &v[i],
        _ => &v[k],
    })
}

#[test]
fn formulas_examples() {
    for (n, t, expect) in [
        ("57", "0", [812, 812, 814]),
        ("6", "0", [9, 9, 11]),
        ("87", "2", [1806, 1977, 1979]),
    ] {
        let (code, v) = json(&["formulas", "--n", n, "--t", t]);
        assert_eq!(code, 0);
        let r = &v["result"];
        assert_eq!(
            [&r["turan_bipartite"], &r["moon_ex"], &r["ar_formula"]],
            expect.map(Value::from).each_ref()
        );
        assert_eq!(r["in_proven_range"], n != "6");
    }
    assert_eq!(
        run(&["formulas", "--n", "3", "--t", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn report_carries_schema_and_config() {
    let (_, v) = json(&[
        "--seed",
        "9",
        "--workers",
        "3",
        "formulas",
        "--n",
        "10",
        "--t",
        "1",
    ]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["workers"], 3);
    assert_eq!(v["config"]["command"]["subcommand"], "formulas");
    assert_eq!(v["config"]["command"]["n"], 10);
}

#[test]
fn text_and_json_agree() {
    let cases: &[&[&str]] = &[
        &["formulas", "--n", "87", "--t", "2"],
        &["ar-search", "--n", "5", "--k", "1"],
        &["i3", "Bw"],
        &["verify-gamma", "--n-max", "5"],
        &["verify-pairs", "--instances", "20"],
    ];
    for args in cases {
        let (_, v) = json(args);
        let fields = text_fields(args);
        assert!(!fields.is_empty());
        for (key, text) in fields {
            if key.ends_with("wall_time_secs") || key == "config.format" {
                continue;
            }
            let j = lookup(&v, &key);
            let rendered = match j {
                Value::String(s) => s.clone(),
                Value::Null => "none".into(),
                Value::Array(_) => j.to_string().replace(',', ", ").replace('"', ""),
                other => other.to_string(),
            };
            assert_eq!(rendered, text, "{args:?} field {key}");
        }
    }
}

#[test]
fn construct_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    let p = path.to_str().unwrap();
    let (code, v) = json(&["construct", "--n", "20", "--t", "1", "--out", p]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["colors"], 110);
    assert_eq!(v["result"]["rainbow_packing"], "absent");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("20 110\n"));
    assert_eq!(text.lines().count(), 1 + 190);

    let (code, v) = json(&["check-rainbow", "--coloring", p, "--k", "3"]);
    assert_eq!(
        (code, &v["result"]["rainbow_packing"]),
        (0, &Value::from("absent"))
    );
    let (code, v) = json(&["check-rainbow", "--coloring", p, "--k", "2"]);
    assert_eq!(
        (code, &v["result"]["rainbow_packing"]),
        (1, &Value::from("present"))
    );
    assert_eq!(
        v["result"]["witness"]["packing"]["triangles"]
            .as_array()
            .unwrap()
            .len(),
        2
    );

    let (code, v) = json(&["construct", "--n", "10", "--t", "0"]);
    assert_eq!((code, &v["result"]["colors"]), (0, &Value::from(26)));
    assert_eq!(
        run(&["construct", "--n", "9", "--t", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn malformed_inputs_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "3 2\n0 1 0\n0 2 1\n").unwrap();
    let code = run(&[
        "check-rainbow",
        "--coloring",
        path.to_str().unwrap(),
        "--k",
        "1",
    ])
    .status
    .code();
    assert_eq!(code, Some(2));
    assert_eq!(
        run(&[
            "check-rainbow",
            "--coloring",
            "/nonexistent/c.txt",
            "--k",
            "1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["i3", "B"]).status.code(), Some(2));
    assert_eq!(run(&["decode", "Bx"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run(&["ar-search", "--n", "5", "--k", "1", "--budget", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["--workers", "0", "verify-moon"]).status.code(),
        Some(2)
    );
    let (code, v) = json(&["encode", "turan:0:0"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn ar_search_values_and_exhaustion() {
    let (code, v) = json(&["ar-search", "--n", "5", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["search"]["ar"], 5);
    assert_eq!(v["result"]["search"]["witness_revalidated"], true);

    let (code, v) = json(&["ar-search", "--n", "6", "--k", "1", "--budget", "500"]);
    assert_eq!(code, 4);
    let b = &v["result"]["search"]["bracket"];
    assert!(b[0].as_u64().unwrap() <= 6 && 6 <= b[1].as_u64().unwrap());
}

#[test]
fn ar_search_resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("s.ckpt");
    let ck = ck.to_str().unwrap();
    let args = [
        "ar-search",
        "--n",
        "6",
        "--k",
        "1",
        "--budget",
        "20000",
        "--checkpoint",
        ck,
        "--resume",
    ];
    let mut rounds = 0;
    loop {
        let (code, v) = json(&args);
        rounds += 1;
        if code == 0 {
            assert_eq!(v["result"]["search"]["ar"], 6);
            break;
        }
        assert_eq!(code, 4);
        assert!(std::path::Path::new(ck).exists());
        assert!(rounds < 100);
    }
    assert!(rounds > 1);
    assert!(!std::path::Path::new(ck).exists());
}

#[test]
fn workers_from_environment() {
    let out = bin()
        .env("RAINBOWLAB_WORKERS", "3")
        .args(["--format", "json", "verify-moon", "--n-max", "5"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["workers"], 3);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn graph_commands() {
    let (_, v) = json(&["i3", "Bw"]);
    assert_eq!(v["result"]["i3"], 1);
    let (_, v) = json(&["matching", "Bw"]);
    assert_eq!(v["result"]["matching_number"], 1);
    let (_, v) = json(&["encode", "petersen"]);
    let g6 = v["result"]["graph"]["graph6"].as_str().unwrap().to_string();
    let (_, v) = json(&["decode", &g6]);
    assert_eq!(v["result"]["graph"]["edges"], 15);
    assert_eq!(v["result"]["graph"]["n"], 10);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p3.txt");
    std::fs::write(&path, "3\n0 1\n1 2\n").unwrap();
    let (code, v) = json(&["encode", "--edges", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["graph"]["graph6"], "Bg");
}

#[test]
fn censuses_pass() {
    for cmd in ["verify-moon", "verify-gamma"] {
        let (code, v) = json(&[cmd, "--n-max", "7", "--workers", "2"]);
        assert_eq!(code, 0, "{cmd}");
        assert_eq!(v["result"]["passed"], true);
    }
    let (code, v) = json(&["verify-moon", "--n-max", "9", "--samples", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["census"]["graphs_examined"], 1252 + 40);
    let (code, v) = json(&["verify-pairs", "--instances", "100", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["suite"]["checked"], 100);
}

#[test]
fn single_graph_pairs_extraction() {
    let (_, v) = json(&["encode", "bipartite:25:35"]);
    let g6 = v["result"]["graph"]["graph6"].as_str().unwrap().to_string();
    let (code, v) = json(&["verify-pairs", "--graph", &g6]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["extraction"]["x"].as_array().unwrap().len(), 35);
    let (_, v) = json(&["encode", "bipartite:10:50"]);
    let g6 = v["result"]["graph"]["graph6"].as_str().unwrap().to_string();
    assert_eq!(
        run(&["verify-pairs", "--graph", &g6]).status.code(),
        Some(2)
    );
}
