//! End-to-end checks of the binary: subcommand output shapes, the exit-code
//! contract, and file round-trips.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_power-index"))
}

fn run_ok(args: &[&str]) -> String {
    let output = bin().args(args).output().expect("binary runs");
    assert!(
        output.status.success(),
        "args {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).unwrap()
}

fn run_expecting(args: &[&str], code: i32) -> Output {
    let output = bin().args(args).output().expect("binary runs");
    assert_eq!(
        output.status.code(),
        Some(code),
        "args {args:?}: stderr {}",
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text.trim()).expect("valid JSON")
}

fn write_bowtie(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("bowtie.json");
    std::fs::write(
        &path,
        r#"{"n":5,"edges":[[0,1],[0,2],[1,2],[2,3],[2,4],[3,4]]}"#,
    )
    .unwrap();
    path
}

#[test]
fn generate_writes_canonical_json() {
    let out = run_ok(&["generate", "gjn", "--j", "3", "--n", "2"]);
    assert!(out.ends_with('\n'));
    let value = json(&out);
    assert_eq!(value["n"], 21);
    assert_eq!(value["edges"].as_array().unwrap().len(), 102);
    assert_eq!(value["labels"]["0"]["kind"], "clique_level");

    let again = run_ok(&["generate", "gjn", "--j", "3", "--n", "2"]);
    assert_eq!(out, again, "generation must be byte-stable");
}

#[test]
fn generate_rejects_bad_parameters() {
    let output = run_expecting(&["generate", "cycle", "--n", "2"], 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("invalid size"));
}

#[test]
fn run_reports_the_bowtie_orbit() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_bowtie(dir.path());
    let out = run_ok(&[
        "run",
        "--graph",
        graph.to_str().unwrap(),
        "--seed",
        "DDDCC",
        "--w",
        "1/2",
    ]);
    let value = json(&out);
    assert_eq!(value["transient"], 0);
    assert_eq!(value["period"], 2);
    assert_eq!(value["classification"], "periodic");
    assert_eq!(value["semantics"], "strict");
    assert_eq!(value["w"], "1/2");

    // identical invocations produce identical bytes
    assert_eq!(
        out,
        run_ok(&[
            "run",
            "--graph",
            graph.to_str().unwrap(),
            "--seed",
            "DDDCC",
            "--w",
            "1/2",
        ])
    );
}

#[test]
fn run_honours_the_inclusive_mode() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("tail.json");
    std::fs::write(
        &graph,
        r#"{"n":6,"edges":[[0,1],[1,2],[2,3],[2,4],[3,5],[4,5]]}"#,
    )
    .unwrap();
    let strict = json(&run_ok(&[
        "run",
        "--graph",
        graph.to_str().unwrap(),
        "--seed",
        "CCDDDD",
        "--w",
        "1/2",
    ]));
    assert_eq!(strict["period"], 2);

    let inclusive = json(&run_ok(&[
        "run",
        "--graph",
        graph.to_str().unwrap(),
        "--seed",
        "CCDDDD",
        "--w",
        "1/2",
        "--semantics",
        "inclusive",
    ]));
    assert_eq!(inclusive["transient"], 1);
    assert_eq!(inclusive["period"], 1);
    assert_eq!(inclusive["semantics"], "inclusive");
}

#[test]
fn run_writes_trace_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_bowtie(dir.path());
    let trace = dir.path().join("trace.jsonl");
    let dot = dir.path().join("final.dot");
    run_ok(&[
        "run",
        "--graph",
        graph.to_str().unwrap(),
        "--seed",
        "DDDCC",
        "--w",
        "1/2",
        "--trace",
        trace.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = trace_text.lines().collect();
    assert_eq!(lines.len(), 3, "seed, step, and the closing repeat");
    let first = json(lines[0]);
    assert_eq!(first["t"], 0);
    assert_eq!(first["config"], "DDDCC");
    assert_eq!(first["powers"][3], "1/2");
    assert_eq!(first["changed"].as_array().unwrap().len(), 0);
    let second = json(lines[1]);
    assert_eq!(second["config"], "DDCCC");
    assert_eq!(second["changed"], serde_json::json!([2]));

    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.contains("2 [style=filled, fillcolor=white"));
}

#[test]
fn run_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_bowtie(dir.path());
    let graph = graph.to_str().unwrap();

    // decimal w is a usage error
    run_expecting(&["run", "--graph", graph, "--seed", "DDDCC", "--w", "0.5"], 2);
    // w outside [1/2, 1)
    run_expecting(&["run", "--graph", graph, "--seed", "DDDCC", "--w", "1/3"], 2);
    // seed length mismatch
    run_expecting(&["run", "--graph", graph, "--seed", "DD", "--w", "1/2"], 2);
    // missing seed source
    run_expecting(&["run", "--graph", graph, "--w", "1/2"], 2);
    // exhausted budget is inconclusive, not an error report
    let output = run_expecting(
        &["run", "--graph", graph, "--seed", "DDDCC", "--w", "1/2", "--budget", "1"],
        3,
    );
    let note = json(&String::from_utf8(output.stdout).unwrap());
    assert_eq!(note["inconclusive"], true);
}

#[test]
fn partition_matches_the_documented_shape() {
    let out = run_ok(&["partition", "--cycle", "5"]);
    assert_eq!(
        out,
        "{\"breakpoints\":[\"2/3\"],\"parts\":[{\"lo\":\"1/2\",\"hi\":\"2/3\",\
         \"representative\":\"1/2\"},{\"lo\":\"2/3\",\"hi\":\"1\",\"representative\":\"2/3\"}]}\n"
    );
}

#[test]
fn sweep_finds_no_periodic_seed_on_the_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let out = run_ok(&[
        "sweep",
        "--cycle",
        "8",
        "--all-w",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    let value = json(&out);
    assert_eq!(value["graph_id"], "cycle-8");
    let runs = value["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 2);
    for run in runs {
        assert_eq!(run["periodic"], 0);
        assert_eq!(run["stable"], 256);
    }
    let rows = std::fs::read_to_string(&csv).unwrap();
    // two sweeps, each a header plus 256 rows
    assert_eq!(rows.lines().count(), 2 * 257);
}

#[test]
fn wave_check_verdict_equal() {
    let out = run_ok(&["wave-check", "--n", "8", "--steps", "64"]);
    let value = json(&out);
    assert_eq!(value["verdict"], "equal");
    assert_eq!(value["divergence"], serde_json::Value::Null);
}

#[test]
fn rule90_period_and_orbit() {
    let period = json(&run_ok(&["rule90", "--n", "6"]));
    assert_eq!(period["period"], 2);
    assert_eq!(period["transient"], 1);

    let orbit = run_ok(&["rule90", "--n", "6", "--steps", "3"]);
    let lines: Vec<serde_json::Value> = orbit.lines().map(json).collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["cells"], "100000");
    assert_eq!(lines[1]["cells"], "010001");
    assert_eq!(lines[2]["live_count"], 2);

    let seeded = run_ok(&["rule90", "--n", "5", "--steps", "1", "--seed", "00100"]);
    assert_eq!(json(seeded.lines().last().unwrap())["cells"], "01010");
}

#[test]
fn shapley_reports_uniform_powers() {
    let value = json(&run_ok(&["shapley", "--voters", "5", "--quota", "3"]));
    assert_eq!(value["powers"].as_array().unwrap().len(), 5);
    assert_eq!(value["powers"][0], "1/5");
}

#[test]
fn generated_files_feed_every_consumer() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.json");
    run_ok(&[
        "generate",
        "gjn",
        "--j",
        "3",
        "--n",
        "2",
        "--out",
        chain.to_str().unwrap(),
    ]);
    let chain = chain.to_str().unwrap();

    let run = json(&run_ok(&[
        "run", "--graph", chain, "--seed-op", "gjn-c", "--w", "1/2",
    ]));
    assert_eq!(run["classification"], "collaborator_dominant");
    assert_eq!(run["transient"], 2);

    let partition = json(&run_ok(&["partition", "--graph", chain]));
    assert!(!partition["breakpoints"].as_array().unwrap().is_empty());

    let cycle = dir.path().join("cycle.json");
    run_ok(&["generate", "cycle", "--n", "6", "--out", cycle.to_str().unwrap()]);
    let sweep = json(&run_ok(&[
        "sweep",
        "--graph",
        cycle.to_str().unwrap(),
        "--w",
        "1/2",
    ]));
    assert_eq!(sweep["graph_id"], "cycle");
    assert_eq!(sweep["runs"][0]["periodic"], 0);
}

#[test]
fn edge_list_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.txt");
    std::fs::write(&path, "n 3\n0 1\n0 2\n1 2\n").unwrap();
    let run = json(&run_ok(&[
        "run",
        "--graph",
        path.to_str().unwrap(),
        "--seed",
        "CCD",
        "--w",
        "1/2",
    ]));
    assert_eq!(run["classification"], "collaborator_dominant");
}

#[test]
fn prism_and_ring_seed_ops() {
    let layered = json(&run_ok(&[
        "run", "--prism", "5", "--seed-op", "layered", "--w", "1/2",
    ]));
    assert_eq!(layered["period"], 2);

    let wave = json(&run_ok(&[
        "run", "--hn", "8", "--seed-op", "base-wave", "--w", "1/2",
    ]));
    assert_eq!(wave["period"], 1);
    assert_eq!(wave["classification"], "mixed_stable");

    let random = json(&run_ok(&[
        "run", "--cycle", "9", "--random", "1/3", "--rng-seed", "7", "--w", "2/3",
    ]));
    assert_eq!(random["period"], 1);
}

#[test]
fn graph_source_must_be_unique() {
    run_expecting(&["partition", "--cycle", "5", "--path", "4"], 2);
    run_expecting(&["partition"], 2);
}
