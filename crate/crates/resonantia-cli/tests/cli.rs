//! End-to-end tests driving the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

use resonantia::{canonical_form, construct_nanotube, read_graphs_from_path};
use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_resonantia"));
    cmd.args(args);
    for (key, val) in env {
        cmd.env(key, val);
    }
    cmd.output().expect("binary should launch")
}

fn run_ok(args: &[&str], env: &[(&str, &Path)]) -> (String, String) {
    let out = run(args, env);
    assert!(
        out.status.success(),
        "command {:?} failed:\n{}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Parses one JSON document per line, skipping blanks.
fn json_lines(text: &str) -> Vec<Value> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| serde_json::from_str(line).expect("line should be JSON"))
        .collect()
}

#[test]
fn generate_and_nanotube_write_readable_files() {
    let dir = tempfile::tempdir().unwrap();
    let iso = dir.path().join("iso24.pc");
    let tube = dir.path().join("tube2.pc");

    run_ok(&["generate", "--n", "24", "--out", iso.to_str().unwrap()], &[]);
    let graphs = read_graphs_from_path(&iso).unwrap();
    assert_eq!(graphs.len(), 1);
    assert_eq!(graphs[0].n(), 24);

    run_ok(&["nanotube", "--k", "2", "--out", tube.to_str().unwrap()], &[]);
    let tubes = read_graphs_from_path(&tube).unwrap();
    assert_eq!(tubes.len(), 1);
    assert_eq!(
        canonical_form(&tubes[0]),
        canonical_form(&construct_nanotube(2).unwrap())
    );

    // 22 vertices admit no isomer; the file is legitimately empty.
    let empty = dir.path().join("iso22.pc");
    let (_, stderr) = run_ok(&["generate", "--n", "22", "--out", empty.to_str().unwrap()], &[]);
    assert!(stderr.contains("0 isomer(s)"));
    assert!(read_graphs_from_path(&empty).unwrap().is_empty());
}

#[test]
fn classify_reports_substructures_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let tube = dir.path().join("tube1.pc");
    run_ok(&["nanotube", "--k", "1", "--out", tube.to_str().unwrap()], &[]);

    let (stdout, _) = run_ok(&["classify", "--in", tube.to_str().unwrap()], &[]);
    let lines = json_lines(&stdout);
    assert_eq!(lines.len(), 1);
    let entry = &lines[0];
    assert_eq!(entry["n"], 30);
    assert_eq!(entry["ipr"], false);
    assert_eq!(entry["has_L"], true);
    assert_eq!(entry["has_R"], true);

    let l = &entry["witnesses"]["l"];
    assert_eq!(l["kind"], "L");
    assert_eq!(l["faces"].as_array().unwrap().len(), 4);
    assert!(l["anchor"]["face"].is_u64());

    let r = &entry["witnesses"]["r"];
    assert_eq!(r["kind"], "R");
    assert_eq!(r["faces"].as_array().unwrap().len(), 3);
    assert!(r["anchor"]["vertex"].is_u64());
}

#[test]
fn cuts_report_connectivity_and_tube_waists() {
    let dir = tempfile::tempdir().unwrap();
    let tube = dir.path().join("tube1.pc");
    run_ok(&["nanotube", "--k", "1", "--out", tube.to_str().unwrap()], &[]);

    let (stdout, _) = run_ok(
        &[
            "cuts",
            "--in",
            tube.to_str().unwrap(),
            "--check-clambda",
            "--find-nontrivial5",
        ],
        &[],
    );
    let lines = json_lines(&stdout);
    assert_eq!(lines.len(), 1);
    let entry = &lines[0];
    assert_eq!(entry["clambda"], 5);
    assert_eq!(entry["nontrivial_5_cut"], true);
    let edges = entry["nontrivial_5_cut_edges"].as_array().unwrap();
    assert_eq!(edges.len(), 5);
    for pair in edges {
        assert_eq!(pair.as_array().unwrap().len(), 2);
    }
}

#[test]
fn matchings_respond_to_vertex_deletions() {
    let dir = tempfile::tempdir().unwrap();
    let tube = dir.path().join("tube1.pc");
    run_ok(&["nanotube", "--k", "1", "--out", tube.to_str().unwrap()], &[]);

    // Intact graph: a perfect matching covers all 30 vertices.
    let (stdout, _) = run_ok(&["match", "--in", tube.to_str().unwrap()], &[]);
    let full = &json_lines(&stdout)[0];
    let edges = full["perfect_matching"].as_array().unwrap();
    assert_eq!(edges.len(), 15);
    let mut seen = vec![false; 30];
    for pair in edges {
        for end in pair.as_array().unwrap() {
            let v = end.as_u64().unwrap() as usize;
            assert!(!seen[v], "vertex {v} matched twice");
            seen[v] = true;
        }
    }
    assert!(seen.iter().all(|&s| s));

    // Odd remainder: no perfect matching exists.
    let (stdout, _) = run_ok(
        &["match", "--in", tube.to_str().unwrap(), "--delete", "0"],
        &[],
    );
    let odd = &json_lines(&stdout)[0];
    assert_eq!(odd["deleted"], serde_json::json!([0]));
    assert!(odd["perfect_matching"].is_null());

    // Both ends of an edge removed: the rest still matches perfectly.
    let neighbor = construct_nanotube(1).unwrap().neighbors(0)[0];
    let pair_arg = format!("0,{neighbor}");
    let (stdout, _) = run_ok(
        &["match", "--in", tube.to_str().unwrap(), "--delete", &pair_arg],
        &[],
    );
    let pair = &json_lines(&stdout)[0];
    let edges = pair["perfect_matching"].as_array().unwrap();
    assert_eq!(edges.len(), 14);
    for e in edges {
        for end in e.as_array().unwrap() {
            let v = end.as_u64().unwrap() as usize;
            assert!(v != 0 && v != neighbor);
        }
    }

    // Vertex ids past n-1 are rejected.
    let bad = run(
        &["match", "--in", tube.to_str().unwrap(), "--delete", "99"],
        &[],
    );
    assert!(!bad.status.success());
}

#[test]
fn resonance_reports_failures_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();

    // The single 26-vertex isomer is 1-resonant but not 2-resonant.
    let iso26 = dir.path().join("iso26.pc");
    run_ok(&["generate", "--n", "26", "--out", iso26.to_str().unwrap()], &[]);
    let report = dir.path().join("report.json");
    run_ok(
        &[
            "resonance",
            "--in",
            iso26.to_str().unwrap(),
            "--k",
            "2",
            "--report",
            report.to_str().unwrap(),
        ],
        &[],
    );
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let entries = doc.as_array().unwrap();
    assert_eq!(entries.len(), 1);
    let entry = &entries[0];
    assert_eq!(entry["n"], 26);
    assert_eq!(entry["resonant"], false);
    let walks = entry["failing_pattern"].as_array().unwrap();
    assert_eq!(walks.len(), 2, "the failure is a pair of hexagons");
    for walk in walks {
        assert_eq!(walk.as_array().unwrap().len(), 6);
    }
    assert!(entry.get("witness_edges").is_none());

    // The 24-vertex isomer is resonant at k=2 and comes with a witness.
    let iso24 = dir.path().join("iso24.pc");
    run_ok(&["generate", "--n", "24", "--out", iso24.to_str().unwrap()], &[]);
    let (stdout, _) = run_ok(&["resonance", "--in", iso24.to_str().unwrap(), "--k", "2"], &[]);
    let doc: Value = serde_json::from_str(&stdout).unwrap();
    let entry = &doc.as_array().unwrap()[0];
    assert_eq!(entry["resonant"], true);
    assert!(entry.get("failing_pattern").is_none());
    assert!(!entry["witness_edges"].as_array().unwrap().is_empty());
}

#[test]
fn verify_census_round_trips_with_goldens_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let golden = dir.path().join("golden");
    let report = dir.path().join("report.jsonl");
    std::fs::create_dir(&cache).unwrap();

    let base = [
        "verify", "--n-min", "20", "--n-max", "26", "--k", "2",
    ];
    let mut freeze: Vec<&str> = base.to_vec();
    let golden_str = golden.to_str().unwrap().to_owned();
    let report_str = report.to_str().unwrap().to_owned();
    freeze.extend(["--out", &report_str, "--golden", &golden_str, "--freeze-golden"]);
    let (_, stderr) = run_ok(&freeze, &[("RESONANTIA_CACHE", cache.as_path())]);
    assert!(stderr.contains("frozen"), "stderr: {stderr}");

    // The cache now holds one isomer file per order in the range.
    for n in [20u32, 22, 24, 26] {
        assert!(cache.join(format!("isomers_{n:03}.pc")).is_file());
    }

    // Report: one record line per isomer plus a summary tail line.
    let lines = json_lines(&std::fs::read_to_string(&report).unwrap());
    let summary = lines.last().unwrap();
    let tallies = summary["tallies"].as_array().unwrap();
    assert_eq!(tallies.len(), 4);
    assert_eq!(summary["config"]["k"], 2);
    let isomer_total: u64 = tallies.iter().map(|t| t["isomers"].as_u64().unwrap()).sum();
    assert_eq!(lines.len() as u64, isomer_total + 1);
    for record in &lines[..lines.len() - 1] {
        assert!(record["code"].is_string());
        assert_eq!(record["cyclic_edge_connectivity"], 5);
    }

    // A clean re-run against the frozen files agrees.
    let mut diff: Vec<&str> = base.to_vec();
    diff.extend(["--golden", &golden_str]);
    let (_, stderr) = run_ok(&diff, &[("RESONANTIA_CACHE", cache.as_path())]);
    assert!(stderr.contains("golden files match"), "stderr: {stderr}");

    // Tampering with a frozen file makes the same run fail.
    std::fs::write(golden.join("exceptional.txt"), "20 deadbeef\n").unwrap();
    let out = run(&diff, &[("RESONANTIA_CACHE", cache.as_path())]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("exceptional"), "stderr: {stderr}");
}

#[test]
fn unreadable_input_fails_cleanly() {
    let out = run(&["classify", "--in", "/no/such/file.pc"], &[]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("reading"));
}
