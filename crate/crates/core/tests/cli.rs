//! End-to-end runs of the `ilt` binary.

use std::path::Path;
use std::process::{Command, Output};

fn ilt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ilt"))
        .current_dir(dir)
        .env_remove("ILT_BUDGET_NODES")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    for out in ["a", "b"] {
        let o = ilt(p, &["generate", "--seed-graph", "c4", "--t", "3", "--output-dir", out]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    for t in 0..=3 {
        for ext in ["txt", "lineage"] {
            let name = format!("g{t}.{ext}");
            let a = std::fs::read(p.join("a").join(&name)).unwrap();
            let b = std::fs::read(p.join("b").join(&name)).unwrap();
            assert_eq!(a, b, "{name}");
        }
    }
    let g3 = std::fs::read_to_string(p.join("a/g3.txt")).unwrap();
    assert!(g3.starts_with("# ilt generate config-sha256="));
    let g3 = ilt::Graph::parse_text(&g3).unwrap();
    assert_eq!((g3.node_count(), g3.edge_count()), (32, 184));
}

#[test]
fn random_generation_depends_on_seed_only() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let run = |out: &str, seed: &str| {
        let o = ilt(p, &["generate", "--delta", "0.5", "--t", "6", "--rng-seed", seed, "--output-dir", out]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read_to_string(p.join(out).join("h6.txt")).unwrap()
    };
    let a = run("a", "3");
    assert_eq!(a, run("b", "3"));
    assert_ne!(a, run("c", "4"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(code(&ilt(p, &["frobnicate"])), 2);
    assert_eq!(code(&ilt(p, &["metrics", "--delta", "2"])), 2);
    assert_eq!(code(&ilt(p, &["metrics", "--seed-graph", "no-such-seed"])), 2);
    assert_eq!(code(&ilt(p, &["metrics", "--t", "30", "--max-nodes", "1000"])), 3);
    assert_eq!(code(&ilt(p, &["verify", "--only", "nonexistent"])), 2);
    assert_eq!(code(&ilt(p, &["metrics", "--t", "2"])), 0);
}

#[test]
fn verify_passes_and_detects_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let ok = ilt(p, &["verify", "--only", "1,2,7"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));
    let bad = ilt(p, &["verify", "--only", "1,2,7", "--perturb", "add-edge", "--json"]);
    assert_eq!(code(&bad), 1);
    let json: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(json["command"], "verify");
    assert!(json["config_sha256"].as_str().is_some_and(|h| h.len() == 64));
    let entries = json["report"]["entries"].as_array().unwrap();
    assert!(entries.iter().any(|e| e["status"] == "FAIL"));
}

#[test]
fn sweep_writes_csv_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = ilt(p, &["sweep", "--seed-graph", "c4", "--t", "8", "--plot", "densification", "--output-dir", "out"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(p.join("out/densification.svg")).unwrap();
    assert!(svg.contains("<svg") && svg.contains("config-sha256="));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.lines().filter(|l| !l.starts_with('#')).count() >= 10);
}

#[test]
fn degree_dist_counts_all_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let o = ilt(dir.path(), &["degree-dist", "--seed-graph", "k1", "--t", "10"]);
    assert_eq!(code(&o), 0);
    let total: u64 = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("degree"))
        .map(|l| l.split(',').nth(1).unwrap().trim().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 1024);
}

#[test]
fn config_file_below_flags() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("exp.conf"), "seed_graph = k2\nt_max = 2\n").unwrap();
    let a = ilt(p, &["metrics", "--config", "exp.conf"]);
    let b = ilt(p, &["metrics", "--seed-graph", "k2", "--t", "2"]);
    let c = ilt(p, &["metrics", "--config", "exp.conf", "--t", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}
