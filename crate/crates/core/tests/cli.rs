//! CLI-level tests: report shapes, exit codes, DOT output and byte-for-byte
//! determinism across worker counts (the criterion-7 gate).

use std::process::{Command, Output};

fn sdslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdslab"))
        .args(args)
        .env_remove("SDSLAB_LIMITS")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = sdslab(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn criterion_7_determinism_across_jobs() {
    // criteria 1-5 inputs, run with different worker counts
    let cases: Vec<Vec<&str>> = vec![
        vec!["counts", "--graph", "circ:4"],
        vec!["counts", "--graph", "complete:4"],
        vec![
            "classify",
            "--graph",
            "circ:4",
            "--rule",
            "nor",
            "--words",
            "all-permutations",
            "--relation",
            "cycle",
        ],
        vec![
            "classify",
            "--graph",
            "circ:4",
            "--rule",
            "nor",
            "--words",
            "all-permutations",
            "--relation",
            "functional",
        ],
        vec!["omega", "--graph", "star:5", "--rule", "threshold:2"],
        vec!["scan", "--n-min", "4", "--n-max", "6"],
        vec!["rho", "--graph", "circ:4", "--rule", "nor"],
    ];
    for case in &cases {
        let mut with_one = case.clone();
        with_one.extend(["--jobs", "1"]);
        let mut with_four = case.clone();
        with_four.extend(["--jobs", "4"]);
        let a = stdout_of(&with_one);
        let b = stdout_of(&with_four);
        assert_eq!(a, b, "output differs across --jobs for {case:?}");
        assert!(!a.contains("\"jobs\""), "report embeds the worker count");
    }
    println!("[PASS] criterion 7: byte-identical reports across --jobs 1 and --jobs 4 on 7 commands");
}

#[test]
fn counts_report_values_and_envelope() {
    let text = stdout_of(&["counts", "--graph", "circ:4"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["alpha"], 14);
    assert_eq!(v["kappa"], 3);
    assert_eq!(v["alpha_bar"], 3);
    assert_eq!(v["kappa_bar"], 2);
    assert_eq!(v["all_checks_passed"], true);
    assert_eq!(v["command"], "counts");
    assert_eq!(v["config"]["graph"], "circ:4");
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["config"]["limits"]["edges"], 24);
    assert!(v["version"].as_str().is_some());
}

#[test]
fn classify_cycle_classes() {
    let text = stdout_of(&[
        "classify",
        "--graph",
        "circ:4",
        "--rule",
        "nor",
        "--words",
        "all-permutations",
        "--relation",
        "cycle",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["class_count"], 2);
    let classes = v["classes"].as_array().unwrap();
    let sizes: Vec<u64> = classes.iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes.iter().sum::<u64>(), 24);
    assert_eq!(v["bounds"]["class_count_within_kappa"], true);
}

#[test]
fn classify_functional_sharpness_flag() {
    let text = stdout_of(&[
        "classify",
        "--graph",
        "circ:4",
        "--rule",
        "nor",
        "--words",
        "all-permutations",
        "--relation",
        "functional",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["class_count"], 14);
    assert_eq!(v["bounds"]["alpha_bound_sharp"], true);
    assert_eq!(v["bounds"]["class_count_within_alpha"], true);
}

#[test]
fn omega_star_report() {
    let text = stdout_of(&["omega", "--graph", "star:5", "--rule", "threshold:2"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["omega_max"], 12);
    assert_eq!(v["argmax"], serde_json::json!([30]));
    assert_eq!(v["argmax_states"], serde_json::json!(["01111"]));
    assert!(v["star_note"].as_str().unwrap().contains("matches"));
    assert_eq!(v["per_state"].as_array().unwrap().len(), 32);
}

#[test]
fn rho_report_nor() {
    let text = stdout_of(&["rho", "--graph", "circ:4", "--rule", "nor"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rho"], "1");
    assert_eq!(
        v["independence"]["verdict"],
        "independent-over-tested-words"
    );
    assert_eq!(v["independence"]["witness"], serde_json::Value::Null);
    // default policy samples complete words on top of the transversal
    assert_eq!(v["independence"]["words_tested"], 14 + 200);
}

#[test]
fn rho_report_dependent_rule_has_witness() {
    let text = stdout_of(&[
        "rho",
        "--graph",
        "circ:5",
        "--rule",
        "eca:23",
        "--words",
        "transversal",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rho"], "1/3");
    assert_eq!(v["independence"]["verdict"], "dependent");
    assert!(v["independence"]["witness"].is_array());
}

#[test]
fn scan_csv_summary() {
    let text = stdout_of(&["scan", "--n-min", "4", "--n-max", "4", "--jobs", "2"]);
    assert!(text.starts_with("# sdslab"));
    assert!(text.contains("rule,n,verdict,rho,per_size_min,per_size_max"));
    assert!(text.contains("# pass_count n=4: 104"));
    // rule 0: constant zero, one fixed point
    assert!(text.contains("0,4,independent,1,1,1"));
    // rule 23 is dependent at n=4 with rho = 1/7
    assert!(text.contains("23,4,dependent,1/7,"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 257);
}

#[test]
fn export_dot_graph_orientation_phase() {
    let g = stdout_of(&["export-dot", "--graph", "circ:4"]);
    assert!(g.starts_with("graph Y {"));
    assert!(g.contains("1 -- 2;"));

    let o = stdout_of(&[
        "export-dot",
        "--graph",
        "circ:4",
        "--orientation",
        "1,2,3,4",
    ]);
    assert!(o.starts_with("digraph O {"));
    assert!(o.contains("1 -> 2;"));
    assert!(o.contains("1 -> 4;"));

    let p = stdout_of(&[
        "export-dot",
        "--graph",
        "circ:4",
        "--rule",
        "nor",
        "--word",
        "1,2,3,4",
    ]);
    assert!(p.starts_with("digraph phase {"));
    assert!(p.contains("s0 [label=\"0000\"];"));
    assert!(p.contains("s0 -> s5;"));
}

#[test]
fn error_paths_and_exit_codes() {
    // generator below minimum
    let out = sdslab(&["counts", "--graph", "circ:2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 3"));

    // unknown rule
    let out = sdslab(&["classify", "--graph", "circ:4", "--rule", "wat"]);
    assert!(!out.status.success());

    // capacity error names the flag
    let out = sdslab(&["counts", "--graph", "complete:8"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--limit-edges"));

    // automorphism search capacity names its override
    let out = sdslab(&["counts", "--graph", "path:13"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("aut"));

    // eca scan range guard
    let out = sdslab(&["scan", "--n-min", "3", "--n-max", "4"]);
    assert!(!out.status.success());
}

#[test]
fn edge_list_file_and_parse_error_line() {
    let dir = std::env::temp_dir().join(format!("sdslab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.edges");
    std::fs::write(&good, "n 4\n1 2\n2 3\n3 4\n1 4\n").unwrap();
    let spec = format!("file:{}", good.display());
    let text = stdout_of(&["counts", "--graph", &spec]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["alpha"], 14);

    let bad = dir.join("bad.edges");
    std::fs::write(&bad, "1 2\n3 3\n").unwrap();
    let spec = format!("file:{}", bad.display());
    let out = sdslab(&["counts", "--graph", &spec]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "stderr: {err}");
    assert!(err.contains("self-loop"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn words_file_and_single_word_class() {
    let dir = std::env::temp_dir().join(format!("sdslab-words-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let words = dir.join("words.txt");
    std::fs::write(&words, "1,2,3,4\n").unwrap();
    let spec = format!("file:{}", words.display());
    let text = stdout_of(&[
        "classify",
        "--graph",
        "circ:4",
        "--rule",
        "nor",
        "--words",
        &spec,
        "--relation",
        "cycle",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["class_count"], 1);
    assert_eq!(v["classes"][0]["cycle_type"], serde_json::json!([7]));
    assert_eq!(
        v["classes"][0]["orientation"],
        serde_json::json!(["1->2", "1->4", "2->3", "3->4"])
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classify_sampled_words_mixes_permutations_and_complete_words() {
    let text = stdout_of(&[
        "classify",
        "--graph",
        "circ:4",
        "--rule",
        "nor",
        "--words",
        "sampled:10",
        "--relation",
        "cycle",
        "--seed",
        "5",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    // 14 transversal words plus 10 sampled complete words
    let classes = v["classes"].as_array().unwrap();
    let total: u64 = classes.iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 24);
    // permutation classes still present; non-permutation representatives
    // carry no orientation
    assert!(v["class_count"].as_u64().unwrap() >= 2);
    assert_eq!(v["config"]["words"], "sampled:10");
}

#[test]
fn limits_env_override() {
    // lowering the edge limit through the environment makes circ:4 fail
    let out = Command::new(env!("CARGO_BIN_EXE_sdslab"))
        .args(["counts", "--graph", "circ:4"])
        .env("SDSLAB_LIMITS", "edges=3")
        .output()
        .expect("binary runs");
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit 3"));

    // the CLI flag takes precedence over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_sdslab"))
        .args(["counts", "--graph", "circ:4", "--limit-edges", "24"])
        .env("SDSLAB_LIMITS", "edges=3")
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["config"]["limits"]["edges"], 24);
    assert_eq!(v["alpha"], 14);
}

#[test]
fn fln_weights_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("sdslab-fln-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let weights = dir.join("w.txt");
    std::fs::write(&weights, "1 2 1\n1 3 1\n1 4 -1/2\n").unwrap();
    let text = stdout_of(&[
        "omega",
        "--graph",
        "star:4",
        "--rule",
        "fln:1",
        "--weights",
        weights.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["omega_max"].as_u64().unwrap() >= 1);
    assert_eq!(v["per_state"].as_array().unwrap().len(), 81);
    std::fs::remove_dir_all(&dir).ok();
}
