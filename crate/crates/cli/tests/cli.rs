use std::path::{Path, PathBuf};
use std::process::Command;

use kuniform::{fixtures, format};
use kuniform_cli::{exit, run_args};

fn fixture(name: &str) -> String {
    fixtures::dir().join(name).display().to_string()
}

fn run(args: &[&str]) -> (String, u8) {
    run_args(std::iter::once("kuniform").chain(args.iter().copied()))
}

fn field<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    out.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn seven_qubit_generators_pass() {
    let (out, code) = run(&["verify-gen", &fixture("qubit_7_4.gen")]);
    assert_eq!(code, exit::OK, "{out}");
    assert_eq!(field(&out, "(c) uniformity k=4"), Some("PASS"));
    assert_eq!(field(&out, "max_k"), Some("4"));
    assert_eq!(field(&out, "purity"), Some("1/8"));

    let (out, code) = run(&["verify-gen", &fixture("qubit_7_4.gen"), "--quantum"]);
    assert_eq!(code, exit::OK, "{out}");
    assert!(!out.contains("FAIL"), "{out}");
}

#[test]
fn dependent_generators_fail_independence() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "dup.gen", "gen 2 3\n1 1 1\n1 1 1\n");
    let (out, code) = run(&["verify-gen", path.to_str().unwrap()]);
    assert_eq!(code, exit::FAILED, "{out}");
    assert_eq!(field(&out, "(b) independent"), Some("FAIL"));
}

#[test]
fn asking_for_too_much_uniformity_fails() {
    let (out, code) = run(&["verify-gen", &fixture("qubit_7_4.gen"), "--k", "5"]);
    assert_eq!(code, exit::FAILED, "{out}");
    assert_eq!(field(&out, "(c) uniformity k=5"), Some("FAIL"));
}

#[test]
fn malformed_input_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = write(dir.path(), "short.oa", "oa 16 5 2 4\n0 0 0 0 0\n");
    let (_, code) = run(&["verify-oa", truncated.to_str().unwrap()]);
    assert_eq!(code, exit::PARSE);
    let (_, code) = run(&["verify-oa", dir.path().join("missing.oa").to_str().unwrap()]);
    assert_eq!(code, exit::PARSE);
    let (_, code) = run(&["verify-oa"]);
    assert_eq!(code, exit::PARSE);
}

#[test]
fn golay_array_measurements() {
    let dir = tempfile::tempdir().unwrap();
    let golay = fixtures::code(fixtures::GOLAY_11).unwrap();
    let path = write(dir.path(), "golay.oa", &format::write_oa(&golay));
    let p = path.to_str().unwrap();
    let (out, code) = run(&["verify-oa", p, "--strength", "4", "--md", "6", "--irredundant", "4"]);
    assert_eq!(code, exit::OK, "{out}");
    assert_eq!(field(&out, "measured strength"), Some("4"));
    assert_eq!(field(&out, "measured md"), Some("6"));
    let (out, code) = run(&["verify-oa", p, "--md", "7"]);
    assert_eq!(code, exit::FAILED, "{out}");
}

#[test]
fn printed_scheme_verifies() {
    let (out, code) = run(&["verify-ds", &fixture("ds_16_6_4.ds")]);
    assert_eq!(code, exit::OK, "{out}");
    assert_eq!(field(&out, "expanded array"), Some("OA(64,6,4,3)"));
    assert_eq!(field(&out, "purity"), Some("1/16"));
}

#[test]
fn recipes_report_exact_purities() {
    let cases = [
        ("complement-pair", "1/2", "3"),
        ("printed-scheme-inner", "1/16", "3"),
        ("shift", "1/4", "3"),
    ];
    for (recipe, purity, k) in cases {
        let (out, code) = run(&["state", "--recipe", recipe, "--check-k", k]);
        assert_eq!(code, exit::OK, "{recipe}: {out}");
        assert_eq!(field(&out, "purity"), Some(purity), "{recipe}");
        assert_eq!(field(&out, &format!("{k}-uniform")), Some("PASS"), "{recipe}");
    }
    let (out, code) = run(&["state", "--recipe", "complement-pair", "--check-k", "4"]);
    assert_eq!(code, exit::FAILED, "{out}");
}

#[test]
fn partition_files_round_trip_through_state() {
    let dir = tempfile::tempdir().unwrap();
    let p = kuniform::recipes::shift_partition().unwrap();
    let oa = write(dir.path(), "parent.oa", &format::write_oa(p.parent()));
    let part = write(dir.path(), "blocks.part", &format::write_partition(&p));
    let export = dir.path().join("mix.state");
    let (out, code) = run(&[
        "state",
        "--from-partition",
        oa.to_str().unwrap(),
        part.to_str().unwrap(),
        "--check-k",
        "3",
        "--export",
        export.to_str().unwrap(),
    ]);
    assert_eq!(code, exit::OK, "{out}");
    assert_eq!(field(&out, "purity"), Some("1/4"));
    let mix = format::parse_state(&std::fs::read_to_string(export).unwrap()).unwrap();
    assert_eq!((mix.parties(), mix.len()), (5, 4));
}

#[test]
fn scheme_search_outcomes_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("found.ds");
    let (out, code) = run(&["search", "ds", "4", "4", "2", "3", "-o", out_path.to_str().unwrap()]);
    assert_eq!(code, exit::OK, "{out}");
    let (out, code) = run(&["verify-ds", out_path.to_str().unwrap()]);
    assert_eq!(code, exit::OK, "{out}");

    let (out, code) = run(&["search", "ds", "8", "5", "2", "4"]);
    assert_eq!(code, exit::FAILED);
    assert_eq!(field(&out, "result"), Some("proven-nonexistent"));

    let (out, code) = run(&["search", "ds", "18", "5", "3", "3", "--budget", "10"]);
    assert_eq!(code, exit::BUDGET);
    assert_eq!(field(&out, "result"), Some("budget-exhausted"));
}

#[test]
fn partition_search_finds_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let p = kuniform::recipes::shift_partition().unwrap();
    let oa = write(dir.path(), "parent.oa", &format::write_oa(p.parent()));
    let (out, code) = run(&["search", "partition", oa.to_str().unwrap(), "--blocks", "4", "--k", "3"]);
    assert_eq!(code, exit::OK, "{out}");
    assert_eq!(field(&out, "partition verifies"), Some("PASS"));

    // Distance alone is satisfiable here, but the parent only has strength 2.
    let (out, code) = run(&[
        "search",
        "partition",
        &fixture("binary_8_7.oa"),
        "--blocks",
        "1",
        "--k",
        "3",
    ]);
    assert_eq!(code, exit::FAILED, "{out}");

    let (_, code) = run(&[
        "search",
        "partition",
        &fixture("even_weight_16_5.oa"),
        "--blocks",
        "2",
        "--k",
        "4",
    ]);
    assert_eq!(code, exit::FAILED);
}

#[test]
fn reproduction_is_deterministic_across_thread_counts() {
    let (one, code) = run(&["--threads", "1", "--format", "tsv", "reproduce", "--table", "qubit"]);
    assert_eq!(code, exit::OK, "{one}");
    let (many, _) = run(&["--threads", "4", "--format", "tsv", "reproduce", "--table", "qubit"]);
    assert_eq!(one, many);
    let header = one.lines().next().unwrap();
    assert_eq!(header.split('\t').count(), 11);
    assert!(!one.contains("\tMISMATCH\t"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kuniform");
    let ok = Command::new(bin)
        .args(["verify-gen", &fixture("qubit_7_4.gen")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("purity: 1/8"));
    let bad = Command::new(bin)
        .args(["verify-gen", "/nonexistent.gen"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let usage = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
