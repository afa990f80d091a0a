use std::path::PathBuf;
use std::process::Command;

fn input(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("inputs").join(name).display().to_string()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["lieloop".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = lieloop::frontend::run_command(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_json_matches_golden() {
    let (code, out, _) = run(&["analyze", &input("semi_inert.lie"), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("semi_inert.json"));
    let (_, out, _) = run(&["analyze", &input("three_cone.lie"), "--json"]);
    assert_eq!(out, golden("three_cone.json"));
}

#[test]
fn ganea_json_lines_match_golden() {
    let (code, out, _) = run(&["ganea", &input("fat_wedge.lie"), "--steps", "2", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert_eq!(out, golden("fat_wedge_ganea.jsonl"));
}

#[test]
fn d_squared_exit_code_and_message() {
    let (code, _, err) = run(&["analyze", &input("bad_dsquared.lie")]);
    assert_eq!(code, 2);
    assert!(err.contains("`a`"), "{err}");
}

#[test]
fn parse_errors_carry_location() {
    let path = temp_file("bad.lie", "cutoff 8\ngen x dim=2\ngen a dim=6 deg=1\nd a = [x,x]\n");
    let (code, _, err) = run(&["analyze", &path]);
    assert_eq!(code, 2);
    assert!(err.contains(":4:7:"), "{err}");
    assert!(err.contains("expected 5"), "{err}");
}

fn temp_file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("lieloop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn strict_mode_exit_codes() {
    let (code, _, _) = run(&["analyze", &input("semi_inert.lie"), "--strict"]);
    assert_eq!(code, 0);
    let ambient = temp_file("ambient.lie", "cutoff 8\ngen x dim=2\ngen y dim=2\ngen u dim=4 deg=1\n");
    let (code, _, _) = run(&["subalgebra", &ambient, "--gens", "u;u + [x,y]", "--strict"]);
    assert_eq!(code, 1);
    let (code, out, _) = run(&["subalgebra", &ambient, "--gens", "u;u + [x,y]"]);
    assert_eq!(code, 0);
    assert!(out.contains("Inapplicable at dim 4"), "{out}");
}

#[test]
fn overrides_and_other_subcommands() {
    let (_, out, _) = run(&["hilbert", &input("free_not_semi_inert.lie"), "--cutoff", "14", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cutoff"], 14);
    assert_eq!(v["series"]["Kprime"]["coeffs"][10], 1);

    let (code, out, _) = run(&["analyze", &input("three_cone.lie"), "--primes", "5,13", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["primes"], serde_json::json!([5, 13]));

    let (code, out, _) = run(&["analyze", &input("semi_inert.lie"), "--max-words", "10"]);
    assert_eq!((code, out.as_str()), (2, ""));

    let (_, out, _) = run(&["homology", &input("semi_inert.lie"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["HeL1_classes"][0]["dim"], 9);

    let (_, out, _) = run(&["primes-bound", "--dim", "38"]);
    assert_eq!(out.trim(), "19");
}

#[test]
fn cells_flag_switches_vocabulary_only() {
    let (_, alg, _) = run(&["analyze", &input("fat_wedge.lie"), "--json"]);
    let (_, top, _) = run(&["analyze", &input("fat_wedge_cells.lie"), "--json", "--cells"]);
    let a: serde_json::Value = serde_json::from_str(&alg).unwrap();
    let t: serde_json::Value = serde_json::from_str(&top).unwrap();
    assert_eq!(a["verdicts"], t["verdicts"]);
    assert_eq!(a["series"], t["series"]);
    assert!(t["structure"].to_string().contains("L_X"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lieloop");
    let out = Command::new(bin).args(["analyze", &input("inert.lie")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let status = Command::new(bin).args(["analyze", &input("bad_dsquared.lie")]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    let out = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out =
        Command::new(bin).args(["analyze", &input("semi_inert.lie")]).env("LIELOOP_MAX_WORDS", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
