use std::path::Path;
use std::process::{Command, Output};

fn run_in(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_icayley"));
    cmd.args(args).env_remove("ICAYLEY_CACHE_DIR").env_remove("RUST_LOG");
    if let Some(dir) = cache {
        cmd.env("ICAYLEY_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(None, args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_reports_order() {
    let o = run(&["build", "famC(K256)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("order=768 "), "{}", stdout(&o));
}

#[test]
fn bad_recipe_is_an_input_error() {
    let o = run(&["build", "cyclic(0)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["build", "cyclic("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("col 8"));
}

#[test]
fn build_writes_loadable_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.cgt1");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["build", "builtin(Q8)", p]).status.code(), Some(0));
    let o = run(&["analyze", p]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("order 8\n") && out.contains("center 2\n") && out.contains("class 2\n"), "{out}");
}

#[test]
fn analyze_h64() {
    let out = stdout(&run(&["analyze", "builtin(H64)"]));
    assert!(out.contains("special true"), "{out}");
    assert!(out.contains("center 4"), "{out}");
}

#[test]
fn check_both_agrees() {
    let o = run(&["check", "famA(1,0)", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agree=true member=true"));
    let o = run(&["check", "cyclic(8)", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("agree=true member=false"), "{out}");
    assert!(out.contains("X=1,4,7"), "{out}");
}

#[test]
fn check_p_failure_exits_one() {
    let o = run(&["check", "builtin(S4)", "p"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectral_ceiling_exit_code() {
    let o = run(&["--ceiling", "16", "check", "cyclic(20)", "a3-spectral"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["--ceiling", "16", "--override-size", "check", "cyclic(20)", "a3-spectral"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn spectrum_single_set() {
    // a non-integral spectrum counts as a failed check
    let o = run(&["spectrum", "cyclic(8)", "1,4,7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("integral=false"));
    let o = run(&["spectrum", "ea(2,2)", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("m[-3..3]=0,0,3,0,0,0,1 integral=true"));
    assert_eq!(run(&["spectrum", "cyclic(8)", "1,2"]).status.code(), Some(2));
}

#[test]
fn aut_orders() {
    assert!(stdout(&run(&["aut", "builtin(H16)"])).starts_with("aut order=32 "));
}

#[test]
fn fpf_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let first = run_in(Some(dir.path()), &["fpf", "builtin(H64)"]);
    assert_eq!(first.status.code(), Some(0));
    let cached: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(cached.iter().any(|p| p.extension().is_some_and(|e| e == "aut1")), "{cached:?}");
    assert!(cached.iter().any(|p| p.extension().is_some_and(|e| e == "cgt1")), "{cached:?}");
    let second = run_in(Some(dir.path()), &["fpf", "builtin(H64)"]);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).starts_with("fpf found order=3"));
}

#[test]
fn fpf_absent_on_w2() {
    let o = run(&["fpf", "builtin(W(2))"]);
    assert!(stdout(&o).starts_with("fpf none"), "{}", stdout(&o));
}

#[test]
fn frobenius_with_explicit_images() {
    let o = run(&["check", "builtin(H64)", "frobenius"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("check frobenius pass"));
    // feed the map printed by `fpf` back in through --aut
    let found = stdout(&run(&["fpf", "builtin(H64)"]));
    let spec = &found[found.find("gens:").unwrap()..].trim();
    let o = run(&["check", "builtin(H64)", "frobenius", "--aut", spec]);
    assert_eq!(o.status.code(), Some(0), "{spec}");
    assert!(stdout(&o).starts_with("check frobenius pass order=3"));
    let o = run(&["check", "builtin(H64)", "frobenius", "--aut", "gens: 1 -> 2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("small.catalog");
    std::fs::write(
        &path,
        "builtin(D8) expect p=false a3=false  # dihedral of order 8\n\
         famA(1,0) expect family=a(1,0) a3=true spectral=true  # dicyclic of order 12\n\
         cyclic(6) expect order=6 p=true  # cyclic\n\
         builtin(Q8) expect special=true order=8  # quaternion\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let one = run(&["--jobs", "1", "catalog", p]);
    let four = run(&["--jobs", "4", "catalog", p]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&four));
    assert!(stdout(&one).ends_with("catalog entries=4 passed=4 failed=0\n"));
}

#[test]
fn catalog_mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.catalog");
    std::fs::write(&path, "builtin(D8) expect p=true  # deliberately wrong\n").unwrap();
    let o = run(&["catalog", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL builtin(D8) p=true[got false]"));
}
