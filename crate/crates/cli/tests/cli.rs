use std::process::{Command, Output};

fn winf(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winf"))
        .args(args)
        .env("VOA_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn remainder_at_n1() {
    let dir = tempfile::tempdir().unwrap();
    let o = winf(dir.path(), &["remainder", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/3·J3\n");
}

#[test]
fn no_singular_vector_below_minimal_weight() {
    let dir = tempfile::tempdir().unwrap();
    let o = winf(dir.path(), &["singular", "--n", "1", "--weight", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dim 0\n");
    let o = winf(dir.path(), &["--format", "json", "singular", "--n", "1", "--weight", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dim"], 1);
}

#[test]
fn heisenberg_pairing_in_betagamma() {
    let dir = tempfile::tempdir().unwrap();
    let o = winf(dir.path(), &["ope", "--system", "betagamma:1", "--expr", "(circ 1 (J 0) (J 0))"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "\u{2212}1·|0⟩\n");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = winf(dir.path(), &["ope", "--system", "betagamma:1", "--expr", "(circ 1 (J 0) (X 0))"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 15"));
    let o = winf(dir.path(), &["ope", "--system", "spinor:1", "--expr", "(J 0)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = winf(dir.path(), &["dij", "--n", "1", "--I", "1,0", "--J", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = winf(dir.path(), &["zhu", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "decouple", "--n", "1", "--raise-to", "4"];
    let cold = winf(dir.path(), &args);
    assert_eq!(cold.status.code(), Some(0));
    let entries = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
    let warm = winf(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
    let fresh = winf(dir.path(), &["--no-cache", "--format", "json", "decouple", "--n", "1", "--raise-to", "4"]);
    assert_eq!(cold.stdout, fresh.stdout);
}

#[test]
fn seeded_suites_reproduce() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--format", "json", "verify", "--suite", "identities", "--seed", "11", "--cases", "20"];
    let a = winf(dir.path(), &args);
    let b = winf(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn zhu_leading_terms() {
    let dir = tempfile::tempdir().unwrap();
    let o = winf(dir.path(), &["zhu", "--n", "1", "--lt"]);
    assert_eq!(stdout(&o), "\u{2212}1·a0·a2\n");
    let o = winf(dir.path(), &["--format", "json", "zhu", "--n", "1", "--relation"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["form"], "SquareOfA0");
    assert_eq!(v["ideal_membership"], true);
}
