use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn stm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stm")).args(args).output().expect("stm runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_reports_each_object() {
    let o = stm(&["check", fixture("minimal.stm").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "monoid minimal: OK; semiring: YES\n");

    let o = stm(&["check", fixture("collapse.stm").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("OK; semiring: NO (witness x1,x1,1)"), "{}", stdout(&o));

    let o = stm(&["check", fixture("twin.stm").to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("relation merge on twin: OK"));
    assert!(text.contains("section s on twin: OK"));
    assert!(text.contains("map id on twin->twin: OK"));
}

#[test]
fn check_porcelain() {
    let o = stm(&["--porcelain", "check", fixture("collapse.stm").to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "kind=monoid name=collapse status=ok size=6 semiring=no unfolded=yes witness=x1,x1,1\n"
    );
}

#[test]
fn invalid_objects_exit_with_one() {
    let dir = std::env::temp_dir().join(format!("stm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad-relation.stm");
    let text = std::fs::read_to_string(fixture("twin.stm")).unwrap() + "relation bad: classes {e c}\n";
    std::fs::write(&path, text).unwrap();
    let o = stm(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("relation bad on twin: INVALID"), "{}", stdout(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("stm-cli-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("short-row.stm");
    std::fs::write(&path, "monoid m\nelements 0 1 e\nzero 0\none 1\ne e\norder 0 e\nrow 0: 0 0\n").unwrap();
    let o = stm(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("7:8: row has 2 entries, expected 3"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_names_exit_with_two() {
    let o = stm(&["isolate", "nope", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown monoid `nope`"));
    let o = stm(&["tyrant", "twin", "zz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn equalize_merges_the_set() {
    let o = stm(&["equalize", "twin", "x1", "x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Feq{x1 x2} on twin: classes {x1 x2}\n"), "{}", stdout(&o));
    let o = stm(&["--porcelain", "equalize", "twin", "{x1", "x2}"]);
    assert!(stdout(&o).contains("classes={x1,x2}"), "{}", stdout(&o));
    let o = stm(&["equalize", "twin", "x1", "x2", "--paths"]);
    assert!(stdout(&o).contains("(x1"), "{}", stdout(&o));
}

#[test]
fn tyrant_and_isolate() {
    let o = stm(&["tyrant", "plane", "x"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("T(x): case I"), "{text}");
    assert!(text.contains("classes {x2 xy} {x3 x2y xy2}"), "{text}");

    let o = stm(&["isolate", "minimal", "1"]);
    assert!(stdout(&o).starts_with("1 is already isolated in minimal\n"), "{}", stdout(&o));

    let o = stm(&["isolate", "twin", "c"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn factorize_ghost_map() {
    let o = stm(&["factorize", "twin", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("tangible part:"));
    assert!(text.contains("mixing part:"));
    assert!(text.contains("(5 elements)"));
    let o = stm(&["-f", fixture("twin.stm").to_str().unwrap(), "factorize", "id"]);
    assert!(stdout(&o).contains("the factorization is trivial"));
}

#[test]
fn lattice_lists_relations() {
    let o = stm(&["lattice", "minimal"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = stm(&["lattice", "twin", "--dot"]);
    assert!(stdout(&o).starts_with("digraph"), "{}", stdout(&o));
}

#[test]
fn verify_empty_run() {
    let o = stm(&["verify", "--count", "0", "--no-catalog", "--porcelain"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("status=pass\n"));
}

#[test]
fn verify_fails_with_one_on_violations() {
    let o = stm(&["verify", "--seed", "1", "--count", "30", "--no-catalog", "--porcelain"]);
    let text = stdout(&o);
    let expected = if text.contains("status=pass") { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(expected));
    assert!(text.starts_with("seed=1 count=30 size=6 catalog=false instances=30\n"));
}

#[test]
fn search_prints_parseable_fixtures() {
    let o = stm(&["search", "--seed", "1", "--count", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let ws = supertropical::format::parse(&stdout(&o)).unwrap();
    assert!(!ws.monoids.is_empty());
}
