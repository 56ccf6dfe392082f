use std::path::Path;
use std::process::{Command, Output};

fn gencover(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gencover"))
        .current_dir(dir)
        .env_remove("GENCOVER_CATALOG")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn first_stderr_line(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).lines().next().unwrap_or("").to_string()
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = gencover(dir.path(), &["build", "trap-quads-45", "--k", "4", "-o", "a.cov"]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("provenance TRAP_QUADS_45 predicted=14 actual=14"));

    let o = gencover(dir.path(), &["verify", "a.cov"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass (8,4,4,5,1) 14 blocks"));

    let o = gencover(dir.path(), &["verify", "a.cov", "--spec", "8,4,4,4,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(first_stderr_line(&o).starts_with("gencover: verification-failed: "));
    assert!(stdout(&o).contains("subset={0,1,2,4}"));
}

#[test]
fn bound_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = gencover(dir.path(), &["bound", "thm54", "--case", "3", "--k", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "42");

    let o = gencover(dir.path(), &["bound", "trap-triples-sqs", "--v", "4", "--m", "4"]);
    assert_eq!(stdout(&o).trim(), "6");

    let o = gencover(dir.path(), &["bound", "thm54"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with("uses")).count(), 5);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["build", "trap-quads-45", "-o", "x.cov"][..],
        &["bound", "splice-general", "--v", "8"],
        &["bound", "nope"],
        &["bogus"],
        &["table"],
    ] {
        let o = gencover(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(first_stderr_line(&o).starts_with("gencover: usage: "), "{args:?}: {o:?}");
    }
    let o = gencover(dir.path(), &["verify", "missing.cov"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(first_stderr_line(&o).starts_with("gencover: io-error: "));
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.cov"), "cover 4 2 1 1 1 2\n0 1\n2 2\n").unwrap();
    let o = gencover(dir.path(), &["verify", "bad.cov"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(first_stderr_line(&o).contains("line 3"), "{o:?}");
}

#[test]
fn catalog_save_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = gencover(
        dir.path(),
        &["--catalog", "cat", "build", "trap-quads-46", "--k", "6", "--q", "3", "-o", "b.cov", "--save"],
    );
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("catalog: inserted (18,6,4,6,1)"));
    let o = gencover(dir.path(), &["--catalog", "cat", "verify", "b.cov", "--save"]);
    assert!(stdout(&o).contains("kept existing 42-block entry"));

    let o = gencover(dir.path(), &["--catalog", "cat", "table", "--tsv"]);
    assert_eq!(stdout(&o), "v\tk\tt\tm\tlambda\tbest\tbounds\tdelta\n18\t6\t4\t6\t1\t42\tTHM54_CASE3=42\t0\n");
}

#[test]
fn splice_and_ingredients() {
    let dir = tempfile::tempdir().unwrap();
    assert!(gencover(dir.path(), &["build", "trap-quads-45", "--k", "4", "-o", "a.cov"]).status.success());
    let o = gencover(dir.path(), &["splice", "general", "--base", "a.cov", "--n", "1", "-o", "s.cov"]);
    assert!(o.status.success(), "{o:?}");
    assert!(stdout(&o).contains("wrote s.cov (9,4,4,5,1) 30 blocks"));

    let o = gencover(dir.path(), &["ingredient", "sts", "7", "-o", "sts.cov"]);
    assert!(o.status.success(), "{o:?}");
    let o = gencover(dir.path(), &["verify", "sts.cov"]);
    assert!(stdout(&o).starts_with("pass (7,3,2,2,1) 7 blocks"));
}

#[test]
fn seed_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let o = gencover(dir.path(), &["--seed", "7", "ingredient", "greedy-cover", "9", "4", "3", "3", "-o", name]);
        assert!(o.status.success(), "{o:?}");
        std::fs::read_to_string(dir.path().join(name)).unwrap()
    };
    assert_eq!(run("g1.cov"), run("g2.cov"));
}
