use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn semispec(args: &[&str]) -> Output {
    semispec_env(args, &[])
}

fn semispec_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_semispec"));
    cmd.args(args);
    for var in ["SEMISPEC_CONGRUENCE_BOUND", "SEMISPEC_SPECTRUM_LIMIT", "SEMISPEC_WITNESS_BOUND", "SEMISPEC_WORKSPACE"] {
        cmd.env_remove(var);
    }
    cmd.envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("semispec-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn spec_of_trivial_semiring_is_empty() {
    let o = semispec(&["spec", "trivial"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn points_of_the_idempotent_line() {
    let o = semispec(&["spec", "line"]);
    assert_eq!(stdout(&o), "p0 = {0}  subtractive\np1 = {0,x}  subtractive\np2 = {0,x,1+x}\n");
    let o = semispec(&["sp", "line"]);
    assert_eq!(stdout(&o), "p0 = {0}  subtractive\np1 = {0,x}  subtractive\n");
}

#[test]
fn dot_edges_point_from_generic_to_special() {
    let o = semispec(&["topology", "line", "--kind", "sp", "--dot"]);
    assert!(stdout(&o).contains("p0 -> p1;"));
    assert!(!stdout(&o).contains("p1 -> p0;"));
}

#[test]
fn outputs_are_byte_identical() {
    for args in [&["topology", "z6", "--json"][..], &["sheaf", "line", "--cover", "x,1+x"], &["verify", "ktt"]] {
        assert_eq!(semispec(args).stdout, semispec(args).stdout, "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let o = semispec(&["verify", "ktt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"status\": \"pass\""));
    assert_eq!(semispec(&["verify", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn error_classes_have_distinct_codes() {
    // 256 elements exceed the default spectrum limit
    assert_eq!(semispec(&["spec", "bool3"]).status.code(), Some(3));
    assert_eq!(semispec(&["spec", "unknown"]).status.code(), Some(4));
    assert_eq!(semispec(&["sheaf", "line", "--cover", "y"]).status.code(), Some(2));
    let o = semispec_env(&["spec", "line"], &[("SEMISPEC_SPECTRUM_LIMIT", "2")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn sheaf_over_a_cover() {
    let o = semispec(&["sheaf", "line", "--cover", "#1", "--kind", "sp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"hard\": true"));
}

#[test]
fn load_register_and_reuse() {
    let dir = scratch("load");
    let ws = dir.join("ws");
    let ws = ws.to_str().unwrap();
    let pres = dir.join("pline.json");
    fs::write(&pres, r#"{"gens":["x"],"rels":[["x^2","x"]],"idempotent":true}"#).unwrap();
    let o = semispec(&["--workspace", ws, "load", pres.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("pline: 4 elements"));
    let meta = fs::read_to_string(dir.join("ws/pline.meta.json")).unwrap();
    assert!(meta.contains("\"kind\": \"presentation\""));
    // names are unique
    assert_eq!(semispec(&["--workspace", ws, "load", pres.to_str().unwrap()]).status.code(), Some(4));
    assert_eq!(semispec(&["--workspace", ws, "sp", "pline"]).stdout, semispec(&["sp", "line"]).stdout);

    let table = dir.join("bad.json");
    fs::write(&table, r#"{"size":2,"zero":0,"one":1,"add":[[0,1],[1,0]],"mul":[[0,0],[0,0]]}"#).unwrap();
    assert_eq!(semispec(&["--workspace", ws, "load", table.to_str().unwrap()]).status.code(), Some(4));
    fs::write(&table, "{ not json").unwrap();
    assert_eq!(semispec(&["--workspace", ws, "load", table.to_str().unwrap()]).status.code(), Some(2));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn harden_and_mra() {
    let dir = scratch("harden");
    let ws = dir.to_str().unwrap();
    let o = semispec(&["--workspace", ws, "harden", "line", "--save", "line-hard"]);
    assert_eq!(o.status.code(), Some(0));
    // 1+x becomes invertible and is identified with 1
    assert!(stdout(&o).contains("\"size\": 3"));
    let o = semispec(&["--workspace", ws, "axioms", "line-hard"]);
    assert_eq!(o.status.code(), Some(0));
    let o = semispec(&["mra", "line", "--scalars", "boolean"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().take_while(|l| l.starts_with('<')).count(), 7);
    assert_eq!(semispec(&["mra", "z2", "--scalars", "boolean"]).status.code(), Some(4));
    let _ = fs::remove_dir_all(&dir);
}
