use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entangle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn group_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn model_at_one() {
    let o = run(&["model", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("a=-144 b=672 disc=-3981312 j=-82944"));
}

#[test]
fn invert_j_examples() {
    let o = run(&["invert-j", "--j", "1728"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "t=1/2\n");
    assert_eq!(stdout(&run(&["invert-j", "--j", "-82944"])), "t=1\n");
    assert_eq!(stdout(&run(&["invert-j", "--j", "1"])), "none\n");
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() > 40);
    for line in text.lines() {
        let (key, value) = line.split_once(" = ").expect("key = value");
        assert!(key.starts_with("step."), "{line}");
        assert!(value.starts_with("PASS"), "{line}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["verify", "--suite", "groups"]);
    let b = run(&["verify", "--suite", "groups"]);
    let c = run(&["--sequential", "verify", "--suite", "groups"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let s1 = run(&["scan", "--curve", "1,1", "--pmax", "2000", "--all"]);
    let s2 = run(&["--sequential", "scan", "--curve", "1,1", "--pmax", "2000", "--all"]);
    assert_eq!(s1.stdout, s2.stdout);
}

#[test]
fn meta_is_opt_in() {
    let plain = stdout(&run(&["model", "--t", "2"]));
    let meta = stdout(&run(&["--meta", "model", "--t", "2"]));
    assert!(!plain.contains("meta."));
    assert!(meta.starts_with(&plain));
    assert!(meta.contains("meta.elapsed_ms="));
}

#[test]
fn scan_exit_codes() {
    let o = run(&["scan", "--curve", "1,1", "--pmax", "200"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("p=139 "));
    assert!(text.contains("smallest violation p=139"));
    assert_eq!(
        run(&["scan", "--curve", "-1,0", "--pmax", "2000"]).status.code(),
        Some(0)
    );
    assert_eq!(run(&["scan", "--curve", "-144,672"]).status.code(), Some(0));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["model", "--t", "1/0"][..],
        &["model", "--t", "x"],
        &["scan", "--curve", "0,0"],
        &["scan", "--curve", "1"],
        &["classify", "--gen", "1,2"],
        &["classify", "--gen", "2,0;0,2"],
        &["density", "--level", "6", "--gen", "1,0;0,1"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = run(&["classify", "--gen", "1,0;0,1", "--gen", "1,2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--gen #2"));
}

#[test]
fn group_file_with_two_generators_mod_2() {
    let f = group_file("gl2_2.txt", "mod 2\n0,1;1,0\n1,1;0,1\n");
    let o = run(&[
        "density",
        "--level",
        "2",
        "--group-file",
        f.to_str().unwrap(),
        "--close",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("image level=2 order=6"));
    assert!(text.contains("correction value=1 "));
    let listed = run(&["density", "--level", "2", "--group-file", f.to_str().unwrap()]);
    assert_eq!(listed.status.code(), Some(2));
}

#[test]
fn empty_group_file_is_trivial() {
    let f = group_file("empty36.txt", "mod 36\n# no generators\n");
    let o = run(&["classify", "--group-file", f.to_str().unwrap(), "--close"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("image level=36 order=1"));
    assert!(text.contains("serre_obstructed=true"));
}

#[test]
fn non_unit_determinant_is_rejected() {
    let f = group_file("bad6.txt", "mod 6\n1,0;0,1\n2,0;0,2\n");
    let o = run(&[
        "density",
        "--level",
        "6",
        "--group-file",
        f.to_str().unwrap(),
        "--close",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3") && err.contains("det 4"), "{err}");
}

#[test]
fn classify_full_image() {
    let o = run(&[
        "classify", "--gen", "1,1;0,1", "--gen", "1,0;1,1", "--gen", "5,0;0,1", "--gen", "7,0;0,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("image level=36 order=373248"));
    assert!(text.contains("class=none"));
    assert!(text.contains("serre_obstructed=false"));
}
