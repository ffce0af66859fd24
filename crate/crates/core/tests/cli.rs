use std::io::Write;
use std::process::{Command, Output, Stdio};

fn acgw(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_acgw"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn homology_of_spanex() {
    let o = acgw(&["homology", "corpus/spanex.acgw"], None);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("H_2(X) = {a}\n"), "{s}");
    assert!(s.contains("H_2(Y) = {}\n"), "{s}");
    assert!(s.contains("cardinality law for X"), "{s}");
}

#[test]
fn validate_empty_complex() {
    let o = acgw(&["validate", "corpus/empty.acgw"], None);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn oracle_on_seed_seven() {
    let g = acgw(&["gen", "--seed", "7"], None);
    let o = acgw(&["oracle", "-"], Some(&stdout(&g)));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agree at all degrees"));
}

#[test]
fn gen_into_validate_exits_zero() {
    for kind in ["complex", "exact", "map", "ses", "snake", "strong-snake", "linear"] {
        for seed in ["1", "19", "300"] {
            for size in [None, Some("3")] {
                let mut args = vec!["gen", "--kind", kind, "--seed", seed];
                if let Some(k) = size {
                    args.extend(["--size", k]);
                }
                let g = acgw(&args, None);
                assert_eq!(g.status.code(), Some(0), "{args:?}");
                let v = acgw(&["validate", "-"], Some(&stdout(&g)));
                assert_eq!(v.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&v.stderr));
            }
        }
    }
}

#[test]
fn gen_is_deterministic() {
    let a = stdout(&acgw(&["gen", "--kind", "ses", "--seed", "11"], None));
    let b = stdout(&acgw(&["gen", "--kind", "ses", "--seed", "11"], None));
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let parse = acgw(&["validate", "-"], Some("instance set\ncomplex X 0..1\n  obj 1 {a\n"));
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("3:11"));
    let bad = "instance set\ncomplex X 0..1\n  obj 1 {a}\n  obj 0 {b}\n  tr 1 {a}\nend\n";
    let sem = acgw(&["validate", "-"], Some(bad));
    assert_eq!(sem.status.code(), Some(2), "the missing target element is a construction error");
    let chain = "instance set\ncomplex X 0..2\n  obj 2 {a}\n  obj 1 {a}\n  obj 0 {a}\n  tr 2 {a}\n  tr 1 {a}\nend\n";
    let sem = acgw(&["validate", "-"], Some(chain));
    assert_eq!(sem.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&sem.stderr).contains("degree"));
    assert_eq!(acgw(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(acgw(&["validate", "no/such/file"], None).status.code(), Some(2));
}

#[test]
fn json_output() {
    let o = acgw(&["--output", "json", "les", "corpus/ses.acgw"], None);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sequences"][0]["zigzag"]["exact"], true);
    let g = acgw(&["gen", "--kind", "map", "--output", "json"], None);
    let m = acgw(&["map-homology", "-"], Some(&stdout(&g)));
    assert_eq!(m.status.code(), Some(0));
}

#[test]
fn snake_and_render() {
    let s = stdout(&acgw(&["snake", "corpus/snake.acgw"], None));
    assert!(s.contains("D: {a, e} ⇐ {e} ↪ {d, e}"), "{s}");
    assert!(s.contains("W: {d, e} ⇐ {d} ↪ {d, f}"), "{s}");
    assert!(s.contains("D': {d, f} ⇐ {f} ↪ {f, g}"), "{s}");
    let d = stdout(&acgw(&["render", "--format", "dot", "corpus/ses.acgw"], None));
    assert!(d.starts_with("digraph acgw {"));
    assert!(d.contains("fillcolor"));
}

#[test]
fn map_homology_of_spanexq() {
    let s = stdout(&acgw(&["map-homology", "corpus/spanexq.acgw"], None));
    assert!(s.contains("quasi-isomorphism: yes"), "{s}");
}
