use std::path::PathBuf;
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_netbundle")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// The value of `key` in the first records line carrying it.
fn field(stdout: &str, key: &str) -> Option<String> {
    stdout.lines().find_map(|l| {
        l.split(' ').find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')).map(str::to_string))
    })
}

fn records(args: &[&str]) -> Run {
    let mut all = vec!["--format", "records"];
    all.extend_from_slice(args);
    let r = run(&all);
    assert_eq!(r.code, 0, "{}", r.stderr);
    r
}

fn temp(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("netbundle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn simplex_counts() {
    assert_eq!(field(&records(&["simplices", "chain3.poset", "1"]).stdout, "count").unwrap(), "14");
    assert_eq!(field(&records(&["simplices", "circ4.poset", "1"]).stdout, "count").unwrap(), "20");
    let text = run(&["simplices", "circ4", "1"]);
    assert!(text.stdout.contains("(A; p, q)"));
    assert!(text.stdout.contains("count: 20"));
}

#[test]
fn degree_out_of_range_is_domain_error() {
    let r = run(&["simplices", "circ4.poset", "5"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.starts_with("error:"));
}

#[test]
fn pi1_summaries() {
    let chain = records(&["pi1", "chain3.poset"]);
    assert_eq!(field(&chain.stdout, "surviving_generators").unwrap(), "0");
    let homs: Vec<String> = chain.stdout.lines().filter_map(|l| field(l, "homs")).collect();
    assert_eq!(homs, ["1", "1"]);

    let circ = records(&["pi1", "circ4.poset"]);
    assert_eq!(field(&circ.stdout, "surviving_generators").unwrap(), "1");
    let homs: Vec<String> = circ.stdout.lines().filter_map(|l| field(l, "homs")).collect();
    assert_eq!(homs, ["2", "3"]);
}

#[test]
fn pi1_rejects_disconnected() {
    let p = temp("split.poset", "poset split\nelements a b\n");
    assert_eq!(run(&["pi1", &p]).code, 2);
}

#[test]
fn classify_counts() {
    assert_eq!(field(&records(&["classify", "circ4.poset", "Z3"]).stdout, "classes").unwrap(), "3");
    assert_eq!(field(&records(&["classify", "circ4.poset", "S3"]).stdout, "classes").unwrap(), "3");
    let z2 = records(&["classify", "circ4.poset", "Z2", "--oracle"]);
    assert_eq!(field(&z2.stdout, "classes").unwrap(), "2");
    assert_eq!(field(&z2.stdout, "oracle_classes").unwrap(), "2");
    assert_eq!(field(&z2.stdout, "oracle_agrees").unwrap(), "true");
}

#[test]
fn oracle_over_budget() {
    let r = run(&["classify", "circ4.poset", "Z3", "--oracle"]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.is_empty());
}

#[test]
fn bad_group_spec_is_usage_error() {
    assert_eq!(run(&["classify", "circ4.poset", "Q8"]).code, 1);
}

#[test]
fn curvature_of_flat_connection() {
    let r = records(&["connection", "curvature", &data("flat.cochain")]);
    assert_eq!(field(&r.stdout, "flat").unwrap(), "true");
    let r = records(&["connection", "curvature", &data("u.cochain")]);
    assert_eq!(field(&r.stdout, "flat").unwrap(), "false");
    assert_eq!(field(&r.stdout, "nonflat").unwrap(), "12");
}

#[test]
fn holonomy_listing() {
    let r = records(&["connection", "holonomy", &data("u.cochain"), "--base", "p"]);
    assert_eq!(field(&r.stdout, "holonomy_order").unwrap(), "6");
    assert_eq!(field(&r.stdout, "restricted_order").unwrap(), "3");
    assert_eq!(field(&r.stdout, "restricted_normal").unwrap(), "true");
    let r = records(&["connection", "holonomy", &data("flat.cochain"), "--base", "p"]);
    assert_eq!(field(&r.stdout, "holonomy_order").unwrap(), "3");
    assert_eq!(field(&r.stdout, "restricted_order").unwrap(), "1");
}

#[test]
fn bianchi_has_no_violations() {
    for f in ["u.cochain", "flat.cochain"] {
        let r = records(&["connection", "bianchi", &data(f)]);
        assert_eq!(field(&r.stdout, "violations").unwrap(), "0");
    }
}

#[test]
fn reduce_to_holonomy_group() {
    let r = records(&["connection", "reduce", &data("flat.cochain"), "--base", "p"]);
    assert_eq!(field(&r.stdout, "subgroup_order").unwrap(), "3");
    assert_eq!(field(&r.stdout, "proper").unwrap(), "true");
    assert_eq!(field(&r.stdout, "witness_ok").unwrap(), "true");
}

#[test]
fn check_rejects_non_connection() {
    let text = std::fs::read_to_string(data("flat.cochain")).unwrap();
    let broken = text.replace("val (A; A, p) = perm(1 2 0)", "val (A; A, p) = perm(0 1 2)");
    assert_ne!(broken, text);
    let path = temp("broken.cochain", &broken);
    let r = run(&["--poset", "circ4", "connection", "check", &path]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    assert!(r.stdout.is_empty());
}

#[test]
fn cech_roundtrip() {
    let r = records(&["cech", "roundtrip", &data("z.cochain")]);
    assert_eq!(field(&r.stdout, "double_circle").unwrap(), "true");
    assert_eq!(field(&r.stdout, "differing").unwrap(), "0");
}

#[test]
fn cech_to_cech_matches_shipped_file() {
    let r = run(&["cech", "to-cech", &data("z.cochain")]);
    assert_eq!(r.code, 0);
    let body: String = r.stdout.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(body, std::fs::read_to_string(data("xi.cech")).unwrap());
}

#[test]
fn cech_to_net_is_a_cocycle() {
    let r = run(&["cech", "to-net", &data("xi.cech")]);
    assert_eq!(r.code, 0);
    let path = temp("xi_net.cochain", &r.stdout);
    let c = records(&["connection", "check", &path]);
    assert_eq!(field(&c.stdout, "cocycle").unwrap(), "true");
}

#[test]
fn cech_to_lc_table() {
    let r = records(&["cech", "to-lc", &data("xi.cech"), "--cover", "A,B"]);
    assert_eq!(field(&r.stdout, "points").unwrap(), "p,q");
    let rows = r.stdout.lines().filter(|l| l.starts_with("pair=")).count();
    assert_eq!(rows, 4);
}

#[test]
fn cech_to_lc_unknown_cover_element() {
    let p = temp("chain.cech", "cech c over chain3 group Z2\nxi (x,x) at x = 0\nxi (x,x) at y = 0\nxi (x,x) at z = 0\nxi (y,y) at y = 0\nxi (y,y) at z = 0\nxi (z,z) at z = 0\nxi (x,y) at y = 0\nxi (x,y) at z = 0\nxi (y,x) at y = 0\nxi (y,x) at z = 0\nxi (x,z) at z = 0\nxi (z,x) at z = 0\nxi (y,z) at z = 0\nxi (z,y) at z = 0\n");
    assert_eq!(records(&["cech", "to-lc", &p, "--cover", "x"]).code, 0);
    assert_eq!(run(&["cech", "to-lc", &p, "--cover", "nope"]).code, 1);
}

#[test]
fn malformed_overlap_line() {
    let text = std::fs::read_to_string(data("xi.cech")).unwrap();
    let bad = text.replacen(" at p = 1", " p 1", 1);
    assert_ne!(bad, text);
    let r = run(&["cech", "to-net", &temp("bad.cech", &bad)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("line"));
}

#[test]
fn bundle_classes() {
    let m = records(&["bundle", &data("moebius.bundle")]);
    assert_eq!(field(&m.stdout, "class").unwrap(), "1");
    assert_eq!(field(&m.stdout, "trivial").unwrap(), "false");
    assert_eq!(field(&m.stdout, "reconstruction").unwrap(), "true");
    let c = records(&["bundle", &data("cylinder.bundle")]);
    assert_eq!(field(&c.stdout, "class").unwrap(), "0");
    assert_eq!(field(&c.stdout, "trivial").unwrap(), "true");
}

#[test]
fn export_graphs() {
    let h = run(&["export", "chain3.poset", "--what", "hasse"]);
    assert_eq!(h.code, 0);
    assert!(h.stdout.starts_with("digraph"));
    assert_eq!(h.stdout.matches(" -> ").count(), 2);
    let s = run(&["export", "circ4.poset", "--what", "skeleton"]);
    assert!(s.stdout.starts_with("graph"));
    assert_eq!(s.stdout.matches(" -- ").count(), 6);
    assert_eq!(run(&["export", "circ4.poset", "--what", "cones"]).code, 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--seed", "9", "sample", "circ4", "S3"][..],
        &["classify", "diamond", "S3"][..],
        &["pi1", "circ4.dual"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = run(&["--seed", "1", "sample", "circ4", "S3"]);
    let b = run(&["--seed", "2", "sample", "circ4", "S3"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn sequential_flag_agrees() {
    let a = run(&["classify", "circ4", "S3"]);
    let b = run(&["--sequential", "classify", "circ4", "S3"]);
    assert_eq!(a.stdout, b.stdout);
}
