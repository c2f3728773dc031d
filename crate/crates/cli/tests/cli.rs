use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use gwitt_core::bispan::{Bispan, VirtualBispan, VirtualBispanJson};
use gwitt_core::group::make_group;
use gwitt_core::gset::GSet;
use gwitt_core::poly::{IntPoly, PolyJson};
use gwitt_core::subgroups::SubgroupTable;
use gwitt_core::verify::SuiteReport;
use gwitt_core::witt::{universal_polys, WittPolySet, WittPolySetJson};
use num_bigint::BigInt;
use serde_json::{json, Value};
use tempfile::TempDir;

fn gwitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwitt")).args(args).env_remove("WITT_CACHE_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn table(spec: &str) -> Arc<SubgroupTable> {
    Arc::new(SubgroupTable::new(make_group(spec).unwrap()).unwrap())
}

fn assert_usage_error(o: &Output) {
    assert_eq!(o.status.code(), Some(2), "stderr: {}", stderr(o));
    let err = stderr(o);
    assert_eq!(err.lines().count(), 1, "one diagnostic line: {err:?}");
    assert!(err.starts_with("E_"), "{err}");
}

#[test]
fn c2_polynomials_in_text() {
    let o = gwitt(&["witt-polys", "--group", "C2"]);
    assert!(o.status.success());
    // worked out by hand from the ghost map (x_G, x_e) ↦ (x_G, x_G² + 2 x_e)
    let expected = "\
s[C2/C2] = a_C2 + b_C2
s[C2/e] = -a_C2*b_C2 + a_e + b_e
p[C2/C2] = a_C2*b_C2
p[C2/e] = a_C2^2*b_e + a_e*b_C2^2 + 2*a_e*b_e
m[C2/C2] = -a_C2
m[C2/e] = -a_C2^2 - a_e
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn polynomial_json_round_trips() {
    let o = gwitt(&["witt-polys", "--group", "S3", "--format", "json"]);
    assert!(o.status.success());
    let parsed: WittPolySetJson = serde_json::from_str(&stdout(&o)).unwrap();
    let t = table("S3");
    assert_eq!(WittPolySet::from_json(&parsed, &t).unwrap(), *universal_polys(&t).unwrap());
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", stdout(&o));
}

#[test]
fn ghost_of_zero_is_zero() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "zero.json", &json!({"group_spec": "S3", "coords": ["0", "0", "0", "0"]}));
    let o = gwitt(&["witt", "ghost", "--group", "S3", "--input", s(&zero), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ghost"], json!(["0", "0", "0", "0"]));
}

#[test]
fn witt_add_and_mul_over_integers() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!({"group_spec": "C2", "coords": [1, 0]}));
    let b = write(&dir, "b.json", &json!({"group_spec": "C2", "coords": ["2", "3"]}));
    let run = |op: &str| -> Value {
        let o = gwitt(&["witt", op, "--group", "C2", "--input", s(&a), "--input", s(&b), "--format", "json"]);
        assert!(o.status.success(), "{}", stderr(&o));
        serde_json::from_str(&stdout(&o)).unwrap()
    };
    // s_e = a_e + b_e - a_G b_G = 0 + 3 - 2; p_e = a_G² b_e + a_e b_G² + 2 a_e b_e = 3
    assert_eq!(run("add")["coords"], json!(["3", "1"]));
    assert_eq!(run("mul")["coords"], json!(["2", "3"]));
    let o = gwitt(&["witt", "neg", "--group", "C2", "--input", s(&b), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // m_e = -a_G² - a_e
    assert_eq!(v["coords"], json!(["-2", "-7"]));
}

#[test]
fn other_coefficient_rings() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &json!({"group_spec": "C2", "ring": "Z/6", "coords": [5, 4]}));
    let o = gwitt(&["witt", "add", "--group", "C2", "--input", s(&a), "--input", s(&a), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // (10, 8 - 25) mod 6
    assert_eq!(v["coords"], json!(["4", "1"]));
    assert_eq!(v["ring"], "Z/6");

    let x = json!([[{"0": 1}, "1"]]);
    let p = write(&dir, "p.json", &json!({"group_spec": "C2", "ring": "Z[x]", "coords": [x, 0]}));
    let o = gwitt(&["witt", "ghost", "--group", "C2", "--input", s(&p)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "C2/C2  x0\nC2/e   x0^2\n");
}

#[test]
fn verify_suite_exit_codes_and_report() {
    let o = gwitt(&["verify", "witt-laws", "--group", "C2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("witt-laws passed (seed 7)"));
    let o = gwitt(&["verify", "witt-laws", "--group", "C2", "--seed", "7", "--format", "json"]);
    let report: SuiteReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.passed && report.seed == 7 && !report.checks.is_empty());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "ghost-hom", "--group", "S3", "--seed", "11", "--format", "json"][..],
        &["witt-polys", "--group", "C4", "--format", "json"][..],
        &["marks", "--group", "D4"][..],
    ] {
        let (a, b) = (gwitt(args), gwitt(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn marks_and_subgroups() {
    let o = gwitt(&["marks", "--group", "S3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // |(G/V)^U| for S3 by hand, rows V and columns U in the order S3, C3, C2, e
    assert_eq!(v["marks"], json!([[1, 1, 1, 1], [0, 2, 0, 2], [0, 0, 1, 3], [0, 0, 0, 6]]));
    let o = gwitt(&["subgroups", "--group", "S3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["labels"], json!(["S3", "C3", "C2", "e"]));
    assert_eq!(v["normalizer_index"], json!([1, 2, 1, 6]));
}

#[test]
fn usage_errors_exit_2_with_one_line() {
    assert_usage_error(&gwitt(&["frobnicate"]));
    assert_usage_error(&gwitt(&["marks", "--group", "S3", "--colour"]));
    assert_usage_error(&gwitt(&["verify", "no-such-suite"]));
    assert_usage_error(&gwitt(&["marks"]));
    let o = gwitt(&["marks", "--group", "Q8x"]);
    assert_usage_error(&o);
    assert!(stderr(&o).starts_with("E_GROUP_SPEC"));
}

#[test]
fn input_errors_carry_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let o = gwitt(&["witt", "ghost", "--group", "C2", "--input", s(&bad)]);
    assert_usage_error(&o);
    assert!(stderr(&o).starts_with("E_PARSE"));

    let c3 = write(&dir, "c3.json", &json!({"group_spec": "C3", "coords": [1, 2]}));
    let o = gwitt(&["witt", "ghost", "--group", "C2", "--input", s(&c3)]);
    assert!(stderr(&o).starts_with("E_OBJECT_MISMATCH"), "{}", stderr(&o));

    let short = write(&dir, "short.json", &json!({"group_spec": "C2", "coords": [1]}));
    let o = gwitt(&["witt", "neg", "--group", "C2", "--input", s(&short)]);
    assert_usage_error(&o);

    let o = gwitt(&["witt", "add", "--group", "C2", "--input", s(&short)]);
    assert!(stderr(&o).starts_with("E_USAGE"));
}

#[test]
fn disk_cache_is_written_and_reused() {
    let dir = TempDir::new().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_gwitt"))
            .args(["witt-polys", "--group", "C2 x C2", "--format", "json"])
            .env("WITT_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let file = dir.path().join("C2_x_C2.json");
    assert!(file.exists());
    let cached: WittPolySetJson = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(cached.group_spec, "C2 x C2");
    assert_eq!(run().stdout, first.stdout);
    std::fs::write(&file, "garbage").unwrap();
    let again = run();
    assert_eq!(again.stdout, first.stdout);
    assert!(serde_json::from_str::<WittPolySetJson>(&std::fs::read_to_string(&file).unwrap()).is_ok());
    assert_eq!(gwitt(&["witt-polys", "--group", "C2 x C2", "--format", "json"]).stdout, first.stdout);
}

fn teichmuller_input(dir: &TempDir) -> PathBuf {
    // X = C2/e with points 0, 1; coordinates (x0, 2 x0 x1 - 1)
    write(
        dir,
        "tin.json",
        &json!({
            "group_spec": "C2",
            "x": {"group_spec": "C2", "orbit_stabilizer_classes": [1]},
            "coords": [[[{"0": 1}, "1"]], [[{"0": 1, "1": 1}, "2"], [{}, "-1"]]]
        }),
    )
}

#[test]
fn teichmuller_round_trip() {
    let dir = TempDir::new().unwrap();
    let tin = teichmuller_input(&dir);
    let o = gwitt(&["teichmuller", "t", "--group", "C2", "--input", s(&tin), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let t = dir.path().join("t.json");
    std::fs::write(&t, &o.stdout).unwrap();
    let o = gwitt(&["teichmuller", "rho", "--group", "C2", "--input", s(&t), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let coords: Vec<IntPoly> = serde_json::from_value::<Vec<PolyJson>>(v["coords"].clone())
        .unwrap()
        .iter()
        .map(|p| IntPoly::try_from(p).unwrap())
        .collect();
    let x0 = IntPoly::var(0);
    let x1 = IntPoly::var(1);
    assert_eq!(coords, vec![x0.clone(), (x0 * x1).scale(&BigInt::from(2)) - IntPoly::one()]);
}

#[test]
fn bispan_commands() {
    let dir = TempDir::new().unwrap();
    let tin = teichmuller_input(&dir);
    let o = gwitt(&["teichmuller", "t", "--group", "C2", "--input", s(&tin), "--format", "json"]);
    let t = dir.path().join("t.json");
    std::fs::write(&t, &o.stdout).unwrap();

    // generic evaluation: N(x0) + T(2 x0 x1 - 1) = x0 x1 + 4 x0 x1 - 2
    let o = gwitt(&["bispan", "eval", "--group", "C2", "--input", s(&t)]);
    assert_eq!(stdout(&o), "0  5*x0*x1 - 2\n");
    let vals = write(&dir, "vals.json", &json!({"ring": "Z", "values": [3, 3]}));
    let o = gwitt(&["bispan", "eval", "--group", "C2", "--input", s(&t), "--values", s(&vals), "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"], json!(["43"]));
    // non-equivariant values are rejected
    let vals = write(&dir, "bad.json", &json!({"ring": "Z", "values": [1, 2]}));
    let o = gwitt(&["bispan", "eval", "--group", "C2", "--input", s(&t), "--values", s(&vals)]);
    assert!(stderr(&o).starts_with("E_EQUIVARIANCE"), "{}", stderr(&o));

    // canonical form is a fixed point
    let o = gwitt(&["bispan", "canon", "--group", "C2", "--input", s(&t), "--format", "json"]);
    assert_eq!(o.stdout, std::fs::read(&t).unwrap());

    // composing with the identity on X changes nothing
    let tab = table("C2");
    let x = Arc::new(GSet::regular(tab.group().clone()));
    let id = write(&dir, "id.json", &serde_json::to_value(Bispan::identity(x).to_json(&tab).unwrap()).unwrap());
    let o = gwitt(&["bispan", "compose", "--group", "C2", "--input", s(&t), "--input", s(&id), "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(o.stdout, std::fs::read(&t).unwrap());

    // u + u and u·u agree with the library
    let u = VirtualBispan::from_json(
        &serde_json::from_slice::<VirtualBispanJson>(&std::fs::read(&t).unwrap()).unwrap(),
        tab.clone(),
    )
    .unwrap();
    for (op, expect) in [("add", u.add(&u).unwrap()), ("mul", u.mul(&u).unwrap())] {
        let o = gwitt(&["bispan", op, "--group", "C2", "--input", s(&t), "--input", s(&t), "--format", "json"]);
        let got: VirtualBispanJson = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(VirtualBispan::from_json(&got, tab.clone()).unwrap(), expect, "{op}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("marks.txt");
    let o = gwitt(&["marks", "--group", "C2", "--output", s(&out)]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), gwitt(&["marks", "--group", "C2"]).stdout);
}
