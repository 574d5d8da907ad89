use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn lsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsv")).args(args).env_remove("LSV_CONFIG").output().expect("spawn lsv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn bracket_and_grade() {
    let o = lsv(&["bracket", "L(1,0)", "L(2,3)"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "L(3,3)\n"));
    let o = lsv(&["bracket", "Y(1/2,0)", "Y(-1/2,1)"]);
    assert_eq!(stdout(&o), "-M(0,1)\n");
    let o = lsv(&["--json", "grade", "L(1,0)+Y(1/2,0)+M(0,1)"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["payload"]["1/2"], "Y(1/2,0)");
}

#[test]
fn bad_input_exits_2() {
    let o = lsv(&["bracket", "L(1,0)", "M(1/2,0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1/2"));
    assert_eq!(lsv(&["bracket", "L(1,0)", "Q(1,0)"]).status.code(), Some(2));
    assert_eq!(lsv(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(lsv(&["cocycle-class", "/nonexistent.json"]).status.code(), Some(2));
    let o = lsv(&["--json", "bracket", "L(1", "L(0,0)"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "error");
}

#[test]
fn jacobi_check_small_window() {
    let o = lsv(&["check", "jacobi", "--gamma-height", "2", "--loop-bound", "1"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "pass\n"));
    let o = lsv(&["--json", "--timing", "check", "jacobi", "--gamma-height", "2", "--loop-bound", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["timing_ms"].is_u64());
    let o = lsv(&["--json", "check", "jacobi", "--gamma-height", "2", "--loop-bound", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn derivation_round_trip() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"rho":"2*t + 1/3","f":["t^-1"],"g":{"affine":["t","-t^2"]},"b":"5","inner":"M(1,0) - Y(1/2,1)"}"#;
    let f = write(&dir, "d.json", body);
    let o = lsv(&["decompose-derivation", &f]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rho"], "2*t + 1/3");
    assert_eq!(v["inner"], "M(1,0) - Y(1/2,1)");
    assert_eq!(v["residual"], "0");
    assert_eq!(stdout(&lsv(&["check", "derivation", &f])), "pass\n");
}

#[test]
fn automorphism_factor() {
    let dir = TempDir::new().unwrap();
    let body = r#"[{"z_flip":-1},{"inner":"M(1,2)"},{"scale":"-1"},{"m_shear":{"canonical":{"1":["1","2"]}}},
        {"loop_shift":[1]},{"char_twist":{"chi":["2"],"r":"3"}},{"loop_scale":"2"}]"#;
    let f = write(&dir, "w.json", body);
    assert_eq!(stdout(&lsv(&["check", "automorphism", &f])), "pass\n");
    let a = lsv(&["factor-automorphism", &f]);
    let b = lsv(&["factor", "automorphism", &f]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["residual"], "0");
    assert_eq!(v["eps"], -1);

    let bad = write(&dir, "bad.json", r#"[{"inner":"L(1,0)"}]"#);
    assert_eq!(lsv(&["factor-automorphism", &bad]).status.code(), Some(2));
}

#[test]
fn cocycles() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/cocycle.json");
    let o = lsv(&["cocycle-class", fixture]);
    assert_eq!(stdout(&o), "{\"classes\":{\"0\":\"3\"},\"residual\":\"0\"}\n");
    let o = lsv(&["cocycle-class", "--with-f", fixture]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["f"].is_object());

    let dir = TempDir::new().unwrap();
    // antisymmetric but fails the cocycle identity
    let f = write(&dir, "t.json", r#"{"table":[["L(1,0)","M(-1,0)","1"]]}"#);
    let o = lsv(&["cocycle-class", &f]);
    assert_eq!(o.status.code(), Some(1));
    let o = lsv(&["check", "cocycle", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("fail\n"));
}

#[test]
fn extension_and_iso() {
    let o = lsv(&["extend", "L(2,1)", "L(-2,-1)"]);
    assert_eq!(stdout(&o), "-4*L(0,0) + 1/2*C(0)\n");
    let o = lsv(&["extend", "L(2,1)", "L(-2,-1)", "--class", "0=2"]);
    assert_eq!(stdout(&o), "-4*L(0,0) + C(0)\n");

    let dir = TempDir::new().unwrap();
    let two = write(&dir, "two.json", r#"{"field":"Q","gamma_generators":["2"],"s":"1"}"#);
    let o = lsv(&["iso", &two]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "1/2\n"));
    let zr = write(&dir, "z.json", r#"{"field":"Q_sqrt","d":2,"gamma_generators":["1"],"s":"1/2"}"#);
    let wide = write(&dir, "w.json", r#"{"field":{"Q_sqrt":2},"gamma_generators":["1","sqrt2"],"s":"1/2"}"#);
    assert_eq!(stdout(&lsv(&["iso", &zr, &wide])), "none\n");
    assert_eq!(lsv(&["iso", &two, &wide]).status.code(), Some(2));
}

#[test]
fn config_from_environment() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "g.json", r#"{"field":"Q","gamma_generators":["2"],"s":"1"}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_lsv"))
        .args(["bracket", "L(4,0)", "Y(1,0)"])
        .env("LSV_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "-Y(5,0)\n");
    // Y(1,0) is not in the default algebra
    assert_eq!(lsv(&["bracket", "L(4,0)", "Y(1,0)"]).status.code(), Some(2));
}
