use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ribbontutte"))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const TRIANGLE: &str = "# triangle, H empty\nvertex u: a f\nvertex v: b c\nvertex w: d e\n\
                        edge p: a b\nedge q: c d\nedge r: e f\n";

#[test]
fn br_of_untwisted_loop() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "loop.rg", "vertex v: a b\nedge e: a b sign=+\n");
    let (code, out, _) = run(&["br", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "x_e*Y + y_e\n");
}

#[test]
fn rtutte_of_triangle_with_unit_weights() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "tri.rpg", TRIANGLE);
    let (code, out, _) = run(&["rtutte", f.to_str().unwrap(), "--substitute", "x_*=1,y_*=1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "X^2 + 3*X + Y + 3\n");
}

#[test]
fn verify_main_passes() {
    let (code, out, _) = run(&["verify", "--main", "--random=10", "--seed=7", "--max-size=5"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.iter().filter(|l| l.starts_with("PASS main seed=")).count(), 10);
    assert_eq!(lines.last(), Some(&"10 passed, 0 failed"));
}

#[test]
fn genus_one_input_exits_2_with_euler_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "torus.rpg", "vertex v: a c b d\nedge e: a b\nedge f: c d\n");
    let (code, out, err) = run(&["rtutte", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("Euler deficit 2"), "{err}");
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.vld", "crossing c: kind=classical ends=a b c\n");
    let (code, _, err) = run(&["bracket", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    assert!(err.contains("degree 4"), "{err}");
}

#[test]
fn convert_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let rg = write(&dir, "tw.rg", "vertex v: a b c d\nedge e: a c sign=-\nedge f: b d sign=+\n");
    let (code, plane, _) = run(&["convert", "--to=plane", rg.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(plane.contains("# edge e = e"));
    let rpg = write(&dir, "tw.rpg", &plane);
    let (code, ribbon, _) = run(&["convert", "--to=ribbon", rpg.to_str().unwrap()]);
    assert_eq!(code, 0);
    let back = write(&dir, "back.rg", &ribbon);
    let (_, a, _) = run(&["br", rg.to_str().unwrap()]);
    let (_, b, _) = run(&["br", back.to_str().unwrap()]);
    assert_eq!(a, b);
}

#[test]
fn dual_and_tait_emit_valid_files() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(&dir, "tri.rpg", TRIANGLE);
    let (code, dual, _) = run(&["dual", tri.to_str().unwrap()]);
    assert_eq!(code, 0);
    let d = write(&dir, "dual.rpg", &dual);
    let (code, _, _) = run(&["rtutte", d.to_str().unwrap()]);
    assert_eq!(code, 0);
    let knot = write(&dir, "t.vld", "gauss O1+U2+O3+U1+O2+U3+\n");
    let (code, tait, _) = run(&["convert", "--to=tait", knot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(tait.lines().filter(|l| l.starts_with("edge")).count(), 3);
    let (code, jones, _) = run(&["jones", knot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(jones, "-t^4 + t^3 + t\n");
}

#[test]
fn cap_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(&dir, "tri.rpg", TRIANGLE);
    let (code, _, err) = run(&["rtutte", tri.to_str().unwrap(), "--cap", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"), "{err}");
    let out = bin()
        .args(["rtutte", tri.to_str().unwrap()])
        .env("RIBBONTUTTE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_exits_0() {
    let (code, out, _) = run(&["selftest"]);
    assert_eq!(code, 0, "{out}");
}
