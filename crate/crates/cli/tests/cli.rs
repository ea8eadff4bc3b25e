use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_froblift")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let o = run(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn witt_addition_carries() {
    let o = run(&["witt", "--p", "2", "--add", "1,0", "1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(0,1)");
    let v = json(&["witt", "--p", "3", "--mul", "2,0", "2,0"]);
    assert_eq!(v["result"]["result"], serde_json::json!([1, 0]));
}

#[test]
fn witt_table_matches_integers_mod_p_squared() {
    for p in ["2", "3", "5"] {
        assert_eq!(json(&["witt", "--p", p, "--table"])["verdict"], "isomorphic");
    }
}

#[test]
fn repro_conic_tangent_passes() {
    let o = run(&["repro", "conic-tangent"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS]"));
}

#[test]
fn repro_invariant_splitting_at_three() {
    let o = run(&["repro", "p1-invariant-splitting", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn repro_unknown_target_is_an_error() {
    assert_eq!(run(&["repro", "nonsense"]).status.code(), Some(2));
}

#[test]
fn malformed_json_reports_position() {
    let dir = std::env::temp_dir().join(format!("froblift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"q\": 5,\n\"entries\": [[}\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = run(&["split-type", "--matrix", &arg]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
    let v = json(&["split-type", "--matrix", &arg]);
    assert_eq!(v["verdict"], "error");
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["witt"]).status.code(), Some(2));
    assert_eq!(run(&["dynkin", "Q3:1"]).status.code(), Some(2));
    assert_eq!(run(&["h0", "--catalog", "P2", "--divisor", "1,0"]).status.code(), Some(2));
}

#[test]
fn dynkin_verdicts() {
    let v = json(&["dynkin", "A3:1"]);
    assert_eq!(v["result"]["dimension"], 3);
    assert_eq!(v["result"]["projective_space"], 3);
    let v = json(&["dynkin", "C3:1"]);
    assert_eq!(v["result"]["projective_space"], 5);
    let v = json(&["dynkin", "E6:1"]);
    assert_eq!(v["result"]["dimension"], 16);
    assert!(v["result"]["projective_space"].is_null());
    assert!(stdout(&run(&["dynkin", "A4:1,4"])).contains("dim G/P = 7"));
}

#[test]
fn fano_screen_bundled_table() {
    let v = json(&["fano-screen"]);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 104);
    let row = v["result"]["rows"].as_array().unwrap().iter().find(|r| r["id"] == "2.25").unwrap().clone();
    assert_eq!(row["chi"], -1);
}

#[test]
fn toric_cohomology_on_p2() {
    assert_eq!(json(&["h0", "--catalog", "P2", "--divisor", "2,0,0"])["result"]["h0"], 6);
    assert_eq!(json(&["hi", "--catalog", "P2", "--divisor", "-3,0,0"])["result"]["h"], serde_json::json!([0, 0, 1]));
    assert_eq!(json(&["bott", "--catalog", "P2", "--divisor", "1,0,0"])["verdict"], "vanishes");
}

#[test]
fn fedder_and_splitting() {
    assert_eq!(json(&["fedder", "--p", "5", "--vars", "x,y,z", "--poly", "x*y*z"])["verdict"], "F-split");
    assert_eq!(json(&["fedder", "--p", "3", "--vars", "x,y,z", "--poly", "x^3+y^3+z^3"])["verdict"], "not F-split");
    assert_eq!(json(&["delta-divisor", "--p", "3", "--n", "2"])["verdict"], "splitting");
}

#[test]
fn fixed_points_count() {
    let v = json(&["fixed-points", "--q", "3", "--matrix", "1,0;0,1"]);
    assert_eq!(v["result"]["count"], 9);
}

#[test]
fn surface_descent_refuses_smooth_boundary_point() {
    let o = run(&["surface-descent", "--catalog", "P2", "--center", "fixed:0", "--center", "ray:0"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("accepted") && s.contains("refused"), "{s}");
    assert_eq!(json(&["surface-descent", "--hirzebruch", "3", "--dv", "2"])["verdict"], "identities hold");
    assert_eq!(json(&["surface-descent", "--hirzebruch", "3", "--dv", "1"])["verdict"], "identity fails");
}
