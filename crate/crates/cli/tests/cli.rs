use std::process::{Command, Output};

const P61: &str = "-s*t+t^2; s^2; t^3; s^3";
const F61: &str = "x0^3*y1^2 + 3*x0*x1^2*y0*y1 - x1^3*y0^2 + x1^3*y0*y1";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biweier")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn analyze_parametrized_example() {
    let out = run(&["analyze", "--param", P61]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let rows = v["points"].as_array().unwrap();
    let cusp = rows.iter().find(|r| r["kind"] == "cusp").unwrap();
    assert_eq!(cusp["weights"], serde_json::json!([1, 2, 4]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "PASS"));
    let xi11 = &v["systems"][2]["xi"];
    assert_eq!(xi11["scalar"], "-77760");
}

#[test]
fn analyze_with_equation_reports_deltas_and_conjectures() {
    let out = run(&["analyze", "--param", P61, "--implicit", F61, "--type", "3,2", "--table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("mixed Hessian total 14 (expected 14)"));
    assert!(text.contains("H(1,0) (6,0)"));
}

#[test]
fn implicit_without_singularities_skips_counts() {
    let out = run(&["analyze", "--implicit", "x0^2*y1^3 - x1^2*y0^3", "--type", "2,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hessians"].as_array().unwrap().len(), 3);
    assert!(v["warnings"][0].as_str().unwrap().contains("singularity data required"));
}

#[test]
fn implicit_with_singularity_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sing.json");
    std::fs::write(
        &path,
        r#"{"points":[{"point":["1","0","1","0"],"delta":1,"branches":[{"m":2,"tangent_fiber":"y","l":3,"c":null}]},
            {"point":["-1","1","-1","1"],"delta":1,"branches":[{"m":1,"tangent_fiber":null,"l":1,"c":3},
            {"m":1,"tangent_fiber":null,"l":1,"c":3}]}]}"#,
    )
    .unwrap();
    let out = run(&["analyze", "--implicit", F61, "--type", "3,2", "--singularities", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["checks"][0]["formula"], 1);
    assert_eq!(v["checks"][1]["formula"], 2);

    std::fs::write(&path, r#"{"points":[{"point":["1","1","1","1"],"delta":1,"branches":[{"m":2,"tangent_fiber":null,"l":3,"c":null}]}]}"#).unwrap();
    let out = run(&["analyze", "--implicit", F61, "--type", "3,2", "--singularities", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn extra_system_on_example_family() {
    let out = run(&["analyze", "--param", "s^3;t^3;s^2;t^2", "--system", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let sys = v["systems"].as_array().unwrap().iter().find(|s| s["system"] == "(2,1)").unwrap();
    assert_eq!(sys["xi"]["normalized"], "s^9*t^9");
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(run(&["analyze", "--param", "s^2+; t"]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--implicit", "x0*y0", "--type", "2,1"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--implicit", "x0^2*y0", "--type", "2,1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn osculate_paths() {
    let out = run(&["osculate", "--param", P61, "--at", "1 : 4/5+sqrt(6)/5", "--system", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["contact"], serde_json::json!({"kind": "exact", "value": 4}));
    assert_eq!(v["hyperosculating"], true);

    let out = run(&["osculate", "--param", P61, "--at", "0:1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Weierstrass by convention"));

    let out = run(&["osculate", "--implicit", F61, "--type", "3,2", "--at", "-1:4;1:8", "--system", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["polynomial"], "x0 + 1/4*x1");
}

#[test]
fn hessian_command() {
    let out = run(&["hessian", "--implicit", F61, "--type", "3,2", "--chart", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|h| h["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["H(1,0)", "H(0,1)", "mixed", "local (1,1) chart (1,1)"]);
    assert_eq!(v[3]["bidegree"], serde_json::json!({"a": 14, "b": 8}));
}

#[test]
fn check_conjectures_on_example() {
    let out = run(&["check-conjectures", "--param", P61, "--implicit", F61]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hessian_total"], 14);
    assert_eq!(v["oneone_total"], 32);
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.svg");
    let p = path.to_str().unwrap();
    let out = run(&["plot", "--param", P61, "--chart", "1,1", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<polyline") && svg.contains("node"));
    assert_eq!(run(&["plot", "--param", P61, "--chart", "0,2", "--out", p]).status.code(), Some(1));
}
