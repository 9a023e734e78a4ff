use std::path::PathBuf;
use std::process::{Command, Output};

use birat::links::{condition_check, construct_link_sigma, normal_form_x1214, random_member, MemberOptions};
use birat::qpoly::DEFAULT_PRIME;
use serde_json::{json, Value};
use tempfile::TempDir;

fn birat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_birat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path
}

fn x1214_input(dir: &TempDir, options: &MemberOptions) -> PathBuf {
    let x = random_member(21, DEFAULT_PRIME, options).unwrap();
    let eqs: Vec<String> = x.equations.iter().map(|f| f.to_string()).collect();
    write(
        dir,
        "x1214.json",
        &json!({
            "ambient": {"weights": [1, 2, 3, 4, 7, 11], "vars": ["x", "y", "z", "t", "v", "w"]},
            "equations": eqs, "degrees": [12, 14], "field": {"Fp": DEFAULT_PRIME}, "seed": 21
        }),
    )
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json report")
}

#[test]
fn verify_paper_passes() {
    let o = birat(&["verify-paper", "--seed", "7", "--samples", "10", "--parallel"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("all paper checks passed"));
}

#[test]
fn analyze_finds_the_eleven_point_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let path = x1214_input(&dir, &MemberOptions::default());
    let p = path.to_str().unwrap();
    let a = birat(&["analyze", p, "--samples", "5", "--format", "json"]);
    let b = birat(&["analyze", p, "--samples", "5", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("\"1/11(1,2,9)\""), "{text}");
    let v = json_of(&a);
    assert_eq!(v["schema"], json!(1));
    assert_eq!(v["steps"][0]["name"], json!("ambient"));
    let back: Value = serde_json::from_str(&serde_json::to_string_pretty(&v).unwrap()).unwrap();
    assert_eq!(back, v);
}

#[test]
fn blowup_of_the_ce6_point_has_discrepancy_one() {
    let x = random_member(22, DEFAULT_PRIME, &MemberOptions::default()).unwrap();
    let nf = normal_form_x1214(&x.equations[0], &x.equations[1]).unwrap();
    let hx = construct_link_sigma(&nf).unwrap().hat_x;
    let f = condition_check(&hx, 5, 0).unwrap().equation;
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "hat.json",
        &json!({
            "ambient": {"weights": [1, 1, 1, 2, 3], "vars": ["x", "y", "z", "t", "w"]},
            "equations": [f.to_string()], "degrees": [7]
        }),
    );
    let o = birat(&["blowup", path.to_str().unwrap(), "--point", "x", "--weights", "4,1,2,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json_of(&o)["steps"][1]["result"]["discrepancy"], json!("1"));

    let t = birat(&["two-ray", path.to_str().unwrap(), "--point", "x", "--weights", "4,1,2,1", "--format", "json"]);
    assert_eq!(t.status.code(), Some(0));
    assert_eq!(json_of(&t)["steps"][1]["name"], json!("trace"));
}

#[test]
fn kawamata_blowup_of_the_eleven_point() {
    let dir = TempDir::new().unwrap();
    let path = x1214_input(&dir, &MemberOptions::default());
    let o = birat(&["blowup", path.to_str().unwrap(), "--point", "w", "--weights", "6,1,7,2,9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(json_of(&o)["steps"][1]["result"]["discrepancy"], json!("1/11"));
}

#[test]
fn rational_field_and_qsmooth() {
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "p4.json",
        &json!({
            "ambient": {"weights": [1, 1, 1, 1, 1], "vars": ["a", "b", "c", "d", "e"]},
            "equations": ["a^3 + b^3 + c^3 + d^3 + e^3"], "degrees": [3], "field": "Q"
        }),
    );
    let o = birat(&["qsmooth", path.to_str().unwrap(), "--samples", "5", "--field", "q", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json_of(&o);
    assert_eq!(v["command"]["field"], json!("Q"));
    assert_eq!(v["steps"][0]["result"].as_array().unwrap().len(), 5);
    assert_eq!(v["steps"][2]["result"], json!(true));
}

#[test]
fn exit_codes_partition_failures() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"ambient\": ").unwrap();
    assert_eq!(birat(&["analyze", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(birat(&["no-such-command"]).status.code(), Some(1));
    let unhomogeneous = write(
        &dir,
        "u.json",
        &json!({"ambient": {"weights": [1, 2], "vars": ["x", "y"]}, "equations": ["x^3 + y"], "degrees": [3]}),
    );
    assert_eq!(birat(&["analyze", unhomogeneous.to_str().unwrap()]).status.code(), Some(1));

    let degenerate = write(
        &dir,
        "deg.json",
        &json!({
            "ambient": {"weights": [1, 2, 3, 4, 7, 11], "vars": ["x", "y", "z", "t", "v", "w"]},
            "equations": ["-w*x + t^3 + y^4*t + z^4", "w*z + y*t^3 + v^2 + x^14"], "degrees": [12, 14]
        }),
    );
    let o = birat(&["link", degenerate.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert_eq!(json_of(&o)["status"]["outcome"], json!("certificate_failure"));

    let special = x1214_input(&dir, &MemberOptions::lambda_zero());
    let o = birat(&["verify-paper", special.to_str().unwrap(), "--samples", "10"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).contains("paper checks failed"));
}

#[test]
fn shipped_examples_analyze() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let o = birat(&["analyze", path.to_str().unwrap(), "--samples", "5"]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), stdout(&o));
    }
}
