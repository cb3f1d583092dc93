use std::path::PathBuf;
use std::process::{Command, Output};

fn fourfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourfold"))
        .args(args)
        .env_remove("FOURFOLD_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fourfold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn generate_is_deterministic() {
    let a = fourfold(&["generate", "--family", "e6", "--seed", "7"]);
    let b = fourfold(&["generate", "--family", "e6", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let t = stdout(&fourfold(&["generate", "--family", "t333", "--seed", "1"]));
    let file: fourfold::family::CubicFile = serde_json::from_str(&t).unwrap();
    let c = fourfold::family::CubicFourfold::from_file(&file).unwrap();
    let m = fourfold::algebra::Monomial::from_exps(&[1, 2, 0, 0, 0, 0]);
    assert_eq!(c.form.coeff_i64(&m), Some(1));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(fourfold(&["generate", "--family", "e7"]).status.code(), Some(2));
    assert_eq!(fourfold(&["count", "fixture:t333", "--mmax", "10"]).status.code(), Some(2));
    assert_eq!(fourfold(&["pipeline", "--family", "e6", "--attempts", "0"]).status.code(), Some(2));
    assert_eq!(fourfold(&["verify", "fixture:nope"]).status.code(), Some(2));
    assert_eq!(fourfold(&["verify", "/nonexistent/cubic.json"]).status.code(), Some(2));
}

#[test]
fn special_family_is_refused() {
    let o = fourfold(&["pipeline", "--family", "d4-2a1-s1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("contain a plane"));
    let v = fourfold(&["verify", "fixture:d4-2a1-s1"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("\"note\""));
}

#[test]
fn generated_file_feeds_later_stages() {
    let path = scratch("t333.json");
    let p = path.to_str().unwrap();
    assert_eq!(fourfold(&["generate", "--family", "t333", "--seed", "3", "--out", p]).status.code(), Some(0));
    assert!(path.with_extension("txt").exists());
    assert_eq!(fourfold(&["verify", p]).status.code(), Some(0));
    let txt = path.with_extension("txt");
    let o = fourfold(&["reduce2", txt.to_str().unwrap()]);
    assert!(matches!(o.status.code(), Some(0) | Some(1)));
    assert!(stdout(&o).contains("goodReduction"));
}

#[test]
fn counts_as_csv() {
    let o = fourfold(&["count", "fixture:t333", "--mmax", "4", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "m,N,algorithm,elapsed_seconds");
    assert!(lines[1].starts_with("1,31,conic,"));
    assert_eq!(lines.len(), 5);
}

#[test]
fn short_certify_writes_partial_dossier() {
    let path = scratch("dossier.json");
    let o = fourfold(&["certify", "fixture:d6", "--mmax", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(&path).unwrap();
    let d = fourfold::pipeline::Dossier::from_json(&text).unwrap();
    assert_eq!(d.counts.as_ref().map(Vec::len), Some(5));
    assert!(d.verdict.is_none() && d.chi.is_none());
    assert_eq!(d.to_json() + "\n", text);
}

#[test]
fn reduction_of_the_special_fixture_is_bad() {
    let o = fourfold(&["reduce2", "fixture:d4-2a1-s1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"goodReduction\": false"));
}

#[test]
fn audit_table_for_one_family() {
    let o = fourfold(&["audit-dims", "--family", "t333"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["dimDK"], 18);
    assert_eq!(v[0]["pK"], 20);
}
