use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_corona-walk"));
    c.env("CORONA_WALK_THREADS", "2");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn certify_digon_double_star() {
    let o = run(&["certify-pst", "corona(digon,empty(15))", "--u", "0.0", "--v", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["u"], "0.0");
    assert_eq!(v["v"], "1.0");
    assert_eq!(v["result"]["outcome"], "certified");
    assert!((v["result"]["t0"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn check_periodic_path_corona() {
    let o = run(&["check-periodic", "corona(path(3),empty(4))", "--vertex", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["verdict"]["status"], "Periodic");
    assert_eq!(v["verdict"]["delta"], 2);
    assert_eq!(v["method"], "corona-closed-form");
    let dense = stdout_json(&run(&["check-periodic", "corona(path(3),empty(4))", "--vertex", "1.0", "--dense"]));
    assert_eq!(dense["verdict"]["status"], "Periodic");
    assert_eq!(dense["verdict"]["delta"], 2);
}

#[test]
fn construct_barbell() {
    let o = run(&["construct-pgst", "--family", "barbell", "--params", "m=7", "--eps", "1e-3"]);
    assert_eq!(o.status.code(), Some(0));
    let w = &stdout_json(&o)["witness"];
    assert!(w["fidelity"].as_f64().unwrap() >= 0.999);
    assert_eq!(w["u"], "0.0");
    assert_eq!(w["v"], "1.0");
}

#[test]
fn construct_thorny_with_graph_parameter() {
    let o = run(&["construct-pgst", "--family", "thorny-pst", "--params", "base=cube(3),u=0,v=7", "--eps", "0.01"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout_json(&o)["witness"]["fidelity"].as_f64().unwrap() >= 0.99);
    let o = run(&["construct-pgst", "--family", "barbell", "--params", "n=3", "--eps", "0.01"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fidelity_trace_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.csv");
    let o = run(&["fidelity-trace", "corona(path(3),empty(4))", "--u", "0.0", "--v", "2.0", "--tmax", "20", "--steps", "500", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,fidelity"));
    let rows: Vec<(f64, f64)> = lines
        .map(|l| {
            let (t, f) = l.split_once(',').unwrap();
            (t.parse().unwrap(), f.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 501);
    assert!(rows.windows(2).all(|w| w[1].0 > w[0].0));
    assert!(rows.iter().all(|(t, f)| t.is_finite() && f.is_finite()));
    assert_eq!(rows.last().unwrap().0, 20.0);
    assert_eq!(stdout_json(&o)["rows"], 501);
}

#[test]
fn spectrum_support_cospectral_quotient() {
    let v = stdout_json(&run(&["spectrum", "corona(path(3),empty(4))"]));
    let exact: Vec<&str> = v["exact"].as_array().unwrap().iter().filter_map(|e| e["text"].as_str()).collect();
    assert!(exact.contains(&"2*sqrt(2)"), "{exact:?}");
    assert_eq!(v["vertices"], 15);

    let v = stdout_json(&run(&["support", "path(3)", "--vertex", "1"]));
    assert_eq!(v["support"].as_array().unwrap().len(), 2);

    let v = stdout_json(&run(&["cospectral", "path(4)", "--u", "0", "--v", "3"]));
    assert_eq!(v["result"]["strongly_cospectral"], true);
    let v = stdout_json(&run(&["cospectral", "path(3)", "--u", "0", "--v", "1"]));
    assert_eq!(v["result"]["message"], "not strongly cospectral");

    let v = stdout_json(&run(&["quotient", "cube(3)", "--partition", "0;1,2,4;3,5,6;7"]));
    assert_eq!(v["result"]["equitable"], true);
    let w = v["result"]["weights"].as_array().unwrap();
    assert!((w[0][1].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    let v = stdout_json(&run(&["quotient", "path(4)", "--partition", "0,1;2,3"]));
    assert_eq!(v["result"]["message"], "not equitable");
}

#[test]
fn addresses_round_trip() {
    let g = "corona(corona(complete(2),complete(1)),empty(2))";
    let v = stdout_json(&run(&["certify-pst", g, "--u", "0.1.0", "--v", "1.1.0"]));
    assert_eq!(v["u"], "0.1.0");
    assert_eq!(v["v"], "1.1.0");
    let o = run(&["search-pgst", "corona(complete(2),empty(2))", "--u", "0.1", "--v", "1.1", "--tmax", "10", "--steps", "1000"]);
    let w = &stdout_json(&o)["witness"];
    assert_eq!((w["u"].as_str(), w["v"].as_str()), (Some("0.1"), Some("1.1")));
}

#[test]
fn errors_and_exit_codes() {
    let o = run(&["--json", "spectrum", "corona(path(3),"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    let first: Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(first["error"]["kind"], "parse");
    assert_eq!(first["error"]["position"], 15);

    assert_eq!(run(&["support", "path(3)", "--vertex", "7.0"]).status.code(), Some(2));
    assert_eq!(run(&["construct-pgst", "--family", "bunkbed", "--params", "n=1", "--eps", "0.01"]).status.code(), Some(2));
    assert_eq!(run(&["construct-pgst", "--family", "barbell", "--params", "m=3", "--eps", "1e-4", "--n-max", "2"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["reproduce", "nonsense"]).status.code(), Some(2));
}

#[test]
fn manifest_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let o = run(&["--manifest", m.to_str().unwrap(), "spectrum", "digon"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&m).unwrap()).unwrap();
    assert_eq!(v["command"], "spectrum");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["threads"], 2);
    assert!(v["engine_version"].is_string());

    let o = run(&["spectrum", "digon"]);
    let err = String::from_utf8(o.stderr).unwrap();
    let line: Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
    assert_eq!(line["manifest"]["command"], "spectrum");
}

fn reproduce_into(dir: &Path) -> (Vec<u8>, Vec<u8>) {
    let o = run(&["reproduce", "weighted-p4", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(dir.join("manifest-weighted-p4.json").exists());
    (o.stdout, std::fs::read(dir.join("reproduce-weighted-p4.json")).unwrap())
}

#[test]
fn reproduce_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(reproduce_into(a.path()), reproduce_into(b.path()));
    let o = run(&["reproduce", "3", "--out-dir", a.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("PASS  3 digon"));
}
