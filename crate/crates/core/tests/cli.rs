use std::path::Path;
use std::process::{Command, Output};

use indapprox::io::parse_samples;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indapprox")).args(args).current_dir(dir).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn sample_is_deterministic() {
    let t = tempfile::tempdir().unwrap();
    let args = ["sample", "--family", "student-t", "--kappa", "1", "--n", "5", "--seed", "7", "--out"];
    assert_eq!(code(&run(t.path(), &[&args[..], &["a.csv"]].concat())), 0);
    assert_eq!(code(&run(t.path(), &[&args[..], &["b.csv"]].concat())), 0);
    let a = std::fs::read(t.path().join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(t.path().join("b.csv")).unwrap());
    assert_eq!(parse_samples(&String::from_utf8(a).unwrap()).unwrap().len(), 5);
    assert!(t.path().join("a.csv.manifest.json").exists());
}

#[test]
fn sample_usage_errors() {
    let t = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(t.path(), &["sample", "--kappa", "-1", "--n", "5", "--seed", "7", "--out", "x.csv"])), 2);
    assert_eq!(code(&run(t.path(), &["sample", "--kappa", "1", "--n", "5", "--out", "x.csv"])), 2);
    assert_eq!(code(&run(t.path(), &["no-such-command"])), 2);
    assert_eq!(code(&run(t.path(), &["sample", "--family", "gamma", "--kappa", "1", "--n", "5", "--seed", "1", "--out", "x.csv"])), 2);
}

#[test]
fn one_sided_support() {
    let t = tempfile::tempdir().unwrap();
    let o = run(t.path(), &["sample", "--family", "gpareto-1s", "--mu", "3", "--kappa", "0.7", "--n", "2000", "--seed", "2", "--out", "p.csv"]);
    assert_eq!(code(&o), 0);
    let v = parse_samples(&std::fs::read_to_string(t.path().join("p.csv")).unwrap()).unwrap();
    assert!(v.iter().all(|&x| x >= 3.0));
}

#[test]
fn estimate_cauchy_and_errors() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    run(d, &["sample", "--kappa", "1", "--n", "10000", "--seed", "11", "--out", "c.csv"]);
    let o = run(d, &["estimate", "--in", "c.csv", "--json-out", "e.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let e = json(d, "e.json");
    assert!((e["kappa"].as_f64().unwrap() - 1.0).abs() < 0.27, "{e}");
    let mut keys: Vec<_> = e.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(keys, ["epsilon", "family", "kappa", "mu", "n2", "n3", "permutations", "sigma", "theory", "warnings"]);

    std::fs::write(d.join("empty.csv"), "# nothing here\n").unwrap();
    assert_eq!(code(&run(d, &["estimate", "--in", "empty.csv", "--json-out", "x.json"])), 3);
    std::fs::write(d.join("bad.csv"), "1\n2\nthree\n").unwrap();
    assert_eq!(code(&run(d, &["estimate", "--in", "bad.csv", "--json-out", "x.json"])), 3);
    assert_eq!(code(&run(d, &["estimate", "--in", "missing.csv", "--json-out", "x.json"])), 3);
    assert_eq!(code(&run(d, &["estimate", "--in", "c.csv", "--epsilon", "0", "--json-out", "x.json"])), 2);
}

#[test]
fn small_sample_wide_tolerance() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    run(d, &["sample", "--kappa", "1", "--n", "100", "--seed", "12", "--out", "s.csv"]);
    let o = run(d, &["estimate", "--in", "s.csv", "--epsilon", "2", "--permutations", "1", "--json-out", "e.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(json(d, "e.json")["n2"].as_u64().unwrap() > 0);
}

#[test]
fn fit_eval_at_mode() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    std::fs::write(d.join("m.csv"), "value\n0\n").unwrap();
    let o = run(d, &["fit-eval", "--in", "m.csv", "--mu", "0", "--sigma", "1", "--kappa", "1", "--json-out", "f.json"]);
    assert_eq!(code(&o), 0);
    let f = json(d, "f.json");
    assert!((f["avg_ll"].as_f64().unwrap() + 1.14473).abs() < 1e-5);
    assert!((f["avg_ll"].as_f64().unwrap() + std::f64::consts::PI.ln()).abs() < 1e-12);
    assert_eq!(f["ks"].as_f64().unwrap(), 0.5);
    assert!(f["cvm_p"].as_f64().is_some());
    assert_eq!(code(&run(d, &["fit-eval", "--in", "m.csv", "--json-out", "g.json"])), 2);
}

#[test]
fn fit_eval_from_estimate_with_plot() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    run(d, &["sample", "--kappa", "0.5", "--n", "3000", "--seed", "13", "--out", "s.csv"]);
    run(d, &["estimate", "--in", "s.csv", "--json-out", "e.json"]);
    assert_eq!(code(&run(d, &["fit-eval", "--in", "s.csv", "--params", "e.json", "--json-out", "f.json", "--plot-data", "p.csv"])), 0);
    assert!(json(d, "f.json")["ks"].as_f64().unwrap() < 0.05);
    let plot = std::fs::read_to_string(d.join("p.csv")).unwrap();
    assert!(plot.starts_with("x,histogram,pdf\n"));
    assert_eq!(plot.lines().count(), 101);
}

#[test]
fn hill_fixture() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    std::fs::write(d.join("g.csv"), "16\n2\n8\n1\n4\n").unwrap();
    assert_eq!(code(&run(d, &["hill", "--in", "g.csv", "--k", "4", "--json-out", "h.json"])), 0);
    let h = json(d, "h.json");
    assert!((h["kappa"].as_f64().unwrap() - 2.5 * 2f64.ln()).abs() < 1e-6);
    assert_eq!(h["k_used"], serde_json::json!([4, 4]));
    assert_eq!(code(&run(d, &["hill", "--in", "g.csv", "--k", "9", "--json-out", "x.json"])), 3);
}

#[test]
fn ia_select_outputs() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    run(d, &["sample", "--kappa", "0.5", "--n", "4000", "--seed", "14", "--out", "s.csv"]);
    assert_eq!(code(&run(d, &["ia-select", "--in", "s.csv", "--out", "r.csv", "--json-out", "r.json"])), 0);
    let c = json(d, "r.json");
    let reps = parse_samples(&std::fs::read_to_string(d.join("r.csv")).unwrap()).unwrap();
    assert_eq!(c["count"].as_u64().unwrap() as usize, reps.len());
    assert_eq!(code(&run(d, &["ia-select", "--in", "s.csv", "--epsilon", "1e-12", "--permutations", "1", "--out", "r.csv", "--json-out", "r.json"])), 3);
    assert_eq!(code(&run(d, &["ia-select", "--in", "s.csv", "--order", "1", "--out", "r.csv", "--json-out", "r.json"])), 2);
}

#[test]
fn benchmark_and_stdmap() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    std::fs::write(
        d.join("b.json"),
        r#"{"family":"gpareto_two_sided","shapes":[0.5],"locations":[0],"scales":[1,2],"sizes":[3000],"trials":2,"seed":3}"#,
    )
    .unwrap();
    assert_eq!(code(&run(d, &["benchmark", "--config", "b.json", "--out", "b.csv"])), 0);
    assert_eq!(std::fs::read_to_string(d.join("b.csv")).unwrap().lines().count(), 4);
    assert!(std::fs::read_to_string(d.join("b.md")).unwrap().starts_with("| Shape"));
    std::fs::write(d.join("bad.json"), r#"{"family":"student_t","shapes":[1],"locations":[0],"scales":[1],"sizes":[100],"trials":0,"seed":1}"#).unwrap();
    assert_eq!(code(&run(d, &["benchmark", "--config", "bad.json", "--out", "x.csv"])), 2);

    assert_eq!(code(&run(d, &["stdmap", "--k", "0", "--m", "500", "--t", "50", "--seed", "1", "--out", "z.csv"])), 0);
    assert_eq!(parse_samples(&std::fs::read_to_string(d.join("z.csv")).unwrap()).unwrap().len(), 500);
    assert_eq!(code(&run(d, &["stdmap", "--k", "0", "--m", "0", "--t", "50", "--seed", "1", "--out", "z.csv"])), 2);
}

#[test]
fn replay_detects_changed_input() {
    let t = tempfile::tempdir().unwrap();
    let d = t.path();
    run(d, &["sample", "--kappa", "1", "--n", "500", "--seed", "15", "--out", "s.csv"]);
    assert_eq!(code(&run(d, &["hill", "--in", "s.csv", "--json-out", "h.json"])), 0);
    assert_eq!(code(&run(d, &["replay", "--manifest", "h.json.manifest.json", "--redirect", "again"])), 0);
    assert_eq!(std::fs::read(d.join("h.json")).unwrap(), std::fs::read(d.join("again/h.json")).unwrap());
    std::fs::write(d.join("s.csv"), "1\n2\n3\n").unwrap();
    assert_eq!(code(&run(d, &["replay", "--manifest", "h.json.manifest.json"])), 3);
}
