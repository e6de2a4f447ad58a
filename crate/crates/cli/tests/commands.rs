use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const HEPTAGON_ITERATE_5: [(f64, f64); 7] = [
    (1.4771, 1.7189), (1.8975, 1.6744), (1.9886, 1.7390), (1.8697, 1.8878),
    (1.5198, 1.9908), (1.2401, 1.9833), (1.2537, 1.8721),
];

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentagram")).args(args).output().expect("binary runs")
}

fn run_path(args: &[&str], input: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(input.to_str().unwrap());
    run(&all)
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn la_on_heptagon() {
    let r = report(&run_path(&["la"], &data("heptagon.json")));
    let m = &r["results"]["matrix"];
    assert_eq!(m, &serde_json::json!([["-6", "-4", "49"], ["-1", "-7", "51"], ["-1", "-3", "27"]]));
    assert_eq!(r["results"]["trace"], "14");
    assert_eq!(r["results"]["charpoly"], serde_json::json!(["1", "-14", "-111", "-116"]));
    assert_eq!(r["input"]["mode"], "exact");

    let r = report(&run_path(&["la", "--float"], &data("heptagon.json")));
    assert_eq!(f(&r["results"]["matrix"][0][2]), 49.0);
}

#[test]
fn la_on_axis_aligned_hexagon() {
    let r = report(&run_path(&["la"], &data("axis_hexagon.json")));
    assert_eq!(r["results"]["matrix"], serde_json::json!([["3", "0", "8"], ["0", "3", "5"], ["0", "0", "6"]]));
}

#[test]
fn la_rejects_collinear_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "flat.json", r#"{"vertices": [[0,0],[1,0],[2,0],[2,2],[0,2]]}"#);
    let out = run_path(&["la"], &p);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("index 1") && err.contains("collinear"), "{err}");
}

#[test]
fn limit_on_heptagon_both_methods() {
    let r = report(&run_path(&["limit", "--method", "both"], &data("heptagon.json")));
    let res = &r["results"];
    assert!((f(&res["limit"][0]) - 1.609).abs() < 1e-3);
    assert!((f(&res["limit"][1]) - 1.838).abs() < 1e-3);
    assert!((f(&res["eigenvalue"]) - 19.878).abs() < 1e-3);
    assert!(f(&res["cross_deviation"]) < 1e-6);
    assert_eq!(r["checks"][0]["status"], "pass");

    let r = report(&run_path(&["limit", "--method", "iterate", "--tol", "1e-6"], &data("heptagon.json")));
    assert!((f(&r["results"]["limit"][0]) - 1.609).abs() < 1e-3);
}

#[test]
fn limit_of_regular_pentagon_is_its_center() {
    let dir = tempfile::tempdir().unwrap();
    let pts: Vec<String> = (0..5)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / 5.0;
            format!("[{:?}, {:?}]", t.cos(), t.sin())
        })
        .collect();
    let p = write(&dir, "pent.json", &format!(r#"{{"vertices": [{}]}}"#, pts.join(", ")));
    let r = report(&run_path(&["limit"], &p));
    assert_eq!(r["input"]["mode"], "float");
    assert!(f(&r["results"]["limit"][0]).abs() < 1e-9);
    assert!(f(&r["results"]["limit"][1]).abs() < 1e-9);
    assert!(f(&r["results"]["cross_deviation"]) < 1e-6, "cross-check runs by default");
    assert_eq!(r["command"]["args"]["method"], "both");
}

#[test]
fn limit_rejects_non_convex_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(&dir, "dart.csv", "0 0\n4 0\n1 1\n0 4\n-1 2\n");
    let out = run_path(&["limit", "--method", "eigen"], &p);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not convex"));
}

#[test]
fn iterate_reproduces_the_fifth_heptagon() {
    let r = report(&run_path(&["iterate", "-k", "5"], &data("heptagon.json")));
    let got: Vec<(f64, f64)> = r["results"]["approx"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (f(&p[0]), f(&p[1])))
        .collect();
    let n = got.len();
    assert_eq!(n, 7);
    let close = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() < 1e-3 && (a.1 - b.1).abs() < 1e-3;
    assert!((0..n).any(|s| (0..n).all(|i| close(got[(i + s) % n], HEPTAGON_ITERATE_5[i]))), "{got:?}");

    let mixed = report(&run_path(&["iterate", "-k", "5", "--exact-steps", "2"], &data("heptagon.json")));
    assert_eq!(mixed["results"]["exact_steps"], 2);
    for (p, q) in mixed["results"]["vertices"].as_array().unwrap().iter().zip(r["results"]["approx"].as_array().unwrap()) {
        assert!((f(&p[0]) - f(&q[0])).abs() < 1e-12);
    }
}

#[test]
fn iterate_zero_echoes_input() {
    let r = report(&run_path(&["iterate", "-k", "0"], &data("pentagon.json")));
    assert_eq!(
        r["results"]["vertices"],
        serde_json::json!([["0", "0"], ["4", "0"], ["9/2", "3"], ["2", "5"], ["-1/2", "3"]])
    );
}

#[test]
fn iterate_square_degenerates() {
    let out = run_path(&["iterate", "-k", "1"], &data("square.csv"));
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("step 1") && err.contains("degenerate"), "{err}");
}

#[test]
fn collapse_reports_centroid() {
    let r = report(&run_path(&["collapse", "--verify"], &data("axis_hexagon.json")));
    assert_eq!(r["results"]["collapse_point"], serde_json::json!(["8/3", "5/3"]));
    assert_eq!(r["results"]["meet"], serde_json::json!(["8/3", "5/3"]));
    assert_eq!(r["checks"][0]["status"], "pass");

    let r = report(&run_path(&["collapse"], &data("square.csv")));
    assert_eq!(r["results"]["collapse_point"], serde_json::json!(["1/2", "1/2"]));

    assert_eq!(run_path(&["collapse"], &data("heptagon.json")).status.code(), Some(2));
}

#[test]
fn verify_heptagon_and_pentagon() {
    let r = report(&run_path(&["verify"], &data("heptagon.json")));
    for c in r["checks"].as_array().unwrap() {
        assert_ne!(c["status"], "fail", "{c}");
    }
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["conservation", "trace", "invariance", "hull", "smalln", "duality", "incidence"]);

    let r = report(&run_path(&["verify", "--checks", "smalln"], &data("pentagon.json")));
    assert_eq!(r["checks"][0]["status"], "pass");
    assert!(r["checks"][0]["detail"].as_str().unwrap().contains("labeling shift 2"));

    let r = report(&run_path(&["verify", "--checks", "incidence,trace"], &data("axis_hexagon.json")));
    assert_eq!(r["checks"][0]["status"], "pass");
}

#[test]
fn verify_catches_corrupted_matrix() {
    let out = run_path(&["verify", "--corrupt-la", "--checks", "conservation"], &data("heptagon.json"));
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["checks"][0]["status"], "fail");
    assert_eq!(f(&r["checks"][0]["deviation"]), 1.0);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let heptagon = data("heptagon.json");
    let args = |o: &Path| {
        vec!["render".to_string(), "-k".into(), "5".into(), "--mark-limit".into(), "-o".into(),
             o.to_str().unwrap().into(), heptagon.to_str().unwrap().into()]
    };
    let ra = run(&args(&a).iter().map(String::as_str).collect::<Vec<_>>());
    let rb = run(&args(&b).iter().map(String::as_str).collect::<Vec<_>>());
    assert!(ra.status.success() && rb.status.success());
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    let svg = String::from_utf8(sa).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 6);
    assert!(svg.contains(r#"<circle class="limit" cx="1.609477" cy="-1.837601""#), "{svg}");

    let single = dir.path().join("c.svg");
    let out = run(&["render", "-k", "0", "-o", single.to_str().unwrap(), heptagon.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&single).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 1);
    assert!(!svg.contains("<circle"));

    let sq = dir.path().join("sq.svg");
    let out = run(&["render", "-k", "1", "-o", sq.to_str().unwrap(), data("square.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reports_are_byte_identical() {
    for args in [vec!["limit", "--method", "both"], vec!["verify", "--seed", "3"], vec!["la"]] {
        let a = run_path(&args, &data("heptagon.json"));
        let b = run_path(&args, &data("heptagon.json"));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let timed = report(&run_path(&["la", "--timing"], &data("heptagon.json")));
    assert!(timed["timing"]["elapsed_ms"].is_number());
}

#[test]
fn reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_pentagram"))
        .args(["la", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2,0\n3,1\n3,2\n2,3\n1,3\n0,2\n0,1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let r = report(&out);
    assert_eq!(r["results"]["trace"], "14");
}
