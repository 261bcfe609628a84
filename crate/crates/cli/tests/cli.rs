use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use bcolor::{gen_classic, write_dimacs, Graph};

fn bcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcolor")).args(args).output().unwrap()
}

fn bcolor_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bcolor"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Temporary directory removed on drop.
struct Dir(PathBuf);

impl Dir {
    fn new(tag: &str) -> Dir {
        let dir = std::env::temp_dir().join(format!("bcolor-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Dir(dir)
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.0.join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn graph(&self, name: &str, g: &Graph) -> String {
        self.file(name, &write_dimacs(g))
    }
}

impl Drop for Dir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

#[test]
fn exit_codes() {
    let dir = Dir::new("exit");
    let p5 = dir.graph("p5.col", &gen_classic("path:5").unwrap());
    let c4 = dir.graph("c4.col", &gen_classic("cycle:4").unwrap());
    let k7 = dir.graph("k7.col", &Graph::complete(7));
    let broken = dir.file("broken.col", "p edge 2 1\ne 1 3\n");

    let yes = bcolor(&["solve", "-k", "3", &p5, "--algo", "auto"]);
    assert_eq!(code(&yes), 0);
    assert!(stdout(&yes).contains("\"answer\":\"YES\""));
    assert_eq!(code(&bcolor(&["solve", "-k", "3", &c4])), 1);
    assert_eq!(code(&bcolor(&["solve", "-k", "0", &p5])), 2);
    assert_eq!(code(&bcolor(&["solve", "-k", "2", "--algo", "m", &p5])), 2);
    assert_eq!(code(&bcolor(&["solve", &p5])), 2);
    assert_eq!(code(&bcolor(&["solve", "-k", "3", "missing.col"])), 3);
    assert_eq!(code(&bcolor(&["solve", "-k", "2", &broken])), 3);
    let spent = bcolor(&["solve", "-k", "6", "--algo", "exact", "--budget-nodes", "5", &k7]);
    assert_eq!(code(&spent), 4);
    assert_eq!(String::from_utf8(spent.stderr).unwrap().lines().count(), 1);
}

#[test]
fn designated_k_solvers_infer_k() {
    let dir = Dir::new("designated");
    let p5 = dir.graph("p5.col", &gen_classic("path:5").unwrap());
    for (algo, k) in [("m", 3), ("delta", 2), ("m-minus-1", 2)] {
        let out = bcolor(&["solve", "--algo", algo, &p5]);
        let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(json["k"], k);
        assert_eq!(json["algorithm"], algo);
    }
}

#[test]
fn emitted_certificates_verify() {
    let dir = Dir::new("verify");
    let graphs = [
        ("p5", gen_classic("path:5").unwrap(), 3),
        ("c5", gen_classic("cycle:5").unwrap(), 3),
        ("k33", gen_classic("complete-bipartite:3,3").unwrap(), 2),
        ("circ", gen_classic("circulant:9:1,2").unwrap(), 4),
    ];
    for (name, g, k) in graphs {
        let path = dir.graph(&format!("{name}.col"), &g);
        let k = k.to_string();
        for algo in ["auto", "exact", "fpt-ell"] {
            let out = bcolor(&["solve", "-k", &k, "--algo", algo, &path]);
            assert_eq!(code(&out), 0, "{name} {algo}");
            let cert = dir.file(&format!("{name}-{algo}.json"), &stdout(&out));
            assert_eq!(code(&bcolor(&["verify", "-k", &k, "--coloring", &cert, &path])), 0);
        }
        let chi = bcolor(&["chromatic-b", &path]);
        let text = stdout(&chi);
        let mut lines = text.lines();
        let value = lines.next().unwrap();
        let cert = dir.file(&format!("{name}-chi.json"), lines.next().unwrap());
        assert_eq!(code(&bcolor(&["verify", "-k", value, "--coloring", &cert, &path])), 0);
    }
}

#[test]
fn verify_rejects_bad_certificates() {
    let dir = Dir::new("reject");
    let c4 = dir.graph("c4.col", &gen_classic("cycle:4").unwrap());
    let bad = dir.file("bad.json", r#"{"k":2,"colors":[1,1,2,2],"b_vertices":[1,3]}"#);
    let out = bcolor(&["verify", "-k", "2", "--coloring", &bad, &c4]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("monochromatic"));
    let no = dir.file("no.json", r#"{"answer":"NO","certificate":null}"#);
    assert_eq!(code(&bcolor(&["verify", "-k", "2", "--coloring", &no, &c4])), 3);
}

#[test]
fn enum_lines_from_stdin() {
    let c4 = write_dimacs(&gen_classic("cycle:4").unwrap());
    let out = bcolor_stdin(&["enum", "-k", "2", "-"], &c4);
    assert_eq!(code(&out), 0);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert!(!lines.is_empty());
    for line in &lines {
        let json: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(json["k"], 2);
        assert_eq!(json["assignment"].as_object().unwrap().len(), 2);
    }
    let canonical = bcolor_stdin(&["enum", "-k", "2", "--canonical", "-"], &c4);
    assert!(stdout(&canonical).lines().count() < lines.len());
}

#[test]
fn analyze_reports_invariants() {
    let out = bcolor_stdin(&["analyze", "-k", "2", "-"], &write_dimacs(&gen_classic("path:5").unwrap()));
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["n"], 5);
    assert_eq!(json["edges"], 4);
    assert_eq!(json["delta"], 2);
    assert_eq!(json["m_degree"], 3);
    assert_eq!(json["ell_k"], 3);
    assert_eq!(json["algorithm"], "delta");
}

#[test]
fn kernel_and_gen_sidecars() {
    let dir = Dir::new("sidecar");
    let g = dir.graph("g.col", &gen_classic("circulant:10:1,2").unwrap());
    let sidecar = dir.0.join("kernel.json");
    let out = bcolor(&["kernelize", "-k", "3", "--mode", "ell", "--sidecar", sidecar.to_str().unwrap(), &g]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    if text.starts_with("p edge") {
        let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&sidecar).unwrap()).unwrap();
        assert_eq!(meta["k"], 3);
        assert!(meta["bound"].as_u64().is_some());
    } else {
        assert!(text.contains("\"answer\""));
    }

    let k4 = dir.graph("k4.col", &Graph::complete(4));
    let prov = dir.0.join("havet.json");
    let out = bcolor(&["gen", "havet", "--sidecar", prov.to_str().unwrap(), &k4]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("p edge 39 "));
    let meta: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&prov).unwrap()).unwrap();
    assert_eq!(meta["construction"], "havet");
    assert_eq!(meta["k"], 7);

    assert_eq!(code(&bcolor(&["gen", "havet", &g])), 3);
    let a = stdout(&bcolor(&["gen", "random", "-n", "8", "-p", "0.5", "--seed", "11"]));
    let b = stdout(&bcolor(&["gen", "random", "-n", "8", "-p", "0.5", "--seed", "12"]));
    assert!(a.starts_with("c provenance "));
    assert_ne!(a, b);
}
