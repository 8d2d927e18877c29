use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const SQUARE: &str = r#"{"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["d","a"]]}"#;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }
}

fn raag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raag")).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn normal_forms() {
    let d = Dir::new();
    let sq = d.file("sq.json", SQUARE);
    let o = raag(&["nf", "--graph", p(&sq), "a b a^-1 b^-1"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("1\n", Some(0)));
    assert_eq!(stdout(&raag(&["nf", "--graph", p(&sq), "b a"])), "a b\n");
    assert_eq!(stdout(&raag(&["nf", "--graph", p(&sq), "--central", "d a c a^-1"])), "a d | c | a^-1\n");
    let o = raag(&["nf", "--graph", p(&sq), "a^"]);
    assert_eq!(o.status.code(), Some(2));
    let o = raag(&["--json", "nf", "--graph", p(&sq), "d a c a^-1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, json!({"word": "a d c a^-1", "blocks": ["a d", "c", "a^-1"]}));
}

#[test]
fn equality_and_commuting() {
    let d = Dir::new();
    let k2 = d.file("k2.json", r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#);
    let sq = d.file("sq.json", SQUARE);
    let o = raag(&["eq", "--graph", p(&k2), "a b", "b a"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("true\n", Some(0)));
    let o = raag(&["commutes", "--graph", p(&sq), "a", "c"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("false\n", Some(1)));
    let o = raag(&["eq", "--graph", p(&k2), "--graph2", p(&sq), "a", "a"]);
    assert_eq!(o.status.code(), Some(2));
    let o = raag(&["eq", "--graph", p(&sq), "1", "a a^-1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cohomomorphisms() {
    let d = Dir::new();
    let v = d.file("v.json", r#"{"vertices":["v"],"edges":[]}"#);
    let w = d.file("w.json", r#"{"vertices":["w"],"edges":[]}"#);
    let f1 = d.file("f1.json", r#"{"images":{"v":"w"}}"#);
    let f2 = d.file("f2.json", r#"{"images":{"v":"w^2"}}"#);
    let o = raag(&["is-cohom", "--src", p(&v), "--dst", p(&w), "--hom", p(&f1)]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("true\nv -> w\n", Some(0)));
    let o = raag(&["is-cohom", "--src", p(&v), "--dst", p(&w), "--hom", p(&f2)]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("false\n", Some(1)));
    assert_eq!(stderr(&o), "v: [w]^2 != [w^2]\n");
    let missing = d.0.path().join("missing.json");
    let o = raag(&["is-cohom", "--src", p(&v), "--dst", p(&w), "--hom", p(&missing)]);
    assert_eq!(o.status.code(), Some(2));

    let bad = d.file("bad.json", r#"{"group":"v.json","images":{"v":"[v]^2"}}"#);
    let o = raag(&["is-cohom", "--src", p(&v), "--dst", p(&w), "--hom", p(&f1), "--src-coalg", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotACoalgebra"), "{}", stderr(&o));

    // A vertex map is read as the induced homomorphism.
    let k2 = d.file("k2.json", r#"{"vertices":["x","y"],"edges":[["x","y"]]}"#);
    let sq = d.file("sq.json", SQUARE);
    let fold = d.file("fold.json", r#"{"map":{"a":"x","b":"y","c":"x","d":"y"}}"#);
    let o = raag(&["is-cohom", "--src", p(&sq), "--dst", p(&k2), "--hom", p(&fold)]);
    assert_eq!(stdout(&o), "true\na -> x\nb -> y\nc -> x\nd -> y\n");
}

#[test]
fn coalgebra_checks() {
    let d = Dir::new();
    d.file("sq.json", SQUARE);
    d.file("v.json", r#"{"vertices":["v"],"edges":[]}"#);
    let canon = d.file("c.json", r#"{"group":"sq.json","images":{"a":"[a]","b":"[b]","c":"[c]","d":"[d]"}}"#);
    let o = raag(&["check-coalgebra", "--coalg", p(&canon)]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("coalgebra\n", Some(0)));
    let sq2 = d.file("v2.json", r#"{"group":"v.json","images":{"v":"[v^2]"}}"#);
    let o = raag(&["check-coalgebra", "--coalg", p(&sq2)]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("counit failed at v\n", Some(1)));
    let hom = d.file("h.json", r#"{"group":"sq.json","images":{"a":"[c]","b":"[a]","c":"[c]","d":"[d]"}}"#);
    assert_eq!(stdout(&raag(&["check-coalgebra", "--coalg", p(&hom)])), "homomorphism failed at (a,b)\n");
    let co = d.file("co.json", r#"{"group":"v.json","images":{"v":"[v] [v^2] [v^-2]"}}"#);
    assert_eq!(stdout(&raag(&["check-coalgebra", "--coalg", p(&co)])), "coassociativity failed at v\n");
    let malformed = d.file("m.json", r#"{"group":"v.json","images":{"v":"[v]]"}}"#);
    assert_eq!(raag(&["check-coalgebra", "--coalg", p(&malformed)]).status.code(), Some(2));
}

#[test]
fn recovery() {
    let d = Dir::new();
    d.file("k3.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"],["a","c"]]}"#);
    let c = d.file("c.json", r#"{"group":"k3.json","images":{"a":"[a]","b":"[b]","c":"[c]"}}"#);
    let o = raag(&["recover", "--coalg", p(&c), "--max-length", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stderr(&o), "rank: 3\n");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], json!(["a", "b", "c"]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);

    let obf = d.file(
        "obf.json",
        &json!({
            "group": {
                "graph": serde_json::from_str::<Value>(SQUARE).unwrap(),
                "generators": [["x1", "a"], ["x2", "b"], ["x3", "c"], ["x4", "d a"]],
                "relators": ["x1 x2 x1^-1 x2^-1", "x2 x3 x2^-1 x3^-1", "x3 x4 x1^-1 x3^-1 x1 x4^-1", "x4 x1 x4^-1 x1^-1"]
            },
            "images": {"x1": "[a]", "x2": "[b]", "x3": "[c]", "x4": "[d] [a]"}
        })
        .to_string(),
    );
    let o = raag(&["check-coalgebra", "--coalg", p(&obf)]);
    assert_eq!(stdout(&o), "coalgebra\n");
    let o = raag(&["recover", "--coalg", p(&obf), "--max-length", "1"]);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("found 3 of 4\n", Some(1)));
    let o = raag(&["recover", "--coalg", p(&obf), "--max-length", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);

    let not = d.file("not.json", r#"{"group":"k3.json","images":{"a":"[a]^2","b":"[b]","c":"[c]"}}"#);
    assert_eq!(raag(&["recover", "--coalg", p(&not), "--max-length", "2"]).status.code(), Some(2));
}

#[test]
fn equalizer_experiment() {
    let d = Dir::new();
    d.file("one.json", r#"{"vertices":["v"],"edges":[]}"#);
    d.file("d2.json", r#"{"vertices":["a","b"],"edges":[]}"#);
    let alpha = d.file("alpha.json", r#"{"source":"one.json","target":"d2.json","map":{"v":"a"}}"#);
    let beta = d.file("beta.json", r#"{"source":"one.json","target":"d2.json","map":{"v":"b"}}"#);
    let rho = d.file("rho.json", r#"{"source":"d2.json","target":"one.json","map":{"a":"v","b":"v"}}"#);
    let args = |a: &Path, b: &Path, r: &Path, seed: &str| {
        raag(&[
            "equalizer-test", "--alpha", p(a), "--beta", p(b), "--rho", p(r), "--trials", "1000", "--max-len", "6",
            "--seed", seed,
        ])
    };
    let o = args(&alpha, &beta, &rho, "1");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("trials: 1000\npremise: "));
    assert!(stdout(&o).ends_with("violations: 0\n"));
    assert_eq!(stdout(&args(&alpha, &beta, &rho, "1")), stdout(&o));

    let o = args(&alpha, &alpha, &rho, "5");
    assert_eq!(stdout(&o), "trials: 1000\npremise: 1000\nviolations: 0\n");

    let bad_rho = d.file("bad.json", r#"{"source":"d2.json","target":"d2.json","map":{"a":"a","b":"a"}}"#);
    assert_eq!(args(&alpha, &beta, &bad_rho, "1").status.code(), Some(2));
}

#[test]
fn coalgebra_search() {
    let d = Dir::new();
    let v = d.file("v.json", r#"{"vertices":["v"],"edges":[]}"#);
    let pv = d.file("pv.json", r#"{"generators":["v"],"relators":[]}"#);
    let o = raag(&["search-coalgebra", "--presentation", p(&pv), "--promise-graph", p(&v), "--symbol-budget", "1", "--image-budget", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let c: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c["images"], json!({"v": "[v]"}));
    // The emitted file is itself a valid coalgebra file.
    let emitted = d.file("found.json", &stdout(&o));
    assert_eq!(stdout(&raag(&["check-coalgebra", "--coalg", p(&emitted)])), "coalgebra\n");

    let k2 = d.file("k2.json", r#"{"vertices":["x","y"],"edges":[["x","y"]]}"#);
    let pk = d.file("pk.json", r#"{"generators":["x","y"],"relators":["x y x^-1 y^-1"]}"#);
    let o = raag(&["search-coalgebra", "--presentation", p(&pk), "--promise-graph", p(&k2), "--symbol-budget", "1", "--image-budget", "1"]);
    let c: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c["images"], json!({"x": "[x]", "y": "[y]"}));

    let p3 = d.file("p3.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#);
    let pp = d.file("pp.json", r#"{"generators":["a","b","c"],"relators":["a b a^-1 b^-1","b c b^-1 c^-1"]}"#);
    let o = raag(&["search-coalgebra", "--presentation", p(&pp), "--promise-graph", p(&p3), "--symbol-budget", "0", "--image-budget", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("exhausted symbol-budget 0 image-budget 1"));
    let o = raag(&["search-coalgebra", "--presentation", p(&pv), "--promise-graph", p(&p3), "--symbol-budget", "1", "--image-budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn smith_normal_form() {
    let d = Dir::new();
    let m = d.file("m.json", "[[2,4],[6,8]]");
    assert_eq!(stdout(&raag(&["snf", "--matrix", p(&m)])), "invariants: 2 4\nrank: 2\n");
    let z = d.file("z.json", "[[0,0],[0,0]]");
    assert_eq!(stdout(&raag(&["snf", "--matrix", p(&z)])), "invariants:\nrank: 0\n");
}
