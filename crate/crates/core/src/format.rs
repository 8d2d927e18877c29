//! JSON file formats for graphs, homomorphisms, coalgebras, presentations
//! and matrices.
//!
//! Places that take a graph accept either an inline graph object or a path,
//! resolved against the directory of the file that mentions it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::ac::parse_ac_word;
use crate::coalgebra::CoalgebraMap;
use crate::graph::{Graph, GraphHom};
use crate::group::{a_on_hom, parse_spelling, raag_of_graph, FinitelyGenerated, GroupHandle, GroupHom};
use crate::recovery::{check_rectangular, FinitePresentation, IntegerMatrix};
use crate::word::Word;
use crate::Error as RaagError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error("{0}")]
    Shape(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    /// Optional annotations, vertex name to text. Ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

impl GraphFile {
    pub fn from_graph(graph: &Graph) -> Self {
        GraphFile {
            vertices: graph.vertices().to_vec(),
            edges: graph
                .edges()
                .map(|(u, v)| [graph.name(u).to_string(), graph.name(v).to_string()])
                .collect(),
            labels: None,
        }
    }

    pub fn to_graph(&self) -> Result<Graph, RaagError> {
        Ok(Graph::new(&self.vertices, self.edges.iter().map(|[u, v]| (u, v)))?)
    }
}

/// A parsed document with the directory used to resolve relative paths.
struct Document {
    value: Value,
    dir: PathBuf,
}

fn load(path: &Path) -> Result<Document, RaagError> {
    let text = fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let value = serde_json::from_str(&text).map_err(|e| FormatError::Json {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Document { value, dir })
}

fn shape(msg: impl Into<String>) -> RaagError {
    FormatError::Shape(msg.into()).into()
}

fn field<'a>(value: &'a Value, name: &str) -> Result<&'a Value, RaagError> {
    value.get(name).ok_or_else(|| shape(format!("missing field `{name}`")))
}

fn decode<T: for<'de> Deserialize<'de>>(value: &Value, what: &str) -> Result<T, RaagError> {
    T::deserialize(value).map_err(|e| shape(format!("bad {what}: {e}")))
}

/// Resolves an inline object or a path string to a document.
fn resolve(value: &Value, dir: &Path) -> Result<Document, RaagError> {
    match value {
        Value::String(p) => load(&dir.join(p)),
        other => Ok(Document {
            value: other.clone(),
            dir: dir.to_path_buf(),
        }),
    }
}

pub fn graph_from_value(value: &Value) -> Result<Graph, RaagError> {
    decode::<GraphFile>(value, "graph")?.to_graph()
}

pub fn read_graph(path: &Path) -> Result<Graph, RaagError> {
    graph_from_value(&load(path)?.value)
}

fn graph_at(value: &Value, dir: &Path) -> Result<Graph, RaagError> {
    graph_from_value(&resolve(value, dir)?.value)
}

/// Graph JSON, with optional vertex labels.
pub fn graph_to_json(graph: &Graph, labels: Option<&[String]>) -> Value {
    let mut file = GraphFile::from_graph(graph);
    file.labels = labels.map(|l| graph.vertices().iter().cloned().zip(l.iter().cloned()).collect());
    serde_json::to_value(file).expect("graph file serializes")
}

/// Hom file: `source`, `target`, `map`.
pub fn read_graph_hom(path: &Path) -> Result<GraphHom, RaagError> {
    let doc = load(path)?;
    graph_hom_from_value(&doc.value, &doc.dir)
}

fn graph_hom_from_value(value: &Value, dir: &Path) -> Result<GraphHom, RaagError> {
    let source = graph_at(field(value, "source")?, dir)?;
    let target = graph_at(field(value, "target")?, dir)?;
    let map: BTreeMap<String, String> = decode(field(value, "map")?, "map")?;
    Ok(GraphHom::new(&source, &target, map)?)
}

pub fn graph_hom_to_json(phi: &GraphHom) -> Value {
    serde_json::json!({
        "source": graph_to_json(phi.source(), None),
        "target": graph_to_json(phi.target(), None),
        "map": phi.pairs().collect::<BTreeMap<_, _>>(),
    })
}

/// Group description: a graph (vertices exposed), or an object with `graph`,
/// `generators` (`[name, word]` pairs, words over the graph) and `relators`
/// (word text in the generator names).
pub fn group_from_value(value: &Value, dir: &Path) -> Result<GroupHandle, RaagError> {
    let doc = resolve(value, dir)?;
    let value = &doc.value;
    if value.get("graph").is_none() {
        return Ok(raag_of_graph(&graph_from_value(value)?));
    }
    let graph = graph_at(field(value, "graph")?, &doc.dir)?;
    let pairs: Vec<(String, String)> = decode(field(value, "generators")?, "generators")?;
    let relators: Vec<String> = match value.get("relators") {
        Some(r) => decode(r, "relators")?,
        None => Vec::new(),
    };
    let names: Vec<String> = pairs.iter().map(|(n, _)| n.clone()).collect();
    let generators = pairs
        .into_iter()
        .map(|(n, w)| Ok((n, Word::parse(&graph, &w)?)))
        .collect::<Result<Vec<_>, RaagError>>()?;
    let relators = relators
        .iter()
        .map(|r| parse_spelling(&names, r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupHandle::with_generators(&graph, generators, relators)?)
}

pub fn read_group(path: &Path) -> Result<GroupHandle, RaagError> {
    let doc = load(path)?;
    group_from_value(&doc.value, &doc.dir)
}

pub fn group_to_json(group: &GroupHandle) -> Value {
    let graph = graph_to_json(group.graph(), None);
    if group.is_default() {
        return graph;
    }
    let generators: Vec<[String; 2]> = group
        .exposed()
        .map(|(n, w)| [n.to_string(), w.to_string()])
        .collect();
    let relators: Vec<String> = group
        .relators()
        .iter()
        .map(|r| crate::group::render_spelling(group.generator_names(), r))
        .collect();
    serde_json::json!({ "graph": graph, "generators": generators, "relators": relators })
}

/// Group homomorphism file between two handles: `images` (generator to
/// element text over the target graph), or a graph-hom `map`, read as `Aφ`.
pub fn read_group_hom(
    path: &Path,
    source: &GroupHandle,
    target: &GroupHandle,
) -> Result<GroupHom<GroupHandle, GroupHandle>, RaagError> {
    let doc = load(path)?;
    if let Some(images) = doc.value.get("images") {
        let images: BTreeMap<String, String> = decode(images, "images")?;
        return Ok(GroupHom::from_texts(source, target, images)?);
    }
    let map: BTreeMap<String, String> = decode(field(&doc.value, "map")?, "map")?;
    if !source.is_default() || !target.is_default() {
        return Err(shape("a vertex `map` needs groups whose generators are vertices"));
    }
    let phi = GraphHom::new(source.graph(), target.graph(), map)?;
    Ok(a_on_hom(&phi))
}

/// Coalgebra file: `group` and `images` (generator to AC word text).
pub fn read_coalgebra(path: &Path) -> Result<CoalgebraMap<GroupHandle>, RaagError> {
    let doc = load(path)?;
    let group = group_from_value(field(&doc.value, "group")?, &doc.dir)?;
    let images: BTreeMap<String, String> = decode(field(&doc.value, "images")?, "images")?;
    for (name, text) in &images {
        parse_ac_word(&group, text).map_err(|e| shape(format!("image of {name}: {e}")))?;
    }
    CoalgebraMap::from_texts(&group, images)
}

pub fn coalgebra_to_json(c: &CoalgebraMap<GroupHandle>) -> Value {
    let acg = c.acg();
    let images: BTreeMap<&str, String> = c
        .group()
        .generator_names()
        .iter()
        .map(String::as_str)
        .zip(c.images().iter().map(|x| acg.render(x)))
        .collect();
    serde_json::json!({ "group": group_to_json(c.group()), "images": images })
}

#[derive(Deserialize)]
struct PresentationFile {
    generators: Vec<String>,
    relators: Vec<String>,
}

pub fn read_presentation(path: &Path) -> Result<FinitePresentation, RaagError> {
    let p: PresentationFile = decode(&load(path)?.value, "presentation")?;
    Ok(FinitePresentation::parse(p.generators, &p.relators)?)
}

/// Matrix file: array of arrays of integers. Entries may also be decimal
/// strings, for values beyond 64 bits.
pub fn read_matrix(path: &Path) -> Result<IntegerMatrix, RaagError> {
    matrix_from_value(&load(path)?.value)
}

pub fn matrix_from_value(value: &Value) -> Result<IntegerMatrix, RaagError> {
    let rows: Vec<Vec<Value>> = decode(value, "matrix")?;
    let m = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| match x {
                    Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
                    Value::String(s) => s.parse::<BigInt>().ok(),
                    _ => None,
                }
                .ok_or_else(|| shape(format!("matrix entry {x} is not an integer"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<IntegerMatrix, _>>()?;
    check_rectangular(&m)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, serde_json::to_string_pretty(value).unwrap()).unwrap();
        p
    }

    fn tempdir() -> PathBuf {
        let d = std::env::temp_dir().join(format!("raag-format-{}-{:?}", std::process::id(), std::thread::current().id()));
        fs::create_dir_all(&d).unwrap();
        d
    }

    #[test]
    fn graph_round_trip() {
        let g = Graph::new(["a", "b", "c"], [("b", "a")]).unwrap();
        let v = graph_to_json(&g, None);
        assert_eq!(v, json!({"vertices": ["a", "b", "c"], "edges": [["a", "b"]]}));
        assert_eq!(graph_from_value(&v).unwrap(), g);
        let labeled = graph_to_json(&g, Some(&["x".into(), "y".into(), "z".into()]));
        assert_eq!(labeled["labels"]["b"], "y");
        assert_eq!(graph_from_value(&labeled).unwrap(), g);
        assert!(graph_from_value(&json!({"vertices": ["a"], "edges": [["a", "a"]]})).is_err());
        assert!(graph_from_value(&json!({"vertices": ["a"]})).is_err());
    }

    #[test]
    fn homs_with_path_and_inline_graphs() {
        let dir = tempdir();
        write(&dir, "k2.json", &json!({"vertices": ["x", "y"], "edges": [["x", "y"]]}));
        let p = write(
            &dir,
            "hom.json",
            &json!({
                "source": {"vertices": ["a", "b"], "edges": []},
                "target": "k2.json",
                "map": {"a": "x", "b": "x"}
            }),
        );
        let phi = read_graph_hom(&p).unwrap();
        assert_eq!(phi.image("b").unwrap(), "x");
        assert_eq!(graph_hom_from_value(&graph_hom_to_json(&phi), &dir).unwrap(), phi);
        let missing = dir.join("nope.json");
        assert!(matches!(read_graph(&missing), Err(RaagError::Format(FormatError::Io { .. }))));
    }

    #[test]
    fn coalgebra_files() {
        let dir = tempdir();
        let p = write(
            &dir,
            "c.json",
            &json!({"group": {"vertices": ["v"], "edges": []}, "images": {"v": "[v^2]"}}),
        );
        let c = read_coalgebra(&p).unwrap();
        assert_eq!(c.check_coalgebra().to_string(), "counit failed at v");
        let back = coalgebra_to_json(&c);
        assert_eq!(back["images"]["v"], "[v^2]");
        let bad = write(
            &dir,
            "bad.json",
            &json!({"group": {"vertices": ["v"], "edges": []}, "images": {"v": "[v"}}),
        );
        assert!(read_coalgebra(&bad).is_err());
    }

    #[test]
    fn obfuscated_group_description() {
        let v = json!({
            "graph": {"vertices": ["a", "b"], "edges": [["a", "b"]]},
            "generators": [["x", "a"], ["y", "a b"]],
            "relators": ["x y x^-1 y^-1"]
        });
        let h = group_from_value(&v, Path::new(".")).unwrap();
        assert!(!h.is_default());
        assert_eq!(group_from_value(&group_to_json(&h), Path::new(".")).unwrap(), h);
    }

    #[test]
    fn presentations_and_matrices() {
        let dir = tempdir();
        let p = write(&dir, "p.json", &json!({"generators": ["x"], "relators": ["x^2"]}));
        assert_eq!(read_presentation(&p).unwrap().relators.len(), 1);
        let m = matrix_from_value(&json!([[1, "-2"], [3, 4]])).unwrap();
        assert_eq!(m[0][1], BigInt::from(-2));
        assert!(matrix_from_value(&json!([[1, 2], [3]])).is_err());
        assert!(matrix_from_value(&json!([[1.5]])).is_err());
    }
}
