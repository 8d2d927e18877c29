//! Naive reference implementations for cross-checking the solvers.
//!
//! Nothing here uses the normal form: words are rewritten letter by letter
//! with swaps of adjacent commuting letters and cancellations of adjacent
//! inverse letters, and reachable sets are explored breadth first.

use std::collections::{HashSet, VecDeque};

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::graph::{compose_homs, enumerate_homs, Graph, GraphError, GraphHom};
use crate::group::{GroupHandle, GroupHom};
use crate::word::Word;

/// Longest combined input the rewriting search accepts.
pub const MAX_ORACLE_LENGTH: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space too large: {0} letters exceeds {MAX_ORACLE_LENGTH}")]
    SearchSpaceTooLarge(usize),
    #[error("word is not over the oracle's graph")]
    GraphMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A letter `(vertex, ±1)`.
pub type Letter = (usize, i8);

/// Expands a word into unit letters.
pub fn letters(w: &Word) -> Vec<Letter> {
    let mut out = Vec::new();
    for s in w.syllables() {
        let sign = if s.exponent.is_negative() { -1 } else { 1 };
        let n = s.exponent.abs().to_usize().expect("exponent fits in memory");
        out.extend(std::iter::repeat_n((s.generator, sign), n));
    }
    out
}

fn inverse(ls: &[Letter]) -> Vec<Letter> {
    ls.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Everything reachable from `start` by swaps and cancellations.
fn reachable(graph: &Graph, start: Vec<Letter>) -> HashSet<Vec<Letter>> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for i in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[i], w[i + 1]);
            let next = if x.0 == y.0 && x.1 == -y.1 {
                let mut n = w[..i].to_vec();
                n.extend_from_slice(&w[i + 2..]);
                n
            } else if x.0 != y.0 && graph.adjacent_index(x.0, y.0) {
                let mut n = w.clone();
                n.swap(i, i + 1);
                n
            } else {
                continue;
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

fn guard(graph: &Graph, words: &[&Word]) -> Result<usize, OracleError> {
    let mut total = 0usize;
    for w in words {
        if w.graph() != graph {
            return Err(OracleError::GraphMismatch);
        }
        let n = w.letter_length().to_usize().unwrap_or(usize::MAX);
        total = total.saturating_add(n);
    }
    if total > MAX_ORACLE_LENGTH {
        return Err(OracleError::SearchSpaceTooLarge(total));
    }
    Ok(total)
}

/// Whether `w1 w2^-1` rewrites to the empty word.
pub fn bf_equals(graph: &Graph, w1: &Word, w2: &Word) -> Result<bool, OracleError> {
    guard(graph, &[w1, w2])?;
    Ok(bf_equals_letters(graph, &letters(w1), &letters(w2)))
}

/// [`bf_equals`] on raw letter sequences. The caller keeps them short.
pub fn bf_equals_letters(graph: &Graph, w1: &[Letter], w2: &[Letter]) -> bool {
    let mut start = w1.to_vec();
    start.extend(inverse(w2));
    reachable(graph, start).contains(&Vec::new())
}

/// The least, among the shortest sequences reachable from `w`, in letter
/// order. Equal elements get equal keys.
pub fn bf_key(graph: &Graph, w: &[Letter]) -> Vec<Letter> {
    let all = reachable(graph, w.to_vec());
    let shortest = all.iter().map(Vec::len).min().unwrap_or(0);
    all.into_iter()
        .filter(|s| s.len() == shortest)
        .min()
        .unwrap_or_default()
}

/// The graph homomorphism `φ` with `f = Aφ`, found by scanning every graph
/// homomorphism; `None` if there is none.
pub fn bf_is_a_phi(
    f: &GroupHom<GroupHandle, GroupHandle>,
    source: &Graph,
    target: &Graph,
) -> Result<Option<GraphHom>, OracleError> {
    if f.source().graph() != source || f.target().graph() != target {
        return Err(OracleError::GraphMismatch);
    }
    if !f.source().is_default() || !f.target().is_default() {
        return Err(OracleError::GraphMismatch);
    }
    for phi in enumerate_homs(source, target)? {
        let matches = f
            .images()
            .iter()
            .zip(phi.table())
            .all(|(w, &u)| bf_equals_letters(target, &letters(w), &[(u, 1)]));
        if matches {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Named small graphs (at most five vertices) used across the test suites.
pub fn small_graphs() -> Vec<(&'static str, Graph)> {
    let g = |vs: &[&str], es: &[(&str, &str)]| Graph::new(vs.iter().copied(), es.iter().copied()).expect("corpus graph");
    vec![
        ("empty", Graph::empty()),
        ("K1", g(&["v"], &[])),
        ("D2", g(&["a", "b"], &[])),
        ("K2", g(&["a", "b"], &[("a", "b")])),
        ("D3", g(&["a", "b", "c"], &[])),
        ("K3", g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])),
        ("P3", g(&["a", "b", "c"], &[("a", "b"), ("b", "c")])),
        ("K2+K1", g(&["a", "b", "c"], &[("a", "b")])),
        ("S3", g(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")])),
        ("square", g(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])),
        ("P4", g(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])),
        ("paw", g(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("a", "c"), ("a", "d")])),
        (
            "K4",
            g(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
            ),
        ),
        ("C5", g(&["a", "b", "c", "d", "e"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])),
        ("D5", g(&["a", "b", "c", "d", "e"], &[])),
    ]
}

/// Coreflexive pairs `(α, β, ρ)` with every graph at most `max_vertices`.
///
/// Two families: for each corpus graph `Γ` and vertex subset `S`, the two
/// inclusions of `Γ` into `Γ` glued to itself along `S` (equalizer `S`), with
/// the folding retraction; and every pair of sections of a retraction
/// between two corpus graphs. Deterministic order, at most `limit` pairs.
pub fn coreflexive_pairs(max_vertices: usize, limit: usize) -> Vec<(GraphHom, GraphHom, GraphHom)> {
    let mut out = Vec::new();
    let corpus: Vec<Graph> = small_graphs().into_iter().map(|(_, g)| g).collect();
    for g in &corpus {
        let n = g.len();
        for mask in 0u32..(1 << n) {
            let shared = |v: usize| mask & (1 << v) != 0;
            let glued = 2 * n - mask.count_ones() as usize;
            if glued > max_vertices || out.len() >= limit {
                continue;
            }
            let copy = |side: &str, v: usize| {
                if shared(v) {
                    g.name(v).to_string()
                } else {
                    format!("{side}_{}", g.name(v))
                }
            };
            let mut vertices: Vec<String> = (0..n).map(|v| copy("l", v)).collect();
            vertices.extend((0..n).filter(|&v| !shared(v)).map(|v| copy("r", v)));
            let mut edges = Vec::new();
            for (u, v) in g.edges() {
                edges.push((copy("l", u), copy("l", v)));
                edges.push((copy("r", u), copy("r", v)));
            }
            let delta = Graph::new(vertices, edges).expect("glued graph");
            let side = |s: &str| GraphHom::new(g, &delta, (0..n).map(|v| (g.name(v).to_string(), copy(s, v))));
            let fold = (0..n).flat_map(|v| [(copy("l", v), g.name(v).to_string()), (copy("r", v), g.name(v).to_string())]);
            let rho = GraphHom::new(&delta, g, fold.collect::<Vec<_>>()).expect("folding is a hom");
            out.push((side("l").expect("inclusion"), side("r").expect("inclusion"), rho));
        }
    }
    for g in corpus.iter().filter(|g| g.len() <= max_vertices) {
        for d in corpus.iter().filter(|d| d.len() <= max_vertices && d.len() > g.len()) {
            let (Ok(up), Ok(down)) = (enumerate_homs(g, d), enumerate_homs(d, g)) else {
                continue;
            };
            for rho in down.iter().take(4) {
                let sections: Vec<&GraphHom> = up
                    .iter()
                    .filter(|a| compose_homs(a, rho).is_ok_and(|c| c.is_identity()))
                    .collect();
                for (i, a) in sections.iter().enumerate() {
                    for b in sections.iter().skip(i + 1).take(2) {
                        if out.len() < limit {
                            out.push(((*a).clone(), (*b).clone(), rho.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}
