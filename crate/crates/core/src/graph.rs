//! Finite reflexive graphs and graph homomorphisms.
//!
//! Every vertex carries an implicit loop, so `adjacent(v, v)` always holds and
//! a homomorphism may collapse an edge onto a single vertex. Vertices are kept
//! in byte-wise lexicographic order; that order is the vertex order used by
//! every canonical form in the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest number of candidate vertex maps `enumerate_homs` will walk.
pub const MAX_HOM_SEARCH: u128 = 1_000_000;

/// Largest graph handed to the backtracking isomorphism search.
pub const MAX_ISO_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex `{0}` is listed more than once")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a vertex")]
    UnknownEndpoint(String),
    #[error("self-loop on `{0}` must not be listed; loops are implicit")]
    ExplicitSelfLoop(String),
    #[error("invalid vertex name `{0}` (expected a non-empty string over [a-zA-Z0-9_])")]
    InvalidName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a graph homomorphism: edge ({0}, {1}) maps to non-adjacent ({2}, {3})")]
    NotAHom(String, String, String, String),
    #[error("vertex `{0}` has no image")]
    MissingImage(String),
    #[error("homomorphism ends do not match")]
    MismatchedEnds,
    #[error("search space of {0} candidates exceeds the limit of {1}")]
    SearchSpaceTooLarge(u128, u128),
}

pub fn is_valid_vertex_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct GraphData {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<bool>,
}

/// A finite reflexive symmetric relation on named vertices.
///
/// Cloning is cheap; the vertex and edge data are shared.
#[derive(Clone, PartialOrd, Ord)]
pub struct Graph(Arc<GraphData>);

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.name(u), self.name(v)))
            .collect();
        f.debug_struct("Graph")
            .field("vertices", &self.0.vertices)
            .field("edges", &edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from raw vertex names and an edge list.
    ///
    /// Duplicate edges (in either orientation) are merged. Listing a loop is an
    /// error because every vertex already carries one.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut names: Vec<String> = Vec::new();
        for v in vertices {
            let v = v.as_ref();
            if !is_valid_vertex_name(v) {
                return Err(GraphError::InvalidName(v.to_string()));
            }
            names.push(v.to_string());
        }
        let mut sorted = names.clone();
        sorted.sort();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateVertex(pair[0].clone()));
            }
        }
        let lookup = |name: &str| {
            sorted
                .binary_search_by(|probe| probe.as_str().cmp(name))
                .map_err(|_| GraphError::UnknownEndpoint(name.to_string()))
        };
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let i = lookup(u)?;
            let j = lookup(v)?;
            if i == j {
                return Err(GraphError::ExplicitSelfLoop(u.to_string()));
            }
            edge_set.insert((i.min(j), i.max(j)));
        }
        Ok(Self::from_sorted(sorted, edge_set))
    }

    /// Builds a graph on already sorted, distinct, valid names with adjacency
    /// given by `adjacent(i, j)` for `i < j`.
    pub(crate) fn from_fn(names: Vec<String>, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let n = names.len();
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    edges.insert((i, j));
                }
            }
        }
        Self::from_sorted(names, edges)
    }

    fn from_sorted(vertices: Vec<String>, edges: BTreeSet<(usize, usize)>) -> Self {
        let n = vertices.len();
        let mut adjacency = vec![false; n * n];
        for i in 0..n {
            adjacency[i * n + i] = true;
        }
        for &(i, j) in &edges {
            adjacency[i * n + j] = true;
            adjacency[j * n + i] = true;
        }
        Graph(Arc::new(GraphData {
            vertices,
            edges,
            adjacency,
        }))
    }

    pub fn empty() -> Self {
        Self::from_sorted(Vec::new(), BTreeSet::new())
    }

    /// The graph with the given vertices and no edges.
    pub fn discrete<S: AsRef<str>>(vertices: impl IntoIterator<Item = S>) -> Result<Self, GraphError> {
        Self::new(vertices, std::iter::empty::<(S, S)>())
    }

    /// The graph with every pair of distinct vertices joined.
    pub fn complete<S: AsRef<str>>(vertices: impl IntoIterator<Item = S>) -> Result<Self, GraphError> {
        let names: Vec<String> = vertices.into_iter().map(|s| s.as_ref().to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
        Self::new(names, edges)
    }

    pub fn len(&self) -> usize {
        self.0.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.0.vertices
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0.vertices[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0
            .vertices
            .binary_search_by(|probe| probe.as_str().cmp(name))
            .ok()
    }

    pub fn require(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Edges as index pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.0.edges.len()
    }

    #[inline]
    pub fn adjacent_index(&self, u: usize, v: usize) -> bool {
        self.0.adjacency[u * self.len() + v]
    }

    pub fn adjacent(&self, u: &str, v: &str) -> Result<bool, GraphError> {
        Ok(self.adjacent_index(self.require(u)?, self.require(v)?))
    }

    /// Number of neighbours, not counting the implicit loop.
    pub fn degree(&self, v: usize) -> usize {
        (0..self.len())
            .filter(|&u| u != v && self.adjacent_index(u, v))
            .count()
    }

    /// Full subgraph on the given vertex indices.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let names = keep.iter().map(|&i| self.name(i).to_string()).collect();
        Graph::from_fn(names, |a, b| self.adjacent_index(keep[a], keep[b]))
    }

    pub fn identity_hom(&self) -> GraphHom {
        GraphHom {
            source: self.clone(),
            target: self.clone(),
            map: (0..self.len()).collect(),
        }
    }
}

/// A vertex map between reflexive graphs that sends edges to edges or loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphHom {
    source: Graph,
    target: Graph,
    map: Vec<usize>,
}

impl fmt::Debug for GraphHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self
            .map
            .iter()
            .enumerate()
            .map(|(v, &u)| format!("{}->{}", self.source.name(v), self.target.name(u)))
            .collect();
        f.debug_tuple("GraphHom").field(&pairs).finish()
    }
}

impl GraphHom {
    /// Validates a vertex map given by names.
    pub fn new<S: AsRef<str>>(
        source: &Graph,
        target: &Graph,
        map: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, GraphError> {
        let mut table: Vec<Option<usize>> = vec![None; source.len()];
        for (from, to) in map {
            let i = source.require(from.as_ref())?;
            let j = target.require(to.as_ref())?;
            table[i] = Some(j);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| GraphError::MissingImage(source.name(i).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(source, target, table)
    }

    pub fn from_indices(source: &Graph, target: &Graph, map: Vec<usize>) -> Result<Self, GraphError> {
        if map.len() != source.len() {
            return Err(GraphError::MismatchedEnds);
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= target.len()) {
            return Err(GraphError::UnknownVertex(bad.to_string()));
        }
        if let Some((u, v)) = first_broken_edge(source, target, &map) {
            return Err(GraphError::NotAHom(
                source.name(u).to_string(),
                source.name(v).to_string(),
                target.name(map[u]).to_string(),
                target.name(map[v]).to_string(),
            ));
        }
        Ok(GraphHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn image_index(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn image(&self, v: &str) -> Result<&str, GraphError> {
        Ok(self.target.name(self.map[self.source.require(v)?]))
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `(source name, target name)` pairs in source vertex order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.map
            .iter()
            .enumerate()
            .map(|(v, &u)| (self.source.name(v), self.target.name(u)))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
    }
}

fn first_broken_edge(source: &Graph, target: &Graph, map: &[usize]) -> Option<(usize, usize)> {
    source
        .edges()
        .find(|&(u, v)| !target.adjacent_index(map[u], map[v]))
}

/// `g ∘ f`: apply `f` first, then `g`.
pub fn compose_homs(f: &GraphHom, g: &GraphHom) -> Result<GraphHom, GraphError> {
    if f.target != g.source {
        return Err(GraphError::MismatchedEnds);
    }
    Ok(GraphHom {
        source: f.source.clone(),
        target: g.target.clone(),
        map: f.map.iter().map(|&i| g.map[i]).collect(),
    })
}

/// The full subgraph on the vertices where `alpha` and `beta` agree, with its
/// inclusion into the common source.
pub fn equalizer(alpha: &GraphHom, beta: &GraphHom) -> Result<(Graph, GraphHom), GraphError> {
    if alpha.source != beta.source || alpha.target != beta.target {
        return Err(GraphError::MismatchedEnds);
    }
    let keep: Vec<usize> = (0..alpha.source.len())
        .filter(|&v| alpha.map[v] == beta.map[v])
        .collect();
    let theta = alpha.source.induced(&keep);
    let inclusion = GraphHom {
        source: theta.clone(),
        target: alpha.source.clone(),
        map: keep,
    };
    Ok((theta, inclusion))
}

/// Whether `rho` is a common retraction of `alpha` and `beta`.
pub fn is_coreflexive_pair(alpha: &GraphHom, beta: &GraphHom, rho: &GraphHom) -> Result<bool, GraphError> {
    if alpha.source != beta.source || alpha.target != beta.target {
        return Err(GraphError::MismatchedEnds);
    }
    if rho.source != alpha.target || rho.target != alpha.source {
        return Err(GraphError::MismatchedEnds);
    }
    Ok(compose_homs(alpha, rho)?.is_identity() && compose_homs(beta, rho)?.is_identity())
}

/// All homomorphisms `src -> dst`, in lexicographic order of the map table.
pub fn enumerate_homs(src: &Graph, dst: &Graph) -> Result<Vec<GraphHom>, GraphError> {
    let space = (dst.len() as u128)
        .checked_pow(src.len() as u32)
        .unwrap_or(u128::MAX);
    if space > MAX_HOM_SEARCH {
        return Err(GraphError::SearchSpaceTooLarge(space, MAX_HOM_SEARCH));
    }
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(src.len());
    extend_hom(src, dst, &mut table, &mut out);
    Ok(out)
}

fn extend_hom(src: &Graph, dst: &Graph, table: &mut Vec<usize>, out: &mut Vec<GraphHom>) {
    let v = table.len();
    if v == src.len() {
        out.push(GraphHom {
            source: src.clone(),
            target: dst.clone(),
            map: table.clone(),
        });
        return;
    }
    for image in 0..dst.len() {
        let ok = (0..v).all(|u| !src.adjacent_index(u, v) || dst.adjacent_index(table[u], image));
        if ok {
            table.push(image);
            extend_hom(src, dst, table, out);
            table.pop();
        }
    }
}

/// Finds an isomorphism by backtracking with degree pruning. Exponential in
/// the worst case; limited to [`MAX_ISO_VERTICES`] vertices.
pub fn graphs_isomorphic(g1: &Graph, g2: &Graph) -> Result<Option<GraphHom>, GraphError> {
    let n = g1.len();
    if n.max(g2.len()) > MAX_ISO_VERTICES {
        return Err(GraphError::SearchSpaceTooLarge(
            n.max(g2.len()) as u128,
            MAX_ISO_VERTICES as u128,
        ));
    }
    if n != g2.len() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let d1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let d2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let mut table = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if iso_search(g1, g2, &d1, &d2, &mut table, &mut used) {
        Ok(Some(GraphHom {
            source: g1.clone(),
            target: g2.clone(),
            map: table,
        }))
    } else {
        Ok(None)
    }
}

fn iso_search(
    g1: &Graph,
    g2: &Graph,
    d1: &[usize],
    d2: &[usize],
    table: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let v = table.len();
    if v == g1.len() {
        return true;
    }
    for w in 0..g2.len() {
        if used[w] || d1[v] != d2[w] {
            continue;
        }
        let consistent = (0..v).all(|u| g1.adjacent_index(u, v) == g2.adjacent_index(table[u], w));
        if !consistent {
            continue;
        }
        used[w] = true;
        table.push(w);
        if iso_search(g1, g2, d1, d2, table, used) {
            return true;
        }
        table.pop();
        used[w] = false;
    }
    false
}
