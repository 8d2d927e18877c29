//! Groups exposed through word-problem queries, and homomorphisms between them.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, GraphHom};
use crate::word::{format_power, parse_tokens, Syllable, Word, WordError};

/// Radius of the ball searched when a handle spells its vertices in its
/// exposed generators.
pub const GENERATION_SEARCH_RADIUS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a homomorphism: relation {0} is not preserved")]
    NotAHomomorphism(String),
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` is listed more than once")]
    DuplicateGenerator(String),
    #[error("exposed generator `{0}` is the identity")]
    TrivialGenerator(String),
    #[error("vertex `{0}` is not reached by the exposed generators within radius {1}")]
    NotGenerating(String, usize),
    #[error("relator `{0}` does not hold in the group")]
    FalseRelator(String),
    #[error("element does not belong to this group")]
    ForeignElement,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A word in a group's exposed generators: `(generator index, exponent)`.
pub type Spelling = Vec<(usize, BigInt)>;

pub(crate) fn push_power(spelling: &mut Spelling, generator: usize, exponent: BigInt) {
    if exponent.is_zero() {
        return;
    }
    if let Some(last) = spelling.last_mut() {
        if last.0 == generator {
            last.1 += exponent;
            if last.1.is_zero() {
                spelling.pop();
            }
            return;
        }
    }
    spelling.push((generator, exponent));
}

pub fn render_spelling(names: &[String], spelling: &[(usize, BigInt)]) -> String {
    let mut out = String::new();
    for (i, (g, k)) in spelling.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        format_power(&mut out, &names[*g], k);
    }
    out
}

pub fn parse_spelling(names: &[String], text: &str) -> Result<Spelling, GroupError> {
    let mut out = Vec::new();
    for (name, k) in parse_tokens(text)? {
        let g = names
            .iter()
            .position(|n| *n == name)
            .ok_or(GroupError::UnknownGenerator(name))?;
        out.push((g, k));
    }
    Ok(out)
}

/// A defining relation among exposed generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// Generators `i` and `j` commute.
    Commute(usize, usize),
    /// The spelled word is trivial.
    Relator(Spelling),
}

impl Relation {
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Relation::Commute(i, j) => format!("({},{})", names[*i], names[*j]),
            Relation::Relator(s) => render_spelling(names, s),
        }
    }
}

/// A group whose elements have canonical representatives, so that `==` on
/// elements is equality in the group.
pub trait Group: Clone {
    type Element: Clone + Eq + Ord + Hash + fmt::Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn invert(&self, a: &Self::Element) -> Self::Element;
    fn render(&self, a: &Self::Element) -> String;

    fn is_identity(&self, a: &Self::Element) -> bool {
        *a == self.identity()
    }

    fn commutes(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.multiply(a, b) == self.multiply(b, a)
    }

    /// Whether `a` is a well-formed element of this group.
    fn contains(&self, _a: &Self::Element) -> bool {
        true
    }

    fn power(&self, a: &Self::Element, k: &BigInt) -> Self::Element {
        let mut base = if k.is_negative() { self.invert(a) } else { a.clone() };
        let mut k = k.abs();
        let mut result = self.identity();
        let two = BigInt::from(2);
        while !k.is_zero() {
            if k.is_odd() {
                result = self.multiply(&result, &base);
            }
            k /= &two;
            if !k.is_zero() {
                base = self.multiply(&base, &base);
            }
        }
        result
    }
}

/// A group with a finite list of exposed generators.
pub trait FinitelyGenerated: Group {
    fn generator_names(&self) -> &[String];
    fn generator(&self, index: usize) -> Self::Element;
    /// A word in the exposed generators that evaluates to `a`.
    fn spell(&self, a: &Self::Element) -> Spelling;
    /// Defining relations among the exposed generators.
    fn relations(&self) -> Vec<Relation>;

    fn generator_count(&self) -> usize {
        self.generator_names().len()
    }

    fn evaluate(&self, spelling: &[(usize, BigInt)]) -> Self::Element {
        spelling.iter().fold(self.identity(), |acc, (g, k)| {
            self.multiply(&acc, &self.power(&self.generator(*g), k))
        })
    }

    fn relation_holds(&self, relation: &Relation) -> bool {
        match relation {
            Relation::Commute(i, j) => self.commutes(&self.generator(*i), &self.generator(*j)),
            Relation::Relator(s) => self.is_identity(&self.evaluate(s)),
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
struct HandleData {
    graph: Graph,
    names: Vec<String>,
    images: Vec<Word>,
    /// `None` means the exposed generators are the vertices themselves.
    relators: Option<Vec<Spelling>>,
    vertex_spellings: Vec<Spelling>,
}

/// A right-angled Artin group reachable only through word-problem queries.
///
/// The default handle of a graph exposes the vertices as generators. A handle
/// built with [`GroupHandle::with_generators`] exposes other words instead and
/// carries its own presentation; elements are still canonical words over the
/// underlying graph, which serve as opaque canonical identifiers.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupHandle(Arc<HandleData>);

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("graph", &self.0.graph)
            .field("generators", &self.0.names)
            .finish()
    }
}

/// `A(Γ)` with the vertices as generators.
pub fn raag_of_graph(graph: &Graph) -> GroupHandle {
    let n = graph.len();
    GroupHandle(Arc::new(HandleData {
        graph: graph.clone(),
        names: graph.vertices().to_vec(),
        images: (0..n).map(|v| Word::generator_index(graph, v)).collect(),
        relators: None,
        vertex_spellings: (0..n).map(|v| vec![(v, BigInt::one())]).collect(),
    }))
}

impl GroupHandle {
    /// A handle exposing the given words as generators, presented by
    /// `relators` (spellings in the exposed names).
    ///
    /// The caller promises that the relators present the group; each relator
    /// is checked to hold, and every vertex must be reachable from the exposed
    /// generators within [`GENERATION_SEARCH_RADIUS`].
    pub fn with_generators(
        graph: &Graph,
        generators: Vec<(String, Word)>,
        relators: Vec<Spelling>,
    ) -> Result<Self, GroupError> {
        let mut seen = HashSet::new();
        let mut names = Vec::new();
        let mut images = Vec::new();
        for (name, word) in generators {
            if !crate::graph::is_valid_vertex_name(&name) {
                return Err(GraphError::InvalidName(name).into());
            }
            if !seen.insert(name.clone()) {
                return Err(GroupError::DuplicateGenerator(name));
            }
            if word.graph() != graph {
                return Err(WordError::GraphMismatch.into());
            }
            let word = word.canonical_form();
            if word.is_empty() {
                return Err(GroupError::TrivialGenerator(name));
            }
            names.push(name);
            images.push(word);
        }
        for r in &relators {
            if let Some((g, _)) = r.iter().find(|(g, _)| *g >= names.len()) {
                return Err(GroupError::UnknownGenerator(g.to_string()));
            }
        }
        let vertex_spellings = spell_vertices(graph, &images, GENERATION_SEARCH_RADIUS)?;
        let handle = GroupHandle(Arc::new(HandleData {
            graph: graph.clone(),
            names,
            images,
            relators: Some(relators),
            vertex_spellings,
        }));
        for r in handle.0.relators.as_ref().unwrap() {
            if !handle.evaluate(r).is_empty() {
                return Err(GroupError::FalseRelator(render_spelling(&handle.0.names, r)));
            }
        }
        Ok(handle)
    }

    pub fn graph(&self) -> &Graph {
        &self.0.graph
    }

    /// Exposed generators as `(name, word over the graph)`.
    pub fn exposed(&self) -> impl Iterator<Item = (&str, &Word)> + '_ {
        self.0.names.iter().map(String::as_str).zip(self.0.images.iter())
    }

    pub fn is_default(&self) -> bool {
        self.0.relators.is_none()
    }

    /// Relators of the presentation in exposed generators. For a default
    /// handle these are the commutators of the edges.
    pub fn relators(&self) -> Vec<Spelling> {
        match &self.0.relators {
            Some(r) => r.clone(),
            None => self
                .0
                .graph
                .edges()
                .map(|(u, v)| {
                    let one = BigInt::one();
                    vec![(u, one.clone()), (v, one.clone()), (u, -&one), (v, -one)]
                })
                .collect(),
        }
    }

    /// Parses text as an element; tokens name vertices of the graph.
    pub fn parse_element(&self, text: &str) -> Result<Word, GroupError> {
        Ok(Word::parse(&self.0.graph, text)?.canonical_form())
    }

    /// Parses text as a word in the exposed generators.
    pub fn parse_spelling(&self, text: &str) -> Result<Spelling, GroupError> {
        parse_spelling(&self.0.names, text)
    }

    pub fn check(&self, w: &Word) -> Result<(), GroupError> {
        if w.graph() == &self.0.graph {
            Ok(())
        } else {
            Err(GroupError::ForeignElement)
        }
    }
}

fn spell_vertices(
    graph: &Graph,
    images: &[Word],
    radius: usize,
) -> Result<Vec<Spelling>, GroupError> {
    let mut found: Vec<Option<Spelling>> = vec![None; graph.len()];
    let mut missing = graph.len();
    let mut seen: HashSet<Word> = HashSet::new();
    let identity = Word::identity(graph);
    seen.insert(identity.clone());
    let mut frontier = vec![(identity, Spelling::new())];
    let mut letters = Vec::new();
    for (g, w) in images.iter().enumerate() {
        letters.push((g, BigInt::one(), w.clone()));
        letters.push((g, -BigInt::one(), w.invert()));
    }
    for _ in 0..radius {
        if missing == 0 {
            break;
        }
        let mut next = Vec::new();
        for (element, spelling) in &frontier {
            for (g, k, w) in &letters {
                let product = element.multiply_unchecked(w);
                if !seen.insert(product.clone()) {
                    continue;
                }
                let mut s = spelling.clone();
                push_power(&mut s, *g, k.clone());
                if let Some(v) = product.as_generator() {
                    if found[v].is_none() {
                        found[v] = Some(s.clone());
                        missing -= 1;
                    }
                }
                next.push((product, s));
            }
        }
        frontier = next;
    }
    found
        .into_iter()
        .enumerate()
        .map(|(v, s)| s.ok_or_else(|| GroupError::NotGenerating(graph.name(v).to_string(), radius)))
        .collect()
}

impl Group for GroupHandle {
    type Element = Word;

    fn identity(&self) -> Word {
        Word::identity(&self.0.graph)
    }

    fn multiply(&self, a: &Word, b: &Word) -> Word {
        a.multiply_unchecked(b)
    }

    fn invert(&self, a: &Word) -> Word {
        a.invert()
    }

    fn render(&self, a: &Word) -> String {
        a.to_string()
    }

    fn is_identity(&self, a: &Word) -> bool {
        a.is_identity()
    }

    fn commutes(&self, a: &Word, b: &Word) -> bool {
        a.commutes_unchecked(b)
    }

    fn contains(&self, a: &Word) -> bool {
        a.graph() == &self.0.graph
    }

    fn power(&self, a: &Word, k: &BigInt) -> Word {
        a.pow(k)
    }
}

impl FinitelyGenerated for GroupHandle {
    fn generator_names(&self) -> &[String] {
        &self.0.names
    }

    fn generator(&self, index: usize) -> Word {
        self.0.images[index].clone()
    }

    fn spell(&self, a: &Word) -> Spelling {
        let mut out = Spelling::new();
        for Syllable { generator, exponent } in a.syllables() {
            let piece = &self.0.vertex_spellings[*generator];
            if let [(g, k)] = piece.as_slice() {
                push_power(&mut out, *g, k * exponent);
                continue;
            }
            let reps = exponent.abs().to_usize().expect("exponent too large to spell");
            for _ in 0..reps {
                if exponent.is_negative() {
                    for (g, k) in piece.iter().rev() {
                        push_power(&mut out, *g, -k);
                    }
                } else {
                    for (g, k) in piece {
                        push_power(&mut out, *g, k.clone());
                    }
                }
            }
        }
        out
    }

    fn relations(&self) -> Vec<Relation> {
        match &self.0.relators {
            None => self.0.graph.edges().map(|(u, v)| Relation::Commute(u, v)).collect(),
            Some(r) => r.iter().cloned().map(Relation::Relator).collect(),
        }
    }
}

/// The cyclic group `Z/n` on one generator, given by its multiplication
/// table. Used to feed non-Artin groups to the coalgebra search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGroup {
    order: u64,
    names: Vec<String>,
}

impl CyclicGroup {
    pub fn new(generator: &str, order: u64) -> Self {
        assert!(order > 0, "cyclic group order must be positive");
        CyclicGroup {
            order,
            names: vec![generator.to_string()],
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}

impl Group for CyclicGroup {
    type Element = u64;

    fn identity(&self) -> u64 {
        0
    }

    fn multiply(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.order
    }

    fn invert(&self, a: &u64) -> u64 {
        (self.order - a % self.order) % self.order
    }

    fn render(&self, a: &u64) -> String {
        match a {
            0 => String::new(),
            1 => self.names[0].clone(),
            k => format!("{}^{}", self.names[0], k),
        }
    }

    fn contains(&self, a: &u64) -> bool {
        *a < self.order
    }

    fn commutes(&self, _a: &u64, _b: &u64) -> bool {
        true
    }
}

impl FinitelyGenerated for CyclicGroup {
    fn generator_names(&self) -> &[String] {
        &self.names
    }

    fn generator(&self, _index: usize) -> u64 {
        1 % self.order
    }

    fn spell(&self, a: &u64) -> Spelling {
        if *a == 0 {
            Vec::new()
        } else {
            vec![(0, BigInt::from(*a))]
        }
    }

    fn relations(&self) -> Vec<Relation> {
        vec![Relation::Relator(vec![(0, BigInt::from(self.order))])]
    }
}

/// A homomorphism given by the images of the source's exposed generators.
#[derive(Clone)]
pub struct GroupHom<G: FinitelyGenerated, H: Group> {
    source: G,
    target: H,
    images: Vec<H::Element>,
}

impl<G: FinitelyGenerated, H: Group> fmt::Debug for GroupHom<G, H> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .generator_names()
            .iter()
            .zip(&self.images)
            .map(|(n, w)| format!("{n}->{}", self.target.render(w)))
            .collect();
        f.debug_tuple("GroupHom").field(&pairs).finish()
    }
}

impl<G: FinitelyGenerated, H: Group> GroupHom<G, H> {
    /// Validates that every defining relation of the source survives.
    pub fn new(source: &G, target: &H, images: Vec<H::Element>) -> Result<Self, GroupError> {
        if images.len() != source.generator_count() {
            return Err(GroupError::WrongImageCount {
                expected: source.generator_count(),
                got: images.len(),
            });
        }
        if images.iter().any(|x| !target.contains(x)) {
            return Err(GroupError::ForeignElement);
        }
        let hom = GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        for relation in source.relations() {
            let holds = match &relation {
                Relation::Commute(i, j) => target.commutes(&hom.images[*i], &hom.images[*j]),
                Relation::Relator(s) => target.is_identity(&hom.apply_spelling(s)),
            };
            if !holds {
                return Err(GroupError::NotAHomomorphism(
                    relation.render(source.generator_names()),
                ));
            }
        }
        Ok(hom)
    }

    pub fn source(&self) -> &G {
        &self.source
    }

    pub fn target(&self) -> &H {
        &self.target
    }

    pub fn images(&self) -> &[H::Element] {
        &self.images
    }

    pub fn apply_spelling(&self, spelling: &[(usize, BigInt)]) -> H::Element {
        spelling.iter().fold(self.target.identity(), |acc, (g, k)| {
            self.target
                .multiply(&acc, &self.target.power(&self.images[*g], k))
        })
    }

    pub fn apply(&self, a: &G::Element) -> H::Element {
        self.apply_spelling(&self.source.spell(a))
    }

    /// `other ∘ self`.
    pub fn then<K: Group>(&self, other: &GroupHom<H, K>) -> Result<GroupHom<G, K>, GroupError>
    where
        H: FinitelyGenerated + PartialEq,
    {
        if self.target != other.source {
            return Err(GroupError::ForeignElement);
        }
        let images = self.images.iter().map(|x| other.apply(x)).collect();
        GroupHom::new(&self.source, &other.target, images)
    }
}

impl GroupHom<GroupHandle, GroupHandle> {
    /// Parses images given as `(generator name, element text)`.
    pub fn from_texts<S: AsRef<str>>(
        source: &GroupHandle,
        target: &GroupHandle,
        images: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, GroupError> {
        let mut table: Vec<Option<Word>> = vec![None; source.generator_count()];
        for (name, text) in images {
            let g = source
                .generator_names()
                .iter()
                .position(|n| n == name.as_ref())
                .ok_or_else(|| GroupError::UnknownGenerator(name.as_ref().to_string()))?;
            table[g] = Some(target.parse_element(text.as_ref())?);
        }
        let images = table
            .into_iter()
            .enumerate()
            .map(|(g, w)| {
                w.ok_or_else(|| GroupError::UnknownGenerator(source.generator_names()[g].clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        GroupHom::new(source, target, images)
    }
}

/// `Aφ`: the homomorphism sending each vertex `v` to the generator `φ(v)`.
pub fn a_on_hom(phi: &GraphHom) -> GroupHom<GroupHandle, GroupHandle> {
    let source = raag_of_graph(phi.source());
    let target = raag_of_graph(phi.target());
    let images = phi
        .table()
        .iter()
        .map(|&u| Word::generator_index(phi.target(), u))
        .collect();
    GroupHom::new(&source, &target, images).expect("a graph homomorphism preserves commutation")
}
