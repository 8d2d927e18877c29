//! Elements of the right-angled Artin group `A(Γ)` as syllable words.
//!
//! A word is a sequence of syllables `v^k`. Its canonical form is obtained by
//! merging every pair of same-generator syllables that can be shuffled next to
//! each other, then laying the surviving syllables out block by block: each
//! block holds every syllable that commutes with everything still to its left,
//! sorted by vertex order. Two words name the same group element exactly when
//! their canonical forms agree syllable for syllable.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("zero exponent on `{0}`")]
    ZeroExponent(String),
    #[error("syntax error in word: {0}")]
    SyntaxError(String),
    #[error("words live over different graphs")]
    GraphMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    /// Vertex index into the word's graph.
    pub generator: usize,
    pub exponent: BigInt,
}

impl Syllable {
    pub fn new(generator: usize, exponent: impl Into<BigInt>) -> Self {
        Syllable {
            generator,
            exponent: exponent.into(),
        }
    }
}

/// Splits word text into `(name, exponent)` tokens without resolving names.
pub fn parse_tokens(text: &str) -> Result<Vec<(String, BigInt)>, WordError> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        let (name, exponent) = match token.split_once('^') {
            None => (token, BigInt::one()),
            Some((name, exp)) => {
                let digits = exp.strip_prefix('+').unwrap_or(exp);
                if digits.is_empty() || digits.starts_with('+') {
                    return Err(WordError::SyntaxError(format!("bad exponent in `{token}`")));
                }
                let k: BigInt = digits
                    .parse()
                    .map_err(|_| WordError::SyntaxError(format!("bad exponent in `{token}`")))?;
                (name, k)
            }
        };
        if !crate::graph::is_valid_vertex_name(name) {
            return Err(WordError::SyntaxError(format!("bad generator in `{token}`")));
        }
        if exponent.is_zero() {
            return Err(WordError::ZeroExponent(name.to_string()));
        }
        out.push((name.to_string(), exponent));
    }
    Ok(out)
}

pub(crate) fn format_power(out: &mut String, base: &str, exponent: &BigInt) {
    out.push_str(base);
    if !exponent.is_one() {
        out.push('^');
        out.push_str(&exponent.to_string());
    }
}

/// A word over the vertices of a graph, read as an element of `A(Γ)`.
///
/// Words produced by the group operations are canonical; [`Word::parse`] and
/// [`Word::from_syllables`] keep whatever the caller wrote.
#[derive(Clone)]
pub struct Word {
    graph: Graph,
    syllables: Vec<Syllable>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables && self.graph == other.graph
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.syllables.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.syllables
            .cmp(&other.syllables)
            .then_with(|| {
                if self.graph == other.graph {
                    Ordering::Equal
                } else {
                    self.graph.cmp(&other.graph)
                }
            })
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

/// Word text: single-space separated `gen` / `gen^k` tokens; the identity is
/// the empty string.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            format_power(&mut out, self.graph.name(s.generator), &s.exponent);
        }
        f.write_str(&out)
    }
}

impl Word {
    pub fn identity(graph: &Graph) -> Self {
        Word {
            graph: graph.clone(),
            syllables: Vec::new(),
        }
    }

    pub fn generator(graph: &Graph, name: &str) -> Result<Self, WordError> {
        let index = graph
            .index_of(name)
            .ok_or_else(|| WordError::UnknownGenerator(name.to_string()))?;
        Ok(Self::generator_index(graph, index))
    }

    pub fn generator_index(graph: &Graph, index: usize) -> Self {
        Word {
            graph: graph.clone(),
            syllables: vec![Syllable::new(index, 1)],
        }
    }

    /// Parses word text over `graph`. The result is not canonicalized.
    pub fn parse(graph: &Graph, text: &str) -> Result<Self, WordError> {
        let syllables = parse_tokens(text)?
            .into_iter()
            .map(|(name, exponent)| {
                graph
                    .index_of(&name)
                    .map(|generator| Syllable { generator, exponent })
                    .ok_or(WordError::UnknownGenerator(name))
            })
            .collect::<Result<_, _>>()?;
        Ok(Word {
            graph: graph.clone(),
            syllables,
        })
    }

    pub fn from_syllables(graph: &Graph, syllables: Vec<Syllable>) -> Result<Self, WordError> {
        for s in &syllables {
            if s.generator >= graph.len() {
                return Err(WordError::UnknownGenerator(s.generator.to_string()));
            }
            if s.exponent.is_zero() {
                return Err(WordError::ZeroExponent(graph.name(s.generator).to_string()));
            }
        }
        Ok(Word {
            graph: graph.clone(),
            syllables,
        })
    }

    pub(crate) fn from_canonical_unchecked(graph: &Graph, syllables: Vec<Syllable>) -> Self {
        Word {
            graph: graph.clone(),
            syllables,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Syntactic emptiness; use on canonical words to test for the identity.
    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total letter count `Σ|k|`.
    pub fn letter_length(&self) -> BigInt {
        self.syllables.iter().map(|s| s.exponent.abs()).sum()
    }

    /// The single generator of a one-letter word `v`, if that is what this is.
    pub fn as_generator(&self) -> Option<usize> {
        match self.syllables.as_slice() {
            [s] if s.exponent.is_one() => Some(s.generator),
            _ => None,
        }
    }

    fn same_graph(&self, other: &Word) -> Result<(), WordError> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(WordError::GraphMismatch)
        }
    }

    pub fn canonical_form(&self) -> Word {
        Word {
            graph: self.graph.clone(),
            syllables: canonical_syllables(&self.graph, self.syllables.clone()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.canonical_form().is_empty()
    }

    pub fn equals(&self, other: &Word) -> Result<bool, WordError> {
        self.same_graph(other)?;
        Ok(self.canonical_form().syllables == other.canonical_form().syllables)
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, WordError> {
        self.same_graph(other)?;
        Ok(self.multiply_unchecked(other))
    }

    pub(crate) fn multiply_unchecked(&self, other: &Word) -> Word {
        let mut syllables = Vec::with_capacity(self.syllables.len() + other.syllables.len());
        syllables.extend_from_slice(&self.syllables);
        syllables.extend_from_slice(&other.syllables);
        Word {
            graph: self.graph.clone(),
            syllables: canonical_syllables(&self.graph, syllables),
        }
    }

    pub fn invert(&self) -> Word {
        let syllables = self
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable {
                generator: s.generator,
                exponent: -&s.exponent,
            })
            .collect();
        Word {
            graph: self.graph.clone(),
            syllables: canonical_syllables(&self.graph, syllables),
        }
    }

    /// `self^k`, canonical.
    pub fn pow(&self, k: &BigInt) -> Word {
        if k.is_zero() {
            return Word::identity(&self.graph);
        }
        let base = if k.is_negative() { self.invert() } else { self.canonical_form() };
        let k = k.abs();
        if let [s] = base.syllables.as_slice() {
            return Word {
                graph: self.graph.clone(),
                syllables: vec![Syllable {
                    generator: s.generator,
                    exponent: &s.exponent * &k,
                }],
            };
        }
        let mut result = Word::identity(&self.graph);
        let mut square = base;
        let mut k = k;
        let two = BigInt::from(2);
        while !k.is_zero() {
            if (&k % &two).is_one() {
                result = result.multiply_unchecked(&square);
            }
            k /= &two;
            if !k.is_zero() {
                square = square.multiply_unchecked(&square);
            }
        }
        result
    }

    /// Whether `gh = hg`.
    pub fn commutes(&self, other: &Word) -> Result<bool, WordError> {
        self.same_graph(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Word) -> bool {
        let gh = self.multiply_unchecked(other);
        let hg = other.multiply_unchecked(self);
        gh.multiply_unchecked(&hg.invert()).is_empty()
    }

    /// Generators occurring in the canonical form.
    pub fn support(&self) -> BTreeSet<String> {
        self.canonical_form()
            .syllables
            .iter()
            .map(|s| self.graph.name(s.generator).to_string())
            .collect()
    }

    pub fn central_form(&self) -> CentralForm {
        let canonical = canonical_syllables(&self.graph, self.syllables.clone());
        CentralForm {
            graph: self.graph.clone(),
            blocks: foata_blocks(&self.graph, canonical),
        }
    }

    /// Membership in the special subgroup generated by `subset`.
    pub fn in_special_subgroup<S: AsRef<str>>(&self, subset: impl IntoIterator<Item = S>) -> Result<bool, WordError> {
        let mut allowed = vec![false; self.graph.len()];
        for name in subset {
            allowed[self.graph.require(name.as_ref())?] = true;
        }
        Ok(self
            .canonical_form()
            .syllables
            .iter()
            .all(|s| allowed[s.generator]))
    }
}

/// Left-greedy factorization into central (clique) blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct CentralForm {
    graph: Graph,
    blocks: Vec<Vec<Syllable>>,
}

impl CentralForm {
    pub fn blocks(&self) -> &[Vec<Syllable>] {
        &self.blocks
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn flatten(&self) -> Word {
        Word::from_canonical_unchecked(&self.graph, self.blocks.concat())
    }
}

impl fmt::Debug for CentralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CentralForm({:?})", self.to_string())
    }
}

/// Blocks joined by ` | `.
impl fmt::Display for CentralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self
            .blocks
            .iter()
            .map(|b| Word::from_canonical_unchecked(&self.graph, b.clone()).to_string())
            .collect();
        f.write_str(&text.join(" | "))
    }
}

/// Reduces a syllable sequence to canonical form.
pub(crate) fn canonical_syllables(graph: &Graph, syllables: Vec<Syllable>) -> Vec<Syllable> {
    let reduced = reduce(graph, syllables);
    foata_blocks(graph, reduced).concat()
}

/// Merges same-generator syllables separated only by syllables commuting with
/// them, until no such pair remains. Zero exponents are dropped.
fn reduce(graph: &Graph, mut s: Vec<Syllable>) -> Vec<Syllable> {
    s.retain(|x| !x.exponent.is_zero());
    'outer: loop {
        for i in 0..s.len() {
            let g = s[i].generator;
            for j in i + 1..s.len() {
                let h = s[j].generator;
                if h == g {
                    let moved = s.remove(j);
                    s[i].exponent += moved.exponent;
                    if s[i].exponent.is_zero() {
                        s.remove(i);
                    }
                    continue 'outer;
                }
                if !graph.adjacent_index(g, h) {
                    break;
                }
            }
        }
        return s;
    }
}

/// Cartier–Foata decomposition of a fully reduced syllable sequence: each
/// block is every remaining syllable that commutes with all remaining
/// syllables to its left, sorted by generator.
fn foata_blocks(graph: &Graph, mut rest: Vec<Syllable>) -> Vec<Vec<Syllable>> {
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        let available: Vec<bool> = (0..rest.len())
            .map(|j| {
                rest[..j]
                    .iter()
                    .all(|l| graph.adjacent_index(l.generator, rest[j].generator))
            })
            .collect();
        let mut block = Vec::new();
        let mut left = Vec::new();
        for (s, free) in rest.into_iter().zip(available) {
            if free {
                block.push(s);
            } else {
                left.push(s);
            }
        }
        // A reduced word has at most one syllable per generator in any block.
        block.sort_by_key(|s| s.generator);
        rest = left;
        blocks.push(block);
    }
    blocks
}
