//! The commutation-graph comonad `AC` on groups.
//!
//! `ACG` is the right-angled Artin group on one symbol `[g]` per element of
//! `G`, with `[g]` and `[h]` commuting exactly when `g` and `h` do. It has
//! infinitely many generators, so it is never built: every computation is done
//! in the Artin group of the finite commutation graph on the symbols in play.
//! That group is a special subgroup of `ACG`, so the answers agree.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphHom};
use crate::group::{raag_of_graph, FinitelyGenerated, Group, GroupHandle};
use crate::word::{format_power, Syllable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcError {
    #[error("zero exponent on symbol [{0}]")]
    ZeroExponent(String),
    #[error("symbol [{0}] is not an element of the base group")]
    BaseMismatch(String),
    #[error("syntax error in AC word: {0}")]
    SyntaxError(String),
}

/// A word in symbols `[g]`; an element of `ACG` for the base group of `g`.
///
/// Words returned by [`AcGroup`] operations are canonical, so `==` is group
/// equality for them. Words assembled by hand must go through
/// [`AcGroup::equals`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AcWord<E> {
    letters: Vec<(E, BigInt)>,
}

impl<E: fmt::Debug> fmt::Debug for AcWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.letters.iter()).finish()
    }
}

impl<E> AcWord<E> {
    pub fn identity() -> Self {
        AcWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[(E, BigInt)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `Σ|k|` over the letters.
    pub fn size(&self) -> BigInt {
        self.letters.iter().map(|(_, k)| k.abs()).sum()
    }

    pub fn as_single_symbol(&self) -> Option<&E> {
        match self.letters.as_slice() {
            [(g, k)] if k.is_one() => Some(g),
            _ => None,
        }
    }
}

impl<E: Clone> AcWord<E> {
    pub(crate) fn from_letters_unchecked(letters: Vec<(E, BigInt)>) -> Self {
        AcWord { letters }
    }

    pub fn symbol(element: E) -> Self {
        AcWord {
            letters: vec![(element, BigInt::one())],
        }
    }

    pub fn concat(&self, other: &AcWord<E>) -> AcWord<E> {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        AcWord { letters }
    }

    pub fn inverse(&self) -> AcWord<E> {
        AcWord {
            letters: self.letters.iter().rev().map(|(g, k)| (g.clone(), -k)).collect(),
        }
    }

    /// Syntactic power; not canonicalized.
    pub fn pow(&self, k: &BigInt) -> AcWord<E> {
        if k.is_zero() {
            return AcWord::identity();
        }
        if let [(g, e)] = self.letters.as_slice() {
            return AcWord {
                letters: vec![(g.clone(), e * k)],
            };
        }
        let base = if k.is_negative() { self.inverse() } else { self.clone() };
        let reps = k.abs().to_usize().expect("exponent too large to expand");
        let mut letters = Vec::with_capacity(base.letters.len() * reps);
        for _ in 0..reps {
            letters.extend(base.letters.iter().cloned());
        }
        AcWord { letters }
    }

    /// Letter-wise image under an element map: `[g]^k ↦ [f(g)]^k`.
    pub fn map_symbols<F, T>(&self, mut f: F) -> AcWord<T>
    where
        F: FnMut(&E) -> T,
    {
        AcWord {
            letters: self.letters.iter().map(|(g, k)| (f(g), k.clone())).collect(),
        }
    }
}

/// The group `ACG` over a base group `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcGroup<B: Group> {
    base: B,
}

/// The commutation graph on a finite set of elements: one vertex per distinct
/// element, edges between commuting pairs. Vertex `i` is labeled by the `i`-th
/// element in the element order, and vertex names sort the same way.
pub fn commutation_graph<B: Group>(base: &B, elements: &[B::Element]) -> (Graph, Vec<B::Element>) {
    let labels: Vec<B::Element> = elements
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let width = labels.len().to_string().len();
    let names = (0..labels.len()).map(|i| format!("s{i:0width$}")).collect();
    let graph = Graph::from_fn(names, |i, j| base.commutes(&labels[i], &labels[j]));
    (graph, labels)
}

impl<B: Group> AcGroup<B> {
    pub fn new(base: B) -> Self {
        AcGroup { base }
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    /// Builds an AC word, rejecting zero exponents and foreign symbols. Identity
    /// symbols are legal but almost always a mistake, so they are logged.
    pub fn word(&self, letters: Vec<(B::Element, BigInt)>) -> Result<AcWord<B::Element>, AcError> {
        for (g, k) in &letters {
            if !self.base.contains(g) {
                return Err(AcError::BaseMismatch(format!("{g:?}")));
            }
            if k.is_zero() {
                return Err(AcError::ZeroExponent(self.base.render(g)));
            }
            if self.base.is_identity(g) {
                log::warn!("AC word uses the identity symbol [1]; it is central in ACG");
            }
        }
        Ok(AcWord { letters })
    }

    pub fn symbol(&self, g: &B::Element) -> AcWord<B::Element> {
        AcWord::symbol(g.clone())
    }

    fn symbols_of<'a>(words: impl IntoIterator<Item = &'a AcWord<B::Element>>) -> Vec<B::Element>
    where
        B::Element: 'a,
    {
        words
            .into_iter()
            .flat_map(|w| w.letters.iter().map(|(g, _)| g.clone()))
            .collect()
    }

    fn as_word(graph: &Graph, labels: &[B::Element], x: &AcWord<B::Element>) -> Word {
        let syllables = x
            .letters
            .iter()
            .filter(|(_, k)| !k.is_zero())
            .map(|(g, k)| Syllable {
                generator: labels.binary_search(g).expect("symbol is labeled"),
                exponent: k.clone(),
            })
            .collect();
        Word::from_canonical_unchecked(graph, syllables)
    }

    fn from_word(labels: &[B::Element], w: &Word) -> AcWord<B::Element> {
        AcWord {
            letters: w
                .syllables()
                .iter()
                .map(|s| (labels[s.generator].clone(), s.exponent.clone()))
                .collect(),
        }
    }

    /// Canonical representative, computed in the Artin group of the
    /// commutation graph on the word's own symbols.
    pub fn canonical(&self, x: &AcWord<B::Element>) -> AcWord<B::Element> {
        let (graph, labels) = commutation_graph(&self.base, &Self::symbols_of([x]));
        let w = Self::as_word(&graph, &labels, x).canonical_form();
        Self::from_word(&labels, &w)
    }

    /// Equality in `ACG`, decided in the Artin group of the commutation graph
    /// on the symbols of both words.
    pub fn equals(&self, x: &AcWord<B::Element>, y: &AcWord<B::Element>) -> Result<bool, AcError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.equals_unchecked(x, y))
    }

    pub(crate) fn equals_unchecked(&self, x: &AcWord<B::Element>, y: &AcWord<B::Element>) -> bool {
        let (graph, labels) = commutation_graph(&self.base, &Self::symbols_of([x, y]));
        let wx = Self::as_word(&graph, &labels, x);
        let wy = Self::as_word(&graph, &labels, y);
        wx.canonical_form().syllables() == wy.canonical_form().syllables()
    }

    fn check(&self, x: &AcWord<B::Element>) -> Result<(), AcError> {
        match x.letters.iter().find(|(g, _)| !self.base.contains(g)) {
            Some((g, _)) => Err(AcError::BaseMismatch(format!("{g:?}"))),
            None => Ok(()),
        }
    }

    /// The counit `ε_G : ACG → G`, `[g] ↦ g`.
    pub fn epsilon(&self, x: &AcWord<B::Element>) -> B::Element {
        x.letters.iter().fold(self.base.identity(), |acc, (g, k)| {
            self.base.multiply(&acc, &self.base.power(g, k))
        })
    }

    /// The comultiplication `δ : ACG → AC(ACG)`, `[g] ↦ [[g]]`.
    pub fn delta(&self, x: &AcWord<B::Element>) -> AcWord<AcWord<B::Element>> {
        x.map_symbols(|g| AcWord::symbol(g.clone()))
    }

    /// `AC(f)` for a homomorphism `f` out of the base group.
    pub fn map_hom<H: Group>(
        &self,
        f: &crate::group::GroupHom<B, H>,
        x: &AcWord<B::Element>,
    ) -> Result<AcWord<H::Element>, AcError>
    where
        B: FinitelyGenerated + PartialEq,
    {
        if f.source() != &self.base {
            return Err(AcError::BaseMismatch("homomorphism source".into()));
        }
        self.check(x)?;
        Ok(x.map_symbols(|g| f.apply(g)))
    }

    pub fn render(&self, x: &AcWord<B::Element>) -> String {
        let mut out = String::new();
        for (i, (g, k)) in x.letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            format_power(&mut out, &format!("[{}]", self.base.render(g)), k);
        }
        out
    }
}

impl<B: Group> Group for AcGroup<B> {
    type Element = AcWord<B::Element>;

    fn identity(&self) -> Self::Element {
        AcWord::identity()
    }

    fn multiply(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        self.canonical(&a.concat(b))
    }

    fn invert(&self, a: &Self::Element) -> Self::Element {
        self.canonical(&a.inverse())
    }

    fn power(&self, a: &Self::Element, k: &BigInt) -> Self::Element {
        self.canonical(&a.pow(k))
    }

    fn commutes(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.equals_unchecked(&a.concat(b), &b.concat(a))
    }

    fn is_identity(&self, a: &Self::Element) -> bool {
        self.canonical(a).is_empty()
    }

    fn contains(&self, a: &Self::Element) -> bool {
        self.check(a).is_ok()
    }

    fn render(&self, a: &Self::Element) -> String {
        AcGroup::render(self, a)
    }
}

/// Splits AC word text into `(inner text, exponent)` letters. Brackets nest,
/// so `[[w]^2 [v]]^-1` is one letter with inner text `[w]^2 [v]`.
pub fn split_ac_letters(text: &str) -> Result<Vec<(String, BigInt)>, AcError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |msg: &str| AcError::SyntaxError(format!("{msg} in `{text}`"));
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if bytes[i] != b'[' {
            return Err(err("expected `[`"));
        }
        let start = i + 1;
        let mut depth = 0usize;
        let mut end = None;
        for (j, &b) in bytes.iter().enumerate().skip(i) {
            match b {
                b'[' => depth += 1,
                b']' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(j);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| err("unbalanced brackets"))?;
        let inner = text[start..end].to_string();
        i = end + 1;
        let mut exponent = BigInt::one();
        if i < bytes.len() && bytes[i] == b'^' {
            let exp_start = i + 1;
            let mut j = exp_start;
            while j < bytes.len() && !bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            let digits = &text[exp_start..j];
            let digits = digits.strip_prefix('+').unwrap_or(digits);
            if digits.is_empty() || digits.starts_with('+') {
                return Err(err("bad exponent"));
            }
            exponent = digits.parse().map_err(|_| err("bad exponent"))?;
            i = j;
        }
        if i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            return Err(err("letters must be separated by spaces"));
        }
        if exponent.is_zero() {
            return Err(AcError::ZeroExponent(inner));
        }
        out.push((inner, exponent));
    }
    Ok(out)
}

/// Parses AC word text over an Artin group handle; symbols are element text
/// over the handle's graph.
pub fn parse_ac_word(handle: &GroupHandle, text: &str) -> Result<AcWord<Word>, crate::Error> {
    let acg = AcGroup::new(handle.clone());
    let mut letters = Vec::new();
    for (inner, k) in split_ac_letters(text)? {
        letters.push((handle.parse_element(&inner)?, k));
    }
    Ok(acg.word(letters)?)
}

/// Parses a depth-two AC word, `[[..] ..]` letters.
pub fn parse_nested_ac_word(handle: &GroupHandle, text: &str) -> Result<AcWord<AcWord<Word>>, crate::Error> {
    let acg = AcGroup::new(handle.clone());
    let mut letters = Vec::new();
    for (inner, k) in split_ac_letters(text)? {
        letters.push((acg.canonical(&parse_ac_word(handle, &inner)?), k));
    }
    Ok(AcGroup::new(acg).word(letters)?)
}

/// The unit `η_Γ : Γ → CAΓ`, `v ↦ v`, with its codomain realized as the
/// commutation graph on the vertex generators.
pub fn eta(graph: &Graph) -> (GraphHom, Vec<Word>) {
    let handle = raag_of_graph(graph);
    let generators: Vec<Word> = (0..graph.len()).map(|v| handle.generator(v)).collect();
    let (cag, labels) = commutation_graph(&handle, &generators);
    let map = generators
        .iter()
        .map(|g| labels.binary_search(g).expect("generator is labeled"))
        .collect();
    let hom = GraphHom::from_indices(graph, &cag, map).expect("adjacent vertices commute");
    (hom, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupHom;

    fn cyclic(name: &str) -> GroupHandle {
        raag_of_graph(&Graph::discrete([name]).unwrap())
    }

    fn square() -> Graph {
        Graph::new(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap()
    }

    #[test]
    fn commutation_graphs() {
        let sq = raag_of_graph(&square());
        let elems: Vec<Word> = ["a", "b", "c"].iter().map(|t| sq.parse_element(t).unwrap()).collect();
        let (g, labels) = commutation_graph(&sq, &elems);
        assert_eq!(labels.len(), 3);
        assert_eq!(g.edge_count(), 2);
        let a = labels.iter().position(|w| w.to_string() == "a").unwrap();
        let c = labels.iter().position(|w| w.to_string() == "c").unwrap();
        assert!(!g.adjacent_index(a, c));

        let k2 = raag_of_graph(&Graph::complete(["a", "b"]).unwrap());
        let elems: Vec<Word> = ["a", "b", "a b"].iter().map(|t| k2.parse_element(t).unwrap()).collect();
        assert_eq!(commutation_graph(&k2, &elems).0.edge_count(), 3);

        let v = cyclic("v");
        let elems = vec![v.parse_element("v").unwrap(), v.parse_element("v^2").unwrap(), v.parse_element("v").unwrap()];
        let (g, _) = commutation_graph(&v, &elems);
        assert_eq!((g.len(), g.edge_count()), (2, 1));
    }

    #[test]
    fn ac_words_parse_and_render() {
        let w = cyclic("w");
        let acg = AcGroup::new(w.clone());
        assert_eq!(acg.render(&parse_ac_word(&w, "[w]^2").unwrap()), "[w]^2");
        assert_eq!(acg.render(&parse_ac_word(&w, "[w^2]").unwrap()), "[w^2]");
        assert!(parse_ac_word(&w, "").unwrap().is_empty());
        assert_eq!(acg.render(&parse_ac_word(&w, "[w^2]^-1 [w]").unwrap()), "[w^2]^-1 [w]");
        assert!(parse_ac_word(&w, "[w]^0").is_err());
        assert!(parse_ac_word(&w, "[w").is_err());
        assert!(parse_ac_word(&w, "w").is_err());
        assert!(parse_ac_word(&w, "[w][w]").is_err());
        let nested = parse_nested_ac_word(&w, "[[w]^2 [w^3]]^-1").unwrap();
        assert_eq!(AcGroup::new(acg).render(&nested), "[[w]^2 [w^3]]^-1");
    }

    #[test]
    fn ac_equality() {
        let w = cyclic("w");
        let acg = AcGroup::new(w.clone());
        let p = |t: &str| parse_ac_word(&w, t).unwrap();
        assert!(!acg.equals(&p("[w]^2"), &p("[w^2]")).unwrap());
        assert!(acg.equals(&p("[w] [w^2]"), &p("[w^2] [w]")).unwrap());
        let x = p("[w^-1]^3 [w^5]");
        assert!(acg.equals(&x, &x).unwrap());

        let d2 = raag_of_graph(&Graph::discrete(["a", "b"]).unwrap());
        let acd = AcGroup::new(d2.clone());
        let q = |t: &str| parse_ac_word(&d2, t).unwrap();
        assert!(!acd.equals(&q("[a] [b]"), &q("[b] [a]")).unwrap());
        assert!(acd.equals(&q("[a] [a^2]"), &q("[a^2] [a]")).unwrap());
        let foreign = parse_ac_word(&w, "[w]").unwrap();
        assert!(matches!(acd.equals(&q("[a]"), &foreign), Err(AcError::BaseMismatch(_))));
    }

    #[test]
    fn counit_and_comultiplication() {
        let w = cyclic("w");
        let acg = AcGroup::new(w.clone());
        let p = |t: &str| parse_ac_word(&w, t).unwrap();
        assert_eq!(acg.epsilon(&p("[w]^2")).to_string(), "w^2");
        assert_eq!(acg.epsilon(&p("[w^2] [w^-1]")).to_string(), "w");
        assert!(acg.epsilon(&p("")).is_empty());
        let acac = AcGroup::new(acg.clone());
        assert_eq!(acac.render(&acg.delta(&p("[w]^2"))), "[[w]]^2");
        assert!(acg.delta(&p("")).is_empty());
        assert_eq!(acac.render(&acg.delta(&p("[w] [w^2]"))), "[[w]] [[w^2]]");
    }

    #[test]
    fn ac_on_homs() {
        let v = cyclic("v");
        let w = cyclic("w");
        let acv = AcGroup::new(v.clone());
        let acw = AcGroup::new(w.clone());
        let x = parse_ac_word(&v, "[v]").unwrap();
        let doubling = GroupHom::from_texts(&v, &w, [("v", "w^2")]).unwrap();
        assert_eq!(acw.render(&acv.map_hom(&doubling, &x).unwrap()), "[w^2]");
        let plain = GroupHom::from_texts(&v, &w, [("v", "w")]).unwrap();
        assert_eq!(acw.render(&acv.map_hom(&plain, &x).unwrap()), "[w]");
        let id = GroupHom::from_texts(&v, &v, [("v", "v")]).unwrap();
        let y = parse_ac_word(&v, "[v^3] [v^-1]^2").unwrap();
        assert_eq!(acv.map_hom(&id, &y).unwrap(), y);
        assert!(acw.map_hom(&id, &y).is_err());
    }

    #[test]
    fn eta_embeds_generators() {
        let (hom, labels) = eta(&Graph::discrete(["v"]).unwrap());
        assert_eq!(labels[hom.image_index(0)].to_string(), "v");

        let sq = square();
        let (hom, _) = eta(&sq);
        assert!(hom.is_bijective());
        assert!(crate::graph::graphs_isomorphic(&sq, hom.target()).unwrap().is_some());

        let (hom, _) = eta(&Graph::discrete(["a", "b"]).unwrap());
        assert_eq!(hom.target().edge_count(), 0);
    }

    #[test]
    fn identity_symbol_is_allowed() {
        let w = cyclic("w");
        let acg = AcGroup::new(w.clone());
        let one = w.identity();
        let x = acg.word(vec![(one, BigInt::from(2))]).unwrap();
        assert!(!acg.is_identity(&x));
        assert!(matches!(
            acg.word(vec![(w.generator(0), BigInt::zero())]),
            Err(AcError::ZeroExponent(_))
        ));
    }
}
