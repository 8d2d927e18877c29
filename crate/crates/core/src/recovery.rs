//! Recovering a graph from a group with a coalgebra structure, and the
//! bounded search for such structures.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::ac::{AcGroup, AcWord};
use crate::coalgebra::CoalgebraMap;
use crate::graph::{is_valid_vertex_name, Graph};
use crate::group::{parse_spelling, push_power, render_spelling, FinitelyGenerated, Group, GroupError, Spelling};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryError {
    #[error("budget exhausted: found {found} of {wanted}")]
    BudgetExhausted { found: usize, wanted: usize },
    #[error("presentation generators {presentation:?} do not match the group's {group:?}")]
    PresentationMismatch { presentation: Vec<String>, group: Vec<String> },
    #[error("matrix is not rectangular")]
    Ragged,
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type IntegerMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors, each dividing the next.
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

pub fn check_rectangular(m: &IntegerMatrix) -> Result<(), RecoveryError> {
    match m.first() {
        Some(row) if m.iter().any(|r| r.len() != row.len()) => Err(RecoveryError::Ragged),
        _ => Ok(()),
    }
}

/// Smith normal form by unimodular row and column operations.
///
/// # Panics
/// If the matrix is ragged; see [`check_rectangular`].
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    check_rectangular(m).expect("rectangular matrix");
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: entry of least absolute value in the remaining block.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                for (x, p) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x -= &q * p;
                }
                if !a[i][t].is_zero() {
                    done = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    done = false;
                }
            }
            if done {
                // The pivot must divide the rest of the block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let (top, rest) = a.split_at_mut(i);
                        for (p, x) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                            *p += x;
                        }
                    }
                }
            }
            // Restore the minimal pivot before the next sweep.
            let (mi, mj) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| (i == t || j == t) && !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
                .expect("pivot row or column is nonzero");
            a.swap(t, mi);
            for row in a.iter_mut() {
                row.swap(t, mj);
            }
        }
        invariants.push(a[t][t].abs());
        t += 1;
    }
    let rank = invariants.len();
    SmithForm { invariants, rank }
}

/// A finite presentation: generator names and relators spelled in them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Spelling>,
}

impl FinitePresentation {
    pub fn parse<S: AsRef<str>>(generators: Vec<String>, relators: &[S]) -> Result<Self, RecoveryError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !is_valid_vertex_name(g) {
                return Err(GroupError::Graph(crate::graph::GraphError::InvalidName(g.clone())).into());
            }
            if !seen.insert(g) {
                return Err(GroupError::DuplicateGenerator(g.clone()).into());
            }
        }
        let relators = relators
            .iter()
            .map(|r| parse_spelling(&generators, r.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinitePresentation { generators, relators })
    }

    /// The standard presentation of `A(Γ)`: one commutator per edge.
    pub fn commutator_presentation(graph: &Graph) -> Self {
        let one = BigInt::one();
        FinitePresentation {
            generators: graph.vertices().to_vec(),
            relators: graph
                .edges()
                .map(|(u, v)| vec![(u, one.clone()), (v, one.clone()), (u, -&one), (v, -&one)])
                .collect(),
        }
    }

    pub fn of_group<G: FinitelyGenerated>(group: &G) -> Self {
        let one = BigInt::one();
        FinitePresentation {
            generators: group.generator_names().to_vec(),
            relators: group
                .relations()
                .into_iter()
                .map(|r| match r {
                    crate::group::Relation::Commute(u, v) => {
                        vec![(u, one.clone()), (v, one.clone()), (u, -&one), (v, -&one)]
                    }
                    crate::group::Relation::Relator(s) => s,
                })
                .collect(),
        }
    }

    pub fn render_relator(&self, r: &[(usize, BigInt)]) -> String {
        render_spelling(&self.generators, r)
    }

    /// Exponent sums of each relator, one row per relator.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::zero(); self.generators.len()];
                for (g, k) in r {
                    row[*g] += k;
                }
                row
            })
            .collect()
    }
}

/// Free rank of the abelianization.
pub fn abelianization_rank(p: &FinitePresentation) -> usize {
    p.generators.len() - smith_normal_form(&p.exponent_matrix()).rank
}

/// An element found by enumeration, with the spelling that reached it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumerated<E> {
    pub element: E,
    pub spelling: Spelling,
}

/// All elements of spelling length at most `max_length`, breadth first:
/// identity first, then by length, each layer extended by `x1, x1^-1, x2, …`.
pub fn enumerate_elements<G: FinitelyGenerated>(group: &G, max_length: usize) -> Vec<Enumerated<G::Element>> {
    let steps: Vec<(usize, BigInt, G::Element)> = (0..group.generator_count())
        .flat_map(|g| {
            let x = group.generator(g);
            let inv = group.invert(&x);
            [(g, BigInt::one(), x), (g, -BigInt::one(), inv)]
        })
        .collect();
    let identity = group.identity();
    let mut seen = HashSet::from([identity.clone()]);
    let mut out = vec![Enumerated {
        element: identity,
        spelling: Spelling::new(),
    }];
    let mut frontier = 0..1;
    for _ in 0..max_length {
        let start = out.len();
        for i in frontier.clone() {
            for (g, k, x) in &steps {
                let element = group.multiply(&out[i].element, x);
                if seen.insert(element.clone()) {
                    let mut spelling = out[i].spelling.clone();
                    push_power(&mut spelling, *g, k.clone());
                    out.push(Enumerated { element, spelling });
                }
            }
        }
        frontier = start..out.len();
        if frontier.is_empty() {
            break;
        }
    }
    out
}

/// Elements `g ≠ 1` with `𝔤(g) = [g]`, scanning up to `max_length` until
/// `rank` are found.
pub fn find_vertices<G: FinitelyGenerated>(
    c: &CoalgebraMap<G>,
    rank: usize,
    max_length: usize,
) -> Result<Vec<Enumerated<G::Element>>, RecoveryError> {
    let acg = c.acg();
    let group = c.group();
    let mut found = Vec::new();
    if rank == 0 {
        return Ok(found);
    }
    for e in enumerate_elements(group, max_length) {
        if group.is_identity(&e.element) {
            continue;
        }
        if acg.equals_unchecked(&c.apply_structure(&e.spelling), &AcWord::symbol(e.element.clone())) {
            found.push(e);
            if found.len() == rank {
                return Ok(found);
            }
        }
    }
    Err(RecoveryError::BudgetExhausted {
        found: found.len(),
        wanted: rank,
    })
}

/// A vertex name for a spelled element: the spelling text with spaces as
/// `_` and negative powers as `m`, e.g. `x4 x1^-1` becomes `x4_x1m1`.
fn vertex_name(text: &str) -> String {
    if text.is_empty() {
        return "one".into();
    }
    text.replace(' ', "_").replace("^-", "m").replace('^', "p")
}

#[derive(Debug, Clone)]
pub struct Recovered<E> {
    pub graph: Graph,
    /// Element for each vertex, in vertex order.
    pub elements: Vec<E>,
    /// Spelling text of each vertex in the exposed generators.
    pub labels: Vec<String>,
}

/// The graph on [`find_vertices`] with edges between commuting elements.
pub fn recover_graph<G: FinitelyGenerated>(
    c: &CoalgebraMap<G>,
    rank: usize,
    max_length: usize,
) -> Result<Recovered<G::Element>, RecoveryError> {
    let group = c.group();
    let found = find_vertices(c, rank, max_length)?;
    let mut names: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    for e in &found {
        let base = vertex_name(&render_spelling(group.generator_names(), &e.spelling));
        let mut name = base.clone();
        let mut n = 1;
        while !seen.insert(name.clone()) {
            n += 1;
            name = format!("{base}_{n}");
        }
        names.push(name);
    }
    let mut pairs: Vec<(String, Enumerated<G::Element>)> = names.into_iter().zip(found).collect();
    pairs.sort_by(|x, y| x.0.cmp(&y.0));
    let (names, found): (Vec<String>, Vec<Enumerated<G::Element>>) = pairs.into_iter().unzip();
    let graph = Graph::from_fn(names, |i, j| group.commutes(&found[i].element, &found[j].element));
    Ok(Recovered {
        graph,
        labels: found
            .iter()
            .map(|e| render_spelling(group.generator_names(), &e.spelling))
            .collect(),
        elements: found.into_iter().map(|e| e.element).collect(),
    })
}

#[derive(Debug, Clone)]
pub enum SearchOutcome<G: FinitelyGenerated> {
    Found(CoalgebraMap<G>),
    /// Nothing within the budgets; says nothing about existence.
    Exhausted { symbol_budget: usize, image_budget: usize, tried: u64 },
}

/// Canonical AC words over `symbols` of size exactly `size`, deduplicated, in
/// generation order.
fn ac_words_of_size<B: Group>(acg: &AcGroup<B>, symbols: &[B::Element], size: usize) -> Vec<AcWord<B::Element>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let letters: Vec<(B::Element, BigInt)> = symbols
        .iter()
        .flat_map(|s| [(s.clone(), BigInt::one()), (s.clone(), -BigInt::one())])
        .collect();
    let mut index = vec![0usize; size];
    loop {
        let raw = AcWord::from_letters_unchecked(
            index.iter().map(|&i| letters[i].clone()).collect(),
        );
        let canon = acg.canonical(&raw);
        if canon.size() == BigInt::from(size) && seen.insert(canon.clone()) {
            out.push(canon);
        }
        // Next index tuple, last position fastest.
        let mut p = size;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            index[p] += 1;
            if index[p] < letters.len() {
                break;
            }
            index[p] = 0;
        }
    }
}

/// Searches for a coalgebra structure on `group` (presented by `p`) among maps
/// whose images use symbols from the ball of radius `symbol_budget` and have
/// at most `image_budget` letters. Candidates are tried by increasing total
/// size; the first that passes every check is returned.
pub fn search_coalgebra<G: FinitelyGenerated>(
    p: &FinitePresentation,
    group: &G,
    symbol_budget: usize,
    image_budget: usize,
) -> Result<SearchOutcome<G>, RecoveryError> {
    if p.generators != group.generator_names() {
        return Err(RecoveryError::PresentationMismatch {
            presentation: p.generators.clone(),
            group: group.generator_names().to_vec(),
        });
    }
    let acg = AcGroup::new(group.clone());
    let symbols: Vec<G::Element> = enumerate_elements(group, symbol_budget)
        .into_iter()
        .map(|e| e.element)
        .collect();
    let n = group.generator_count();
    // by_size[g][s]: candidates for generator g of size s passing the counit.
    let mut by_size: Vec<Vec<Vec<AcWord<G::Element>>>> = vec![Vec::new(); n];
    for size in 0..=image_budget {
        let words = ac_words_of_size(&acg, &symbols, size);
        for (g, slot) in by_size.iter_mut().enumerate() {
            let x = group.generator(g);
            slot.push(words.iter().filter(|w| acg.epsilon(w) == x).cloned().collect());
        }
    }
    let mut tried = 0u64;
    if n == 0 {
        let c = CoalgebraMap::new(group, Vec::new()).expect("no images needed");
        return Ok(SearchOutcome::Found(c));
    }
    for total in 0..=n * image_budget {
        for sizes in compositions(total, n, image_budget) {
            let lists: Vec<&Vec<AcWord<G::Element>>> =
                sizes.iter().enumerate().map(|(g, &s)| &by_size[g][s]).collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            let mut index = vec![0usize; n];
            loop {
                tried += 1;
                let images: Vec<AcWord<G::Element>> =
                    index.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
                let c = CoalgebraMap::new(group, images).expect("candidate images are valid");
                let relators_die = p.relators.iter().all(|r| acg.is_identity(&c.apply_structure(r)));
                if relators_die && c.check_coalgebra().is_coalgebra() {
                    return Ok(SearchOutcome::Found(c));
                }
                let mut q = n;
                loop {
                    if q == 0 {
                        break;
                    }
                    q -= 1;
                    index[q] += 1;
                    if index[q] < lists[q].len() {
                        break;
                    }
                    index[q] = 0;
                }
                if index.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted {
        symbol_budget,
        image_budget,
        tried,
    })
}

/// Ordered ways to write `total` as `parts` summands each in `0..=max`, in
/// lexicographic order.
fn compositions(total: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for s in 0..=max.min(total) {
            if total - s > max * (parts - 1) {
                continue;
            }
            prefix.push(s);
            go(total - s, parts - 1, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, max, &mut Vec::new(), &mut out);
    out
}
