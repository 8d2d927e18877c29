//! `AC`-coalgebra structures on groups and the cohomomorphism test.
//!
//! A structure map `𝔤 : G → ACG` is stored by the images of the exposed
//! generators. Every diagram is checked on generators only: both legs of each
//! diagram are homomorphisms, so agreement on generators is agreement
//! everywhere. Checks run in generator order and report the first failure.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ac::{AcError, AcGroup, AcWord};
use crate::graph::{Graph, GraphHom};
use crate::group::{raag_of_graph, FinitelyGenerated, Group, GroupHandle, GroupHom, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("structure map is not a homomorphism: relation {0} fails")]
    NotAHomomorphism(String),
    #[error("{side} coalgebra is not a coalgebra: {verdict}")]
    NotACoalgebra { side: &'static str, verdict: CoalgebraVerdict },
    #[error("homomorphism ends do not match the coalgebras")]
    EndsMismatch,
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0} coalgebra is not the canonical one of its graph")]
    NotCanonical(&'static str),
    #[error(transparent)]
    Ac(#[from] AcError),
}

/// Outcome of one diagram check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Holds,
    /// The check fails at `at` (a generator or relation); `detail` shows the
    /// two sides that disagree.
    Fails { at: String, detail: String },
}

impl Check {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoalgebraVerdict {
    Coalgebra,
    NotHomomorphism { relation: String },
    CounitFailed { generator: String, detail: String },
    CoassociativityFailed { generator: String, detail: String },
}

impl CoalgebraVerdict {
    pub fn is_coalgebra(&self) -> bool {
        matches!(self, CoalgebraVerdict::Coalgebra)
    }
}

impl fmt::Display for CoalgebraVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoalgebraVerdict::Coalgebra => write!(f, "coalgebra"),
            CoalgebraVerdict::NotHomomorphism { relation } => {
                write!(f, "homomorphism failed at {relation}")
            }
            CoalgebraVerdict::CounitFailed { generator, .. } => write!(f, "counit failed at {generator}"),
            CoalgebraVerdict::CoassociativityFailed { generator, .. } => {
                write!(f, "coassociativity failed at {generator}")
            }
        }
    }
}

/// A candidate structure map `𝔤 : G → ACG`.
#[derive(Clone)]
pub struct CoalgebraMap<G: FinitelyGenerated> {
    group: G,
    images: Vec<AcWord<G::Element>>,
}

impl<G: FinitelyGenerated> fmt::Debug for CoalgebraMap<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acg = self.acg();
        let pairs: Vec<String> = self
            .group
            .generator_names()
            .iter()
            .zip(&self.images)
            .map(|(n, x)| format!("{n}->{}", acg.render(x)))
            .collect();
        f.debug_tuple("CoalgebraMap").field(&pairs).finish()
    }
}

/// `Aη`: each vertex `v` goes to the symbol `[v]`.
pub fn canonical_coalgebra(graph: &Graph) -> CoalgebraMap<GroupHandle> {
    let group = raag_of_graph(graph);
    let images = (0..graph.len())
        .map(|v| AcWord::symbol(group.generator(v)))
        .collect();
    CoalgebraMap { group, images }
}

impl<G: FinitelyGenerated> CoalgebraMap<G> {
    /// One image per exposed generator, in generator order.
    pub fn new(group: &G, images: Vec<AcWord<G::Element>>) -> Result<Self, DescentError> {
        if images.len() != group.generator_count() {
            return Err(DescentError::WrongImageCount {
                expected: group.generator_count(),
                got: images.len(),
            });
        }
        let acg = AcGroup::new(group.clone());
        let images = images
            .iter()
            .map(|x| acg.word(x.letters().to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoalgebraMap {
            group: group.clone(),
            images,
        })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn images(&self) -> &[AcWord<G::Element>] {
        &self.images
    }

    pub fn acg(&self) -> AcGroup<G> {
        AcGroup::new(self.group.clone())
    }

    fn name(&self, g: usize) -> &str {
        &self.group.generator_names()[g]
    }

    /// `𝔤` applied to a spelling: each `x^k` becomes `𝔤(x)^k`. Not
    /// canonicalized.
    pub fn apply_structure(&self, spelling: &[(usize, BigInt)]) -> AcWord<G::Element> {
        spelling
            .iter()
            .fold(AcWord::identity(), |acc, (g, k)| acc.concat(&self.images[*g].pow(k)))
    }

    /// `𝔤(g)` for an element, through a spelling in the exposed generators.
    pub fn apply_element(&self, g: &G::Element) -> AcWord<G::Element> {
        self.apply_structure(&self.group.spell(g))
    }

    /// Every defining relation of the group must hold among the images.
    pub fn is_homomorphism_to_acg(&self) -> Check {
        let acg = self.acg();
        for relation in self.group.relations() {
            let holds = match &relation {
                Relation::Commute(i, j) => {
                    let (x, y) = (&self.images[*i], &self.images[*j]);
                    acg.equals_unchecked(&x.concat(y), &y.concat(x))
                }
                Relation::Relator(s) => acg.is_identity(&self.apply_structure(s)),
            };
            if !holds {
                let at = relation.render(self.group.generator_names());
                let detail = match &relation {
                    Relation::Commute(i, j) => format!(
                        "{} and {} do not commute",
                        acg.render(&self.images[*i]),
                        acg.render(&self.images[*j])
                    ),
                    Relation::Relator(s) => format!(
                        "relator maps to {}",
                        acg.render(&acg.canonical(&self.apply_structure(s)))
                    ),
                };
                return Check::Fails { at, detail };
            }
        }
        Check::Holds
    }

    fn require_homomorphism(&self) -> Result<(), DescentError> {
        match self.is_homomorphism_to_acg() {
            Check::Holds => Ok(()),
            Check::Fails { at, .. } => Err(DescentError::NotAHomomorphism(at)),
        }
    }

    /// `ε_G ∘ 𝔤 = 1_G` on generators.
    pub fn check_counit(&self) -> Result<Check, DescentError> {
        self.require_homomorphism()?;
        Ok(self.counit_unchecked())
    }

    pub(crate) fn counit_unchecked(&self) -> Check {
        let acg = self.acg();
        for (g, image) in self.images.iter().enumerate() {
            let back = acg.epsilon(image);
            let expected = self.group.generator(g);
            if back != expected {
                return Check::Fails {
                    at: self.name(g).to_string(),
                    detail: format!(
                        "ε({}) = {} != {}",
                        acg.render(image),
                        self.group.render(&back),
                        self.group.render(&expected)
                    ),
                };
            }
        }
        Check::Holds
    }

    /// `AC𝔤 ∘ 𝔤 = δ ∘ 𝔤` on generators.
    pub fn check_coassociativity(&self) -> Result<Check, DescentError> {
        self.require_homomorphism()?;
        Ok(self.coassociativity_unchecked())
    }

    pub(crate) fn coassociativity_unchecked(&self) -> Check {
        let acg = self.acg();
        let acacg = AcGroup::new(acg.clone());
        for (g, image) in self.images.iter().enumerate() {
            let mapped = image.map_symbols(|h| acg.canonical(&self.apply_element(h)));
            let doubled = acg.delta(image);
            if !acacg.equals_unchecked(&mapped, &doubled) {
                return Check::Fails {
                    at: self.name(g).to_string(),
                    detail: format!("{} != {}", acacg.render(&mapped), acacg.render(&doubled)),
                };
            }
        }
        Check::Holds
    }

    /// Homomorphism, counit and coassociativity, stopping at the first failure.
    pub fn check_coalgebra(&self) -> CoalgebraVerdict {
        if let Check::Fails { at, .. } = self.is_homomorphism_to_acg() {
            return CoalgebraVerdict::NotHomomorphism { relation: at };
        }
        if let Check::Fails { at, detail } = self.counit_unchecked() {
            return CoalgebraVerdict::CounitFailed { generator: at, detail };
        }
        if let Check::Fails { at, detail } = self.coassociativity_unchecked() {
            return CoalgebraVerdict::CoassociativityFailed { generator: at, detail };
        }
        CoalgebraVerdict::Coalgebra
    }
}

impl CoalgebraMap<GroupHandle> {
    /// Images given as `(generator name, AC word text)`.
    pub fn from_texts<S: AsRef<str>>(
        group: &GroupHandle,
        images: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, crate::Error> {
        let mut table: Vec<Option<AcWord<crate::Word>>> = vec![None; group.generator_count()];
        for (name, text) in images {
            let g = group
                .generator_names()
                .iter()
                .position(|n| n == name.as_ref())
                .ok_or_else(|| DescentError::UnknownGenerator(name.as_ref().to_string()))?;
            table[g] = Some(crate::ac::parse_ac_word(group, text.as_ref())?);
        }
        let images = table
            .into_iter()
            .enumerate()
            .map(|(g, x)| {
                x.ok_or_else(|| DescentError::UnknownGenerator(group.generator_names()[g].clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoalgebraMap::new(group, images)?)
    }

    pub fn is_canonical(&self) -> bool {
        self.group.is_default() && self.images == canonical_coalgebra(self.group.graph()).images
    }
}

/// Whether `f` commutes with the structure maps: `𝔥 ∘ f = ACf ∘ 𝔤` on
/// generators.
pub fn is_cohomomorphism<G, H>(
    f: &GroupHom<G, H>,
    source: &CoalgebraMap<G>,
    target: &CoalgebraMap<H>,
) -> Result<Check, DescentError>
where
    G: FinitelyGenerated + PartialEq,
    H: FinitelyGenerated + PartialEq,
{
    if f.source() != source.group() || f.target() != target.group() {
        return Err(DescentError::EndsMismatch);
    }
    let verdict = source.check_coalgebra();
    if !verdict.is_coalgebra() {
        return Err(DescentError::NotACoalgebra { side: "source", verdict });
    }
    let verdict = target.check_coalgebra();
    if !verdict.is_coalgebra() {
        return Err(DescentError::NotACoalgebra { side: "target", verdict });
    }
    let ach = target.acg();
    for (g, image) in source.images().iter().enumerate() {
        let top_right = ach.canonical(&target.apply_element(&f.images()[g]));
        let bottom_left = image.map_symbols(|h| f.apply(h));
        if !ach.equals_unchecked(&top_right, &bottom_left) {
            return Ok(Check::Fails {
                at: source.group().generator_names()[g].clone(),
                detail: format!(
                    "{} != {}",
                    ach.render(&top_right),
                    ach.render(&ach.canonical(&bottom_left))
                ),
            });
        }
    }
    Ok(Check::Holds)
}

/// Reads off the graph homomorphism `φ` with `Aφ = f`, for canonical
/// coalgebras on both sides. `None` when `f` is not a cohomomorphism.
pub fn cohom_to_graph_hom(
    f: &GroupHom<GroupHandle, GroupHandle>,
    source: &CoalgebraMap<GroupHandle>,
    target: &CoalgebraMap<GroupHandle>,
) -> Result<Option<GraphHom>, DescentError> {
    if !is_cohomomorphism(f, source, target)?.holds() {
        return Ok(None);
    }
    if !source.is_canonical() {
        return Err(DescentError::NotCanonical("source"));
    }
    if !target.is_canonical() {
        return Err(DescentError::NotCanonical("target"));
    }
    let table: Option<Vec<usize>> = f.images().iter().map(|w| w.as_generator()).collect();
    Ok(table.and_then(|t| GraphHom::from_indices(source.group().graph(), target.group().graph(), t).ok()))
}
