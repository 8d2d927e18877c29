//! Right-angled Artin groups and the commutation-graph comonad.
//!
//! - [`graph`]: reflexive graphs, homomorphisms, equalizers, enumeration.
//! - [`word`]: the word problem in `A(Γ)` via canonical forms.
//! - [`group`]: groups behind word-problem queries and homomorphisms.
//! - [`ac`]: the comonad `AC`, its counit and comultiplication.
//! - [`coalgebra`]: coalgebra axioms and the cohomomorphism test.
//! - [`recovery`]: Smith normal form, vertex detection, graph recovery and the
//!   bounded coalgebra search.
//! - [`oracle`]: brute-force checkers used by the test suites.
//! - [`format`]: the JSON file formats read and written by the CLI.

pub mod ac;
pub mod coalgebra;
pub mod format;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod recovery;
pub mod word;

pub use ac::{commutation_graph, eta, AcGroup, AcWord};
pub use coalgebra::{canonical_coalgebra, Check, CoalgebraMap, CoalgebraVerdict};
pub use graph::{compose_homs, enumerate_homs, equalizer, graphs_isomorphic, is_coreflexive_pair, Graph, GraphHom};
pub use group::{a_on_hom, raag_of_graph, CyclicGroup, FinitelyGenerated, Group, GroupHandle, GroupHom};
pub use word::{CentralForm, Syllable, Word};

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Word(#[from] word::WordError),
    #[error(transparent)]
    Group(#[from] group::GroupError),
    #[error(transparent)]
    Ac(#[from] ac::AcError),
    #[error(transparent)]
    Descent(#[from] coalgebra::DescentError),
    #[error(transparent)]
    Recovery(#[from] recovery::RecoveryError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Format(#[from] format::FormatError),
}
