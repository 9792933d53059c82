//! Computations with finite spaces of orderings and their associated
//! 2-groups.
//!
//! The library verifies the space-of-orderings axioms for finite
//! candidate spaces, decomposes spaces into connected components,
//! extracts translation groups and quotients, classifies spaces into
//! structure trees, and realizes those trees as concrete presentations in
//! the variety of exponent-4 groups with central squares — with exact
//! arithmetic throughout and independent brute-force oracles for the
//! headline quantities.
//!
//! Modules:
//! - [`f2`]: bit-packed linear algebra over F₂;
//! - [`space`]: spaces of orderings, value sets, subspaces, components,
//!   translations, quotients, equivalence;
//! - [`axioms`]: the axiom checker with minimal-witness search;
//! - [`group`]: normal forms and presented groups of exponent 4 with
//!   central squares;
//! - [`classify`]: structure trees, `classify`/`build`/`realize`, and the
//!   realizability check;
//! - [`oracle`]: explicit-enumeration cross-checks;
//! - [`formats`]: the `.sos`/`.cgp`/tree text formats.

pub mod axioms;
pub mod classify;
pub mod f2;
pub mod formats;
pub mod group;
pub mod oracle;
pub mod space;

pub use axioms::{Axiom4Witness, AxiomReport, MAX_AXIOM_SCAN_DIM};
pub use classify::{
    build, canonical_trees, classify, realizable, realize, ClassifyError, Obstruction,
    RealizabilityReport, Tree,
};
pub use f2::{F2Subspace, F2Vector, MAX_DIM};
pub use group::{Element, GroupError, Presentation, MAX_GENERATORS};
pub use space::{Character, Form, LinearMap, Space, SpaceError, ValueSet, XAlpha};
