//! Finite monoids, acts over them, and executable classifiers for the
//! order-theoretic and regularity properties those acts can have.
//!
//! The crate is organized bottom-up:
//!
//! * [`monoid`] — multiplication tables, principal ideals, kernels, group
//!   components, and rectangular-band-of-groups decompositions.
//! * [`act`] — finite left acts, congruences, quotients, coproducts, and
//!   pointed isomorphisms of cyclic acts.
//! * [`regular`] — annihilator-based regularity of act elements, regular
//!   cores, and decompositions of regular acts.
//! * [`fo`] — a small first-order fragment with counting quantifiers,
//!   evaluated over finite acts.
//! * [`classify`] — verdict reports for axiomatizability, model completeness,
//!   completeness, and the stability hierarchy.
//! * [`witness`] — constructions that exhibit order properties, type trees,
//!   congruence triples, and counting patterns.
//! * [`families`] — generators for the built-in monoid families, both finite
//!   tables and rule-defined infinite monoids explored through windows.
//! * [`smallgen`] — exhaustive enumeration of small monoids.
//! * [`corpus`] — invariant suites run over every corpus monoid.

pub mod act;
pub mod classify;
pub mod corpus;
pub mod families;
pub mod fo;
pub mod monoid;
pub mod regular;
pub mod smallgen;
pub mod textio;
pub mod witness;

pub use act::{ActCongruence, ActHom, FiniteAct};
pub use classify::{analyze, ClassifierReport, ClassifyOptions, Section, Verdict};
pub use monoid::{Elem, ElementSet, FiniteMonoid};
