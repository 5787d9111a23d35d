//! Regular directed complexes.
//!
//! The crate is organised bottom-up:
//!
//! - [`ogposet`]: oriented graded posets, closed subsets, boundaries;
//! - [`graph`]: directed graphs with cycle certificates and topological sorts;
//! - [`morphism`]: maps of oriented graded posets and isomorphism search;
//! - [`molecule`]: construction and recognition of molecules;
//! - [`flow`]: flow graphs, orderings and layerings;
//! - [`acyclicity`]: the four acyclicity conditions;
//! - [`constructions`]: suspension, Gray product, join and duals;
//! - [`omega`]: the strict ω-category of molecules over a complex;
//! - [`chain`]: augmented directed chain complexes and globular tables.

pub mod acyclicity;
pub mod catalog;
pub mod chain;
pub mod constructions;
pub mod error;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod molecule;
pub mod morphism;
pub mod ogposet;
pub mod omega;

pub use error::{Error, Result};
pub use graph::DirectedGraph;
pub use molecule::{Molecule, Witness};
pub use morphism::OgMap;
pub use ogposet::{ClosedSubset, ElemRef, Element, OgPoset, Sign};
