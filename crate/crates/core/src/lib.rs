//! Analysis toolkit for 2-edge-coloured graphs and their partitions into
//! monochromatic cycles.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the coloured graph model, the `.cg` text format,
//!   monochromatic components and degree sequences.
//! * [`conditions`] checks Pósa- and Ore-type degree conditions with exact
//!   rational thresholds and classifies colourings (plain / mixed / split).
//! * [`matching`] computes maximum 2-matchings through the bipartite double
//!   cover and maximum stable-set contraction, both polynomially and by
//!   exhaustive search.
//! * [`constructions`] builds the extremal graphs and verifies their
//!   advertised properties.
//! * [`partition`] searches exactly for partitions into generalized
//!   monochromatic cycles at small orders.
//! * [`structural`] searches for component families (spanning pairs, cover
//!   triples, double covers) and validates them.
//! * [`harness`] generates reproducible random instances and runs fuzz
//!   campaigns that tie everything together.

pub mod conditions;
pub mod constructions;
pub mod graph;
pub mod harness;
pub mod matching;
pub mod par;
pub mod partition;
pub mod rational;
pub mod structural;

pub use graph::{
    Colour, ColouredGraph, ComponentId, ComponentMap, DegreeSequence, GraphBuilder, MonochromaticComponent, Subgraph,
};
pub use rational::Rational;
