//! Decision engine for minimal and pseudocompact group topologies on free
//! abelian groups.
//!
//! The crate is layered: [`ordinal`] arithmetic below ε₀ indexes the alephs
//! and beths of [`cardinal`], whose [`Reasoner`](cardinal::Reasoner)
//! compares terms three-valuedly under an [`AxiomContext`](cardinal::AxiomContext).
//! [`engine`] builds the topologization predicates on top. [`padic`] and
//! [`covering`] are exact finite-rank and finite-size laboratories.

pub mod cardinal;
pub mod covering;
pub mod engine;
pub mod error;
pub mod ordinal;
pub mod padic;
pub mod parse;
pub mod rules;
pub mod verdict;

pub use error::{CoreError, ParseError, Result};
pub use verdict::{explain, Step, Trace, Truth, Verdict};
