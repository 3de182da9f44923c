//! Symbolic cardinals, axiom contexts and the three-valued reasoner.

mod context;
mod reasoner;
mod term;

pub use context::{AxiomContext, ContinuumEquality, Directive};
pub use reasoner::{Bound, CfClass, Derived, LeqRule, Reasoner, Value};
pub use term::{CardIndex, CardinalTerm, IndexKind};

