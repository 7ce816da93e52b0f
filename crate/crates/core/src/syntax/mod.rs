//! Formulas, concrete syntax, substitution and axiom schemas.

mod axioms;
mod formula;
mod parser;

pub use axioms::{chi, phi, psi, AxiomId, Ext, Extensions, UReading, UnknownExtension};
pub use formula::{compose, Equation, Formula, Subst};
pub use parser::{parse, ParseError};
