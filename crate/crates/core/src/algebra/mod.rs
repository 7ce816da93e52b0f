//! Finite V-algebras.
//!
//! Every finite Boolean algebra is a powerset, so an algebra is an atom
//! count plus a `⊡→` table over atom masks. The module checks the defining
//! equations and extension axioms, computes lattice and open filters with
//! their congruences, and decides degree-preserving and equational
//! consequence over explicit lists of algebras.

mod consequence;
mod enumerate;
mod filters;
pub mod samples;
mod valgebra;

pub use consequence::{degree_consequence, equational_consequence, AlgebraWitness};
pub use enumerate::{coatom_candidates, enumerate_v_algebras, MAX_ENUM_ATOMS};
pub use filters::{
    check_homomorphism, congruences, lattice_filters, open_filter_generators_from_box, open_filters, quotient,
    Congruence, Filter, HomFailure,
};
pub use valgebra::{AlgebraError, AlgebraFile, AxiomFailure, VAlgebra, VAxiom, Variety, VarietyFailure, MAX_ATOMS};
