//! Decision and verification procedures for Lewis's variably strict
//! conditional logics at finite scale.
//!
//! * [`syntax`]: formulas, parsing and printing, axiom schemas.
//! * [`spheres`]: finite sphere models and consequence over them.
//! * [`algebra`]: finite V-algebras, filters and congruences.
//! * [`duality`]: translations between algebras, selection-function models
//!   and sphere structures.
//! * [`proofs`]: a Hilbert-style proof checker and proof transformers.

pub mod algebra;
pub mod bits;
pub mod compiled;
pub mod duality;
pub mod proofs;
pub mod spheres;
pub mod syntax;

pub use syntax::{parse, Formula};

/// Outcome of a check that either holds or fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Fails(w) => Verdict::Fails(f(w)),
        }
    }
}

impl<W> From<Result<(), W>> for Verdict<W> {
    fn from(r: Result<(), W>) -> Self {
        match r {
            Ok(()) => Verdict::Holds,
            Err(w) => Verdict::Fails(w),
        }
    }
}
