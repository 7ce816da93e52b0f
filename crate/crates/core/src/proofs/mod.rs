//! Hilbert-style proofs for the conditional logics and their extensions.
//!
//! A calculus is global or local, carries a set of extension axioms, and
//! takes either L1 to L4 with rule (C) or L1 to L3 with the rules
//! `DWC(n)` as its conditional basis. The classical base is a fixed list
//! of schemas together with a truth-table justification for tautologies.

mod calculus;
mod check;
mod deduction;
mod derive;
mod proof;
pub mod scripts;
mod soundness;
mod taut;

pub use calculus::{Basis, Calculus, Strength};
pub use check::{check_proof, Checked, Rejection};
pub use deduction::{global_deduction_candidates, local_deduction, DeductionError};
pub use derive::{derive_dwc, derive_dwc0};
pub use proof::{ByFile, Justification, Line, LineFile, Proof, ProofFile, ProofFileError};
pub use soundness::bounded_soundness;
pub use taut::{is_tautology, MAX_TAUT_ATOMS};
