//! Finite duality between V-algebras, α-models (selection functions) and
//! sphere structures.
//!
//! Every space here is finite and discrete, so every subset is clopen and
//! the topological side conditions hold trivially. Ultrafilters of a
//! finite algebra are identified with its atoms, which makes `stone(a)`
//! the bit set of `a` itself.

mod alpha;
mod morphism;
mod sphere;
mod stone;

pub use alpha::{AlphaAxiom, AlphaFailure, AlphaFile, AlphaModel, DualityError, MaskValue, MAX_POINTS};
pub use morphism::{is_alpha_morphism, is_sphere_morphism, MorphismFailure};
pub use sphere::{
    alpha_from_sphere, check_sphere_axioms, preorder, sphere_from_alpha, PointPreorder, PreorderFailure, SphereFailure,
    SphereStructure,
};
pub use stone::{algebra_from_alpha, alpha_from_algebra, dual_of_homomorphism, stone_roundtrip_check};
