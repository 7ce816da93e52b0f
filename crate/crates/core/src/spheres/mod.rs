//! Finite sphere models.
//!
//! A model assigns each world a chain of nonempty world sets. Worlds,
//! spheres and truth sets are bit masks over world indices; a
//! [`SphereModel`] adds world names and a valuation to a bare [`Frame`].

mod class;
mod consequence;
pub mod enumerate;
mod model;
pub mod search;

pub use class::{in_classes, ClassViolation, ModelClass};
pub use consequence::{
    accessibility, generated_submodel, global_consequence, local_consequence, reach, reduce_global_to_local,
};
pub use model::{Frame, FrameError, ModelError, ModelFile, SphereModel};
pub use search::{countermodel, Mode, SearchConfig, SearchOutcome};
