use crate::spheres::{countermodel, SearchConfig, SearchOutcome};

use super::calculus::Calculus;
use super::proof::Proof;

/// Searches all models of the calculus's class up to three worlds for one
/// where the premises hold (globally or at a world, by strength) and the
/// conclusion fails. A sound proof yields `NotFound`.
pub fn bounded_soundness(c: &Calculus, p: &Proof) -> SearchOutcome {
    let concl = p.conclusion().cloned().unwrap_or(crate::Formula::Top);
    let cfg = SearchConfig::new(c.mode(), c.exts, 3);
    countermodel(&p.premises, &concl, &cfg)
}
