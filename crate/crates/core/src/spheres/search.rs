//! Bounded countermodel search.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Mask;
use crate::compiled::{Compiled, Structure};
use crate::syntax::{Extensions, Formula};

use super::class::in_classes;
use super::enumerate::{
    frames_of_size, model_of, random_frame, valuation, valuation_count, EXHAUSTIVE_LEVELS, EXHAUSTIVE_WORLDS,
};
use super::model::{Frame, SphereModel};

/// Local (world-wise) or global (model-wise) consequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Local,
    Global,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub max_worlds: usize,
    /// Sphere levels per world in the exhaustive phase.
    pub levels: usize,
    /// Restricts the search to the class matching these axioms.
    pub exts: Extensions,
    pub mode: Mode,
    pub seed: u64,
    /// Random models tried for each world count beyond the exhaustive
    /// bound.
    pub samples: usize,
    /// Above this many valuations per frame, valuations are sampled.
    pub valuation_cap: u64,
}

impl SearchConfig {
    pub fn new(mode: Mode, exts: Extensions, max_worlds: usize) -> SearchConfig {
        SearchConfig {
            max_worlds,
            levels: EXHAUSTIVE_LEVELS,
            exts,
            mode,
            seed: 0,
            samples: 2000,
            valuation_cap: 1 << 15,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// A countermodel; `world` is set for local consequence.
    Found { model: SphereModel, world: Option<usize> },
    NotFound {
        /// Every model up to this many worlds was checked.
        exhaustive_up_to: usize,
        /// Larger world counts up to `max_worlds` were sampled.
        sampled: bool,
        models_checked: u64,
    },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

/// A frame with its `⊡→` operation tabulated, for frames evaluated under
/// many valuations.
struct Tabled {
    top: Mask,
    n: usize,
    table: Vec<Mask>,
}

impl Tabled {
    fn new(frame: &Frame) -> Tabled {
        let size = 1usize << frame.len();
        let table = (0..size * size)
            .map(|i| frame.cf((i / size) as Mask, (i % size) as Mask))
            .collect();
        Tabled {
            top: frame.universe(),
            n: frame.len(),
            table,
        }
    }
}

impl Structure for Tabled {
    fn top(&self) -> Mask {
        self.top
    }

    fn cf(&self, a: Mask, b: Mask) -> Mask {
        self.table[((a as usize) << self.n) | b as usize]
    }
}

struct Query {
    vars: Vec<String>,
    gamma: Vec<Compiled>,
    phi: Compiled,
    mode: Mode,
}

impl Query {
    /// Worlds refuting the claim, or 0. For global consequence this is
    /// the whole model or nothing.
    fn refute<S: Structure>(&self, frame: &S, vals: &[Mask]) -> Mask {
        let full = frame.top();
        let mut prem = full;
        for g in &self.gamma {
            prem &= g.eval(frame, vals);
            if prem == 0 || (self.mode == Mode::Global && prem != full) {
                return 0;
            }
        }
        let bad = prem & !self.phi.eval(frame, vals);
        match self.mode {
            Mode::Local => bad,
            Mode::Global if bad != 0 => full,
            Mode::Global => 0,
        }
    }
}

/// Searches for a model in the class of `cfg.exts` refuting `Γ ⊨ φ`.
///
/// Up to three worlds the search is exhaustive in the documented order, so
/// the reported model is the least one. Beyond that bound, seeded random
/// models of the class are tried.
pub fn countermodel(gamma: &[Formula], phi: &Formula, cfg: &SearchConfig) -> SearchOutcome {
    let vars: Vec<String> = gamma
        .iter()
        .chain(std::iter::once(phi))
        .flat_map(|f| f.vars())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let q = Query {
        gamma: gamma.iter().map(|g| Compiled::new(g, &vars)).collect(),
        phi: Compiled::new(phi, &vars),
        vars,
        mode: cfg.mode,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let found = |frame: Frame, vals: &[Mask], bad: Mask| SearchOutcome::Found {
        world: (cfg.mode == Mode::Local).then(|| bad.trailing_zeros() as usize),
        model: model_of(frame, &q.vars, vals),
    };

    let mut checked = 0u64;
    let mut complete = true;
    let exhaustive = cfg.max_worlds.min(EXHAUSTIVE_WORLDS);
    for n in 1..=exhaustive {
        let count = valuation_count(n, q.vars.len());
        for frame in frames_of_size(n, cfg.levels).filter(|f| in_classes(f, cfg.exts)) {
            if count <= cfg.valuation_cap {
                let tabled = Tabled::new(&frame);
                for code in 0..count {
                    let vals = valuation(n, q.vars.len(), code);
                    checked += 1;
                    let bad = q.refute(&tabled, &vals);
                    if bad != 0 {
                        return found(frame, &vals, bad);
                    }
                }
            } else {
                complete = false;
                for _ in 0..cfg.valuation_cap {
                    let vals: Vec<Mask> = q.vars.iter().map(|_| rng.random::<u64>() & frame.universe()).collect();
                    checked += 1;
                    let bad = q.refute(&frame, &vals);
                    if bad != 0 {
                        return found(frame, &vals, bad);
                    }
                }
            }
        }
    }
    for n in exhaustive + 1..=cfg.max_worlds {
        for _ in 0..cfg.samples {
            let frame = random_frame(&mut rng, n, cfg.exts);
            let vals: Vec<Mask> = q.vars.iter().map(|_| rng.random::<u64>() & frame.universe()).collect();
            checked += 1;
            let bad = q.refute(&frame, &vals);
            if bad != 0 {
                return found(frame, &vals, bad);
            }
        }
    }
    SearchOutcome::NotFound {
        exhaustive_up_to: if complete { exhaustive } else { 0 },
        sampled: cfg.max_worlds > exhaustive || !complete,
        models_checked: checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spheres::consequence::{global_consequence, local_consequence};
    use crate::syntax::parse;
    use crate::Verdict;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn p_box_p_local_countermodel_at_two_worlds() {
        let cfg = SearchConfig::new(Mode::Local, Extensions::NONE, 2);
        match countermodel(&[f("p")], &f("box p"), &cfg) {
            SearchOutcome::Found { model, world } => {
                let w = world.unwrap();
                assert!(model.satisfies(w, &f("p")));
                assert!(!model.satisfies(w, &f("box p")));
            }
            other => panic!("expected a countermodel, got {other:?}"),
        }
    }

    #[test]
    fn identity_has_no_countermodel() {
        for mode in [Mode::Local, Mode::Global] {
            let cfg = SearchConfig::new(mode, Extensions::NONE, 3);
            let out = countermodel(&[], &f("p |> p"), &cfg);
            assert!(matches!(
                out,
                SearchOutcome::NotFound {
                    exhaustive_up_to: 3,
                    sampled: false,
                    ..
                }
            ));
        }
    }

    #[test]
    fn rule_c_is_globally_but_not_locally_sound() {
        let gamma = [f("p -> q")];
        let phi = f("(r |> p) -> (r |> q)");
        let global = SearchConfig::new(Mode::Global, Extensions::NONE, 3);
        assert!(!countermodel(&gamma, &phi, &global).is_found());
        let local = SearchConfig::new(Mode::Local, Extensions::NONE, 3);
        assert!(countermodel(&gamma, &phi, &local).is_found());
    }

    #[test]
    fn found_models_really_refute() {
        let gamma = [f("p | q")];
        let phi = f("q |> p");
        for mode in [Mode::Local, Mode::Global] {
            let cfg = SearchConfig::new(mode, Extensions::NONE, 3);
            let SearchOutcome::Found { model, .. } = countermodel(&gamma, &phi, &cfg) else {
                panic!("expected a countermodel");
            };
            let ms = [model];
            match mode {
                Mode::Local => assert!(matches!(local_consequence(&ms, &gamma, &phi), Verdict::Fails(_))),
                Mode::Global => assert!(matches!(global_consequence(&ms, &gamma, &phi), Verdict::Fails(_))),
            }
        }
    }

    #[test]
    fn sampling_beyond_bound_is_seeded() {
        let mut cfg = SearchConfig::new(Mode::Local, Extensions::parse_letters("C").unwrap(), 5);
        cfg.samples = 50;
        let a = countermodel(&[], &f("(p |> q) -> (p -> q)"), &cfg);
        let b = countermodel(&[], &f("(p |> q) -> (p -> q)"), &cfg);
        match (a, b) {
            (
                SearchOutcome::NotFound {
                    models_checked: x,
                    sampled: true,
                    ..
                },
                SearchOutcome::NotFound { models_checked: y, .. },
            ) => assert_eq!(x, y),
            other => panic!("{other:?}"),
        }
    }
}
