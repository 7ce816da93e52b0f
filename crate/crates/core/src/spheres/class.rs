use std::fmt;
use std::str::FromStr;

use crate::bits::{self, Mask};
use crate::syntax::{Ext, Extensions};

use super::model::Frame;

/// Lewis's classes of sphere models. All are frame properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelClass {
    /// `⋃S(w) ≠ ∅`
    Normal,
    /// `w ∈ ⋃S(w)`
    TotallyReflexive,
    /// `S(w)` has a sphere and every sphere contains `w`.
    WeaklyCentered,
    /// `{w} ∈ S(w)`
    Centered,
    /// Every set meeting `⋃S(w)` meets some sphere in exactly one world.
    Stalnakerian,
    /// All `⋃S(w)` coincide.
    Uniform,
    /// All `S(w)` coincide.
    Absolute,
    /// `S(w) = {W}` for every `w`.
    WeaklyTrivial,
    /// `W = {w}` and `S(w) = {{w}}`.
    Trivial,
}

/// Why a frame falls outside a class. Worlds are indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassViolation {
    EmptyUnion {
        world: usize,
    },
    OutsideOwnUnion {
        world: usize,
    },
    NoSpheres {
        world: usize,
    },
    SphereMissesCenter {
        world: usize,
        sphere: Mask,
    },
    NoSingletonSphere {
        world: usize,
    },
    /// `a` and `b` lie in `⋃S(world)` but no sphere separates them, so the
    /// set `{a, b}` meets every sphere in zero or two worlds.
    Inseparable {
        world: usize,
        a: usize,
        b: usize,
    },
    UnionsDiffer {
        world: usize,
        other: usize,
    },
    FamiliesDiffer {
        world: usize,
        other: usize,
    },
    NotWholeSpace {
        world: usize,
    },
    NotOneWorld {
        worlds: usize,
    },
}

impl ClassViolation {
    /// The world at which the violation is detected, if any.
    pub fn world(&self) -> Option<usize> {
        use ClassViolation::*;
        match *self {
            EmptyUnion { world }
            | OutsideOwnUnion { world }
            | NoSpheres { world }
            | SphereMissesCenter { world, .. }
            | NoSingletonSphere { world }
            | Inseparable { world, .. }
            | UnionsDiffer { world, .. }
            | FamiliesDiffer { world, .. }
            | NotWholeSpace { world } => Some(world),
            NotOneWorld { .. } => None,
        }
    }

    /// Describes the violation using `names` for worlds.
    pub fn describe(&self, names: &[String]) -> String {
        use ClassViolation::*;
        let set = |m: Mask| {
            let v: Vec<&str> = bits::members(m).map(|i| names[i].as_str()).collect();
            format!("{{{}}}", v.join(", "))
        };
        match *self {
            EmptyUnion { world } => format!("⋃S({}) is empty", names[world]),
            OutsideOwnUnion { world } => format!("{0} ∉ ⋃S({0})", names[world]),
            NoSpheres { world } => format!("S({}) has no sphere", names[world]),
            SphereMissesCenter { world, sphere } => {
                format!("sphere {} around {1} does not contain {1}", set(sphere), names[world])
            }
            NoSingletonSphere { world } => format!("{{{0}}} ∉ S({0})", names[world]),
            Inseparable { world, a, b } => format!(
                "no sphere around {} separates {} from {}",
                names[world], names[a], names[b]
            ),
            UnionsDiffer { world, other } => {
                format!("⋃S({}) ≠ ⋃S({})", names[world], names[other])
            }
            FamiliesDiffer { world, other } => {
                format!("S({}) ≠ S({})", names[world], names[other])
            }
            NotWholeSpace { world } => {
                format!("S({}) is not {{W}}", names[world])
            }
            NotOneWorld { worlds } => format!("model has {worlds} worlds, not one"),
        }
    }
}

impl fmt::Display for ClassViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..64).map(|i| format!("#{i}")).collect();
        f.write_str(&self.describe(&names))
    }
}

impl ModelClass {
    pub const ALL: [ModelClass; 9] = [
        ModelClass::Normal,
        ModelClass::TotallyReflexive,
        ModelClass::WeaklyCentered,
        ModelClass::Centered,
        ModelClass::Stalnakerian,
        ModelClass::Uniform,
        ModelClass::Absolute,
        ModelClass::WeaklyTrivial,
        ModelClass::Trivial,
    ];

    /// The class matching one extension axiom.
    pub fn of_ext(e: Ext) -> ModelClass {
        match e {
            Ext::W => ModelClass::WeaklyCentered,
            Ext::C => ModelClass::Centered,
            Ext::N => ModelClass::Normal,
            Ext::T => ModelClass::TotallyReflexive,
            Ext::S => ModelClass::Stalnakerian,
            Ext::U => ModelClass::Uniform,
            Ext::A => ModelClass::Absolute,
        }
    }

    /// The classes whose intersection matches an extension set.
    pub fn for_extensions(exts: Extensions) -> Vec<ModelClass> {
        exts.iter().map(ModelClass::of_ext).collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelClass::Normal => "normal",
            ModelClass::TotallyReflexive => "totally-reflexive",
            ModelClass::WeaklyCentered => "weakly-centered",
            ModelClass::Centered => "centered",
            ModelClass::Stalnakerian => "stalnakerian",
            ModelClass::Uniform => "uniform",
            ModelClass::Absolute => "absolute",
            ModelClass::WeaklyTrivial => "weakly-trivial",
            ModelClass::Trivial => "trivial",
        }
    }

    /// Checks the defining condition, reporting the first violation in
    /// world order.
    pub fn check(self, frame: &Frame) -> Result<(), ClassViolation> {
        use ClassViolation::*;
        let n = frame.len();
        let per_world = |test: &dyn Fn(usize) -> Result<(), ClassViolation>| (0..n).try_for_each(test);
        match self {
            ModelClass::Normal => per_world(&|w| {
                if frame.union(w) == 0 {
                    Err(EmptyUnion { world: w })
                } else {
                    Ok(())
                }
            }),
            ModelClass::TotallyReflexive => per_world(&|w| {
                if bits::contains(frame.union(w), w) {
                    Ok(())
                } else {
                    Err(OutsideOwnUnion { world: w })
                }
            }),
            ModelClass::WeaklyCentered => per_world(&|w| {
                if frame.spheres(w).is_empty() {
                    return Err(NoSpheres { world: w });
                }
                match frame.spheres(w).iter().find(|&&s| !bits::contains(s, w)) {
                    Some(&s) => Err(SphereMissesCenter { world: w, sphere: s }),
                    None => Ok(()),
                }
            }),
            ModelClass::Centered => per_world(&|w| {
                if frame.spheres(w).contains(&bits::singleton(w)) {
                    Ok(())
                } else {
                    Err(NoSingletonSphere { world: w })
                }
            }),
            ModelClass::Stalnakerian => per_world(&|w| match inseparable_pair(frame, w) {
                Some((a, b)) => Err(Inseparable { world: w, a, b }),
                None => Ok(()),
            }),
            ModelClass::Uniform => per_world(&|w| {
                if w > 0 && frame.union(w) != frame.union(0) {
                    Err(UnionsDiffer { world: w, other: 0 })
                } else {
                    Ok(())
                }
            }),
            ModelClass::Absolute => per_world(&|w| {
                if w > 0 && frame.spheres(w) != frame.spheres(0) {
                    Err(FamiliesDiffer { world: w, other: 0 })
                } else {
                    Ok(())
                }
            }),
            ModelClass::WeaklyTrivial => per_world(&|w| {
                if frame.spheres(w) == [frame.universe()] {
                    Ok(())
                } else {
                    Err(NotWholeSpace { world: w })
                }
            }),
            ModelClass::Trivial => {
                if n != 1 {
                    Err(NotOneWorld { worlds: n })
                } else if frame.spheres(0) != [1] {
                    Err(NoSingletonSphere { world: 0 })
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn contains(self, frame: &Frame) -> bool {
        self.check(frame).is_ok()
    }
}

/// Whether `frame` lies in every class matching `exts`.
pub fn in_classes(frame: &Frame, exts: Extensions) -> bool {
    exts.iter().all(|e| ModelClass::of_ext(e).contains(frame))
}

/// First pair of worlds in `⋃S(w)` that every sphere around `w` contains
/// together or omits together.
///
/// The least sphere meeting a set `A` meets it in one world exactly when
/// no two worlds of `A` share a layer `Sᵢ \ Sᵢ₋₁`, so the subset form of the
/// condition reduces to this pairwise test.
fn inseparable_pair(frame: &Frame, w: usize) -> Option<(usize, usize)> {
    let mut inner = 0;
    for &s in frame.spheres(w) {
        let layer = s & !inner;
        if layer.count_ones() >= 2 {
            let mut m = bits::members(layer);
            return Some((m.next().unwrap(), m.next().unwrap()));
        }
        inner = s;
    }
    None
}

impl fmt::Display for ModelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown model class `{s}`"))
    }
}
