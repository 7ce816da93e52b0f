use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::compiled::Structure;
use crate::syntax::Formula;

/// Sphere families without a valuation.
///
/// `spheres[w]` lists the nonempty spheres around world `w`, strictly
/// increasing under inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    n: usize,
    spheres: Vec<Vec<Mask>>,
}

/// Structural defects of a frame, with worlds given by index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame may have at most {max} worlds, got {0}", max = bits::MAX_BITS)]
    TooManyWorlds(usize),
    #[error("expected {expected} sphere families, got {got}")]
    FamilyCount { expected: usize, got: usize },
    #[error("sphere around world {world} mentions a world outside the frame")]
    OutOfRange { world: usize },
    #[error("spheres {a:#b} and {b:#b} around world {world} are not nested")]
    NotNested { world: usize, a: Mask, b: Mask },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("world `{0}` is listed twice")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("spheres {a} and {b} around world `{world}` are not nested")]
    NotNested { world: String, a: String, b: String },
    #[error("valuation mentions a world outside the model")]
    OutOfRange,
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("unsupported file format version {0}")]
    Format(u32),
    #[error("malformed model file: {0}")]
    Json(String),
}

impl Structure for Frame {
    fn top(&self) -> Mask {
        self.universe()
    }

    fn cf(&self, a: Mask, b: Mask) -> Mask {
        Frame::cf(self, a, b)
    }
}

impl Frame {
    /// Builds a frame from raw families, dropping empty and repeated
    /// spheres. Fails if some family is not a chain.
    pub fn new(n: usize, families: Vec<Vec<Mask>>) -> Result<Frame, FrameError> {
        if n > bits::MAX_BITS {
            return Err(FrameError::TooManyWorlds(n));
        }
        if families.len() != n {
            return Err(FrameError::FamilyCount {
                expected: n,
                got: families.len(),
            });
        }
        let universe = bits::full(n);
        let mut spheres = Vec::with_capacity(n);
        for (w, fam) in families.into_iter().enumerate() {
            let mut fam: Vec<Mask> = fam.into_iter().filter(|&s| s != 0).collect();
            if fam.iter().any(|&s| !bits::is_subset(s, universe)) {
                return Err(FrameError::OutOfRange { world: w });
            }
            for (i, &a) in fam.iter().enumerate() {
                for &b in &fam[i + 1..] {
                    if !bits::is_subset(a, b) && !bits::is_subset(b, a) {
                        return Err(FrameError::NotNested { world: w, a, b });
                    }
                }
            }
            fam.sort_by_key(|s| s.count_ones());
            fam.dedup();
            spheres.push(fam);
        }
        Ok(Frame { n, spheres })
    }

    /// Skips validation; the caller guarantees sorted, nonempty, nested
    /// families.
    pub(crate) fn from_chains(n: usize, spheres: Vec<Vec<Mask>>) -> Frame {
        debug_assert_eq!(spheres.len(), n);
        Frame { n, spheres }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn universe(&self) -> Mask {
        bits::full(self.n)
    }

    /// Spheres around `w`, smallest first.
    pub fn spheres(&self, w: usize) -> &[Mask] {
        &self.spheres[w]
    }

    /// `⋃S(w)`, which is the outermost sphere.
    pub fn union(&self, w: usize) -> Mask {
        self.spheres[w].last().copied().unwrap_or(0)
    }

    /// Worlds where `A ⊡→ B` holds, given `A = v(φ)` and `B = v(ψ)`.
    pub fn cf(&self, a: Mask, b: Mask) -> Mask {
        let mut out = 0;
        for w in 0..self.n {
            let fam = &self.spheres[w];
            // Nesting makes the least sphere meeting `a` decisive: larger
            // spheres only add more `a`-worlds.
            let holds = match fam.iter().find(|&&s| s & a != 0) {
                None => true,
                Some(&s) => bits::is_subset(s & a, b),
            };
            if holds {
                out |= bits::singleton(w);
            }
        }
        out
    }

    /// Worlds where `□φ` holds, given `A = v(φ)`: those with `⋃S(w) ⊆ A`.
    pub fn box_of(&self, a: Mask) -> Mask {
        let mut out = 0;
        for w in 0..self.n {
            if bits::is_subset(self.union(w), a) {
                out |= bits::singleton(w);
            }
        }
        out
    }
}

/// A finite sphere model: named worlds, a [`Frame`] and a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereModel {
    worlds: Vec<String>,
    frame: Frame,
    valuation: BTreeMap<String, Mask>,
}

impl SphereModel {
    pub fn new(
        worlds: Vec<String>,
        frame: Frame,
        valuation: BTreeMap<String, Mask>,
    ) -> Result<SphereModel, ModelError> {
        if worlds.len() != frame.len() {
            return Err(FrameError::FamilyCount {
                expected: worlds.len(),
                got: frame.len(),
            }
            .into());
        }
        for (i, w) in worlds.iter().enumerate() {
            if worlds[..i].contains(w) {
                return Err(ModelError::DuplicateWorld(w.clone()));
            }
        }
        let universe = frame.universe();
        if valuation.values().any(|&m| !bits::is_subset(m, universe)) {
            return Err(ModelError::OutOfRange);
        }
        Ok(SphereModel {
            worlds,
            frame,
            valuation,
        })
    }

    /// Worlds named `w1, w2, …`.
    pub fn with_default_names(frame: Frame, valuation: BTreeMap<String, Mask>) -> SphereModel {
        let worlds = (1..=frame.len()).map(|i| format!("w{i}")).collect();
        SphereModel::new(worlds, frame, valuation).expect("default names are distinct")
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn universe(&self) -> Mask {
        self.frame.universe()
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn valuation(&self) -> &BTreeMap<String, Mask> {
        &self.valuation
    }

    /// `v(p)`; unlisted variables are false everywhere.
    pub fn value(&self, var: &str) -> Mask {
        self.valuation.get(var).copied().unwrap_or(0)
    }

    /// `v(φ)` as a world set.
    pub fn eval(&self, f: &Formula) -> Mask {
        match f {
            Formula::Var(v) => self.value(v),
            Formula::Bot => 0,
            Formula::Top => self.universe(),
            Formula::And(l, r) => self.eval(l) & self.eval(r),
            Formula::Or(l, r) => self.eval(l) | self.eval(r),
            Formula::Imp(l, r) => (!self.eval(l) | self.eval(r)) & self.universe(),
            Formula::Cf(l, r) => self.frame.cf(self.eval(l), self.eval(r)),
        }
    }

    /// `M, w ⊩ φ`.
    pub fn satisfies(&self, w: usize, f: &Formula) -> bool {
        bits::contains(self.eval(f), w)
    }

    /// Formats a world set as `{w1, w2}`, or `∅`.
    pub fn show_set(&self, set: Mask) -> String {
        if set == 0 {
            return "∅".to_string();
        }
        let names: Vec<&str> = bits::members(set).map(|i| self.worlds[i].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn names_of(&self, set: Mask) -> Vec<String> {
        bits::members(set).map(|i| self.worlds[i].clone()).collect()
    }

    pub fn from_json(text: &str) -> Result<SphereModel, ModelError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        file.into_model()
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile {
            format: Some(1),
            worlds: self.worlds.clone(),
            spheres: (0..self.len())
                .map(|w| {
                    let fam = self.frame.spheres(w).iter().map(|&s| self.names_of(s)).collect();
                    (self.worlds[w].clone(), fam)
                })
                .collect(),
            valuation: self
                .valuation
                .iter()
                .map(|(k, &m)| (k.clone(), self.names_of(m)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }
}

impl fmt::Display for SphereModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "worlds: {}", self.show_set(self.universe()))?;
        for w in 0..self.len() {
            let fam: Vec<String> = self.frame.spheres(w).iter().map(|&s| self.show_set(s)).collect();
            writeln!(f, "S({}) = {{{}}}", self.worlds[w], fam.join(", "))?;
        }
        for (var, &m) in &self.valuation {
            writeln!(f, "v({var}) = {}", self.show_set(m))?;
        }
        Ok(())
    }
}

/// On-disk form of a sphere model. Sphere structures omit `valuation`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub worlds: Vec<String>,
    #[serde(default)]
    pub spheres: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl ModelFile {
    pub fn into_model(self) -> Result<SphereModel, ModelError> {
        if let Some(v) = self.format.filter(|&v| v != 1) {
            return Err(ModelError::Format(v));
        }
        let n = self.worlds.len();
        if n > bits::MAX_BITS {
            return Err(FrameError::TooManyWorlds(n).into());
        }
        let index = |name: &str| {
            self.worlds
                .iter()
                .position(|w| w == name)
                .ok_or_else(|| ModelError::UnknownWorld(name.to_string()))
        };
        let to_mask = |names: &[String]| -> Result<Mask, ModelError> {
            names.iter().try_fold(0, |acc, w| Ok(acc | bits::singleton(index(w)?)))
        };
        let mut families = vec![Vec::new(); n];
        for (w, fam) in &self.spheres {
            let wi = index(w)?;
            let masks: Vec<Mask> = fam.iter().map(|s| to_mask(s)).collect::<Result<_, _>>()?;
            families[wi] = masks;
        }
        let show = |m: Mask| {
            let names: Vec<&str> = bits::members(m).map(|i| self.worlds[i].as_str()).collect();
            format!("{{{}}}", names.join(", "))
        };
        let frame = Frame::new(n, families).map_err(|e| match e {
            FrameError::NotNested { world, a, b } => ModelError::NotNested {
                world: self.worlds[world].clone(),
                a: show(a),
                b: show(b),
            },
            other => other.into(),
        })?;
        let valuation = self
            .valuation
            .iter()
            .map(|(k, ws)| Ok((k.clone(), to_mask(ws)?)))
            .collect::<Result<_, ModelError>>()?;
        SphereModel::new(self.worlds, frame, valuation)
    }
}
