use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::compiled::Structure;
use crate::spheres::FrameError;

/// Largest point set an [`AlphaModel`] may have. Exhaustive checks visit
/// every pair of subsets, so the cost grows as `4^n`.
pub const MAX_POINTS: usize = 8;

/// A finite α-model: points and a selection function `f(A, x)`, stored
/// densely over every subset `A` and point `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaModel {
    points: Vec<String>,
    f: Vec<Mask>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("at most {max} points are supported, got {0}", max = MAX_POINTS)]
    TooManyPoints(usize),
    #[error("point `{0}` is listed twice")]
    DuplicatePoint(String),
    #[error("selection table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("f({subset:#b}, {point}) = {value:#b} mentions a point outside the model")]
    OutOfRange { subset: Mask, point: usize, value: Mask },
    #[error("no entry for f({subset:#b}, {point})")]
    MissingEntry { subset: Mask, point: usize },
    #[error("bad table key `{0}`; expected `subset,point`")]
    BadKey(String),
    #[error("bad subset mask `{0}`")]
    BadMask(String),
    #[error("spheres {a:#b} and {b:#b} around point {point} are not nested")]
    NotNested { point: usize, a: Mask, b: Mask },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("unsupported file format version {0}")]
    Format(u32),
    #[error("malformed file: {0}")]
    Json(String),
}

/// The first α-axiom to fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaAxiom {
    A1,
    A2,
    A3,
}

impl fmt::Display for AlphaAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlphaAxiom::A1 => "α1",
            AlphaAxiom::A2 => "α2",
            AlphaAxiom::A3 => "α3",
        })
    }
}

/// Witness triple `(A, B, x)` for a failed α-axiom. For α1, `b` is unused
/// and equals `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaFailure {
    pub axiom: AlphaAxiom,
    pub a: Mask,
    pub b: Mask,
    pub x: usize,
}

impl fmt::Display for AlphaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.axiom {
            AlphaAxiom::A1 => write!(f, "α1 fails at A={:#b}, x={}", self.a, self.x),
            ax => write!(f, "{ax} fails at A={:#b}, B={:#b}, x={}", self.a, self.b, self.x),
        }
    }
}

impl AlphaModel {
    /// Builds a model from a table indexed by `subset * n + point`.
    pub fn new(points: Vec<String>, f: Vec<Mask>) -> Result<AlphaModel, DualityError> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(DualityError::TooManyPoints(n));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(DualityError::DuplicatePoint(p.clone()));
            }
        }
        let expected = n << n;
        if f.len() != expected {
            return Err(DualityError::TableSize { expected, got: f.len() });
        }
        let full = bits::full(n);
        if let Some(i) = f.iter().position(|&v| !bits::is_subset(v, full)) {
            return Err(DualityError::OutOfRange {
                subset: (i / n) as Mask,
                point: i % n,
                value: f[i],
            });
        }
        Ok(AlphaModel { points, f })
    }

    /// Builds a model from `f(A, x)`, with points `x0, x1, …`.
    pub fn from_fn(n: usize, f: impl Fn(Mask, usize) -> Mask) -> AlphaModel {
        assert!(n <= MAX_POINTS);
        let full = bits::full(n);
        let table = bits::all_subsets(n)
            .flat_map(|a| (0..n).map(move |x| (a, x)))
            .map(|(a, x)| f(a, x) & full)
            .collect();
        AlphaModel {
            points: default_names(n),
            f: table,
        }
    }

    /// Replaces the point names.
    pub fn with_names(self, points: Vec<String>) -> Result<AlphaModel, DualityError> {
        AlphaModel::new(points, self.f)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn universe(&self) -> Mask {
        bits::full(self.len())
    }

    pub fn subsets(&self) -> impl Iterator<Item = Mask> {
        bits::all_subsets(self.len())
    }

    pub fn f(&self, a: Mask, x: usize) -> Mask {
        self.f[a as usize * self.len() + x]
    }

    /// Copy with a single entry of `f` replaced.
    pub fn with_entry(&self, a: Mask, x: usize, value: Mask) -> AlphaModel {
        let mut out = self.clone();
        let n = self.len();
        out.f[a as usize * n + x] = value & self.universe();
        out
    }

    /// `A ⊡→ B = {x : f(A, x) ⊆ B}`
    pub fn cf(&self, a: Mask, b: Mask) -> Mask {
        (0..self.len())
            .filter(|&x| bits::is_subset(self.f(a, x), b))
            .fold(0, |acc, x| acc | bits::singleton(x))
    }

    /// Checks α1 to α3 over every `(A, B, x)`, reporting the first failure.
    /// The topological axioms hold trivially for finite discrete spaces.
    pub fn check_axioms(&self) -> Result<(), AlphaFailure> {
        let n = self.len();
        let fail = |axiom, a, b, x| Err(AlphaFailure { axiom, a, b, x });
        for x in 0..n {
            for a in self.subsets() {
                if !bits::is_subset(self.f(a, x), a) {
                    return fail(AlphaAxiom::A1, a, a, x);
                }
            }
        }
        for x in 0..n {
            for a in self.subsets() {
                let fa = self.f(a, x);
                for b in self.subsets() {
                    let fb = self.f(b, x);
                    if bits::is_subset(fa, b) && bits::is_subset(fb, a) && fa != fb {
                        return fail(AlphaAxiom::A2, a, b, x);
                    }
                }
            }
        }
        for x in 0..n {
            for a in self.subsets() {
                for b in self.subsets() {
                    let fu = self.f(a | b, x);
                    if !bits::is_subset(fu, a) && !bits::is_subset(fu, b) && fu != self.f(a, x) | self.f(b, x) {
                        return fail(AlphaAxiom::A3, a, b, x);
                    }
                }
            }
        }
        Ok(())
    }

    /// α1-model: `f(A, x) = {x}` whenever `x ∈ A`.
    pub fn check_alpha1(&self) -> bool {
        (0..self.len()).all(|x| {
            self.subsets()
                .filter(|&a| bits::contains(a, x))
                .all(|a| self.f(a, x) == bits::singleton(x))
        })
    }

    /// α2-model: an α1-model where every `f(A, x)` has at most one
    /// element.
    pub fn check_alpha2(&self) -> bool {
        self.check_alpha1() && self.f.iter().all(|v| v.count_ones() <= 1)
    }

    pub fn show_set(&self, set: Mask) -> String {
        let names: Vec<&str> = bits::members(set).map(|i| self.points[i].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn from_json(text: &str) -> Result<AlphaModel, DualityError> {
        let file: AlphaFile = serde_json::from_str(text).map_err(|e| DualityError::Json(e.to_string()))?;
        file.into_model()
    }

    pub fn to_file(&self) -> AlphaFile {
        let n = self.len();
        let f = self
            .subsets()
            .flat_map(|a| (0..n).map(move |x| (a, x)))
            .map(|(a, x)| (format!("{a},{x}"), MaskValue::Text(self.f(a, x).to_string())))
            .collect();
        AlphaFile {
            format: Some(1),
            points: self.points.clone(),
            f,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("α-model serializes")
    }
}

impl Structure for AlphaModel {
    fn top(&self) -> Mask {
        self.universe()
    }

    fn cf(&self, a: Mask, b: Mask) -> Mask {
        AlphaModel::cf(self, a, b)
    }
}

impl fmt::Display for AlphaModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points: {}", self.show_set(self.universe()))?;
        for a in self.subsets() {
            let row: Vec<String> = (0..self.len())
                .map(|x| format!("{}↦{}", self.points[x], self.show_set(self.f(a, x))))
                .collect();
            writeln!(f, "f({}, ·): {}", self.show_set(a), row.join("  "))?;
        }
        Ok(())
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// A subset mask written either as a JSON number or a decimal string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaskValue {
    Number(Mask),
    Text(String),
}

impl MaskValue {
    fn mask(&self) -> Result<Mask, DualityError> {
        match self {
            MaskValue::Number(m) => Ok(*m),
            MaskValue::Text(s) => s.trim().parse().map_err(|_| DualityError::BadMask(s.clone())),
        }
    }
}

/// On-disk form: `f` maps `"subset,point"` to a subset, both subsets as
/// bit masks over the point list.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub points: Vec<String>,
    pub f: BTreeMap<String, MaskValue>,
}

impl AlphaFile {
    pub fn into_model(self) -> Result<AlphaModel, DualityError> {
        if let Some(v) = self.format.filter(|&v| v != 1) {
            return Err(DualityError::Format(v));
        }
        let n = self.points.len();
        if n > MAX_POINTS {
            return Err(DualityError::TooManyPoints(n));
        }
        let mut table: Vec<Option<Mask>> = vec![None; n << n];
        for (key, value) in &self.f {
            let bad = || DualityError::BadKey(key.clone());
            let (a, x) = key.split_once(',').ok_or_else(bad)?;
            let a: Mask = a.trim().parse().map_err(|_| bad())?;
            let x: usize = x.trim().parse().map_err(|_| bad())?;
            if x >= n || !bits::is_subset(a, bits::full(n)) {
                return Err(bad());
            }
            table[a as usize * n + x] = Some(value.mask()?);
        }
        let f = table
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or(DualityError::MissingEntry {
                    subset: (i / n) as Mask,
                    point: i % n,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        AlphaModel::new(self.points, f)
    }
}
