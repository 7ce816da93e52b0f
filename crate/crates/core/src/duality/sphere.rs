use std::collections::BTreeMap;
use std::fmt;

use crate::bits::{self, Mask};
use crate::compiled::Structure;
use crate::spheres::{Frame, ModelError, SphereModel};

use super::alpha::{default_names, AlphaModel, DualityError, MAX_POINTS};

/// Points with a nested family of spheres around each: a sphere model
/// without a valuation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SphereStructure {
    points: Vec<String>,
    frame: Frame,
}

/// Two spheres around `point` neither of which contains the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereFailure {
    pub point: usize,
    pub a: Mask,
    pub b: Mask,
}

impl fmt::Display for SphereFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "spheres {:#b} and {:#b} around point {} are not nested",
            self.a, self.b, self.point
        )
    }
}

/// Checks that every family is nested. The remaining sphere axioms hold
/// trivially for finite discrete spaces: the least sphere meeting a set
/// always exists.
pub fn check_sphere_axioms(families: &[Vec<Mask>]) -> Result<(), SphereFailure> {
    for (point, fam) in families.iter().enumerate() {
        for (i, &a) in fam.iter().enumerate() {
            if let Some(&b) = fam[i + 1..]
                .iter()
                .find(|&&b| !bits::is_subset(a, b) && !bits::is_subset(b, a))
            {
                return Err(SphereFailure { point, a, b });
            }
        }
    }
    Ok(())
}

impl SphereStructure {
    /// Empty spheres are dropped; families must be nested.
    pub fn new(points: Vec<String>, families: Vec<Vec<Mask>>) -> Result<SphereStructure, DualityError> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(DualityError::TooManyPoints(n));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(DualityError::DuplicatePoint(p.clone()));
            }
        }
        if let Err(e) = check_sphere_axioms(&families) {
            return Err(DualityError::NotNested {
                point: e.point,
                a: e.a,
                b: e.b,
            });
        }
        let frame = Frame::new(n, families)?;
        Ok(SphereStructure { points, frame })
    }

    pub fn from_frame(frame: Frame) -> SphereStructure {
        SphereStructure {
            points: default_names(frame.len()),
            frame,
        }
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

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn subsets(&self) -> impl Iterator<Item = Mask> {
        bits::all_subsets(self.len())
    }

    pub fn spheres(&self, x: usize) -> &[Mask] {
        self.frame.spheres(x)
    }

    /// `Σ(A, x)`: the least sphere around `x` meeting `A`, or `∅`.
    pub fn sigma(&self, a: Mask, x: usize) -> Mask {
        self.spheres(x).iter().copied().find(|&s| s & a != 0).unwrap_or(0)
    }

    /// Attaches an empty valuation, keeping point names.
    pub fn to_model(&self) -> SphereModel {
        SphereModel::new(self.points.clone(), self.frame.clone(), BTreeMap::new()).expect("names are distinct")
    }

    /// Reads a sphere-model file, ignoring any valuation.
    pub fn from_json(text: &str) -> Result<SphereStructure, ModelError> {
        let m = SphereModel::from_json(text)?;
        Ok(SphereStructure {
            points: m.worlds().to_vec(),
            frame: m.frame().clone(),
        })
    }

    pub fn to_json(&self) -> String {
        self.to_model().to_json()
    }
}

impl Structure for SphereStructure {
    fn top(&self) -> Mask {
        self.frame.universe()
    }

    fn cf(&self, a: Mask, b: Mask) -> Mask {
        self.frame.cf(a, b)
    }
}

impl fmt::Display for SphereStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.to_model();
        for x in 0..self.len() {
            let fam: Vec<String> = self.spheres(x).iter().map(|&s| m.show_set(s)).collect();
            writeln!(f, "σ({}) = {{{}}}", self.points[x], fam.join(", "))?;
        }
        Ok(())
    }
}

/// The relation `<_x` over all subsets, for one point `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPreorder {
    n: usize,
    point: usize,
    rel: Vec<bool>,
}

/// A pair (or triple, for transitivity) where `<_x` fails to be a total
/// preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreorderFailure {
    Incomparable(Mask, Mask),
    Intransitive(Mask, Mask, Mask),
}

impl PointPreorder {
    pub fn point(&self) -> usize {
        self.point
    }

    /// `A <_x B`
    pub fn holds(&self, a: Mask, b: Mask) -> bool {
        self.rel[(a as usize) << self.n | b as usize]
    }

    /// Totality (which gives reflexivity) and transitivity.
    pub fn check(&self) -> Result<(), PreorderFailure> {
        let sets = || bits::all_subsets(self.n);
        for a in sets() {
            for b in sets() {
                if !self.holds(a, b) && !self.holds(b, a) {
                    return Err(PreorderFailure::Incomparable(a, b));
                }
            }
        }
        for a in sets() {
            for b in sets().filter(|&b| self.holds(a, b)) {
                if let Some(c) = sets().find(|&c| self.holds(b, c) && !self.holds(a, c)) {
                    return Err(PreorderFailure::Intransitive(a, b, c));
                }
            }
        }
        Ok(())
    }
}

/// `A <_x B` iff `f(B, x) = ∅` or `∅ ≠ f(A, x) ⊆ f(A ∪ B, x)`.
pub fn preorder(s: &AlphaModel, x: usize) -> PointPreorder {
    let n = s.len();
    let rel = s
        .subsets()
        .flat_map(|a| s.subsets().map(move |b| (a, b)))
        .map(|(a, b)| {
            let fa = s.f(a, x);
            s.f(b, x) == 0 || (fa != 0 && bits::is_subset(fa, s.f(a | b, x)))
        })
        .collect();
    PointPreorder { n, point: x, rel }
}

/// `σ_f(x) = {⋃_{A <_x B} f(A, x) : B}`, with `∅` dropped.
///
/// Fails only if `s` is not an α-model and the sets are not nested.
pub fn sphere_from_alpha(s: &AlphaModel) -> Result<SphereStructure, DualityError> {
    let families = (0..s.len())
        .map(|x| {
            let pre = preorder(s, x);
            s.subsets()
                .map(|b| {
                    s.subsets()
                        .filter(|&a| pre.holds(a, b))
                        .fold(0, |acc, a| acc | s.f(a, x))
                })
                .collect()
        })
        .collect();
    SphereStructure::new(s.points().to_vec(), families)
}

/// `f_σ(A, x) = A ∩ Σ(A, x)`.
pub fn alpha_from_sphere(t: &SphereStructure) -> AlphaModel {
    AlphaModel::from_fn(t.len(), |a, x| a & t.sigma(a, x))
        .with_names(t.points().to_vec())
        .expect("names come from a valid structure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spheres::enumerate::frames;

    fn two_world() -> SphereStructure {
        // S(w1) = {{w2}}, S(w2) = {{w2}, {w1, w2}}
        SphereStructure::new(vec!["w1".into(), "w2".into()], vec![vec![0b10], vec![0b10, 0b11]]).unwrap()
    }

    #[test]
    fn centered_sphere_selects_the_center() {
        let t = SphereStructure::new(vec!["x".into(), "y".into()], vec![vec![0b01], vec![0b10, 0b11]]).unwrap();
        let s = alpha_from_sphere(&t);
        assert_eq!(s.f(0b11, 0), 0b01);
        assert_eq!(s.f(0b01, 0), 0b01);
        assert_eq!(s.f(0b10, 0), 0);
    }

    #[test]
    fn two_world_structure_selection() {
        let s = alpha_from_sphere(&two_world());
        assert_eq!(s.f(0b01, 0), 0);
        assert_eq!(s.f(0b10, 0), 0b10);
        assert_eq!(s.f(0b11, 1), 0b10);
        assert_eq!(s.f(0b01, 1), 0b01);
    }

    #[test]
    fn non_nested_families_are_rejected() {
        let e = check_sphere_axioms(&[vec![0b01, 0b10]]).unwrap_err();
        assert_eq!((e.point, e.a, e.b), (0, 0b01, 0b10));
        assert!(SphereStructure::new(vec!["x".into(), "y".into()], vec![vec![1, 2], vec![]]).is_err());
    }

    #[test]
    fn empty_selection_gives_no_spheres() {
        let s = AlphaModel::from_fn(2, |_, _| 0);
        let t = sphere_from_alpha(&s).unwrap();
        assert!(t.spheres(0).is_empty() && t.spheres(1).is_empty());
    }

    #[test]
    fn preorder_basics_on_all_small_frames() {
        for frame in frames(3, 2) {
            let s = alpha_from_sphere(&SphereStructure::from_frame(frame));
            for x in 0..s.len() {
                let pre = preorder(&s, x);
                assert_eq!(pre.check(), Ok(()));
                for a in s.subsets() {
                    assert!(pre.holds(a, a));
                    for b in s.subsets() {
                        if s.f(b, x) == 0 || a & s.f(b, x) != 0 {
                            assert!(pre.holds(a, b));
                        }
                        if pre.holds(a, b) {
                            assert!(bits::is_subset(b & s.f(a, x), s.f(b, x)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cf_agrees_between_sphere_and_selection_forms() {
        for frame in frames(3, 2) {
            let t = SphereStructure::from_frame(frame);
            let s = alpha_from_sphere(&t);
            for a in s.subsets() {
                for b in s.subsets() {
                    assert_eq!(t.cf(a, b), s.cf(a, b));
                }
            }
        }
    }

    #[test]
    fn selection_round_trips_through_spheres() {
        for frame in frames(3, 3) {
            let s = alpha_from_sphere(&SphereStructure::from_frame(frame));
            assert_eq!(s.check_axioms(), Ok(()));
            let back = alpha_from_sphere(&sphere_from_alpha(&s).unwrap());
            assert_eq!(back, s);
        }
    }

    #[test]
    fn restriction_lemma_on_small_frames() {
        for frame in frames(3, 2) {
            let s = alpha_from_sphere(&SphereStructure::from_frame(frame));
            for x in 0..s.len() {
                for b in s.subsets() {
                    let fb = s.f(b, x);
                    for a in s.subsets().filter(|&a| bits::is_subset(a, b)) {
                        if a & fb != 0 {
                            assert_eq!(s.f(a, x), a & fb);
                        } else if fb == 0 {
                            assert_eq!(s.f(a, x), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_reuses_the_model_format() {
        let t = two_world();
        let back = SphereStructure::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
