use std::fmt;

use crate::bits::{self, Mask};

use super::alpha::AlphaModel;
use super::sphere::SphereStructure;

/// Where a point map fails to be a morphism. Continuity is vacuous for
/// finite discrete spaces, so only the forward and lifting conditions
/// can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    /// The map is not total or leaves the target.
    NotAMap,
    /// `y` is selected for `φ⁻¹[A']` at `x`, but `φ(y)` is not selected
    /// for `A'` at `φ(x)`.
    Forward { target_set: Mask, x: usize, y: usize },
    /// `y'` is selected for `A'` at `φ(x)` but has no selected preimage.
    Lifting { target_set: Mask, x: usize, y: usize },
}

impl fmt::Display for MorphismFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismFailure::NotAMap => f.write_str("not a map between the point sets"),
            MorphismFailure::Forward { target_set, x, y } => {
                write!(f, "forward condition fails at A'={target_set:#b}, x={x}, y={y}")
            }
            MorphismFailure::Lifting { target_set, x, y } => {
                write!(f, "lifting condition fails at A'={target_set:#b}, x={x}, y'={y}")
            }
        }
    }
}

fn preimage(phi: &[usize], a: Mask) -> Mask {
    phi.iter()
        .enumerate()
        .filter(|&(_, &t)| bits::contains(a, t))
        .fold(0, |acc, (i, _)| acc | bits::singleton(i))
}

fn check_map(n: usize, m: usize, phi: &[usize]) -> Result<(), MorphismFailure> {
    if phi.len() != n || phi.iter().any(|&t| t >= m) {
        return Err(MorphismFailure::NotAMap);
    }
    Ok(())
}

/// Checks the α-morphism conditions for `φ : S → S'`:
/// `y ∈ f(φ⁻¹[A'], x)` implies `φ(y) ∈ f'(A', φ(x))`, and every
/// `y' ∈ f'(A', φ(x))` is `φ(y)` for some `y ∈ f(φ⁻¹[A'], x)`.
pub fn is_alpha_morphism(s: &AlphaModel, t: &AlphaModel, phi: &[usize]) -> Result<(), MorphismFailure> {
    check_map(s.len(), t.len(), phi)?;
    for a2 in t.subsets() {
        let pre = preimage(phi, a2);
        for x in 0..s.len() {
            let sel = s.f(pre, x);
            let target = t.f(a2, phi[x]);
            if let Some(y) = bits::members(sel).find(|&y| !bits::contains(target, phi[y])) {
                return Err(MorphismFailure::Forward { target_set: a2, x, y });
            }
            let image = bits::members(sel).fold(0, |acc, y| acc | bits::singleton(phi[y]));
            if let Some(y) = bits::members(target & !image).next() {
                return Err(MorphismFailure::Lifting { target_set: a2, x, y });
            }
        }
    }
    Ok(())
}

/// Checks the sphere-morphism conditions for `φ : T → T'`, stated with
/// `Σ` directly rather than through the selection functions.
pub fn is_sphere_morphism(s: &SphereStructure, t: &SphereStructure, phi: &[usize]) -> Result<(), MorphismFailure> {
    check_map(s.len(), t.len(), phi)?;
    for a2 in t.subsets() {
        let pre = preimage(phi, a2);
        for x in 0..s.len() {
            let sigma_x = s.sigma(pre, x);
            let sigma_t = t.sigma(a2, phi[x]);
            if let Some(y) = bits::members(pre & sigma_x).find(|&y| !bits::contains(sigma_t, phi[y])) {
                return Err(MorphismFailure::Forward { target_set: a2, x, y });
            }
            for y2 in bits::members(a2 & sigma_t) {
                if !bits::members(sigma_x).any(|y| phi[y] == y2) {
                    return Err(MorphismFailure::Lifting {
                        target_set: a2,
                        x,
                        y: y2,
                    });
                }
            }
        }
    }
    Ok(())
}
