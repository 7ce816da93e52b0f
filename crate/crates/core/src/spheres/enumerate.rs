//! Exhaustive and random generation of finite sphere models.
//!
//! Exhaustive order: world count, then the sphere-family code with world 0
//! most significant, then the valuation code with the first variable most
//! significant. Families are ordered by length, then by their spheres
//! from the innermost out.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::{self, Mask};
use crate::syntax::{Ext, Extensions};

use super::model::{Frame, SphereModel};

/// Default bound for exhaustive enumeration.
pub const EXHAUSTIVE_WORLDS: usize = 3;
/// Default number of sphere levels per world in exhaustive enumeration.
pub const EXHAUSTIVE_LEVELS: usize = 2;

/// Every nested family of at most `levels` nonempty spheres over `n`
/// worlds, in canonical order.
pub fn families(n: usize, levels: usize) -> Vec<Vec<Mask>> {
    fn extend(chain: &mut Vec<Mask>, len: usize, universe: Mask, out: &mut Vec<Vec<Mask>>) {
        if chain.len() == len {
            out.push(chain.clone());
            return;
        }
        let last = chain.last().copied().unwrap_or(0);
        for s in 1..=universe {
            if s != last && bits::is_subset(last, s) {
                chain.push(s);
                extend(chain, len, universe, out);
                chain.pop();
            }
        }
    }
    let universe = bits::full(n);
    let mut out = Vec::new();
    for len in 0..=levels.min(n) {
        extend(&mut Vec::new(), len, universe, &mut out);
    }
    out
}

/// All frames with exactly `n` worlds and at most `levels` spheres per
/// world, in family-code order.
pub fn frames_of_size(n: usize, levels: usize) -> impl Iterator<Item = Frame> {
    let fams = families(n, levels);
    let f = fams.len();
    let total = (f as u128).pow(n as u32);
    assert!(total <= u64::MAX as u128, "frame space too large to enumerate");
    (0..total as u64).map(move |code| {
        let mut digits = vec![0usize; n];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = (c % f as u64) as usize;
            c /= f as u64;
        }
        Frame::from_chains(n, digits.into_iter().map(|d| fams[d].clone()).collect())
    })
}

/// All frames with 1 to `max_worlds` worlds.
pub fn frames(max_worlds: usize, levels: usize) -> impl Iterator<Item = Frame> {
    (1..=max_worlds).flat_map(move |n| frames_of_size(n, levels))
}

/// Number of valuations of `vars` variables over `n` worlds.
pub fn valuation_count(n: usize, vars: usize) -> u64 {
    let bits_needed = n * vars;
    assert!(bits_needed < 64, "valuation space too large to enumerate");
    1u64 << bits_needed
}

/// Decodes a valuation code into one world set per variable.
pub fn valuation(n: usize, vars: usize, code: u64) -> Vec<Mask> {
    let mut out = vec![0; vars];
    let mut c = code;
    for v in out.iter_mut().rev() {
        *v = c & bits::full(n);
        c >>= n;
    }
    out
}

/// Pairs a frame with a valuation, naming worlds `w1, w2, …`.
pub fn model_of(frame: Frame, vars: &[String], vals: &[Mask]) -> SphereModel {
    let valuation: BTreeMap<String, Mask> = vars.iter().cloned().zip(vals.iter().copied()).collect();
    SphereModel::with_default_names(frame, valuation)
}

/// Every model over `vars` with at most `max_worlds` worlds and `levels`
/// spheres per world, in search order.
pub fn models(max_worlds: usize, levels: usize, vars: &[String]) -> impl Iterator<Item = SphereModel> + '_ {
    frames(max_worlds, levels).flat_map(move |frame| {
        let n = frame.len();
        (0..valuation_count(n, vars.len()))
            .map(move |code| model_of(frame.clone(), vars, &valuation(n, vars.len(), code)))
    })
}

/// A random frame with `n` worlds inside the class matching `exts`.
///
/// Some extension sets force a single world (centering or weak
/// Stalnakerian centering together with absoluteness); `n` is then
/// reduced to 1.
pub fn random_frame<R: Rng + ?Sized>(rng: &mut R, n: usize, exts: Extensions) -> Frame {
    assert!((1..=bits::MAX_BITS).contains(&n));
    let has = |e| exts.contains(e);
    let centered = has(Ext::C);
    let weak = has(Ext::W) || centered;
    let reflexive = has(Ext::T) || weak;
    let normal = has(Ext::N) || reflexive;
    let stal = has(Ext::S);

    if has(Ext::A) {
        let n = if centered || (weak && stal) { 1 } else { n };
        let full = bits::full(n);
        let family = if weak {
            vec![full]
        } else {
            let union = if reflexive { full } else { random_union(rng, n, normal) };
            random_chain(rng, union, None, false, stal)
        };
        return Frame::from_chains(n, vec![family; n]);
    }

    let full = bits::full(n);
    let common = has(Ext::U).then(|| if reflexive { full } else { random_union(rng, n, normal) });
    let spheres = (0..n)
        .map(|w| {
            let union = common.unwrap_or_else(|| {
                let mut u = random_union(rng, n, normal);
                if reflexive {
                    u |= bits::singleton(w);
                }
                u
            });
            let center = bits::contains(union, w).then_some(w);
            random_chain(rng, union, center.filter(|_| weak), centered, stal)
        })
        .collect();
    Frame::from_chains(n, spheres)
}

fn random_union<R: Rng + ?Sized>(rng: &mut R, n: usize, nonempty: bool) -> Mask {
    loop {
        let u = rng.random::<u64>() & bits::full(n);
        if u != 0 || !nonempty {
            return u;
        }
    }
}

/// A random chain with outermost sphere `union`. With `center`, that world
/// lies in every sphere; `singleton_core` makes the innermost sphere
/// exactly the center; `singleton_layers` adds one world per sphere.
fn random_chain<R: Rng + ?Sized>(
    rng: &mut R,
    union: Mask,
    center: Option<usize>,
    singleton_core: bool,
    singleton_layers: bool,
) -> Vec<Mask> {
    let mut order: Vec<usize> = bits::members(union).collect();
    order.shuffle(rng);
    if let Some(c) = center {
        let pos = order.iter().position(|&x| x == c).expect("center lies in the union");
        order.swap(0, pos);
    }
    let mut out = Vec::new();
    let mut acc = 0;
    for (i, &x) in order.iter().enumerate() {
        acc |= bits::singleton(x);
        let last = i + 1 == order.len();
        let cut = last || singleton_layers || (i == 0 && singleton_core) || rng.random_bool(0.5);
        if cut {
            out.push(acc);
        }
    }
    out
}

/// A random model with 1 to `max_worlds` worlds in the class of `exts`.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, max_worlds: usize, exts: Extensions, vars: &[String]) -> SphereModel {
    let n = rng.random_range(1..=max_worlds);
    let frame = random_frame(rng, n, exts);
    let vals: Vec<Mask> = vars.iter().map(|_| rng.random::<u64>() & frame.universe()).collect();
    model_of(frame, vars, &vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spheres::class::in_classes;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn family_counts() {
        assert_eq!(families(1, 2), vec![vec![], vec![1]]);
        assert_eq!(families(2, 2).len(), 6);
        assert_eq!(families(3, 2).len(), 20);
        // Unbounded: chains of nonempty subsets of a 3-set.
        assert_eq!(families(3, 3).len(), 20 + 6);
    }

    #[test]
    fn frame_counts() {
        assert_eq!(frames_of_size(3, 2).count(), 8000);
        assert_eq!(frames(3, 2).count(), 2 + 36 + 8000);
    }

    #[test]
    fn frame_order_puts_world_zero_first() {
        let fs: Vec<Frame> = frames_of_size(2, 2).take(7).collect();
        assert!(fs[..6].iter().all(|f| f.spheres(0).is_empty()));
        assert_eq!(fs[6].spheres(0), &[1]);
        assert!(fs[6].spheres(1).is_empty());
    }

    #[test]
    fn valuation_decoding() {
        assert_eq!(valuation(2, 2, 0b01_10), vec![0b01, 0b10]);
        assert_eq!(valuation_count(3, 2), 64);
    }

    #[test]
    fn random_frames_land_in_their_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for exts in Extensions::all_subsets() {
            for _ in 0..20 {
                let n = rng.random_range(1..=5);
                let f = random_frame(&mut rng, n, exts);
                assert!(in_classes(&f, exts), "{exts}: {f:?}");
            }
        }
    }
}
