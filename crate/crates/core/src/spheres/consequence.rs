use std::collections::BTreeMap;

use crate::bits::{self, Mask};
use crate::syntax::Formula;
use crate::Verdict;

use super::model::{Frame, SphereModel};

/// `R_S = {(w, u) : u ∈ ⋃S(w)}`, sorted.
pub fn accessibility(frame: &Frame) -> Vec<(usize, usize)> {
    (0..frame.len())
        .flat_map(|w| bits::members(frame.union(w)).map(move |u| (w, u)))
        .collect()
}

/// Worlds reachable from `x` in zero or more `R_S` steps.
pub fn reach(frame: &Frame, x: Mask) -> Mask {
    let mut seen = x;
    let mut frontier = x;
    while frontier != 0 {
        let next = bits::members(frontier).fold(0, |acc, w| acc | frame.union(w));
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// The submodel generated by `x`: worlds reachable from `x`, in their
/// original order and with their original names.
pub fn generated_submodel(model: &SphereModel, x: Mask) -> SphereModel {
    let keep = reach(model.frame(), x & model.universe());
    let worlds = model.names_of(keep);
    let spheres = bits::members(keep)
        .map(|w| {
            model
                .frame()
                .spheres(w)
                .iter()
                .map(|&s| bits::compress(s, keep))
                .collect()
        })
        .collect();
    let frame = Frame::from_chains(worlds.len(), spheres);
    let valuation: BTreeMap<String, Mask> = model
        .valuation()
        .iter()
        .map(|(k, &m)| (k.clone(), bits::compress(m, keep)))
        .collect();
    SphereModel::new(worlds, frame, valuation).expect("restriction of a valid model")
}

/// Worlds satisfying every formula in `gamma`.
fn premises_hold(model: &SphereModel, gamma: &[Formula]) -> Mask {
    gamma.iter().fold(model.universe(), |acc, g| acc & model.eval(g))
}

/// `Γ ⊨_l φ` over `models`. The witness is the first `(model, world)`
/// where every premise holds and `φ` fails.
pub fn local_consequence(models: &[SphereModel], gamma: &[Formula], phi: &Formula) -> Verdict<(usize, usize)> {
    for (i, m) in models.iter().enumerate() {
        let bad = premises_hold(m, gamma) & !m.eval(phi);
        if bad != 0 {
            return Verdict::Fails((i, bad.trailing_zeros() as usize));
        }
    }
    Verdict::Holds
}

/// `Γ ⊨_g φ` over `models`. The witness is the first model that satisfies
/// every premise everywhere but not `φ`.
pub fn global_consequence(models: &[SphereModel], gamma: &[Formula], phi: &Formula) -> Verdict<usize> {
    for (i, m) in models.iter().enumerate() {
        let u = m.universe();
        if premises_hold(m, gamma) == u && m.eval(phi) != u {
            return Verdict::Fails(i);
        }
    }
    Verdict::Holds
}

/// `{□ⁿγ : γ ∈ Γ, n ≤ n0}`, grouped by premise.
pub fn reduce_global_to_local(gamma: &[Formula], n0: usize) -> Vec<Formula> {
    gamma
        .iter()
        .flat_map(|g| (0..=n0).map(move |n| g.clone().box_iterate(n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn two_world() -> SphereModel {
        SphereModel::from_json(
            r#"{"worlds":["w1","w2"],
                "spheres":{"w1":[["w2"]],"w2":[["w2"],["w1","w2"]]},
                "valuation":{"p":["w1"]}}"#,
        )
        .unwrap()
    }

    #[test]
    fn accessibility_of_two_world_model() {
        let m = two_world();
        assert_eq!(accessibility(m.frame()), vec![(0, 1), (1, 0), (1, 1)]);
        assert_eq!(reach(m.frame(), 0b10), 0b11);
        assert_eq!(reach(m.frame(), 0), 0);
    }

    #[test]
    fn submodel_of_whole_space_is_identity() {
        let m = two_world();
        assert_eq!(generated_submodel(&m, m.universe()), m);
        assert_eq!(generated_submodel(&m, 0b10), m);
    }

    #[test]
    fn submodel_renumbers_and_keeps_names() {
        let m = SphereModel::from_json(
            r#"{"worlds":["a","b","c"],
                "spheres":{"a":[["a","b"]],"c":[["c"]]},
                "valuation":{"p":["c"]}}"#,
        )
        .unwrap();
        let sub = generated_submodel(&m, 0b100);
        assert_eq!(sub.worlds(), ["c"]);
        assert_eq!(sub.frame().spheres(0), &[1]);
        assert_eq!(sub.value("p"), 1);
    }

    #[test]
    fn p_does_not_locally_entail_box_p() {
        let m = two_world();
        let p = parse("p").unwrap();
        let bp = parse("box p").unwrap();
        assert_eq!(
            local_consequence(std::slice::from_ref(&m), std::slice::from_ref(&p), &bp),
            Verdict::Fails((0, 0))
        );
        // p fails at w2, so the premise does not hold globally.
        assert_eq!(global_consequence(&[m], &[p], &bp), Verdict::Holds);
    }

    #[test]
    fn reduction_lists_box_powers() {
        let p = parse("p").unwrap();
        assert_eq!(reduce_global_to_local(std::slice::from_ref(&p), 0), vec![p.clone()]);
        assert_eq!(
            reduce_global_to_local(std::slice::from_ref(&p), 2),
            vec![p.clone(), Formula::boxed(p.clone()), Formula::boxed(Formula::boxed(p))]
        );
    }
}
