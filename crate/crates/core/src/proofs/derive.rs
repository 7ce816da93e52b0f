//! Generated derivations of the rules `DWC(n)`.

use crate::syntax::{AxiomId, Formula, Subst};

use super::calculus::{Basis, Calculus};
use super::check::dwc_conclusion;
use super::proof::{Justification, Proof};

fn l4_sub(gamma: &Formula, a: &Formula, b: &Formula) -> Subst {
    [
        ("phi".to_string(), gamma.clone()),
        ("psi".to_string(), a.clone()),
        ("chi".to_string(), b.clone()),
    ]
    .into()
}

fn l4_instance(gamma: &Formula, a: &Formula, b: &Formula) -> Formula {
    AxiomId::L4.schema(Default::default()).substitute(&l4_sub(gamma, a, b))
}

/// A premise-free proof of `γ ⊡→ 1`.
///
/// With the conditional basis the chain runs through L1, rule C and L4:
/// from `γ ⊡→ γ` to `γ ⊡→ (γ ∧ 1)`, then split by L4. With the Lewis
/// basis it applies `DWC(1)` to `γ → 1` and discharges with L1.
pub fn derive_dwc0(c: &Calculus, gamma: &Formula) -> Proof {
    let g = gamma.clone();
    let cf = Formula::cf;
    let imp = Formula::imp;
    let top = Formula::Top;
    let goal = cf(g.clone(), top.clone());
    let mut p = Proof::new(vec![]);
    let l1 = p.push(cf(g.clone(), g.clone()), Justification::Axiom(AxiomId::L1, None));
    match c.basis {
        Basis::Conditional => {
            let g_and_top = Formula::and(g.clone(), top.clone());
            let t = p.push(imp(g.clone(), g_and_top.clone()), Justification::Taut);
            let widened = cf(g.clone(), g_and_top.clone());
            let rc = p.push(imp(cf(g.clone(), g.clone()), widened.clone()), Justification::RuleC(t));
            let w = p.push(widened.clone(), Justification::Mp(l1, rc));
            let split = l4_instance(&g, &g, &top);
            let ax = p.push(
                split.clone(),
                Justification::Axiom(AxiomId::L4, Some(l4_sub(&g, &g, &top))),
            );
            let chain = imp(split, imp(widened, goal.clone()));
            let t2 = p.push(chain.clone(), Justification::Taut);
            let Formula::Imp(_, rest) = chain else { unreachable!() };
            let step = p.push(*rest, Justification::Mp(ax, t2));
            p.push(goal, Justification::Mp(w, step));
        }
        Basis::Lewis => {
            let t = p.push(imp(g.clone(), top), Justification::Taut);
            let d = p.push(imp(cf(g.clone(), g.clone()), goal.clone()), Justification::Dwc(1, t));
            p.push(goal, Justification::Mp(l1, d));
        }
    }
    p
}

/// A proof of the `DWC(n)` conclusion from its premise using only rule C
/// and L4 (plus classical reasoning), for the conditional basis under a
/// global calculus.
///
/// For `n ≥ 1` the premise is `(φ₁ ∧ … ∧ φₙ) → ψ` with the conjunction
/// nested to the right; for `n = 0` it is `ψ`. Returns `None` if the
/// premise does not have that shape.
pub fn derive_dwc(n: usize, premise: &Formula, gamma: &Formula) -> Option<Proof> {
    let cf = |x: &Formula| Formula::cf(gamma.clone(), x.clone());
    let imp = Formula::imp;
    let mut p = Proof::new(vec![premise.clone()]);
    let prem = p.push(premise.clone(), Justification::Premise(1));
    if n == 0 {
        // γ ⊡→ 1, then 1 → ψ, then rule C.
        let base = derive_dwc0(&Calculus::gv(), gamma);
        let offset = p.len();
        for line in base.lines {
            let by = match line.by {
                Justification::Mp(i, j) => Justification::Mp(i + offset, j + offset),
                Justification::RuleC(i) => Justification::RuleC(i + offset),
                other => other,
            };
            p.push(line.formula, by);
        }
        let top_line = p.len();
        let lift = imp(premise.clone(), imp(Formula::Top, premise.clone()));
        let sub: Subst = [("phi".to_string(), premise.clone()), ("psi".to_string(), Formula::Top)].into();
        let k1 = p.push(lift, Justification::Axiom(AxiomId::Luk1, Some(sub)));
        let one_psi = p.push(imp(Formula::Top, premise.clone()), Justification::Mp(prem, k1));
        let rc = p.push(imp(cf(&Formula::Top), cf(premise)), Justification::RuleC(one_psi));
        p.push(cf(premise), Justification::Mp(top_line, rc));
        return Some(p);
    }
    let Formula::Imp(ante, psi) = premise else {
        return None;
    };
    let parts = ante.split_conj(n)?;
    let goal = dwc_conclusion(gamma, &parts, psi);
    let c_line = imp(cf(ante), cf(psi));
    let rc = p.push(c_line.clone(), Justification::RuleC(prem));
    if n == 1 {
        return Some(p);
    }
    // rests[k] is φₖ ∧ … ∧ φₙ as nested in the premise.
    let mut rests: Vec<&Formula> = vec![ante];
    for _ in 1..n {
        let Formula::And(_, r) = rests.last().unwrap() else {
            unreachable!()
        };
        rests.push(r);
    }
    let mut l4_lines = Vec::new();
    for k in 0..n - 1 {
        let inst = l4_instance(gamma, parts[k], rests[k + 1]);
        let sub = l4_sub(gamma, parts[k], rests[k + 1]);
        l4_lines.push((p.push(inst.clone(), Justification::Axiom(AxiomId::L4, Some(sub))), inst));
    }
    let mut chain = imp(c_line, goal.clone());
    for (_, inst) in l4_lines.iter().rev() {
        chain = imp(inst.clone(), chain);
    }
    let mut cur = p.push(chain.clone(), Justification::Taut);
    for &(line, _) in &l4_lines {
        let Formula::Imp(_, rest) = p.line(cur).clone() else {
            unreachable!()
        };
        cur = p.push(*rest, Justification::Mp(line, cur));
    }
    p.push(goal, Justification::Mp(rc, cur));
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::check::check_proof;
    use crate::syntax::{parse, phi};

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn dwc0_theorem_in_all_four_calculi() {
        for c in [Calculus::gv(), Calculus::lv()] {
            for basis in [Basis::Conditional, Basis::Lewis] {
                let c = c.with_basis(basis);
                let p = derive_dwc0(&c, &phi());
                assert_eq!(p.conclusion(), Some(&f("phi |> 1")));
                assert_eq!(check_proof(&c, &p).map(|_| ()), Ok(()), "{c} {basis:?}\n{p}");
            }
        }
    }

    #[test]
    fn dwc0_instance_at_bottom() {
        let sub: Subst = [("phi".to_string(), Formula::Bot)].into();
        let p = derive_dwc0(&Calculus::gv(), &phi()).substitute(&sub);
        assert_eq!(p.conclusion(), Some(&f("0 |> 1")));
        assert!(check_proof(&Calculus::gv(), &p).is_ok());
    }

    #[test]
    fn dwc_n_from_rule_c_and_l4() {
        let premises = ["q", "p1 -> q", "p1 & p2 -> q", "p1 & p2 & p3 -> q"];
        for (n, prem) in premises.iter().enumerate() {
            let prem = f(prem);
            let p = derive_dwc(n, &prem, &f("g")).unwrap();
            assert_eq!(check_proof(&Calculus::gv(), &p).map(|_| ()), Ok(()), "n={n}\n{p}");
            // Same conclusion as the primitive rule.
            let mut q = Proof::new(vec![prem.clone()]);
            q.push(prem.clone(), Justification::Premise(1));
            q.push(p.conclusion().unwrap().clone(), Justification::Dwc(n, 1));
            assert!(check_proof(&Calculus::gv(), &q).is_ok(), "n={n}");
        }
    }

    #[test]
    fn wrong_shapes_are_refused() {
        assert!(derive_dwc(2, &f("p -> q"), &f("g")).is_none());
        assert!(derive_dwc(1, &f("p"), &f("g")).is_none());
    }
}
