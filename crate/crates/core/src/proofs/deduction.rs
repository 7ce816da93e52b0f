use thiserror::Error;

use crate::syntax::{AxiomId, Formula, Subst};

use super::calculus::Calculus;
use super::check::{check_proof, Rejection};
use super::proof::{Justification, Proof};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeductionError {
    #[error("input proof is rejected: {0}")]
    Rejected(#[from] Rejection),
    #[error("there is no premise {0}")]
    NoSuchPremise(usize),
    #[error("line {0} applies a conditional rule to a line depending on the discharged premise")]
    RuleOnDischarged(usize),
}

fn sub3(a: &Formula, b: &Formula, c: Option<&Formula>) -> Subst {
    let mut s: Subst = [("phi".to_string(), a.clone()), ("psi".to_string(), b.clone())].into();
    if let Some(c) = c {
        s.insert("chi".to_string(), c.clone());
    }
    s
}

/// Turns a proof of `Γ, ψ ⊢ φ` into a proof of `Γ ⊢ ψ → φ`, where `ψ` is
/// premise `psi_index` (1-based).
///
/// Lines independent of `ψ` are copied; for every line `χ` a line
/// `ψ → χ` is added, via Luk1 for independent lines, the identity proof
/// for `ψ` itself, and Luk2 for modus ponens. Conditional rules must not
/// touch `ψ`, which local calculi guarantee.
pub fn local_deduction(c: &Calculus, p: &Proof, psi_index: usize) -> Result<Proof, DeductionError> {
    let checked = check_proof(c, p)?;
    let psi = p
        .premises
        .get(psi_index.wrapping_sub(1))
        .ok_or(DeductionError::NoSuchPremise(psi_index))?
        .clone();
    let bit = 1u64 << (psi_index - 1);
    let renumber = |k: usize| if k < psi_index { k } else { k - 1 };
    let mut premises = p.premises.clone();
    premises.remove(psi_index - 1);
    let mut out = Proof::new(premises);
    let imp = |x: &Formula| Formula::imp(psi.clone(), x.clone());

    // copy[i] and arrow[i]: new line numbers of `χᵢ` and `ψ → χᵢ`.
    let mut copy = vec![0usize; p.len() + 1];
    let mut arrow = vec![0usize; p.len() + 1];
    for (idx, line) in p.lines.iter().enumerate() {
        let n = idx + 1;
        let chi = &line.formula;
        let depends = checked.deps[idx] & bit != 0;
        if !depends {
            let by = match &line.by {
                Justification::Premise(k) => Justification::Premise(renumber(*k)),
                Justification::Mp(i, j) => Justification::Mp(copy[*i], copy[*j]),
                Justification::RuleC(i) => Justification::RuleC(copy[*i]),
                Justification::Dwc(k, i) => Justification::Dwc(*k, copy[*i]),
                other => other.clone(),
            };
            copy[n] = out.push(chi.clone(), by);
            let k1 = Formula::imp(chi.clone(), imp(chi));
            let ax = out.push(k1, Justification::Axiom(AxiomId::Luk1, Some(sub3(chi, &psi, None))));
            arrow[n] = out.push(imp(chi), Justification::Mp(copy[n], ax));
            continue;
        }
        match &line.by {
            Justification::Premise(_) => {
                arrow[n] = identity(&mut out, &psi);
            }
            Justification::Mp(i, j) => {
                // One of the cited lines is `χⱼ → χ`; find which.
                let (minor, major) = match p.line(*j) {
                    Formula::Imp(l, r) if **l == *p.line(*i) && **r == *chi => (*i, *j),
                    _ => (*j, *i),
                };
                let a = p.line(minor);
                let k2 = Formula::imp(
                    imp(&Formula::imp(a.clone(), chi.clone())),
                    Formula::imp(imp(a), imp(chi)),
                );
                let ax = out.push(k2, Justification::Axiom(AxiomId::Luk2, Some(sub3(&psi, a, Some(chi)))));
                let step = out.push(Formula::imp(imp(a), imp(chi)), Justification::Mp(arrow[major], ax));
                arrow[n] = out.push(imp(chi), Justification::Mp(arrow[minor], step));
            }
            _ => return Err(DeductionError::RuleOnDischarged(n)),
        }
    }
    // The last line already reads `ψ → φ`.
    Ok(out)
}

/// Appends the standard five-line proof of `ψ → ψ`; returns its last line.
fn identity(out: &mut Proof, psi: &Formula) -> usize {
    let pp = Formula::imp(psi.clone(), psi.clone());
    let p_pp_p = Formula::imp(psi.clone(), Formula::imp(pp.clone(), psi.clone()));
    let p_pp = Formula::imp(psi.clone(), pp.clone());
    let l1 = out.push(
        Formula::imp(p_pp_p.clone(), Formula::imp(p_pp.clone(), pp.clone())),
        Justification::Axiom(AxiomId::Luk2, Some(sub3(psi, &pp, Some(psi)))),
    );
    let l2 = out.push(p_pp_p, Justification::Axiom(AxiomId::Luk1, Some(sub3(psi, &pp, None))));
    let l3 = out.push(Formula::imp(p_pp.clone(), pp.clone()), Justification::Mp(l2, l1));
    let l4 = out.push(p_pp, Justification::Axiom(AxiomId::Luk1, Some(sub3(psi, psi, None))));
    out.push(pp, Justification::Mp(l4, l3))
}

/// `(⋀_{m ≤ n} □^m ψ) → φ` for `n = 0, …, n_max`.
pub fn global_deduction_candidates(psi: &Formula, phi: &Formula, n_max: usize) -> Vec<Formula> {
    (0..=n_max)
        .map(|n| {
            let prem = Formula::conj((0..=n).map(|m| psi.clone().box_iterate(m)));
            Formula::imp(prem, phi.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proofs::calculus::Strength;
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn premise_alone_gives_identity() {
        let mut p = Proof::new(vec![f("q & r")]);
        p.push(f("q & r"), Justification::Premise(1));
        let out = local_deduction(&Calculus::lv(), &p, 1).unwrap();
        assert!(out.premises.is_empty());
        assert_eq!(out.conclusion(), Some(&f("q & r -> q & r")));
        assert_eq!(out.len(), 5);
        assert!(check_proof(&Calculus::lv(), &out).is_ok());
    }

    #[test]
    fn discharging_the_minor_premise() {
        let mut p = Proof::new(vec![f("p"), f("p -> q")]);
        p.push(f("p"), Justification::Premise(1));
        p.push(f("p -> q"), Justification::Premise(2));
        p.push(f("q"), Justification::Mp(1, 2));
        let out = local_deduction(&Calculus::lv(), &p, 1).unwrap();
        assert_eq!(out.premises, vec![f("p -> q")]);
        assert_eq!(out.conclusion(), Some(&f("p -> q")));
        assert_eq!(
            check_proof(&Calculus::lv(), &out).map(|c| c.used_premises()),
            Ok(vec![1])
        );
    }

    #[test]
    fn theorems_inside_are_kept() {
        // ψ = r: from r and a theorem-level rule C application.
        let mut p = Proof::new(vec![f("r")]);
        p.push(f("p & q -> p"), Justification::Taut);
        p.push(f("(s |> p & q) -> (s |> p)"), Justification::RuleC(1));
        p.push(f("r"), Justification::Premise(1));
        p.push(f("r -> r"), Justification::Taut);
        p.push(f("r"), Justification::Mp(3, 4));
        let out = local_deduction(&Calculus::lv(), &p, 1).unwrap();
        assert_eq!(out.conclusion(), Some(&f("r -> r")));
        assert!(check_proof(&Calculus::lv(), &out).is_ok());
    }

    #[test]
    fn global_rule_on_discharged_premise_is_refused() {
        let mut p = Proof::new(vec![f("p -> q")]);
        p.push(f("p -> q"), Justification::Premise(1));
        p.push(f("(r |> p) -> (r |> q)"), Justification::RuleC(1));
        let c = Calculus::lv().with_strength(Strength::Global);
        assert_eq!(local_deduction(&c, &p, 1), Err(DeductionError::RuleOnDischarged(2)));
        assert!(matches!(
            local_deduction(&Calculus::lv(), &p, 1),
            Err(DeductionError::Rejected(_))
        ));
    }

    #[test]
    fn candidates() {
        let c = global_deduction_candidates(&f("p"), &f("box p"), 1);
        assert_eq!(c, vec![f("p -> box p"), f("p & box p -> box p")]);
        assert_eq!(global_deduction_candidates(&f("q"), &f("q"), 0), vec![f("q -> q")]);
    }
}
