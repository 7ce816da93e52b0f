use std::collections::{BTreeMap, BTreeSet};

use crate::bits::{self, Mask};
use crate::compiled::Compiled;
use crate::syntax::{Equation, Formula};
use crate::Verdict;

use super::valgebra::VAlgebra;

/// An assignment in one of the listed algebras refuting a consequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraWitness {
    pub algebra: usize,
    pub assignment: BTreeMap<String, Mask>,
    /// `h(⋀Γ)` for degree consequence, or the first failing premise side
    /// for equational consequence; then `conclusion` is the value that
    /// falls short.
    pub premises: Mask,
    pub conclusion: Mask,
}

fn vars_of<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Vec<String> {
    fs.into_iter()
        .flat_map(|f| f.vars())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// `Γ ⊢≤ φ`: in every listed algebra and under every assignment,
/// `h(γ₁) ∧ … ∧ h(γₙ) ≤ h(φ)`. Assignments are tried in order with the
/// first variable (alphabetically) most significant.
pub fn degree_consequence(algebras: &[VAlgebra], gamma: &[Formula], phi: &Formula) -> Verdict<AlgebraWitness> {
    let vars = vars_of(gamma.iter().chain([phi]));
    let gs: Vec<Compiled> = gamma.iter().map(|g| Compiled::new(g, &vars)).collect();
    let p = Compiled::new(phi, &vars);
    for (i, alg) in algebras.iter().enumerate() {
        for h in alg.assignments(vars.len()) {
            let prem = gs.iter().fold(alg.top(), |acc, g| acc & g.eval(alg, &h));
            let concl = p.eval(alg, &h);
            if !bits::is_subset(prem, concl) {
                return Verdict::Fails(AlgebraWitness {
                    algebra: i,
                    assignment: vars.iter().cloned().zip(h).collect(),
                    premises: prem,
                    conclusion: concl,
                });
            }
        }
    }
    Verdict::Holds
}

/// `E ⊨ e` over the listed algebras: every assignment satisfying all
/// equations in `premises` satisfies `e`.
pub fn equational_consequence(algebras: &[VAlgebra], premises: &[Equation], e: &Equation) -> Verdict<AlgebraWitness> {
    let sides: Vec<&Formula> = premises.iter().chain([e]).flat_map(|q| [&q.lhs, &q.rhs]).collect();
    let vars = vars_of(sides);
    let compile = |q: &Equation| (Compiled::new(&q.lhs, &vars), Compiled::new(&q.rhs, &vars));
    let prem: Vec<_> = premises.iter().map(compile).collect();
    let (l, r) = compile(e);
    for (i, alg) in algebras.iter().enumerate() {
        for h in alg.assignments(vars.len()) {
            if prem.iter().all(|(a, b)| a.eval(alg, &h) == b.eval(alg, &h)) {
                let (lv, rv) = (l.eval(alg, &h), r.eval(alg, &h));
                if lv != rv {
                    return Verdict::Fails(AlgebraWitness {
                        algebra: i,
                        assignment: vars.iter().cloned().zip(h).collect(),
                        premises: lv,
                        conclusion: rv,
                    });
                }
            }
        }
    }
    Verdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples::algebra_a;
    use crate::syntax::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn p_does_not_degree_entail_box_p() {
        let v = degree_consequence(&[algebra_a()], &[f("p")], &f("box p"));
        let w = v.witness().unwrap();
        assert_eq!(w.assignment["p"], 1);
        assert_eq!((w.premises, w.conclusion), (1, 0));
        assert!(degree_consequence(&[algebra_a()], &[f("p |> q")], &f("p |> q")).holds());
    }

    #[test]
    fn tau_p_entails_tau_box_p() {
        let prem = [Equation::tau(f("p"))];
        assert!(equational_consequence(&[algebra_a()], &prem, &Equation::tau(f("box p"))).holds());
    }

    #[test]
    fn delta_adequacy() {
        let prem = [Equation::new(f("x"), f("y"))];
        let concl = Equation::tau(Equation::new(f("x"), f("y")).delta());
        assert!(equational_consequence(&[algebra_a()], &prem, &concl).holds());
    }

    #[test]
    fn tau_p_does_not_entail_tau_p_and_q() {
        let a = algebra_a();
        let prem = [Equation::tau(f("p"))];
        let v = equational_consequence(std::slice::from_ref(&a), &prem, &Equation::tau(f("p & q")));
        let w = v.witness().unwrap();
        // The witness must satisfy the premise and refute the conclusion.
        assert_eq!(w.assignment["p"], a.top());
        assert_ne!(w.assignment["p"] & w.assignment["q"], a.top());
    }
}
