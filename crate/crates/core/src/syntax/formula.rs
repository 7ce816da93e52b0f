use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Simultaneous substitution of formulas for variables.
pub type Subst = BTreeMap<String, Formula>;

/// Formulas over the primitive connectives `0, 1, ∧, ∨, →, ⊡→`.
///
/// Every other connective of the language is a constructor-level rewrite
/// into these six, so two formulas are equal exactly when their expanded
/// trees are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    /// The counterfactual `φ ⊡→ ψ`.
    Cf(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Formula {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn cf(l: Formula, r: Formula) -> Formula {
        Formula::Cf(Box::new(l), Box::new(r))
    }

    /// `¬x := x → 0`
    #[allow(clippy::should_implement_trait)]
    pub fn neg(x: Formula) -> Formula {
        Formula::imp(x, Formula::Bot)
    }

    /// `x ↔ y := (x → y) ∧ (y → x)`
    pub fn iff(x: Formula, y: Formula) -> Formula {
        Formula::and(Formula::imp(x.clone(), y.clone()), Formula::imp(y, x))
    }

    /// `x ◇→ y := ¬(x ⊡→ ¬y)`
    pub fn might(x: Formula, y: Formula) -> Formula {
        Formula::neg(Formula::cf(x, Formula::neg(y)))
    }

    /// `□x := ¬x ⊡→ x`
    pub fn boxed(x: Formula) -> Formula {
        Formula::cf(Formula::neg(x.clone()), x)
    }

    /// `◇x := ¬□¬x`
    pub fn diamond(x: Formula) -> Formula {
        Formula::neg(Formula::boxed(Formula::neg(x)))
    }

    /// `x ≼ y := ((x ∨ y) ◇→ (x ∨ y)) → ((x ∨ y) ◇→ x)`
    pub fn prec_eq(x: Formula, y: Formula) -> Formula {
        let xy = Formula::or(x.clone(), y);
        Formula::imp(Formula::might(xy.clone(), xy.clone()), Formula::might(xy, x))
    }

    /// `x ≺ y := ¬(y ≼ x)`
    pub fn prec(x: Formula, y: Formula) -> Formula {
        Formula::neg(Formula::prec_eq(y, x))
    }

    /// `x ≈ y := (x ≼ y) ∧ (y ≼ x)`
    pub fn sim_eq(x: Formula, y: Formula) -> Formula {
        Formula::and(Formula::prec_eq(x.clone(), y.clone()), Formula::prec_eq(y, x))
    }

    /// `□ⁿφ`, with `□⁰φ = φ`.
    pub fn box_iterate(self, n: usize) -> Formula {
        (0..n).fold(self, |acc, _| Formula::boxed(acc))
    }

    /// Right-nested conjunction `φ₁ ∧ (φ₂ ∧ (… ∧ φₙ))`; `1` when empty.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        match parts.pop() {
            None => Formula::Top,
            Some(last) => parts.into_iter().rev().fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Splits a right-nested conjunction into exactly `n` conjuncts.
    pub fn split_conj(&self, n: usize) -> Option<Vec<&Formula>> {
        if n == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        let mut cur = self;
        for _ in 1..n {
            match cur {
                Formula::And(l, r) => {
                    out.push(l.as_ref());
                    cur = r;
                }
                _ => return None,
            }
        }
        out.push(cur);
        Some(out)
    }

    /// `φ` when `self` is `φ → 0`.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Imp(x, r) if **r == Formula::Bot => Some(x),
            _ => None,
        }
    }

    /// `φ` when `self` is `¬φ ⊡→ φ`.
    pub fn as_box(&self) -> Option<&Formula> {
        match self {
            Formula::Cf(l, r) if l.as_neg() == Some(r.as_ref()) => Some(r),
            _ => None,
        }
    }

    /// `(x, y)` when `self` is `(x → y) ∧ (y → x)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => match (l.as_ref(), r.as_ref()) {
                (Formula::Imp(a, b), Formula::Imp(c, d)) if a == d && b == c => Some((a, b)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Cf(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bot | Formula::Top => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Cf(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bot | Formula::Top => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Cf(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// Replaces every variable in the domain of `sub` simultaneously.
    pub fn substitute(&self, sub: &Subst) -> Formula {
        match self {
            Formula::Var(v) => sub.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Bot | Formula::Top => self.clone(),
            Formula::And(l, r) => Formula::and(l.substitute(sub), r.substitute(sub)),
            Formula::Or(l, r) => Formula::or(l.substitute(sub), r.substitute(sub)),
            Formula::Imp(l, r) => Formula::imp(l.substitute(sub), r.substitute(sub)),
            Formula::Cf(l, r) => Formula::cf(l.substitute(sub), r.substitute(sub)),
        }
    }

    /// Finds `σ` with `pattern.substitute(σ) == self`, extending `sub`.
    pub fn match_against(pattern: &Formula, target: &Formula, sub: &mut Subst) -> bool {
        match (pattern, target) {
            (Formula::Var(v), _) => match sub.get(v) {
                Some(bound) => bound == target,
                None => {
                    sub.insert(v.clone(), target.clone());
                    true
                }
            },
            (Formula::Bot, Formula::Bot) | (Formula::Top, Formula::Top) => true,
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Imp(a, b), Formula::Imp(c, d))
            | (Formula::Cf(a, b), Formula::Cf(c, d)) => {
                Formula::match_against(a, c, sub) && Formula::match_against(b, d, sub)
            }
            _ => false,
        }
    }
}

/// Composition `σ₂ ∘ σ₁`: apply `first`, then `second`.
pub fn compose(first: &Subst, second: &Subst) -> Subst {
    let mut out: Subst = first.iter().map(|(k, v)| (k.clone(), v.substitute(second))).collect();
    for (k, v) in second {
        out.entry(k.clone()).or_insert_with(|| v.clone());
    }
    out
}

/// An equation `lhs ≈ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Formula,
    pub rhs: Formula,
}

impl Equation {
    pub fn new(lhs: Formula, rhs: Formula) -> Equation {
        Equation { lhs, rhs }
    }

    /// `τ(φ) = (φ ≈ 1)`
    pub fn tau(phi: Formula) -> Equation {
        Equation::new(phi, Formula::Top)
    }

    /// `Δ(s, t) = s ↔ t`
    pub fn delta(&self) -> Formula {
        Formula::iff(self.lhs.clone(), self.rhs.clone())
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {}", self.lhs, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn derived_connectives_expand() {
        assert_eq!(Formula::boxed(p()), Formula::cf(Formula::imp(p(), Formula::Bot), p()));
        assert_eq!(Formula::diamond(p()), Formula::neg(Formula::boxed(Formula::neg(p()))));
        assert_eq!(
            Formula::might(p(), q()),
            Formula::imp(Formula::cf(p(), Formula::imp(q(), Formula::Bot)), Formula::Bot)
        );
        let (l, r) = Formula::iff(p(), q())
            .as_iff()
            .map(|(a, b)| (a.clone(), b.clone()))
            .unwrap();
        assert_eq!((l, r), (p(), q()));
    }

    #[test]
    fn box_iterate_counts() {
        assert_eq!(p().box_iterate(0), p());
        assert_eq!(p().box_iterate(1), Formula::boxed(p()));
        // □ doubles its argument and adds three nodes (⊡→, →, 0).
        let mut expected = 1;
        for n in 0..6 {
            assert_eq!(p().box_iterate(n).size(), expected);
            expected = 2 * expected + 3;
        }
    }

    #[test]
    fn substitution_examples() {
        let sub: Subst = [("p".to_string(), Formula::Top)].into();
        assert_eq!(Formula::cf(p(), q()).substitute(&sub), Formula::cf(Formula::Top, q()));
        let pq = Formula::and(p(), q());
        let sub: Subst = [("p".to_string(), pq.clone())].into();
        assert_eq!(
            Formula::boxed(p()).substitute(&sub),
            Formula::cf(Formula::neg(pq.clone()), pq)
        );
    }

    #[test]
    fn conj_split_roundtrip() {
        let parts = vec![p(), q(), Formula::Top];
        let c = Formula::conj(parts.clone());
        let back: Vec<Formula> = c.split_conj(3).unwrap().into_iter().cloned().collect();
        assert_eq!(back, parts);
        assert_eq!(Formula::conj(vec![p()]), p());
        assert_eq!(Formula::conj(Vec::new()), Formula::Top);
    }

    #[test]
    fn matching_binds_consistently() {
        let pat = Formula::cf(Formula::var("phi"), Formula::var("phi"));
        let mut s = Subst::new();
        assert!(Formula::match_against(&pat, &Formula::cf(q(), q()), &mut s));
        assert_eq!(s["phi"], q());
        let mut s = Subst::new();
        assert!(!Formula::match_against(&pat, &Formula::cf(p(), q()), &mut s));
    }

    #[test]
    fn tau_and_delta() {
        let e = Equation::tau(Formula::cf(p(), p()));
        assert_eq!(e.rhs, Formula::Top);
        assert_eq!(Equation::new(p(), p()).delta(), Formula::iff(p(), p()));
    }
}
