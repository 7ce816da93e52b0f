use thiserror::Error;

use crate::syntax::{Formula, Subst};

use super::calculus::{Calculus, Strength};
use super::proof::{Justification, Proof};
use super::taut::is_tautology;

/// The first unjustified line (1-based; 0 for the proof as a whole).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct Rejection {
    pub line: usize,
    pub reason: String,
}

/// Result of a successful check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checked {
    /// For each line, the premises (bit `k` for premise `k + 1`) it
    /// depends on.
    pub deps: Vec<u64>,
}

impl Checked {
    /// Premises the conclusion depends on, 1-based.
    pub fn used_premises(&self) -> Vec<usize> {
        let d = self.deps.last().copied().unwrap_or(0);
        (0..64).filter(|k| d >> k & 1 == 1).map(|k| k + 1).collect()
    }
}

/// Checks every line of `p` under `c`.
pub fn check_proof(c: &Calculus, p: &Proof) -> Result<Checked, Rejection> {
    if p.premises.len() > 64 {
        return Err(Rejection {
            line: 0,
            reason: "at most 64 premises are supported".into(),
        });
    }
    if p.lines.is_empty() {
        return Err(Rejection {
            line: 0,
            reason: "the proof has no lines".into(),
        });
    }
    let mut deps: Vec<u64> = Vec::with_capacity(p.lines.len());
    for (idx, line) in p.lines.iter().enumerate() {
        let n = idx + 1;
        let reject = |reason: String| Rejection { line: n, reason };
        let cite = |i: usize| -> Result<usize, Rejection> {
            if i == 0 || i >= n {
                Err(reject(format!("cites line {i}, which is not an earlier line")))
            } else {
                Ok(i)
            }
        };
        let f = &line.formula;
        let d = match &line.by {
            Justification::Premise(k) => {
                let prem = k
                    .checked_sub(1)
                    .and_then(|i| p.premises.get(i))
                    .ok_or_else(|| reject(format!("there is no premise {k}")))?;
                if prem != f {
                    return Err(reject(format!("premise {k} is {prem}, not {f}")));
                }
                1u64 << (k - 1)
            }
            Justification::Axiom(id, sub) => {
                if !c.allows_axiom(*id) {
                    return Err(reject(format!("axiom {id} is not available in {c}")));
                }
                let schema = id.schema(c.u);
                let ok = match sub {
                    Some(s) => schema.substitute(s) == *f,
                    None => Formula::match_against(&schema, f, &mut Subst::new()),
                };
                if !ok {
                    return Err(reject(format!("not an instance of axiom {id}")));
                }
                0
            }
            Justification::Mp(i, j) => {
                let (i, j) = (cite(*i)?, cite(*j)?);
                let (a, b) = (p.line(i), p.line(j));
                let fits = |minor: &Formula, major: &Formula| matches!(major, Formula::Imp(l, r) if **l == *minor && **r == *f);
                if !fits(a, b) && !fits(b, a) {
                    return Err(reject(format!("lines {i} and {j} do not yield it by modus ponens")));
                }
                deps[i - 1] | deps[j - 1]
            }
            Justification::RuleC(i) => {
                let i = cite(*i)?;
                if !c.allows_rule_c() {
                    return Err(reject("rule C is not primitive in the Lewis basis".into()));
                }
                let Formula::Imp(a, b) = p.line(i) else {
                    return Err(reject(format!("line {i} is not an implication")));
                };
                let ok = match f {
                    Formula::Imp(l, r) => match (l.as_ref(), r.as_ref()) {
                        (Formula::Cf(g1, x), Formula::Cf(g2, y)) => g1 == g2 && x == a && y == b,
                        _ => false,
                    },
                    _ => false,
                };
                if !ok {
                    return Err(reject(format!("not of the form (γ ⊡→ {a}) → (γ ⊡→ {b})")));
                }
                rule_deps(c, deps[i - 1], i).map_err(reject)?
            }
            Justification::Dwc(k, i) => {
                let i = cite(*i)?;
                if !dwc_fits(*k, p.line(i), f) {
                    return Err(reject(format!("not an instance of DWC{k} applied to line {i}")));
                }
                rule_deps(c, deps[i - 1], i).map_err(reject)?
            }
            Justification::Taut => match is_tautology(f) {
                Some(true) => 0,
                Some(false) => return Err(reject("not a tautology".into())),
                None => return Err(reject("too many atoms for a truth table".into())),
            },
        };
        deps.push(d);
    }
    Ok(Checked { deps })
}

fn rule_deps(c: &Calculus, input: u64, i: usize) -> Result<u64, String> {
    match c.strength {
        Strength::Global => Ok(input),
        Strength::Local if input == 0 => Ok(0),
        Strength::Local => Err(format!(
            "line {i} depends on premises; local calculi apply conditional rules to theorems only"
        )),
    }
}

/// Whether `concl` follows from `input` by `DWC(n)`.
fn dwc_fits(n: usize, input: &Formula, concl: &Formula) -> bool {
    if n == 0 {
        return matches!(concl, Formula::Cf(_, x) if **x == *input);
    }
    let Formula::Imp(ante, psi) = input else {
        return false;
    };
    let Some(parts) = ante.split_conj(n) else {
        return false;
    };
    let Formula::Imp(_, head) = concl else {
        return false;
    };
    let Formula::Cf(gamma, _) = head.as_ref() else {
        return false;
    };
    *concl == dwc_conclusion(gamma, &parts, psi)
}

/// `((γ ⊡→ φ₁) ∧ … ∧ (γ ⊡→ φₙ)) → (γ ⊡→ ψ)`
pub(crate) fn dwc_conclusion(gamma: &Formula, parts: &[&Formula], psi: &Formula) -> Formula {
    let lhs = Formula::conj(parts.iter().map(|&x| Formula::cf(gamma.clone(), x.clone())));
    Formula::imp(lhs, Formula::cf(gamma.clone(), psi.clone()))
}
