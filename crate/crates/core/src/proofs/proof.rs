use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{parse, AxiomId, Formula, Subst};

use super::calculus::{Basis, Calculus};

/// Why a line holds. Line and premise indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Premise(usize),
    /// An instance of a schema. Without a substitution the checker finds
    /// one by matching.
    Axiom(AxiomId, Option<Subst>),
    /// From `φ` and `φ → ψ`, cited in either order.
    Mp(usize, usize),
    /// From `φ → ψ` infer `(γ ⊡→ φ) → (γ ⊡→ ψ)`.
    RuleC(usize),
    /// From `(φ₁ ∧ … ∧ φₙ) → ψ` infer
    /// `((γ ⊡→ φ₁) ∧ … ∧ (γ ⊡→ φₙ)) → (γ ⊡→ ψ)`; for `n = 0`, from `ψ`
    /// infer `γ ⊡→ ψ`.
    Dwc(usize, usize),
    /// A classical tautology, reading variables and `⊡→`-subformulas as
    /// propositional atoms.
    Taut,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Premise(k) => write!(f, "premise {k}"),
            Justification::Axiom(id, _) => write!(f, "axiom {id}"),
            Justification::Mp(i, j) => write!(f, "MP {i}, {j}"),
            Justification::RuleC(i) => write!(f, "rule C {i}"),
            Justification::Dwc(n, i) => write!(f, "DWC{n} {i}"),
            Justification::Taut => f.write_str("tautology"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub formula: Formula,
    pub by: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Proof {
    pub premises: Vec<Formula>,
    pub lines: Vec<Line>,
}

impl Proof {
    pub fn new(premises: Vec<Formula>) -> Proof {
        Proof {
            premises,
            lines: Vec::new(),
        }
    }

    /// Appends a line and returns its 1-based index.
    pub fn push(&mut self, formula: Formula, by: Justification) -> usize {
        self.lines.push(Line { formula, by });
        self.lines.len()
    }

    /// The formula on line `i` (1-based).
    pub fn line(&self, i: usize) -> &Formula {
        &self.lines[i - 1].formula
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Replaces every metavariable or variable according to `sub`,
    /// including inside explicit axiom substitutions.
    pub fn substitute(&self, sub: &Subst) -> Proof {
        Proof {
            premises: self.premises.iter().map(|p| p.substitute(sub)).collect(),
            lines: self
                .lines
                .iter()
                .map(|l| Line {
                    formula: l.formula.substitute(sub),
                    by: match &l.by {
                        Justification::Axiom(id, Some(s)) => Justification::Axiom(
                            *id,
                            Some(s.iter().map(|(k, v)| (k.clone(), v.substitute(sub))).collect()),
                        ),
                        other => other.clone(),
                    },
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Proof, ProofFileError> {
        ProofFile::from_json(text)?.proof()
    }

    pub fn to_file(&self) -> ProofFile {
        ProofFile {
            format: Some(1),
            calculus: None,
            basis: None,
            premises: self.premises.iter().map(|p| p.to_string()).collect(),
            lines: self.lines.iter().map(LineFile::from_line).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("proof serializes")
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.premises.iter().enumerate() {
            writeln!(f, "premise {}: {p}", k + 1)?;
        }
        let w = self.lines.len().to_string().len();
        for (i, l) in self.lines.iter().enumerate() {
            writeln!(f, "{:>w$}. {}    [{}]", i + 1, l.formula, l.by)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofFileError {
    #[error("malformed proof file: {0}")]
    Json(String),
    #[error("unsupported file format version {0}")]
    Format(u32),
    #[error("cannot parse `{text}`: {message}")]
    Formula { text: String, message: String },
    #[error("line {0}: expected exactly one justification")]
    Justification(usize),
    #[error("line {line}: {message}")]
    Axiom { line: usize, message: String },
    #[error("{0}")]
    Calculus(String),
}

/// On-disk form of a proof script. `calculus` (e.g. `"GVC"`) and `basis`
/// (`"conditional"` or `"lewis"`) are optional defaults for the checker.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calculus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    #[serde(default)]
    pub premises: Vec<String>,
    pub lines: Vec<LineFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineFile {
    pub f: String,
    pub by: ByFile,
}

/// Exactly one of the fields is set.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ByFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub premise: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axiom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mp: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dwc: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub taut: bool,
}

fn parse_formula(text: &str) -> Result<Formula, ProofFileError> {
    parse(text).map_err(|e| ProofFileError::Formula {
        text: text.to_string(),
        message: e.to_string(),
    })
}

impl LineFile {
    fn from_line(l: &Line) -> LineFile {
        let mut by = ByFile::default();
        match &l.by {
            Justification::Premise(k) => by.premise = Some(*k),
            Justification::Axiom(id, sub) => {
                by.axiom = Some(id.name());
                by.sub = sub
                    .as_ref()
                    .map(|s| s.iter().map(|(k, v)| (k.clone(), v.to_string())).collect());
            }
            Justification::Mp(i, j) => by.mp = Some([*i, *j]),
            Justification::RuleC(i) => by.rule_c = Some(*i),
            Justification::Dwc(n, i) => by.dwc = Some([*n, *i]),
            Justification::Taut => by.taut = true,
        }
        LineFile {
            f: l.formula.to_string(),
            by,
        }
    }

    fn to_line(&self, number: usize) -> Result<Line, ProofFileError> {
        let b = &self.by;
        let set = [
            b.premise.is_some(),
            b.axiom.is_some(),
            b.mp.is_some(),
            b.rule_c.is_some(),
            b.dwc.is_some(),
            b.taut,
        ];
        if set.iter().filter(|&&x| x).count() != 1 || (b.sub.is_some() && b.axiom.is_none()) {
            return Err(ProofFileError::Justification(number));
        }
        let by = if let Some(k) = b.premise {
            Justification::Premise(k)
        } else if let Some(name) = &b.axiom {
            let id: AxiomId = name
                .parse()
                .map_err(|message| ProofFileError::Axiom { line: number, message })?;
            let sub = match &b.sub {
                None => None,
                Some(s) => Some(
                    s.iter()
                        .map(|(k, v)| Ok((k.clone(), parse_formula(v)?)))
                        .collect::<Result<Subst, ProofFileError>>()?,
                ),
            };
            Justification::Axiom(id, sub)
        } else if let Some([i, j]) = b.mp {
            Justification::Mp(i, j)
        } else if let Some(i) = b.rule_c {
            Justification::RuleC(i)
        } else if let Some([n, i]) = b.dwc {
            Justification::Dwc(n, i)
        } else {
            Justification::Taut
        };
        Ok(Line {
            formula: parse_formula(&self.f)?,
            by,
        })
    }
}

impl ProofFile {
    pub fn from_json(text: &str) -> Result<ProofFile, ProofFileError> {
        let file: ProofFile = serde_json::from_str(text).map_err(|e| ProofFileError::Json(e.to_string()))?;
        if let Some(v) = file.format.filter(|&v| v != 1) {
            return Err(ProofFileError::Format(v));
        }
        Ok(file)
    }

    pub fn proof(&self) -> Result<Proof, ProofFileError> {
        Ok(Proof {
            premises: self
                .premises
                .iter()
                .map(|p| parse_formula(p))
                .collect::<Result<_, _>>()?,
            lines: self
                .lines
                .iter()
                .enumerate()
                .map(|(i, l)| l.to_line(i + 1))
                .collect::<Result<_, _>>()?,
        })
    }

    /// The calculus named in the file, if any, with its basis applied.
    pub fn calculus(&self) -> Result<Option<Calculus>, ProofFileError> {
        let Some(name) = &self.calculus else {
            return Ok(None);
        };
        let c: Calculus = name.parse().map_err(ProofFileError::Calculus)?;
        Ok(Some(c.with_basis(self.basis.unwrap_or_default())))
    }
}
