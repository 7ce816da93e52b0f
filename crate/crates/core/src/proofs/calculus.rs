use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::spheres::Mode;
use crate::syntax::{AxiomId, Extensions, UReading};

/// Global calculi apply the conditional rules to any line; local ones only
/// to lines that depend on no premise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strength {
    Global,
    Local,
}

/// Which conditional axioms and rules are primitive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// L1 to L4 with rule (C). `DWC(n)` is admitted as a derived rule.
    #[default]
    Conditional,
    /// L1 to L3 with the rules `DWC(n)`; neither L4 nor (C).
    Lewis,
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conditional" => Ok(Basis::Conditional),
            "lewis" => Ok(Basis::Lewis),
            _ => Err(format!("unknown basis `{s}` (expected conditional or lewis)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Calculus {
    pub strength: Strength,
    pub exts: Extensions,
    pub basis: Basis,
    pub u: UReading,
}

impl Calculus {
    pub fn gv() -> Calculus {
        Calculus {
            strength: Strength::Global,
            exts: Extensions::NONE,
            basis: Basis::Conditional,
            u: UReading::default(),
        }
    }

    pub fn lv() -> Calculus {
        Calculus {
            strength: Strength::Local,
            ..Calculus::gv()
        }
    }

    pub fn with_exts(self, exts: Extensions) -> Calculus {
        Calculus { exts, ..self }
    }

    pub fn with_basis(self, basis: Basis) -> Calculus {
        Calculus { basis, ..self }
    }

    pub fn with_strength(self, strength: Strength) -> Calculus {
        Calculus { strength, ..self }
    }

    /// The consequence relation the calculus is sound for.
    pub fn mode(self) -> Mode {
        match self.strength {
            Strength::Global => Mode::Global,
            Strength::Local => Mode::Local,
        }
    }

    pub fn allows_axiom(self, id: AxiomId) -> bool {
        match id {
            AxiomId::L4 => self.basis == Basis::Conditional,
            AxiomId::Ext(e) => self.exts.contains(e),
            _ => true,
        }
    }

    pub fn allows_rule_c(self) -> bool {
        self.basis == Basis::Conditional
    }
}

impl FromStr for Calculus {
    type Err = String;

    /// `GV` or `LV` followed by extension letters, e.g. `LVCS`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, rest) = if let Some(rest) = s.strip_prefix("GV") {
            (Calculus::gv(), rest)
        } else if let Some(rest) = s.strip_prefix("LV") {
            (Calculus::lv(), rest)
        } else {
            return Err(format!("unknown logic `{s}` (expected GV or LV followed by letters)"));
        };
        let exts = Extensions::parse_letters(rest).map_err(|e| e.to_string())?;
        Ok(base.with_exts(exts))
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.strength {
            Strength::Global => "GV",
            Strength::Local => "LV",
        };
        write!(f, "{base}{}", self.exts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Ext;

    #[test]
    fn parses_logic_names() {
        let c: Calculus = "LVCS".parse().unwrap();
        assert_eq!(c.strength, Strength::Local);
        assert_eq!(c.exts, Extensions::of(&[Ext::C, Ext::S]));
        assert_eq!(c.to_string(), "LVCS");
        assert_eq!("GV".parse::<Calculus>().unwrap(), Calculus::gv());
        assert!("KV".parse::<Calculus>().is_err());
        assert!("GVX".parse::<Calculus>().is_err());
    }

    #[test]
    fn axioms_by_basis_and_extensions() {
        let c = Calculus::gv().with_exts(Extensions::of(&[Ext::W]));
        assert!(c.allows_axiom(AxiomId::L4));
        assert!(c.allows_axiom(AxiomId::Ext(Ext::W)));
        assert!(!c.allows_axiom(AxiomId::Ext(Ext::C)));
        let lewis = c.with_basis(Basis::Lewis);
        assert!(!lewis.allows_axiom(AxiomId::L4));
        assert!(!lewis.allows_rule_c());
        assert!(lewis.allows_axiom(AxiomId::L3));
    }
}
