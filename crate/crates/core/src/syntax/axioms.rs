//! Axiom schemas of the base calculus and of Lewis's extensions.
//!
//! Schemas are ordinary formulas over the metavariables `phi`, `psi` and
//! `chi`; an instance is obtained with [`Formula::substitute`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::formula::Formula;

/// One of Lewis's extension axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    /// Weak centering.
    W,
    /// Centering.
    C,
    /// Normality.
    N,
    /// Total reflexivity.
    T,
    /// Stalnaker's conditional excluded middle.
    S,
    /// Uniformity.
    U,
    /// Absoluteness.
    A,
}

impl Ext {
    pub const ALL: [Ext; 7] = [Ext::W, Ext::C, Ext::N, Ext::T, Ext::S, Ext::U, Ext::A];

    pub fn letter(self) -> char {
        match self {
            Ext::W => 'W',
            Ext::C => 'C',
            Ext::N => 'N',
            Ext::T => 'T',
            Ext::S => 'S',
            Ext::U => 'U',
            Ext::A => 'A',
        }
    }

    pub fn from_letter(c: char) -> Option<Ext> {
        Ext::ALL.into_iter().find(|e| e.letter() == c)
    }

    fn bit(self) -> u8 {
        1 << Ext::ALL.iter().position(|&e| e == self).unwrap()
    }
}

/// A set of extension axioms, printed in the canonical order `WCNTSUA`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Extensions(u8);

impl Extensions {
    pub const NONE: Extensions = Extensions(0);

    pub fn of(exts: &[Ext]) -> Extensions {
        exts.iter().copied().collect()
    }

    pub fn contains(self, e: Ext) -> bool {
        self.0 & e.bit() != 0
    }

    pub fn insert(&mut self, e: Ext) {
        self.0 |= e.bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Ext> {
        Ext::ALL.into_iter().filter(move |&e| self.contains(e))
    }

    /// Every subset of the seven extensions.
    pub fn all_subsets() -> impl Iterator<Item = Extensions> {
        (0u8..128).map(Extensions)
    }

    /// Parses a string of extension letters such as `"CSU"`.
    pub fn parse_letters(s: &str) -> Result<Extensions, UnknownExtension> {
        let mut out = Extensions::NONE;
        for c in s.chars() {
            out.insert(Ext::from_letter(c).ok_or(UnknownExtension(c))?);
        }
        Ok(out)
    }
}

impl FromIterator<Ext> for Extensions {
    fn from_iter<I: IntoIterator<Item = Ext>>(iter: I) -> Self {
        let mut out = Extensions::NONE;
        for e in iter {
            out.insert(e);
        }
        out
    }
}

impl fmt::Display for Extensions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.iter() {
            write!(f, "{}", e.letter())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("unknown extension axiom `{0}` (expected letters from WCNTSUA)")]
pub struct UnknownExtension(pub char);

/// How the first conjunct of the uniformity axiom is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum UReading {
    /// `(◇φ → □◇φ) ∧ (□φ → □□φ)`
    #[default]
    Material,
    /// `(◇φ ⊡→ □◇φ) ∧ (□φ → □□φ)`
    Counterfactual,
}

/// Names of all axiom schemas known to the proof checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// `φ → (ψ → φ)`
    Luk1,
    /// `(φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))`
    Luk2,
    /// `(¬φ → ¬ψ) → (ψ → φ)`
    Luk3,
    /// `(φ ∧ ψ) → φ`
    AndE1,
    /// `(φ ∧ ψ) → ψ`
    AndE2,
    /// `φ → (ψ → (φ ∧ ψ))`
    AndI,
    /// `φ → (φ ∨ ψ)`
    OrI1,
    /// `ψ → (φ ∨ ψ)`
    OrI2,
    /// `(φ → χ) → ((ψ → χ) → ((φ ∨ ψ) → χ))`
    OrE,
    /// `0 → φ`
    Efq,
    /// `1`
    Top,
    L1,
    L2,
    L3,
    L4,
    Ext(Ext),
}

impl AxiomId {
    pub const CLASSICAL: [AxiomId; 11] = [
        AxiomId::Luk1,
        AxiomId::Luk2,
        AxiomId::Luk3,
        AxiomId::AndE1,
        AxiomId::AndE2,
        AxiomId::AndI,
        AxiomId::OrI1,
        AxiomId::OrI2,
        AxiomId::OrE,
        AxiomId::Efq,
        AxiomId::Top,
    ];

    pub fn name(self) -> String {
        match self {
            AxiomId::Ext(e) => e.letter().to_string(),
            other => format!("{other:?}"),
        }
    }

    /// The schema with metavariables `phi`, `psi`, `chi`.
    pub fn schema(self, u: UReading) -> Formula {
        let (p, q, r) = (phi(), psi(), chi());
        let imp = Formula::imp;
        let cf = Formula::cf;
        let and = Formula::and;
        let or = Formula::or;
        match self {
            AxiomId::Luk1 => imp(p.clone(), imp(q, p)),
            AxiomId::Luk2 => imp(
                imp(p.clone(), imp(q.clone(), r.clone())),
                imp(imp(p.clone(), q), imp(p, r)),
            ),
            AxiomId::Luk3 => imp(imp(Formula::neg(p.clone()), Formula::neg(q.clone())), imp(q, p)),
            AxiomId::AndE1 => imp(and(p.clone(), q), p),
            AxiomId::AndE2 => imp(and(p, q.clone()), q),
            AxiomId::AndI => imp(p.clone(), imp(q.clone(), and(p, q))),
            AxiomId::OrI1 => imp(p.clone(), or(p, q)),
            AxiomId::OrI2 => imp(q.clone(), or(p, q)),
            AxiomId::OrE => imp(
                imp(p.clone(), r.clone()),
                imp(imp(q.clone(), r.clone()), imp(or(p, q), r)),
            ),
            AxiomId::Efq => imp(Formula::Bot, p),
            AxiomId::Top => Formula::Top,
            AxiomId::L1 => cf(p.clone(), p),
            AxiomId::L2 => imp(
                and(cf(p.clone(), q.clone()), cf(q.clone(), p.clone())),
                Formula::iff(cf(p, r.clone()), cf(q, r)),
            ),
            AxiomId::L3 => {
                let pq = or(p.clone(), q.clone());
                or(
                    cf(pq.clone(), p.clone()),
                    or(
                        cf(pq.clone(), q.clone()),
                        Formula::iff(cf(pq, r.clone()), and(cf(p, r.clone()), cf(q, r))),
                    ),
                )
            }
            AxiomId::L4 => Formula::iff(
                cf(p.clone(), and(q.clone(), r.clone())),
                and(cf(p.clone(), q), cf(p, r)),
            ),
            AxiomId::Ext(e) => ext_schema(e, u),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fixed = [
            AxiomId::Luk1,
            AxiomId::Luk2,
            AxiomId::Luk3,
            AxiomId::AndE1,
            AxiomId::AndE2,
            AxiomId::AndI,
            AxiomId::OrI1,
            AxiomId::OrI2,
            AxiomId::OrE,
            AxiomId::Efq,
            AxiomId::Top,
            AxiomId::L1,
            AxiomId::L2,
            AxiomId::L3,
            AxiomId::L4,
        ];
        if let Some(id) = fixed.into_iter().find(|id| id.name() == s) {
            return Ok(id);
        }
        let mut chars = s.chars();
        match (chars.next().and_then(Ext::from_letter), chars.next()) {
            (Some(e), None) => Ok(AxiomId::Ext(e)),
            _ => Err(format!("unknown axiom `{s}`")),
        }
    }
}

pub fn phi() -> Formula {
    Formula::var("phi")
}

pub fn psi() -> Formula {
    Formula::var("psi")
}

pub fn chi() -> Formula {
    Formula::var("chi")
}

fn ext_schema(e: Ext, u: UReading) -> Formula {
    let (p, q) = (phi(), psi());
    let imp = Formula::imp;
    let bx = Formula::boxed;
    let weak_centering = imp(Formula::cf(p.clone(), q.clone()), imp(p.clone(), q.clone()));
    match e {
        Ext::W => weak_centering,
        Ext::C => Formula::and(
            weak_centering,
            imp(Formula::and(p.clone(), q.clone()), Formula::cf(p, q)),
        ),
        Ext::N => imp(bx(p.clone()), Formula::diamond(p)),
        Ext::T => imp(bx(p.clone()), p),
        Ext::S => Formula::or(Formula::cf(p.clone(), q.clone()), Formula::cf(p, Formula::neg(q))),
        Ext::U => {
            let dia = Formula::diamond(p.clone());
            let first = match u {
                UReading::Material => imp(dia.clone(), bx(dia)),
                UReading::Counterfactual => Formula::cf(dia.clone(), bx(dia)),
            };
            Formula::and(first, imp(bx(p.clone()), p.box_iterate(2)))
        }
        Ext::A => {
            let weak = Formula::prec_eq(p.clone(), q.clone());
            let strict = Formula::prec(p, q);
            Formula::and(imp(weak.clone(), bx(weak)), imp(strict.clone(), bx(strict)))
        }
    }
}
