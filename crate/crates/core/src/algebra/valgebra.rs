use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::compiled::{Compiled, Structure};
use crate::syntax::{AxiomId, Ext, Extensions, Formula, UReading};

/// Largest atom count accepted; the table has `4^k` entries.
pub const MAX_ATOMS: usize = 8;

/// A finite V-algebra: the powerset of `k` atoms with a `⊡→` table.
///
/// Elements are bit masks over atoms, so `0` is the bottom element and
/// `2^k - 1` the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VAlgebra {
    k: usize,
    cf: Vec<Mask>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("at most {max} atoms are supported, got {0}", max = MAX_ATOMS)]
    TooManyAtoms(usize),
    #[error("table must be {expected}×{expected}, found {rows} rows")]
    Rows { expected: usize, rows: usize },
    #[error("row {row} must have {expected} entries, found {len}")]
    Columns { row: usize, expected: usize, len: usize },
    #[error("entry ({row}, {col}) = {value} is not an element")]
    Entry { row: usize, col: usize, value: Mask },
    #[error("unsupported file format version {0}")]
    Format(u32),
    #[error("malformed algebra file: {0}")]
    Json(String),
}

/// The four defining equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VAxiom {
    /// `x ⊡→ x = 1`
    C1,
    /// `(x ⊡→ y) ∧ (y ⊡→ x) ≤ (x ⊡→ z) ↔ (y ⊡→ z)`
    C2,
    /// `((x∨y) ⊡→ x) ∨ ((x∨y) ⊡→ y) ∨ (((x∨y) ⊡→ z) ↔ ((x ⊡→ z) ∧ (y ⊡→ z))) = 1`
    C3,
    /// `x ⊡→ (y ∧ z) = (x ⊡→ y) ∧ (x ⊡→ z)`
    C4,
}

/// The first tuple `(x, y, z)` in element order violating an axiom.
/// Unused positions are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: VAxiom,
    pub args: [Mask; 3],
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.args;
        match self.axiom {
            VAxiom::C1 => write!(f, "C1 fails at x={x}"),
            a => write!(f, "{a:?} fails at x={x}, y={y}, z={z}"),
        }
    }
}

/// An extension axiom whose `τ`-translation fails, with the assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyFailure {
    pub ext: Ext,
    pub assignment: BTreeMap<String, Mask>,
}

impl VAlgebra {
    pub fn new(k: usize, table: Vec<Vec<Mask>>) -> Result<VAlgebra, AlgebraError> {
        if k > MAX_ATOMS {
            return Err(AlgebraError::TooManyAtoms(k));
        }
        let n = 1usize << k;
        if table.len() != n {
            return Err(AlgebraError::Rows {
                expected: n,
                rows: table.len(),
            });
        }
        let mut cf = Vec::with_capacity(n * n);
        for (row, r) in table.into_iter().enumerate() {
            if r.len() != n {
                return Err(AlgebraError::Columns {
                    row,
                    expected: n,
                    len: r.len(),
                });
            }
            for (col, value) in r.into_iter().enumerate() {
                if value >= n as Mask {
                    return Err(AlgebraError::Entry { row, col, value });
                }
                cf.push(value);
            }
        }
        Ok(VAlgebra { k, cf })
    }

    /// Builds the table from `cf(x, y)`.
    pub fn from_fn(k: usize, cf: impl Fn(Mask, Mask) -> Mask) -> VAlgebra {
        assert!(k <= MAX_ATOMS);
        let n = 1u64 << k;
        let table = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| cf(x, y));
        VAlgebra { k, cf: table.collect() }
    }

    /// The algebra with `x ⊡→ y = x → y`.
    pub fn material(k: usize) -> VAlgebra {
        let top = bits::full(k);
        VAlgebra::from_fn(k, |x, y| (!x | y) & top)
    }

    pub fn atoms(&self) -> usize {
        self.k
    }

    /// Number of elements, `2^k`.
    pub fn size(&self) -> usize {
        1 << self.k
    }

    pub fn elements(&self) -> impl Iterator<Item = Mask> {
        0..self.size() as Mask
    }

    pub fn top(&self) -> Mask {
        bits::full(self.k)
    }

    pub fn neg(&self, x: Mask) -> Mask {
        !x & self.top()
    }

    pub fn imp(&self, x: Mask, y: Mask) -> Mask {
        (!x | y) & self.top()
    }

    pub fn iff(&self, x: Mask, y: Mask) -> Mask {
        self.imp(x, y) & self.imp(y, x)
    }

    pub fn cf(&self, x: Mask, y: Mask) -> Mask {
        self.cf[(x as usize) * self.size() + y as usize]
    }

    /// `□x = ¬x ⊡→ x`
    pub fn boxed(&self, x: Mask) -> Mask {
        self.cf(self.neg(x), x)
    }

    /// The table as rows indexed by antecedent.
    pub fn table(&self) -> Vec<Vec<Mask>> {
        self.cf.chunks(self.size()).map(<[Mask]>::to_vec).collect()
    }

    /// Copy with a single table entry replaced.
    pub fn with_entry(&self, x: Mask, y: Mask, value: Mask) -> VAlgebra {
        let mut out = self.clone();
        let n = self.size();
        out.cf[x as usize * n + y as usize] = value & self.top();
        out
    }

    /// Names elements: `0`, `1`, and for two atoms `a` and `¬a`; otherwise
    /// the atom indices joined by `∨`.
    pub fn show(&self, x: Mask) -> String {
        if x == 0 {
            "0".into()
        } else if x == self.top() {
            "1".into()
        } else if self.k == 2 {
            if x == 1 { "a" } else { "¬a" }.into()
        } else {
            bits::members(x).map(|i| format!("a{i}")).collect::<Vec<_>>().join("∨")
        }
    }

    /// Checks C1 to C4 exhaustively, reporting the first failing tuple.
    pub fn check_axioms(&self) -> Result<(), AxiomFailure> {
        let els: Vec<Mask> = self.elements().collect();
        let top = self.top();
        let fail = |axiom, args| Err(AxiomFailure { axiom, args });
        for &x in &els {
            if self.cf(x, x) != top {
                return fail(VAxiom::C1, [x, 0, 0]);
            }
        }
        for &x in &els {
            for &y in &els {
                let lhs = self.cf(x, y) & self.cf(y, x);
                for &z in &els {
                    if !bits::is_subset(lhs, self.iff(self.cf(x, z), self.cf(y, z))) {
                        return fail(VAxiom::C2, [x, y, z]);
                    }
                }
            }
        }
        for &x in &els {
            for &y in &els {
                let xy = x | y;
                let head = self.cf(xy, x) | self.cf(xy, y);
                for &z in &els {
                    let tail = self.iff(self.cf(xy, z), self.cf(x, z) & self.cf(y, z));
                    if head | tail != top {
                        return fail(VAxiom::C3, [x, y, z]);
                    }
                }
            }
        }
        for &x in &els {
            for &y in &els {
                for &z in &els {
                    if self.cf(x, y & z) != self.cf(x, y) & self.cf(x, z) {
                        return fail(VAxiom::C4, [x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `τ` of every axiom in `exts` over all assignments to its
    /// metavariables.
    pub fn check_variety(&self, exts: Extensions, u: UReading) -> Result<(), VarietyFailure> {
        for e in exts.iter() {
            let schema = AxiomId::Ext(e).schema(u);
            let vars: Vec<String> = schema.vars().into_iter().collect();
            let prog = Compiled::new(&schema, &vars);
            for h in self.assignments(vars.len()) {
                if prog.eval(self, &h) != self.top() {
                    return Err(VarietyFailure {
                        ext: e,
                        assignment: vars.iter().cloned().zip(h).collect(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Every assignment of `vars` elements, the first variable most
    /// significant.
    pub fn assignments(&self, vars: usize) -> impl Iterator<Item = Vec<Mask>> {
        let n = self.size() as u64;
        let total = n.checked_pow(vars as u32).expect("assignment space too large");
        (0..total).map(move |mut code| {
            let mut out = vec![0; vars];
            for v in out.iter_mut().rev() {
                *v = code % n;
                code /= n;
            }
            out
        })
    }

    /// Evaluates `φ` under `h`. Unassigned variables are an error.
    pub fn eval(&self, phi: &Formula, h: &BTreeMap<String, Mask>) -> Result<Mask, String> {
        let vars: Vec<String> = phi.vars().into_iter().collect();
        let vals = vars
            .iter()
            .map(|v| match h.get(v) {
                Some(&x) if x <= self.top() => Ok(x),
                Some(&x) => Err(format!("{x} is not an element")),
                None => Err(format!("variable `{v}` is unassigned")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Compiled::new(phi, &vars).eval(self, &vals))
    }

    pub fn from_json(text: &str) -> Result<VAlgebra, AlgebraError> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        if let Some(v) = file.format.filter(|&v| v != 1) {
            return Err(AlgebraError::Format(v));
        }
        VAlgebra::new(file.atoms, file.cf)
    }

    pub fn to_json(&self) -> String {
        let file = AlgebraFile {
            format: Some(1),
            atoms: self.k,
            cf: self.table(),
        };
        serde_json::to_string(&file).expect("algebra serializes")
    }
}

impl Structure for VAlgebra {
    fn top(&self) -> Mask {
        VAlgebra::top(self)
    }

    fn cf(&self, a: Mask, b: Mask) -> Mask {
        VAlgebra::cf(self, a, b)
    }
}

impl fmt::Display for VAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.elements().map(|x| self.show(x)).collect();
        let w = names.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(2);
        write!(f, "{:>w$} |", "⊡→")?;
        for n in &names {
            write!(f, " {n:>w$}")?;
        }
        writeln!(f)?;
        for x in self.elements() {
            write!(f, "{:>w$} |", names[x as usize])?;
            for y in self.elements() {
                write!(f, " {:>w$}", names[self.cf(x, y) as usize])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// On-disk form: `cf[x][y]` is the element `x ⊡→ y`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<u32>,
    pub atoms: usize,
    pub cf: Vec<Vec<Mask>>,
}

/// A subvariety of V given by extension axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variety {
    pub name: String,
    pub exts: Extensions,
}

impl FromStr for Variety {
    type Err = String;

    /// Accepts `LC`, `CA`, or `V` followed by extension letters.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let exts = match s {
            "LC" => Extensions::of(&[Ext::C]),
            "CA" => Extensions::of(&[Ext::C, Ext::S]),
            _ => match s.strip_prefix('V') {
                Some(rest) => Extensions::parse_letters(rest).map_err(|e| e.to_string())?,
                None => return Err(format!("unknown variety `{s}`")),
            },
        };
        Ok(Variety {
            name: s.to_string(),
            exts,
        })
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
