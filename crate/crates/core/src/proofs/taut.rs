//! Truth tables over propositional skeletons.

use crate::syntax::Formula;

/// Atoms beyond this many make the table too large to check.
pub const MAX_TAUT_ATOMS: usize = 24;

/// Whether `f` is a classical tautology when variables and `⊡→`-formulas
/// are read as independent atoms. `None` if there are too many atoms.
pub fn is_tautology(f: &Formula) -> Option<bool> {
    let mut atoms = Vec::new();
    collect_atoms(f, &mut atoms);
    let n = atoms.len();
    if n > MAX_TAUT_ATOMS {
        return None;
    }
    // The low six atoms vary inside one word; the rest are fixed per chunk.
    let low = n.min(6);
    let lanes = if low == 6 { u64::MAX } else { (1u64 << (1 << low)) - 1 };
    let chunks = 1u64 << (n - low);
    for chunk in 0..chunks {
        let vals: Vec<u64> = (0..n)
            .map(|i| {
                if i < low {
                    PATTERNS[i]
                } else if chunk >> (i - low) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            })
            .collect();
        if eval(f, &atoms, &vals) & lanes != lanes {
            return Some(false);
        }
    }
    Some(true)
}

const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

fn collect_atoms<'a>(f: &'a Formula, atoms: &mut Vec<&'a Formula>) {
    match f {
        Formula::Var(_) | Formula::Cf(..) => {
            if !atoms.contains(&f) {
                atoms.push(f);
            }
        }
        Formula::Bot | Formula::Top => {}
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
            collect_atoms(l, atoms);
            collect_atoms(r, atoms);
        }
    }
}

fn eval(f: &Formula, atoms: &[&Formula], vals: &[u64]) -> u64 {
    match f {
        Formula::Var(_) | Formula::Cf(..) => vals[atoms.iter().position(|a| *a == f).expect("atom was collected")],
        Formula::Bot => 0,
        Formula::Top => u64::MAX,
        Formula::And(l, r) => eval(l, atoms, vals) & eval(r, atoms, vals),
        Formula::Or(l, r) => eval(l, atoms, vals) | eval(r, atoms, vals),
        Formula::Imp(l, r) => !eval(l, atoms, vals) | eval(r, atoms, vals),
    }
}
