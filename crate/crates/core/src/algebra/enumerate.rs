//! Exhaustive enumeration of small V-algebras.
//!
//! By C4 each row `y ↦ x ⊡→ y` preserves binary meets, and `x ⊡→ 1 = 1`,
//! so a row is fixed by its values on the coatoms: `x ⊡→ y` is the meet of
//! `x ⊡→ c` over the coatoms `c ≥ y`.

use crate::bits::{self, Mask};

use super::valgebra::VAlgebra;

/// Largest atom count [`enumerate_v_algebras`] accepts.
pub const MAX_ENUM_ATOMS: usize = 2;

/// The row whose value on coatom `1 − {i}` is `values[i]`.
fn row_from_coatoms(k: usize, values: &[Mask]) -> Vec<Mask> {
    let top = bits::full(k);
    (0..1u64 << k)
        .map(|y| {
            (0..k)
                .filter(|&i| !bits::contains(y, i))
                .fold(top, |acc, i| acc & values[i])
        })
        .collect()
}

/// Every table built from coatom values, `((2^k)^k)^(2^k)` in all, in
/// order with row 0 and coatom 0 most significant.
pub fn coatom_candidates(k: usize) -> impl Iterator<Item = VAlgebra> {
    assert!(
        k <= MAX_ENUM_ATOMS,
        "enumeration supports at most {MAX_ENUM_ATOMS} atoms"
    );
    let n = 1usize << k;
    let per_value = n as u64;
    let per_row = per_value.pow(k as u32);
    let rows: Vec<Vec<Mask>> = (0..per_row)
        .map(|mut code| {
            let mut values = vec![0; k];
            for v in values.iter_mut().rev() {
                *v = code % per_value;
                code /= per_value;
            }
            row_from_coatoms(k, &values)
        })
        .collect();
    let total = per_row.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut pick = vec![0usize; n];
        for p in pick.iter_mut().rev() {
            *p = (code % per_row) as usize;
            code /= per_row;
        }
        let table = pick.into_iter().map(|i| rows[i].clone()).collect();
        VAlgebra::new(k, table).expect("well-formed candidate")
    })
}

/// All V-algebras on `2^k` elements for `k ≤ 2`, in candidate order.
pub fn enumerate_v_algebras(k: usize) -> Vec<VAlgebra> {
    coatom_candidates(k).filter(|a| a.check_axioms().is_ok()).collect()
}
