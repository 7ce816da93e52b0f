//! Three V-algebras on the four-element Boolean algebra `{0, a, ¬a, 1}`
//! whose lattice filters outnumber their congruences.
//!
//! Elements are masks: `0 = 0`, `a = 1`, `¬a = 2`, `1 = 3`.

use super::valgebra::VAlgebra;

/// In the centered Stalnakerian uniform subvariety.
pub fn algebra_a() -> VAlgebra {
    table([[3, 3, 3, 3], [0, 3, 0, 3], [0, 0, 3, 3], [0, 1, 2, 3]])
}

/// Weakly centered and absolute.
pub fn algebra_b() -> VAlgebra {
    table([[3, 3, 3, 3], [0, 3, 0, 3], [0, 0, 3, 3], [0, 0, 0, 3]])
}

/// Totally reflexive, Stalnakerian and absolute.
pub fn algebra_c() -> VAlgebra {
    table([[3, 3, 3, 3], [0, 3, 0, 3], [0, 0, 3, 3], [0, 3, 0, 3]])
}

fn table(rows: [[u64; 4]; 4]) -> VAlgebra {
    VAlgebra::new(2, rows.iter().map(|r| r.to_vec()).collect()).expect("4×4 table")
}
