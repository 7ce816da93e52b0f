use crate::algebra::{check_homomorphism, HomFailure, VAlgebra};
use crate::bits::{self, Mask};

use super::alpha::AlphaModel;

/// Point names for the atoms of `alg`: `a` and `¬a` for two atoms,
/// otherwise `a0, a1, …`.
fn atom_names(alg: &VAlgebra) -> Vec<String> {
    (0..alg.atoms())
        .map(|i| {
            if alg.atoms() == 2 {
                alg.show(bits::singleton(i))
            } else {
                format!("a{i}")
            }
        })
        .collect()
}

/// The dual α-model. Points are atoms (each generating an ultrafilter);
/// `f(a, x)` is the set of atoms below `⋀{c : x ≤ a ⊡→ c}`.
pub fn alpha_from_algebra(alg: &VAlgebra) -> AlphaModel {
    let top = alg.top();
    AlphaModel::from_fn(alg.atoms(), |a, x| {
        alg.elements()
            .filter(|&c| bits::contains(alg.cf(a, c), x))
            .fold(top, |acc, c| acc & c)
    })
    .with_names(atom_names(alg))
    .expect("atom names are distinct")
}

/// The complex algebra: all subsets of points, with
/// `A ⊡→ B = {x : f(A, x) ⊆ B}`.
pub fn algebra_from_alpha(s: &AlphaModel) -> VAlgebra {
    VAlgebra::from_fn(s.len(), |a, b| s.cf(a, b))
}

/// Checks that `a ↦ stone(a)` is an isomorphism from `alg` onto the
/// complex algebra of its dual. With atoms as points `stone(a)` is `a`'s
/// own bit set, so the map is a bijection by construction and only the
/// operations need checking.
pub fn stone_roundtrip_check(alg: &VAlgebra) -> Result<(), HomFailure> {
    let back = algebra_from_alpha(&alpha_from_algebra(alg));
    let stone: Vec<Mask> = alg.elements().collect();
    check_homomorphism(alg, &back, &stone)
}

/// `Stone(h)` for a homomorphism `h : A → B` given as an element map:
/// sends atom `y` of `B` to the atom generating `h⁻¹[↑y]`, the atom of `A`
/// below `⋀{a : y ≤ h(a)}`.
///
/// Returns the first atom of `B` whose preimage filter is not generated
/// by an atom, which happens only when `h` is not a homomorphism.
pub fn dual_of_homomorphism(a: &VAlgebra, b: &VAlgebra, h: &[Mask]) -> Result<Vec<usize>, usize> {
    (0..b.atoms())
        .map(|y| {
            let g = a
                .elements()
                .filter(|&x| bits::contains(h[x as usize], y))
                .fold(a.top(), |acc, x| acc & x);
            if g.count_ones() == 1 {
                Ok(g.trailing_zeros() as usize)
            } else {
                Err(y)
            }
        })
        .collect()
}
