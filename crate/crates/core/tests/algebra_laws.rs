//! Laws checked exhaustively on every V-algebra with at most two atoms.

use lewis_core::algebra::{
    congruences, enumerate_v_algebras, lattice_filters, open_filter_generators_from_box, open_filters, Congruence,
    VAlgebra,
};
use lewis_core::bits::{self, Mask};
use lewis_core::syntax::{Ext, Extensions, UReading};

fn corpus() -> Vec<VAlgebra> {
    (0..=2).flat_map(enumerate_v_algebras).collect()
}

fn le(x: Mask, y: Mask) -> bool {
    bits::is_subset(x, y)
}

#[test]
fn derived_identities() {
    for a in corpus() {
        let top = a.top();
        for x in a.elements() {
            assert_eq!(a.cf(0, x), top);
            assert_eq!(a.cf(x, top), top);
            for y in a.elements() {
                if a.imp(x, y) == top {
                    assert_eq!(a.cf(x, y), top, "x ≤ y but x ⊡→ y < 1 at {x}, {y}\n{a}");
                }
                for z in a.elements() {
                    assert!(le(a.cf(x, z) & a.cf(y, z), a.cf(x | y, z)));
                    assert!(le(a.cf(x, y), a.cf(x, y | z)));
                }
            }
        }
    }
}

/// `x ⊡→ y = 1` forces `x ≤ y` once `x ⊡→ y ≤ x → y` (VW, hence LC), but
/// not in V at large.
#[test]
fn unit_counterfactual_gives_order_in_vw() {
    let vw = Extensions::of(&[Ext::W]);
    let mut failures_outside = 0;
    for a in corpus() {
        let top = a.top();
        let holds = a
            .elements()
            .all(|x| a.elements().all(|y| a.cf(x, y) != top || a.imp(x, y) == top));
        if a.check_variety(vw, UReading::default()).is_ok() {
            assert!(holds, "{a}");
        } else {
            failures_outside += usize::from(!holds);
        }
    }
    assert!(failures_outside > 0);
}

/// `x ⊡→ 0 ≤ ¬x` is the algebraic form of axiom T (by C4, `x ⊡→ 0` is
/// `x ⊡→ ¬x`), so it holds exactly in the algebras of VT. The two-element
/// algebra with `1 ⊡→ 0 = 1`, dual to a world with no spheres, refutes it.
#[test]
fn counterfactual_falsum_bounds_negation_exactly_in_vt() {
    let vt = Extensions::of(&[Ext::T]);
    let mut outside = 0;
    for a in corpus() {
        let bounded = a.elements().all(|x| le(a.cf(x, 0), a.neg(x)));
        let in_vt = a.check_variety(vt, UReading::default()).is_ok();
        assert_eq!(bounded, in_vt, "{a}");
        outside += usize::from(!bounded);
    }
    assert!(outside > 0);
    let empty = VAlgebra::new(1, vec![vec![1, 1], vec![1, 1]]).unwrap();
    assert!(empty.check_axioms().is_ok());
    assert_eq!(empty.cf(1, 0), 1);
}

#[test]
fn right_monotonicity() {
    for a in corpus() {
        for x in a.elements() {
            for y in a.elements().filter(|&y| le(x, y)) {
                for z in a.elements() {
                    assert!(le(a.cf(z, x), a.cf(z, y)));
                }
            }
        }
    }
}

#[test]
fn open_filters_and_congruences_correspond() {
    for a in corpus() {
        let open = open_filters(&a);
        let cons = congruences(&a);
        assert_eq!(open.len(), cons.len(), "{a}");
        for f in &open {
            let theta = Congruence::from_filter(&a, f);
            assert!(theta.is_compatible(&a));
            assert_eq!(&theta.one_block(&a), f);
            assert!(cons.contains(&theta));
        }
        for theta in &cons {
            let f = theta.one_block(&a);
            assert!(f.is_open(), "{a}");
            assert_eq!(&Congruence::from_filter(&a, &f), theta);
        }
    }
}

#[test]
fn open_filters_depend_only_on_box() {
    for a in corpus() {
        let boxes: Vec<Mask> = a.elements().map(|x| a.boxed(x)).collect();
        let mut from_box = open_filter_generators_from_box(a.atoms(), &boxes);
        let mut from_cf: Vec<Mask> = open_filters(&a).iter().map(|f| f.generator().unwrap()).collect();
        from_box.sort_unstable();
        from_cf.sort_unstable();
        assert_eq!(from_box, from_cf, "{a}");
    }
}

#[test]
fn lattice_filters_are_principal_upsets() {
    // Finite Boolean algebras: one nonempty filter per generator.
    for a in corpus() {
        assert_eq!(lattice_filters(&a).len(), a.size());
    }
}
