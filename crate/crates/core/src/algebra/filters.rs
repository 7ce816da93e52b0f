use std::fmt;

use crate::bits::{self, Mask};

use super::valgebra::VAlgebra;

/// A set of elements with its filter properties computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    elements: Vec<Mask>,
    is_lattice_filter: bool,
    is_open: bool,
}

impl Filter {
    /// Wraps an arbitrary element set, computing both flags.
    pub fn from_elements(alg: &VAlgebra, mut elements: Vec<Mask>) -> Filter {
        elements.sort_unstable();
        elements.dedup();
        let has = |x: Mask| elements.binary_search(&x).is_ok();
        let is_lattice_filter = !elements.is_empty()
            && elements.iter().all(|&x| {
                alg.elements().all(|y| !bits::is_subset(x, y) || has(y)) && elements.iter().all(|&y| has(x & y))
            });
        let is_open = is_lattice_filter && elements.iter().all(|&x| has(alg.boxed(x)));
        Filter {
            elements,
            is_lattice_filter,
            is_open,
        }
    }

    /// `↑g`
    pub fn principal(alg: &VAlgebra, g: Mask) -> Filter {
        let elements = alg.elements().filter(|&x| bits::is_subset(g, x)).collect();
        Filter::from_elements(alg, elements)
    }

    pub fn elements(&self) -> &[Mask] {
        &self.elements
    }

    pub fn contains(&self, x: Mask) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_lattice_filter(&self) -> bool {
        self.is_lattice_filter
    }

    pub fn is_open(&self) -> bool {
        self.is_open
    }

    /// The least element; every lattice filter of a finite algebra is
    /// principal.
    pub fn generator(&self) -> Option<Mask> {
        let g = self.elements.iter().fold(Mask::MAX, |acc, &x| acc & x);
        (self.is_lattice_filter).then_some(g)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn show(&self, alg: &VAlgebra) -> String {
        let names: Vec<String> = self.elements.iter().map(|&x| alg.show(x)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// All lattice filters, smallest first and then by generator.
pub fn lattice_filters(alg: &VAlgebra) -> Vec<Filter> {
    let mut gens: Vec<Mask> = alg.elements().collect();
    gens.sort_by_key(|&g| (std::cmp::Reverse(g.count_ones()), g));
    gens.into_iter().map(|g| Filter::principal(alg, g)).collect()
}

/// Lattice filters closed under `□`, in the order of [`lattice_filters`].
pub fn open_filters(alg: &VAlgebra) -> Vec<Filter> {
    lattice_filters(alg).into_iter().filter(Filter::is_open).collect()
}

/// Generators of the open filters computed from a `□` table alone, with
/// `boxes[x] = □x`.
pub fn open_filter_generators_from_box(k: usize, boxes: &[Mask]) -> Vec<Mask> {
    let n = 1u64 << k;
    let mut gens: Vec<Mask> = (0..n)
        .filter(|&g| {
            (0..n)
                .filter(|&x| bits::is_subset(g, x))
                .all(|x| bits::is_subset(g, boxes[x as usize]))
        })
        .collect();
    gens.sort_by_key(|&g| (std::cmp::Reverse(g.count_ones()), g));
    gens
}

/// An equivalence relation on elements, stored as a block index per
/// element. Blocks are numbered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    class_of: Vec<usize>,
}

impl Congruence {
    /// Normalizes arbitrary block labels.
    pub fn from_labels(labels: &[usize]) -> Congruence {
        let mut seen: Vec<usize> = Vec::new();
        let class_of = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(*l);
                    seen.len() - 1
                }
            })
            .collect();
        Congruence { class_of }
    }

    /// `θ_F = {(a, b) : a ↔ b ∈ F}` for the filter `↑g`, which relates `a`
    /// and `b` exactly when `a ∧ g = b ∧ g`.
    pub fn from_filter(alg: &VAlgebra, f: &Filter) -> Congruence {
        let labels: Vec<usize> = alg
            .elements()
            .map(|a| {
                alg.elements()
                    .find(|&b| f.contains(alg.iff(a, b)))
                    .expect("a ↔ a = 1 lies in every filter") as usize
            })
            .collect();
        Congruence::from_labels(&labels)
    }

    pub fn related(&self, a: Mask, b: Mask) -> bool {
        self.class_of[a as usize] == self.class_of[b as usize]
    }

    pub fn class_of(&self, a: Mask) -> usize {
        self.class_of[a as usize]
    }

    pub fn blocks(&self) -> Vec<Vec<Mask>> {
        let count = self.class_of.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x as Mask);
        }
        out
    }

    /// `F_θ`, the block of the top element.
    pub fn one_block(&self, alg: &VAlgebra) -> Filter {
        let c = self.class_of(alg.top());
        let els = alg.elements().filter(|&x| self.class_of(x) == c).collect();
        Filter::from_elements(alg, els)
    }

    /// Whether the relation respects `∧`, `∨`, `¬` and `⊡→`.
    pub fn is_compatible(&self, alg: &VAlgebra) -> bool {
        let els: Vec<Mask> = alg.elements().collect();
        for &a in &els {
            for &b in &els {
                if !self.related(a, b) {
                    continue;
                }
                if !self.related(alg.neg(a), alg.neg(b)) {
                    return false;
                }
                for &c in &els {
                    let ok = self.related(a & c, b & c)
                        && self.related(a | c, b | c)
                        && self.related(alg.cf(a, c), alg.cf(b, c))
                        && self.related(alg.cf(c, a), alg.cf(c, b));
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn block_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let v: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", v.join(","))
            })
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

/// Congruences `θ_F` for the open filters `F`, in filter order.
pub fn congruences(alg: &VAlgebra) -> Vec<Congruence> {
    open_filters(alg)
        .iter()
        .map(|f| Congruence::from_filter(alg, f))
        .collect()
}

/// The quotient `A/θ` together with the projection `A → A/θ`.
///
/// Blocks of `θ_{↑g}` correspond to the elements below `g`, so the
/// quotient is the powerset of the atoms of `g`.
pub fn quotient(alg: &VAlgebra, theta: &Congruence) -> Result<(VAlgebra, Vec<Mask>), String> {
    let f = theta.one_block(alg);
    let g = f.generator().ok_or("the block of 1 is not a lattice filter")?;
    if *theta != Congruence::from_filter(alg, &f) {
        return Err("relation is not induced by its block of 1".into());
    }
    if !theta.is_compatible(alg) {
        return Err("relation is not compatible with ⊡→".into());
    }
    let k = g.count_ones() as usize;
    let project = |a: Mask| bits::compress(a & g, g);
    let q = VAlgebra::from_fn(k, |x, y| project(alg.cf(bits::expand(x, g), bits::expand(y, g))));
    let pi = alg.elements().map(project).collect();
    Ok((q, pi))
}

/// The first operation and arguments at which `h` fails to be a
/// homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFailure {
    pub op: &'static str,
    pub args: Vec<Mask>,
}

impl fmt::Display for HomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} not preserved at {:?}", self.op, self.args)
    }
}

/// Checks that `h` (indexed by elements of `a`) preserves `0`, `1`, `∧`,
/// `∨`, `¬` and `⊡→`.
pub fn check_homomorphism(a: &VAlgebra, b: &VAlgebra, h: &[Mask]) -> Result<(), HomFailure> {
    let fail = |op, args: &[Mask]| {
        Err(HomFailure {
            op,
            args: args.to_vec(),
        })
    };
    if h.len() != a.size() {
        return fail("totality", &[h.len() as Mask]);
    }
    if let Some(x) = a.elements().find(|&x| h[x as usize] > b.top()) {
        return fail("codomain", &[x]);
    }
    let m = |x: Mask| h[x as usize];
    if m(0) != 0 {
        return fail("0", &[]);
    }
    if m(a.top()) != b.top() {
        return fail("1", &[]);
    }
    for x in a.elements() {
        if m(a.neg(x)) != b.neg(m(x)) {
            return fail("¬", &[x]);
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if m(x & y) != m(x) & m(y) {
                return fail("∧", &[x, y]);
            }
            if m(x | y) != m(x) | m(y) {
                return fail("∨", &[x, y]);
            }
            if m(a.cf(x, y)) != b.cf(m(x), m(y)) {
                return fail("⊡→", &[x, y]);
            }
        }
    }
    Ok(())
}
