//! Bit-set helpers shared by the sphere, algebra and duality modules.
//!
//! World sets, algebra elements and point subsets are all plain `u64`
//! masks; bit `i` stands for world (atom, point) `i`.

/// A finite set of indices below 64.
pub type Mask = u64;

/// Largest universe a mask can describe.
pub const MAX_BITS: usize = 64;

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

#[inline]
pub fn contains(set: Mask, i: usize) -> bool {
    set >> i & 1 == 1
}

#[inline]
pub fn singleton(i: usize) -> Mask {
    1u64 << i
}

/// Iterates the indices present in `set`, lowest first.
pub fn members(set: Mask) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

/// Iterates every subset of the `n`-element universe in numeric order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Mask> {
    assert!(n < 64, "subset enumeration over {n} elements");
    0..(1u64 << n)
}

/// Spreads the low bits of `packed` onto the positions set in `support`.
pub fn expand(packed: Mask, support: Mask) -> Mask {
    let mut out = 0;
    for (k, i) in members(support).enumerate() {
        if contains(packed, k) {
            out |= singleton(i);
        }
    }
    out
}

/// Inverse of [`expand`]: packs the bits of `set` that lie in `support`.
pub fn compress(set: Mask, support: Mask) -> Mask {
    let mut out = 0;
    for (k, i) in members(support).enumerate() {
        if contains(set, i) {
            out |= singleton(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_in_order() {
        assert_eq!(members(0b1011_0010).collect::<Vec<_>>(), vec![1, 4, 5, 7]);
        assert_eq!(members(0).count(), 0);
    }

    #[test]
    fn compress_expand_inverse() {
        let support = 0b1101_0110;
        for packed in 0..16 {
            assert_eq!(compress(expand(packed, support), support), packed);
        }
    }

    #[test]
    fn full_edges() {
        assert_eq!(full(0), 0);
        assert_eq!(full(3), 0b111);
        assert_eq!(full(64), u64::MAX);
    }
}
