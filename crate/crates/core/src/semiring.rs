//! The two semirings matrices are instantiated over: naturals for labelled
//! adjacency and booleans for permutation matrices.

use std::fmt::Debug;

/// A commutative-additive semiring with an absorbing zero.
pub trait Semiring: Copy + PartialEq + Debug + Send + Sync + 'static {
    const ZERO: Self;
    const ONE: Self;

    fn add(self, other: Self) -> Self;
    fn mul(self, other: Self) -> Self;

    #[inline]
    fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

/// Natural numbers, stored as `u32`. Arithmetic saturates at `u32::MAX`,
/// which keeps every semiring law intact on the representable range.
impl Semiring for u32 {
    const ZERO: Self = 0;
    const ONE: Self = 1;

    #[inline]
    fn add(self, other: Self) -> Self {
        self.saturating_add(other)
    }

    #[inline]
    fn mul(self, other: Self) -> Self {
        self.saturating_mul(other)
    }
}

/// Booleans with `or` as addition and `and` as multiplication.
impl Semiring for bool {
    const ZERO: Self = false;
    const ONE: Self = true;

    #[inline]
    fn add(self, other: Self) -> Self {
        self | other
    }

    #[inline]
    fn mul(self, other: Self) -> Self {
        self & other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn laws<S: Semiring>(a: S, b: S, c: S) {
        assert_eq!(a.add(b), b.add(a));
        assert_eq!(a.add(b).add(c), a.add(b.add(c)));
        assert_eq!(a.add(S::ZERO), a);
        assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        assert_eq!(a.mul(S::ONE), a);
        assert_eq!(S::ONE.mul(a), a);
        assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
        assert_eq!(b.add(c).mul(a), b.mul(a).add(c.mul(a)));
        assert!(a.mul(S::ZERO).is_zero());
        assert!(S::ZERO.mul(a).is_zero());
    }

    proptest! {
        #[test]
        fn nat_laws(a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            laws(a, b, c);
        }

        #[test]
        fn small_nat_laws(a in 0u32..100, b in 0u32..100, c in 0u32..100) {
            laws(a, b, c);
        }

        #[test]
        fn bool_laws(a in any::<bool>(), b in any::<bool>(), c in any::<bool>()) {
            laws(a, b, c);
        }
    }
}
