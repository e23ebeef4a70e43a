//! Permutations stored as index sequences.
//!
//! A [`Perm`] `p` of size `K` reorders a sequence of `K` nodes: position `i`
//! of the reordered sequence holds original node `p[i]`. Its matrix is the
//! boolean `K x K` matrix with a one at `(p[i], i)`, so reordering a matrix
//! `M` by `p` is `P^T M P`. Only the index form is ever stored.

use std::fmt;

use thiserror::Error;

use crate::semiring::Semiring;
use crate::sparse::SparseMat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("index {index} out of range for permutation of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("index {0} occurs more than once")]
    Repeated(usize),
    #[error("permutation size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
}

/// A bijection on `{0, .., K-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(size: usize) -> Self {
        Self {
            map: (0..size).collect(),
        }
    }

    /// Checks that `map` is a bijection.
    pub fn new(map: Vec<usize>) -> Result<Self, PermError> {
        let size = map.len();
        let mut seen = vec![false; size];
        for &i in &map {
            if i >= size {
                return Err(PermError::OutOfRange { index: i, size });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(PermError::Repeated(i));
            }
        }
        Ok(Self { map })
    }

    /// Caller guarantees `map` is a bijection.
    pub(crate) fn from_vec_unchecked(map: Vec<usize>) -> Self {
        debug_assert!(Self::new(map.clone()).is_ok());
        Self { map }
    }

    /// Exchanges a leading block of size `a` with a trailing block of size
    /// `b`: the reordered sequence lists the `b` block first.
    ///
    /// `block_swap(2, 3)` is `[2, 3, 4, 0, 1]`.
    pub fn block_swap(a: usize, b: usize) -> Self {
        Self {
            map: (a..a + b).chain(0..a).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Matrix product `P Q`: `(p . q)[i] = p[q[i]]`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.len() != other.len() {
            return Err(PermError::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Perm {
            map: other.map.iter().map(|&q| self.map[q]).collect(),
        })
    }

    /// Transpose of the permutation matrix.
    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.map.iter().enumerate() {
            inv[p] = i;
        }
        Perm { map: inv }
    }

    /// Block-diagonal `P ⊕ Q`.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let offset = self.len();
        let mut map = Vec::with_capacity(self.len() + other.len());
        map.extend_from_slice(&self.map);
        map.extend(other.map.iter().map(|&q| q + offset));
        Perm { map }
    }

    /// Sum of any number of blocks, in order.
    pub fn direct_sum_all<'a>(blocks: impl IntoIterator<Item = &'a Perm>) -> Perm {
        let mut map = Vec::new();
        for block in blocks {
            let offset = map.len();
            map.extend(block.map.iter().map(|&q| q + offset));
        }
        Perm { map }
    }

    /// Reorders `items` so that `out[i] = items[p[i]]`.
    pub fn reorder<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len(), "reorder: length mismatch");
        self.map.iter().map(|&p| items[p].clone()).collect()
    }

    /// The permutation matrix, with a one at `(p[i], i)`.
    pub fn to_matrix<S: Semiring>(&self) -> SparseMat<S> {
        let n = self.len();
        let triples = self.map.iter().enumerate().map(|(i, &p)| (p, i, S::ONE));
        SparseMat::from_triples(n, n, triples).expect("permutation indices are in range")
    }
}

impl std::ops::Index<usize> for Perm {
    type Output = usize;

    #[inline]
    fn index(&self, i: usize) -> &usize {
        &self.map[i]
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.map)
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;

    fn try_from(map: Vec<usize>) -> Result<Self, Self::Error> {
        Perm::new(map)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_perm(max: usize) -> impl Strategy<Value = Perm> {
        (0..=max)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Perm::new(v).unwrap())
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Perm::new(vec![0, 2]),
            Err(PermError::OutOfRange { index: 2, size: 2 })
        );
        assert_eq!(Perm::new(vec![1, 1]), Err(PermError::Repeated(1)));
    }

    #[test]
    fn block_swaps() {
        assert_eq!(Perm::block_swap(1, 1).as_slice(), &[1, 0]);
        assert_eq!(Perm::block_swap(2, 3).as_slice(), &[2, 3, 4, 0, 1]);
        assert!(Perm::block_swap(0, 4).is_identity());
        assert!(Perm::block_swap(4, 0).is_identity());
    }

    #[test]
    fn compose_size_mismatch() {
        let e = Perm::identity(2).compose(&Perm::identity(3)).unwrap_err();
        assert_eq!(e, PermError::SizeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn direct_sum_offsets() {
        let p = Perm::block_swap(1, 1).direct_sum(&Perm::block_swap(1, 2));
        assert_eq!(p.as_slice(), &[1, 0, 3, 4, 2]);
    }

    #[test]
    fn reorder_semantics() {
        let p = Perm::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.reorder(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
    }

    proptest! {
        #[test]
        fn inverse_cancels(p in arb_perm(12)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        }

        // compose matches the product of permutation matrices
        #[test]
        fn compose_is_matrix_product(
            (p, q) in (0usize..10).prop_flat_map(|n| {
                let s = Just((0..n).collect::<Vec<_>>());
                (s.clone().prop_shuffle(), s.prop_shuffle())
            })
        ) {
            let p = Perm::new(p).unwrap();
            let q = Perm::new(q).unwrap();
            let pq = p.compose(&q).unwrap().to_matrix::<bool>();
            let prod = p.to_matrix::<bool>().matmul(&q.to_matrix()).unwrap();
            prop_assert_eq!(pq, prod);
        }

        #[test]
        fn inverse_is_transpose(p in arb_perm(12)) {
            prop_assert_eq!(p.inverse().to_matrix::<bool>(), p.to_matrix::<bool>().transpose());
        }
    }
}
