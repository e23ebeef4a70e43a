//! Hypergraph adjacency representations.
//!
//! A [`Har`] of type `A -> B` stores a string diagram as the adjacency matrix
//! of its bipartite wire/box encoding:
//!
//! * `K` nodes, each a [`NodeLabel::Wire`] or a [`NodeLabel::Box`] carrying a
//!   signature operation;
//! * a `K x K` natural-number matrix `M`, where entry `(i, j) = k` is an edge
//!   from node `j` to node `i`. An edge into a box with label `k` makes the
//!   source wire the box's `k`-th input; an edge out of a box with label `k`
//!   makes the target wire its `k`-th output;
//! * two permutations `L` and `R`. Reordering the nodes by `L` puts the left
//!   interface first, in interface order; reordering by `R` puts the right
//!   interface last. Positions of `L` past `A` and of `R` before `K - B`
//!   carry no meaning.
//!
//! All operations are pure; values are immutable once built.

mod equiv;
mod ops;

pub use equiv::{
    canonical_order, canonicalize, check_permeq, check_permeq_strict, find_witness, iso_eq,
};

use std::fmt;

use thiserror::Error;

use crate::perm::Perm;
use crate::signature::{OpId, Signature, SignatureError};
use crate::sparse::{NatMat, SparseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeLabel {
    Wire,
    Box(OpId),
}

impl NodeLabel {
    pub fn is_wire(self) -> bool {
        matches!(self, NodeLabel::Wire)
    }

    pub fn op(self) -> Option<OpId> {
        match self {
            NodeLabel::Wire => None,
            NodeLabel::Box(op) => Some(op),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarError {
    #[error("{what} has size {found}, expected {expected}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{side} interface of size {size} exceeds node count {nodes}")]
    InterfaceTooLarge {
        side: &'static str,
        size: usize,
        nodes: usize,
    },
    #[error("boundary mismatch: codomain {cod} against domain {dom}")]
    BoundaryMismatch { cod: usize, dom: usize },
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Sparse(#[from] SparseError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Har {
    dom: usize,
    cod: usize,
    adjacency: NatMat,
    left: Perm,
    right: Perm,
    labels: Vec<NodeLabel>,
}

impl Har {
    /// Assembles a HAR from its parts, checking only that sizes agree. Use
    /// [`Har::validate`] for the well-formedness conditions.
    pub fn new(
        dom: usize,
        cod: usize,
        adjacency: NatMat,
        left: Perm,
        right: Perm,
        labels: Vec<NodeLabel>,
    ) -> Result<Self, HarError> {
        let k = labels.len();
        let shape = |what, found| {
            if found == k {
                Ok(())
            } else {
                Err(HarError::Shape {
                    what,
                    expected: k,
                    found,
                })
            }
        };
        shape("adjacency rows", adjacency.rows())?;
        shape("adjacency columns", adjacency.cols())?;
        shape("left permutation", left.len())?;
        shape("right permutation", right.len())?;
        for (side, size) in [("left", dom), ("right", cod)] {
            if size > k {
                return Err(HarError::InterfaceTooLarge {
                    side,
                    size,
                    nodes: k,
                });
            }
        }
        Ok(Self {
            dom,
            cod,
            adjacency,
            left,
            right,
            labels,
        })
    }

    pub(crate) fn from_parts_unchecked(
        dom: usize,
        cod: usize,
        adjacency: NatMat,
        left: Perm,
        right: Perm,
        labels: Vec<NodeLabel>,
    ) -> Self {
        debug_assert!(Self::new(
            dom,
            cod,
            adjacency.clone(),
            left.clone(),
            right.clone(),
            labels.clone()
        )
        .is_ok());
        Self {
            dom,
            cod,
            adjacency,
            left,
            right,
            labels,
        }
    }

    /// Left boundary size `A`.
    #[inline]
    pub fn dom(&self) -> usize {
        self.dom
    }

    /// Right boundary size `B`.
    #[inline]
    pub fn cod(&self) -> usize {
        self.cod
    }

    /// Node count `K`.
    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn adjacency(&self) -> &NatMat {
        &self.adjacency
    }

    #[inline]
    pub fn left(&self) -> &Perm {
        &self.left
    }

    #[inline]
    pub fn right(&self) -> &Perm {
        &self.right
    }

    #[inline]
    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    /// Left interface nodes, in interface order.
    pub fn left_interface(&self) -> &[usize] {
        &self.left.as_slice()[..self.dom]
    }

    /// Right interface nodes, in interface order.
    pub fn right_interface(&self) -> &[usize] {
        &self.right.as_slice()[self.size() - self.cod..]
    }

    pub fn box_count(&self) -> usize {
        self.labels.iter().filter(|l| !l.is_wire()).count()
    }

    fn interface_flags(&self) -> (Vec<bool>, Vec<bool>) {
        let mut in_left = vec![false; self.size()];
        let mut in_right = vec![false; self.size()];
        for &u in self.left_interface() {
            in_left[u] = true;
        }
        for &u in self.right_interface() {
            in_right[u] = true;
        }
        (in_left, in_right)
    }

    /// Checks every well-formedness condition, reporting the first failure.
    ///
    /// Clauses are checked in a fixed order: box labels name signature
    /// operations; edges join a wire and a box; interface nodes are wires;
    /// wire degrees (at most one edge each way, no incoming edge exactly on
    /// the left interface, no outgoing edge exactly on the right interface);
    /// box edge labels are `1..=arity` in and `1..=coarity` out; acyclicity.
    pub fn validate(&self, sig: &Signature) -> Result<(), Violation> {
        let k = self.size();
        let fail = |clause, node| Err(Violation { clause, node });

        for (u, label) in self.labels.iter().enumerate() {
            if let NodeLabel::Box(op) = label {
                if !sig.contains(*op) {
                    return fail(Clause::UnknownOperation, u);
                }
            }
        }

        for (i, j, _) in self.adjacency.iter() {
            if self.labels[i].is_wire() == self.labels[j].is_wire() {
                return fail(Clause::NotBipartite, j.min(i));
            }
        }

        let (in_left, in_right) = self.interface_flags();
        if let Some(u) = (0..k).find(|&u| (in_left[u] || in_right[u]) && !self.labels[u].is_wire())
        {
            return fail(Clause::InterfaceNotWire, u);
        }

        let out_deg = self.adjacency.col_counts();
        for u in 0..k {
            if !self.labels[u].is_wire() {
                continue;
            }
            let in_deg = self.adjacency.row_nnz(u);
            let clause = if in_deg > 1 {
                Some(Clause::WireInDegree)
            } else if out_deg[u] > 1 {
                Some(Clause::WireOutDegree)
            } else if in_left[u] && in_deg == 1 {
                Some(Clause::LeftInterfaceHasInput)
            } else if !in_left[u] && in_deg == 0 {
                Some(Clause::MissingInput)
            } else if in_right[u] && out_deg[u] == 1 {
                Some(Clause::RightInterfaceHasOutput)
            } else if !in_right[u] && out_deg[u] == 0 {
                Some(Clause::MissingOutput)
            } else {
                None
            };
            if let Some(clause) = clause {
                return fail(clause, u);
            }
        }

        let out_adj = self.adjacency.transpose();
        let mut seen: Vec<bool> = Vec::new();
        let mut labels_exact = |labels: &[u32], expected: usize| {
            if labels.len() != expected {
                return false;
            }
            seen.clear();
            seen.resize(expected, false);
            labels.iter().all(|&l| {
                let l = l as usize;
                l >= 1 && l <= expected && !std::mem::replace(&mut seen[l - 1], true)
            })
        };
        for u in 0..k {
            let NodeLabel::Box(op) = self.labels[u] else {
                continue;
            };
            let op = sig.op(op);
            if !labels_exact(self.adjacency.row(u).1, op.arity) {
                return fail(Clause::BoxIncomingLabels, u);
            }
            if !labels_exact(out_adj.row(u).1, op.coarity) {
                return fail(Clause::BoxOutgoingLabels, u);
            }
        }

        // Kahn's algorithm; anything never released lies on or behind a cycle
        let mut indeg: Vec<usize> = (0..k).map(|u| self.adjacency.row_nnz(u)).collect();
        let mut ready: Vec<usize> = (0..k).filter(|&u| indeg[u] == 0).collect();
        let mut released = vec![false; k];
        while let Some(u) = ready.pop() {
            released[u] = true;
            for &v in out_adj.row(u).0 {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(v);
                }
            }
        }
        if let Some(u) = released.iter().position(|&r| !r) {
            return fail(Clause::Cyclic, u);
        }
        Ok(())
    }

    /// Whether every row of `M` has at most `max(m, 1)` entries and every
    /// column at most `max(n, 1)`, for the signature's largest arity `m` and
    /// coarity `n`.
    pub fn within_sparsity_bounds(&self, sig: &Signature) -> bool {
        let row_bound = sig.max_arity().max(1);
        let col_bound = sig.max_coarity().max(1);
        (0..self.size()).all(|u| self.adjacency.row_nnz(u) <= row_bound)
            && self.adjacency.col_counts().iter().all(|&c| c <= col_bound)
    }

    /// Replaces the meaningless parts of `L` and `R` with ascending node
    /// order: `L` lists the left interface then every other node ascending,
    /// `R` lists every non-right-interface node ascending then the right
    /// interface.
    pub fn with_normal_boundaries(&self) -> Har {
        let (in_left, in_right) = self.interface_flags();
        let k = self.size();
        let left: Vec<usize> = self
            .left_interface()
            .iter()
            .copied()
            .chain((0..k).filter(|&u| !in_left[u]))
            .collect();
        let right: Vec<usize> = (0..k)
            .filter(|&u| !in_right[u])
            .chain(self.right_interface().iter().copied())
            .collect();
        Har {
            left: Perm::from_vec_unchecked(left),
            right: Perm::from_vec_unchecked(right),
            ..self.clone()
        }
    }
}

impl fmt::Debug for Har {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Har")
            .field("type", &format_args!("{} -> {}", self.dom, self.cod))
            .field("size", &self.size())
            .field("edges", &self.adjacency.to_triples())
            .field("left", &self.left)
            .field("right", &self.right)
            .field("labels", &self.labels)
            .finish()
    }
}

/// A failed well-formedness condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    UnknownOperation,
    NotBipartite,
    InterfaceNotWire,
    WireInDegree,
    WireOutDegree,
    LeftInterfaceHasInput,
    MissingInput,
    RightInterfaceHasOutput,
    MissingOutput,
    BoxIncomingLabels,
    BoxOutgoingLabels,
    Cyclic,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::UnknownOperation => "box label names an operation outside the signature",
            Clause::NotBipartite => "edge joins two nodes of the same kind",
            Clause::InterfaceNotWire => "interface node is not a wire",
            Clause::WireInDegree => "wire has more than one incoming edge",
            Clause::WireOutDegree => "wire has more than one outgoing edge",
            Clause::LeftInterfaceHasInput => "left-interface wire has an incoming edge",
            Clause::MissingInput => "wire without incoming edge is not on the left interface",
            Clause::RightInterfaceHasOutput => "right-interface wire has an outgoing edge",
            Clause::MissingOutput => "wire without outgoing edge is not on the right interface",
            Clause::BoxIncomingLabels => "box incoming labels not contiguous",
            Clause::BoxOutgoingLabels => "box outgoing labels not contiguous",
            Clause::Cyclic => "adjacency graph has a directed cycle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("node {node}: {clause}")]
pub struct Violation {
    pub clause: Clause,
    pub node: usize,
}
