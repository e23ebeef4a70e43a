//! Monogamous acyclic hypergraphs with interfaces.
//!
//! A direct, unoptimised model of string diagrams as cospans `A -> G <- B`
//! of hypergraphs. Composition glues along the shared interface with a
//! union-find pushout. Nothing here is tuned: it serves as an independent
//! reference for the matrix operations in [`crate::har`].

use std::fmt;

use thiserror::Error;

use crate::har::{iso_eq, Har, NodeLabel, Violation};
use crate::perm::{Perm, PermError};
use crate::signature::{OpId, Signature};
use crate::sparse::NatMat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    pub op: OpId,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
}

/// Nodes are `0..nodes`; interfaces are ordered node lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MaHypergraph {
    pub nodes: usize,
    pub edges: Vec<Hyperedge>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypViolation {
    UnknownOperation { edge: usize },
    ArityMismatch { edge: usize },
    NodeOutOfRange { node: usize },
    Monogamy { node: usize },
    Cyclic,
    LeftInterface { node: usize },
    RightInterface { node: usize },
}

impl fmt::Display for HypViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypViolation::UnknownOperation { edge } => {
                write!(f, "hyperedge {edge}: unknown operation")
            }
            HypViolation::ArityMismatch { edge } => {
                write!(
                    f,
                    "hyperedge {edge}: list lengths disagree with arity and coarity"
                )
            }
            HypViolation::NodeOutOfRange { node } => write!(f, "node {node} out of range"),
            HypViolation::Monogamy { node } => write!(f, "node {node}: monogamy"),
            HypViolation::Cyclic => f.write_str("directed cycle"),
            HypViolation::LeftInterface { node } => {
                write!(
                    f,
                    "node {node}: left interface must list each input-free node once"
                )
            }
            HypViolation::RightInterface { node } => {
                write!(
                    f,
                    "node {node}: right interface must list each output-free node once"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypError {
    #[error("invalid hypergraph: {0}")]
    Invalid(HypViolation),
    #[error("invalid HAR: {0}")]
    Har(#[from] Violation),
    #[error("boundary mismatch: codomain {cod} against domain {dom}")]
    BoundaryMismatch { cod: usize, dom: usize },
}

impl MaHypergraph {
    pub fn dom(&self) -> usize {
        self.left.len()
    }

    pub fn cod(&self) -> usize {
        self.right.len()
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nodes: n,
            edges: Vec::new(),
            left: (0..n).collect(),
            right: (0..n).collect(),
        }
    }

    /// The symmetry `a + b -> b + a`.
    pub fn symmetry(a: usize, b: usize) -> Self {
        Self {
            nodes: a + b,
            edges: Vec::new(),
            left: (0..a + b).collect(),
            right: (a..a + b).chain(0..a).collect(),
        }
    }

    /// One hyperedge with fresh input and output nodes.
    pub fn generator(sig: &Signature, op: OpId) -> Self {
        let o = sig.op(op);
        let (a, b) = (o.arity, o.coarity);
        Self {
            nodes: a + b,
            edges: vec![Hyperedge {
                op,
                sources: (0..a).collect(),
                targets: (a..a + b).collect(),
            }],
            left: (0..a).collect(),
            right: (a..a + b).collect(),
        }
    }

    fn check_ranges(&self) -> Result<(), HypViolation> {
        let all = self
            .edges
            .iter()
            .flat_map(|e| e.sources.iter().chain(&e.targets))
            .chain(&self.left)
            .chain(&self.right);
        match all.copied().find(|&u| u >= self.nodes) {
            Some(node) => Err(HypViolation::NodeOutOfRange { node }),
            None => Ok(()),
        }
    }

    pub fn validate_ma(&self, sig: &Signature) -> Result<(), HypViolation> {
        for (i, e) in self.edges.iter().enumerate() {
            let Some(op) = sig.get(e.op) else {
                return Err(HypViolation::UnknownOperation { edge: i });
            };
            if e.sources.len() != op.arity || e.targets.len() != op.coarity {
                return Err(HypViolation::ArityMismatch { edge: i });
            }
        }
        self.check_ranges()?;

        // producer[u] = hyperedge with u among its targets
        let mut producer: Vec<Option<usize>> = vec![None; self.nodes];
        let mut consumer: Vec<Option<usize>> = vec![None; self.nodes];
        for (i, e) in self.edges.iter().enumerate() {
            for (list, slot) in [(&e.targets, &mut producer), (&e.sources, &mut consumer)] {
                for &u in list {
                    if slot[u].replace(i).is_some() {
                        return Err(HypViolation::Monogamy { node: u });
                    }
                }
            }
        }

        for (list, side, free) in [
            (&self.left, true, &producer),
            (&self.right, false, &consumer),
        ] {
            let mut listed = vec![false; self.nodes];
            let violation = |node| {
                if side {
                    HypViolation::LeftInterface { node }
                } else {
                    HypViolation::RightInterface { node }
                }
            };
            for &u in list.iter() {
                if std::mem::replace(&mut listed[u], true) || free[u].is_some() {
                    return Err(violation(u));
                }
            }
            if let Some(u) = (0..self.nodes).find(|&u| free[u].is_none() && !listed[u]) {
                return Err(violation(u));
            }
        }

        // edge-level DFS: e -> e' when a target of e is a source of e'
        let mut state = vec![0u8; self.edges.len()];
        for root in 0..self.edges.len() {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some((e, next)) = stack.pop() {
                let targets = &self.edges[e].targets;
                if next == targets.len() {
                    state[e] = 2;
                    continue;
                }
                stack.push((e, next + 1));
                if let Some(c) = consumer[targets[next]] {
                    match state[c] {
                        1 => return Err(HypViolation::Cyclic),
                        0 => {
                            state[c] = 1;
                            stack.push((c, 0));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }

    /// Renames node `u` to `pi[u]`.
    pub fn rename(&self, pi: &[usize]) -> Self {
        let map = |list: &[usize]| list.iter().map(|&u| pi[u]).collect::<Vec<_>>();
        Self {
            nodes: self.nodes,
            edges: self
                .edges
                .iter()
                .map(|e| Hyperedge {
                    op: e.op,
                    sources: map(&e.sources),
                    targets: map(&e.targets),
                })
                .collect(),
            left: map(&self.left),
            right: map(&self.right),
        }
    }

    /// Disjoint union; `other`'s nodes are shifted past `self`'s.
    pub fn tensor_disjoint(&self, other: &Self) -> Self {
        let off = self.nodes;
        let shift = |list: &[usize]| list.iter().map(|&u| u + off).collect::<Vec<_>>();
        let mut out = self.clone();
        out.nodes += other.nodes;
        out.edges.extend(other.edges.iter().map(|e| Hyperedge {
            op: e.op,
            sources: shift(&e.sources),
            targets: shift(&e.targets),
        }));
        out.left.extend(shift(&other.left));
        out.right.extend(shift(&other.right));
        out
    }

    /// Glues `self.right[i]` to `other.left[i]` for every `i`.
    pub fn compose_pushout(&self, other: &Self) -> Result<Self, HypError> {
        if self.cod() != other.dom() {
            return Err(HypError::BoundaryMismatch {
                cod: self.cod(),
                dom: other.dom(),
            });
        }
        let joined = self.tensor_disjoint(other);
        let mut parent: Vec<usize> = (0..joined.nodes).collect();
        fn find(parent: &mut [usize], mut u: usize) -> usize {
            while parent[u] != u {
                parent[u] = parent[parent[u]];
                u = parent[u];
            }
            u
        }
        for (&a, &b) in self.right.iter().zip(&other.left) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b + self.nodes));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut class = vec![usize::MAX; joined.nodes];
        let mut next = 0;
        let pi: Vec<usize> = (0..joined.nodes)
            .map(|u| {
                let r = find(&mut parent, u);
                if class[r] == usize::MAX {
                    class[r] = next;
                    next += 1;
                }
                class[r]
            })
            .collect();
        let glued = joined.rename(&pi);
        Ok(Self {
            nodes: next,
            edges: glued.edges,
            left: glued.left[..self.dom()].to_vec(),
            right: glued.right[self.cod()..].to_vec(),
        })
    }

    /// The bipartite encoding without validation. Wires take indices
    /// `0..nodes`, hyperedges follow in order.
    fn encode(&self) -> Result<Har, HypViolation> {
        self.check_ranges()?;
        let n = self.nodes;
        let k = n + self.edges.len();
        let mut triples = Vec::new();
        let mut labels = vec![NodeLabel::Wire; n];
        for (i, e) in self.edges.iter().enumerate() {
            let b = n + i;
            labels.push(NodeLabel::Box(e.op));
            triples.extend(
                e.sources
                    .iter()
                    .enumerate()
                    .map(|(p, &u)| (b, u, p as u32 + 1)),
            );
            triples.extend(
                e.targets
                    .iter()
                    .enumerate()
                    .map(|(p, &w)| (w, b, p as u32 + 1)),
            );
        }
        let adjacency = NatMat::from_triples(k, k, triples).expect("indices checked");

        let in_list = |list: &[usize]| {
            let mut flags = vec![false; k];
            list.iter().for_each(|&u| flags[u] = true);
            flags
        };
        let (in_left, in_right) = (in_list(&self.left), in_list(&self.right));
        let left: Vec<usize> = self
            .left
            .iter()
            .copied()
            .chain((0..k).filter(|&u| !in_left[u]))
            .collect();
        let right: Vec<usize> = (0..k)
            .filter(|&u| !in_right[u])
            .chain(self.right.iter().copied())
            .collect();
        let repeated = |e| match e {
            PermError::Repeated(node) => HypViolation::LeftInterface { node },
            _ => unreachable!("indices checked"),
        };
        let left = Perm::new(left).map_err(repeated)?;
        let right = Perm::new(right).map_err(|e| match repeated(e) {
            HypViolation::LeftInterface { node } => HypViolation::RightInterface { node },
            v => v,
        })?;
        Ok(Har::new(self.dom(), self.cod(), adjacency, left, right, labels).expect("sizes agree"))
    }

    /// Encodes as a HAR: one wire node per hypergraph node, then one box per
    /// hyperedge. Input `k` of a hyperedge becomes an edge labelled `k + 1`
    /// into its box, output `k` an edge labelled `k + 1` out of it.
    pub fn to_har(&self, sig: &Signature) -> Result<Har, HypError> {
        self.validate_ma(sig).map_err(HypError::Invalid)?;
        Ok(self.encode().expect("validated"))
    }

    /// Reads a HAR back as a hypergraph: wires become nodes and boxes
    /// hyperedges, both numbered in HAR index order. The `i`-th left
    /// interface node is the node at `L`-position `i`; the right interface
    /// is read off the last `B` positions of `R`.
    pub fn from_har(h: &Har, sig: &Signature) -> Result<Self, HypError> {
        h.validate(sig)?;
        let k = h.size();
        let mut index = vec![usize::MAX; k];
        let mut nodes = 0;
        for (slot, label) in index.iter_mut().zip(h.labels()) {
            if label.is_wire() {
                *slot = nodes;
                nodes += 1;
            }
        }
        let out = h.adjacency().transpose();
        let ordered = |adj: &NatMat, u: usize| {
            let (nbrs, labels) = adj.row(u);
            let mut list = vec![0; nbrs.len()];
            for (&v, &l) in nbrs.iter().zip(labels) {
                list[l as usize - 1] = index[v];
            }
            list
        };
        let edges = (0..k)
            .filter_map(|u| {
                h.labels()[u].op().map(|op| Hyperedge {
                    op,
                    sources: ordered(h.adjacency(), u),
                    targets: ordered(&out, u),
                })
            })
            .collect();
        Ok(Self {
            nodes,
            edges,
            left: h.left_interface().iter().map(|&u| index[u]).collect(),
            right: h.right_interface().iter().map(|&u| index[u]).collect(),
        })
    }
}

/// Whether an isomorphism maps `f` onto `g` preserving edge labels, list
/// orders and both interfaces. Decided by canonical forms of the encodings.
pub fn hyp_iso(f: &MaHypergraph, g: &MaHypergraph) -> bool {
    match (f.encode(), g.encode()) {
        (Ok(a), Ok(b)) => iso_eq(&a, &b),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    fn bool_sig() -> Signature {
        Signature::from_ops([("copy", 1, 2), ("xor", 2, 1), ("and", 2, 1), ("not", 1, 1)]).unwrap()
    }

    fn gen(sig: &Signature, name: &str) -> MaHypergraph {
        MaHypergraph::generator(sig, sig.lookup(name).unwrap())
    }

    #[test]
    fn validate_examples() {
        let sig = sample::signature();
        assert_eq!(MaHypergraph::default().validate_ma(&sig), Ok(()));
        assert_eq!(sample::hypergraph().validate_ma(&sig), Ok(()));

        let mut shared = sample::hypergraph();
        shared.edges[1].sources[0] = 0;
        assert_eq!(
            shared.validate_ma(&sig),
            Err(HypViolation::Monogamy { node: 0 })
        );
        assert!(shared
            .validate_ma(&sig)
            .unwrap_err()
            .to_string()
            .contains("monogamy"));

        let mut short = sample::hypergraph();
        short.left.pop();
        assert_eq!(
            short.validate_ma(&sig),
            Err(HypViolation::LeftInterface { node: 1 })
        );
    }

    #[test]
    fn cycle_detected() {
        let sig = bool_sig();
        let not = sig.lookup("not").unwrap();
        let h = MaHypergraph {
            nodes: 2,
            edges: vec![
                Hyperedge {
                    op: not,
                    sources: vec![0],
                    targets: vec![1],
                },
                Hyperedge {
                    op: not,
                    sources: vec![1],
                    targets: vec![0],
                },
            ],
            left: vec![],
            right: vec![],
        };
        assert_eq!(h.validate_ma(&sig), Err(HypViolation::Cyclic));
    }

    #[test]
    fn not_not_chain() {
        let sig = bool_sig();
        let not = gen(&sig, "not");
        let chain = not.compose_pushout(&not).unwrap();
        assert_eq!(chain.nodes, 3);
        assert_eq!(chain.edges.len(), 2);
        assert_eq!(chain.edges[0].targets, chain.edges[1].sources);
        assert_eq!(chain.validate_ma(&sig), Ok(()));
        assert!(hyp_iso(
            &not.compose_pushout(&MaHypergraph::identity(1)).unwrap(),
            &not
        ));
    }

    #[test]
    fn disjoint_nots() {
        let sig = bool_sig();
        let not = gen(&sig, "not");
        let two = not.tensor_disjoint(&not);
        assert_eq!(two.left, vec![0, 2]);
        assert_eq!(two.right, vec![1, 3]);
        assert_eq!(not.tensor_disjoint(&MaHypergraph::default()), not);
        assert!(!hyp_iso(&two, &not.compose_pushout(&not).unwrap()));
    }

    #[test]
    fn golden_encoding() {
        let sig = sample::signature();
        let h = sample::hypergraph().to_har(&sig).unwrap();
        assert!(iso_eq(&h, &sample::har()));
        let back = MaHypergraph::from_har(&sample::har(), &sig).unwrap();
        assert!(hyp_iso(&back, &sample::hypergraph()));
        assert_eq!(
            MaHypergraph::from_har(&Har::identity(2), &sig).unwrap(),
            MaHypergraph::identity(2)
        );
        assert_eq!(
            MaHypergraph::identity(2).to_har(&sig).unwrap(),
            Har::identity(2)
        );
    }

    #[test]
    fn renamed_copy_is_isomorphic() {
        let g = sample::hypergraph();
        let pi = [5, 3, 0, 1, 4, 2];
        assert!(hyp_iso(&g, &g.rename(&pi)));
        let mut swapped = g.clone();
        swapped.right.swap(0, 1);
        assert!(!hyp_iso(&g, &swapped));
    }

    #[test]
    fn pushout_boundary_mismatch() {
        let sig = bool_sig();
        let e =
            gen(&sig, "and").compose_pushout(&gen(&sig, "copy").tensor_disjoint(&gen(&sig, "not")));
        assert_eq!(e, Err(HypError::BoundaryMismatch { cod: 1, dom: 2 }));
    }
}
