//! A small worked example: three boxes `alpha: 1 -> 1`, `beta: 1 -> 2` and
//! `gamma: 2 -> 1` wired into a diagram of type `2 -> 2`.

use crate::har::{Har, NodeLabel};
use crate::hypergraph::{Hyperedge, MaHypergraph};
use crate::perm::Perm;
use crate::signature::{OpId, Signature};
use crate::sparse::NatMat;

pub const TERM: &str = "(alpha * beta) ; (sym 1 1 * id 1) ; (gamma * id 1) ; sym 1 1";

pub fn signature() -> Signature {
    Signature::from_ops([("alpha", 1, 1), ("beta", 1, 2), ("gamma", 2, 1)]).expect("valid names")
}

/// The example as a HAR with nine nodes. The right interface is the last
/// two nodes in swapped order.
pub fn har() -> Har {
    let triples = [
        (2, 0, 1),
        (3, 1, 1),
        (4, 2, 1),
        (5, 3, 1),
        (6, 4, 2),
        (6, 5, 1),
        (7, 6, 1),
        (8, 3, 2),
    ];
    let w = NodeLabel::Wire;
    let b = |i| NodeLabel::Box(OpId(i));
    Har::new(
        2,
        2,
        NatMat::from_triples(9, 9, triples).expect("in range"),
        Perm::identity(9),
        Perm::new(vec![0, 1, 2, 3, 4, 5, 6, 8, 7]).expect("bijection"),
        vec![w, w, b(0), b(1), w, w, b(2), w, w],
    )
    .expect("sizes agree")
}

/// The same diagram as a hypergraph with interfaces.
pub fn hypergraph() -> MaHypergraph {
    let edge = |op, sources: &[usize], targets: &[usize]| Hyperedge {
        op: OpId(op),
        sources: sources.to_vec(),
        targets: targets.to_vec(),
    };
    MaHypergraph {
        nodes: 6,
        edges: vec![
            edge(0, &[0], &[2]),
            edge(1, &[1], &[3, 4]),
            edge(2, &[3, 2], &[5]),
        ],
        left: vec![0, 1],
        right: vec![4, 5],
    }
}
