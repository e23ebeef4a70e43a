//! Identity, symmetry, singleton, boundary orders, tensor and composition.
//!
//! Every operation here is linear in the node count plus the number of
//! edges: matrices are only ever relabelled, concatenated or permuted with
//! [`SparseMat::apply_perm`](crate::sparse::SparseMat::apply_perm).

use super::{Har, HarError, NodeLabel};
use crate::perm::Perm;
use crate::signature::{OpId, Signature, SignatureError};
use crate::sparse::NatMat;

impl Har {
    /// `n` wires, each on both interfaces.
    pub fn identity(n: usize) -> Har {
        Har::permutation(Perm::identity(n))
    }

    /// The wiring `p` of type `K -> K`: no boxes, `L = id`, `R = p`, so the
    /// `i`-th output is the `p[i]`-th input.
    pub fn permutation(p: Perm) -> Har {
        let k = p.len();
        Har::from_parts_unchecked(
            k,
            k,
            NatMat::zeros(k, k),
            Perm::identity(k),
            p,
            vec![NodeLabel::Wire; k],
        )
    }

    /// The symmetry `A + B -> B + A`, exchanging the first `a` wires with
    /// the following `b`.
    pub fn symmetry(a: usize, b: usize) -> Har {
        Har::permutation(Perm::block_swap(a, b))
    }

    /// A single box for `op`, with node order `[inputs, box, outputs]`.
    /// Input `i` enters the box with label `i + 1` and the box leaves to
    /// output `j` with label `j + 1`.
    pub fn singleton(sig: &Signature, op: OpId) -> Result<Har, HarError> {
        let operation = sig
            .get(op)
            .ok_or_else(|| SignatureError::Unknown(format!("#{}", op.0)))?;
        let (a, b) = (operation.arity, operation.coarity);
        let k = a + b + 1;
        let triples = (0..a)
            .map(|i| (a, i, (i + 1) as u32))
            .chain((0..b).map(|j| (a + 1 + j, a, (j + 1) as u32)));
        let adjacency = NatMat::from_triples(k, k, triples)?;
        let mut labels = vec![NodeLabel::Wire; k];
        labels[a] = NodeLabel::Box(op);
        Ok(Har::from_parts_unchecked(
            a,
            b,
            adjacency,
            Perm::identity(k),
            Perm::identity(k),
            labels,
        ))
    }

    /// Singleton looked up by operation name.
    pub fn generator(sig: &Signature, name: &str) -> Result<Har, HarError> {
        Har::singleton(sig, sig.lookup(name)?)
    }

    /// Renumbers nodes so that node `i` of the result is node `p[i]` of
    /// `self`. The result `g` satisfies `self ≃_p g`:
    /// `g.M = P^T M P`, `g.L = P^T L`, `g.R = P^T R`, `g.N = N P`.
    pub fn permute(&self, p: &Perm) -> Result<Har, HarError> {
        if p.len() != self.size() {
            return Err(HarError::Shape {
                what: "renumbering",
                expected: self.size(),
                found: p.len(),
            });
        }
        let inv = p.inverse();
        let adjacency = self.adjacency.apply_perm(p, p)?;
        let left = inv.compose(&self.left).expect("sizes agree");
        let right = inv.compose(&self.right).expect("sizes agree");
        Ok(Har::from_parts_unchecked(
            self.dom,
            self.cod,
            adjacency,
            left,
            right,
            p.reorder(&self.labels),
        ))
    }

    /// Left boundary order: the left interface occupies positions
    /// `0..A` and `L` is the identity.
    pub fn lbo(&self) -> Har {
        if self.left.is_identity() {
            return self.clone();
        }
        self.permute(&self.left).expect("L has size K")
    }

    /// Right boundary order: the right interface occupies the last `B`
    /// positions and `R` is the identity.
    pub fn rbo(&self) -> Har {
        if self.right.is_identity() {
            return self.clone();
        }
        self.permute(&self.right).expect("R has size K")
    }

    /// Parallel composition. Nodes of `self` come first, then those of
    /// `other`; `M` is the direct sum. `L` lists both left interfaces, then
    /// the remaining nodes of each; `R` lists the remaining nodes of each,
    /// then both right interfaces.
    pub fn tensor(&self, other: &Har) -> Har {
        let (fk, gk) = (self.size(), other.size());
        let (a1, a2) = (self.dom, other.dom);
        let (b1, b2) = (self.cod, other.cod);

        // (L_f + L_g) routed by id_a1 + swap + id, written out in one pass
        let (fl, gl) = (self.left.as_slice(), other.left.as_slice());
        let mut left = Vec::with_capacity(fk + gk);
        left.extend_from_slice(&fl[..a1]);
        left.extend(gl[..a2].iter().map(|&v| v + fk));
        left.extend_from_slice(&fl[a1..]);
        left.extend(gl[a2..].iter().map(|&v| v + fk));

        let (fr, gr) = (self.right.as_slice(), other.right.as_slice());
        let mut right = Vec::with_capacity(fk + gk);
        right.extend_from_slice(&fr[..fk - b1]);
        right.extend(gr[..gk - b2].iter().map(|&v| v + fk));
        right.extend_from_slice(&fr[fk - b1..]);
        right.extend(gr[gk - b2..].iter().map(|&v| v + fk));

        let mut labels = Vec::with_capacity(fk + gk);
        labels.extend_from_slice(&self.labels);
        labels.extend_from_slice(&other.labels);

        Har::from_parts_unchecked(
            a1 + a2,
            b1 + b2,
            self.adjacency.direct_sum(&other.adjacency),
            Perm::from_vec_unchecked(left),
            Perm::from_vec_unchecked(right),
            labels,
        )
    }

    /// Sequential composition `self ; other` (diagrammatic order).
    ///
    /// With `F = rbo(self)` and `G = lbo(other)`, the result has node order
    /// `[F without its last B nodes][the B shared wires][G without its first
    /// B nodes]`. The two adjacency matrices overlap only on the `B x B`
    /// block of shared wires, which is empty on both sides, so `M` is the
    /// disjoint union of their relabelled entries.
    ///
    /// `F` and `G` are never built: rows are gathered through `R_f` and
    /// `L_g` and their columns relabelled through the inverses on the fly.
    pub fn compose(&self, other: &Har) -> Result<Har, HarError> {
        if self.cod != other.dom {
            return Err(HarError::BoundaryMismatch {
                cod: self.cod,
                dom: other.dom,
            });
        }
        let shared = self.cod;
        let (fk, gk) = (self.size(), other.size());
        let offset = fk - shared;
        let k = fk + gk - shared;

        let f_order = Renumbering::new(&self.right);
        let g_order = Renumbering::new(&other.left);

        let (fm, gm) = (&self.adjacency, &other.adjacency);
        let mut row_ptr = Vec::with_capacity(k + 1);
        let mut col_idx = Vec::with_capacity(fm.nnz() + gm.nnz());
        let mut values = Vec::with_capacity(fm.nnz() + gm.nnz());
        row_ptr.push(0);
        for r in 0..fk {
            f_order.push_row(fm, r, 0, &mut col_idx, &mut values);
            row_ptr.push(col_idx.len());
        }
        // shared wires are left-interface nodes of G: no incoming edges
        debug_assert!((0..shared).all(|r| gm.row_nnz(g_order.old(r)) == 0));
        for r in shared..gk {
            g_order.push_row(gm, r, offset, &mut col_idx, &mut values);
            row_ptr.push(col_idx.len());
        }
        let adjacency = NatMat::from_csr_unchecked(k, k, row_ptr, col_idx, values);

        let mut left = Vec::with_capacity(k);
        left.extend(self.left.as_slice().iter().map(|&v| f_order.position(v)));
        left.extend(fk..k);
        let mut right = Vec::with_capacity(k);
        right.extend(0..offset);
        right.extend(
            other
                .right
                .as_slice()
                .iter()
                .map(|&v| g_order.position(v) + offset),
        );

        let mut labels = Vec::with_capacity(k);
        labels.extend((0..fk).map(|i| self.labels[f_order.old(i)]));
        labels.extend((shared..gk).map(|i| other.labels[g_order.old(i)]));

        Ok(Har::from_parts_unchecked(
            self.dom,
            other.cod,
            adjacency,
            Perm::from_vec_unchecked(left),
            Perm::from_vec_unchecked(right),
            labels,
        ))
    }
}

/// A node renumbering `p` (new position `i` holds old node `p[i]`) with its
/// inverse, or nothing when `p` is the identity.
struct Renumbering<'a> {
    order: Option<(&'a [usize], Vec<usize>)>,
}

impl<'a> Renumbering<'a> {
    fn new(p: &'a Perm) -> Self {
        let order = (!p.is_identity()).then(|| (p.as_slice(), p.inverse().into_vec()));
        Renumbering { order }
    }

    fn old(&self, i: usize) -> usize {
        self.order.as_ref().map_or(i, |(p, _)| p[i])
    }

    fn position(&self, v: usize) -> usize {
        self.order.as_ref().map_or(v, |(_, inv)| inv[v])
    }

    /// Appends row `i` of the renumbered matrix, columns shifted by `shift`.
    fn push_row(
        &self,
        m: &NatMat,
        i: usize,
        shift: usize,
        col_idx: &mut Vec<usize>,
        values: &mut Vec<u32>,
    ) {
        let start = col_idx.len();
        let (cols, vals) = m.row(self.old(i));
        col_idx.extend(cols.iter().map(|&c| self.position(c) + shift));
        values.extend_from_slice(vals);
        if self.order.is_some() {
            // rows hold at most one entry per box input: insertion sort
            for a in start + 1..col_idx.len() {
                let mut b = a;
                while b > start && col_idx[b - 1] > col_idx[b] {
                    col_idx.swap(b - 1, b);
                    values.swap(b - 1, b);
                    b -= 1;
                }
            }
        }
    }
}
