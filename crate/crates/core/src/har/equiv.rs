//! Permutation equivalence and canonical forms.
//!
//! `f ≃_P g` holds when renumbering the nodes of `f` by `P` yields `g`:
//! `g.M = P^T f.M P`, `g.N = f.N P`, and the boundary permutations agree,
//! `g.L = P^T f.L`, `g.R = P^T f.R`. Since only the first `A` positions of
//! `L` and the last `B` of `R` carry information, [`check_permeq`] compares
//! the boundary permutations on exactly those positions;
//! [`check_permeq_strict`] compares them in full.
//!
//! [`canonicalize`] picks a representative of each equivalence class by a
//! breadth-first renumbering whose neighbour order is intrinsic (edge
//! direction, then edge label), seeded by the left interface, then the right
//! interface, then by a minimal-encoding search over closed components.

use super::{Har, HarError, NodeLabel};
use crate::perm::Perm;
use crate::sparse::NatMat;

fn same_shape(f: &Har, g: &Har, p: &Perm) -> Result<bool, HarError> {
    if f.size() != g.size() || p.len() != f.size() {
        return Err(HarError::Shape {
            what: "witness permutation",
            expected: f.size(),
            found: if f.size() != g.size() {
                g.size()
            } else {
                p.len()
            },
        });
    }
    Ok(f.dom() == g.dom() && f.cod() == g.cod())
}

fn body_matches(f: &Har, g: &Har, p: &Perm) -> bool {
    (0..f.size()).all(|i| g.labels()[i] == f.labels()[p[i]])
        && f.adjacency().apply_perm(p, p).as_ref() == Ok(g.adjacency())
}

/// Whether `f ≃_p g`, with `L` and `R` compared on their interface
/// positions.
pub fn check_permeq(f: &Har, g: &Har, p: &Perm) -> Result<bool, HarError> {
    if !same_shape(f, g, p)? {
        return Ok(false);
    }
    let boundary = |fi: &[usize], gi: &[usize]| fi.iter().zip(gi).all(|(&a, &b)| p[b] == a);
    Ok(boundary(f.left_interface(), g.left_interface())
        && boundary(f.right_interface(), g.right_interface())
        && body_matches(f, g, p))
}

/// Whether `f ≃_p g` with `g.L = P^T f.L` and `g.R = P^T f.R` as whole
/// permutations.
pub fn check_permeq_strict(f: &Har, g: &Har, p: &Perm) -> Result<bool, HarError> {
    if !same_shape(f, g, p)? {
        return Ok(false);
    }
    let inv = p.inverse();
    Ok(inv.compose(f.left()).as_ref() == Ok(g.left())
        && inv.compose(f.right()).as_ref() == Ok(g.right())
        && body_matches(f, g, p))
}

struct Traversal<'a> {
    labels: &'a [NodeLabel],
    incoming: &'a NatMat,
    outgoing: NatMat,
    scratch: Vec<(u32, usize)>,
}

impl<'a> Traversal<'a> {
    fn new(h: &'a Har) -> Self {
        Self {
            labels: h.labels(),
            incoming: h.adjacency(),
            outgoing: h.adjacency().transpose(),
            scratch: Vec::new(),
        }
    }

    /// Neighbours of `u`: sources of incoming edges by label, then targets
    /// of outgoing edges by label.
    fn neighbours(&mut self, u: usize, out: &mut Vec<usize>) {
        out.clear();
        for adj in [self.incoming, &self.outgoing] {
            let (nodes, labels) = adj.row(u);
            self.scratch.clear();
            self.scratch
                .extend(labels.iter().copied().zip(nodes.iter().copied()));
            self.scratch.sort_unstable();
            out.extend(self.scratch.iter().map(|&(_, v)| v));
        }
    }

    /// Breadth-first numbering continuing from `order[head..]`, marking
    /// nodes in `seen`.
    fn extend_bfs(&mut self, order: &mut Vec<usize>, mut head: usize, seen: &mut [bool]) {
        let mut buf = Vec::new();
        while head < order.len() {
            let u = order[head];
            head += 1;
            self.neighbours(u, &mut buf);
            for &v in &buf {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }

    fn label_code(&self, u: usize) -> u64 {
        match self.labels[u] {
            NodeLabel::Wire => 0,
            NodeLabel::Box(op) => 1 + op.0 as u64,
        }
    }

    /// Structure of a component under the numbering `order`.
    fn encode(&self, order: &[usize], local: &mut [usize]) -> Vec<u64> {
        for (i, &u) in order.iter().enumerate() {
            local[u] = i;
        }
        let mut code = Vec::with_capacity(3 * order.len());
        code.push(order.len() as u64);
        code.extend(order.iter().map(|&u| self.label_code(u)));
        let mut edges = Vec::new();
        for &u in order {
            let (sources, labels) = self.incoming.row(u);
            edges.clear();
            edges.extend(
                sources
                    .iter()
                    .zip(labels)
                    .map(|(&s, &l)| (local[s] as u64, l as u64)),
            );
            edges.sort_unstable();
            code.push(edges.len() as u64);
            for &(s, l) in &edges {
                code.extend([s, l]);
            }
        }
        code
    }
}

/// A renumbering `c` such that `h.permute(c)` is in canonical node order:
/// node `i` of the canonical form is node `c[i]` of `h`.
pub fn canonical_order(h: &Har) -> Perm {
    let k = h.size();
    let mut t = Traversal::new(h);
    let mut seen = vec![false; k];
    let mut order = Vec::with_capacity(k);

    let mut head = 0;
    for seeds in [h.left_interface(), h.right_interface()] {
        for &u in seeds {
            if !seen[u] {
                seen[u] = true;
                order.push(u);
            }
        }
        t.extend_bfs(&mut order, head, &mut seen);
        head = order.len();
    }

    // closed components: try every start node of the least local kind and
    // keep the smallest encoding
    let mut components: Vec<(Vec<u64>, Vec<usize>)> = Vec::new();
    let mut local = vec![0; k];
    let mut mark = vec![false; k];
    let out_deg = h.adjacency().col_counts();
    let kind = |t: &Traversal, u: usize| (t.label_code(u), h.adjacency().row_nnz(u), out_deg[u]);
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        seen[start] = true;
        t.extend_bfs(&mut members, 0, &mut seen);
        let least = members
            .iter()
            .map(|&u| kind(&t, u))
            .min()
            .expect("nonempty");

        let starts: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&u| kind(&t, u) == least)
            .collect();
        let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
        for s in starts {
            for &u in &members {
                mark[u] = false;
            }
            mark[s] = true;
            let mut local_order = vec![s];
            t.extend_bfs(&mut local_order, 0, &mut mark);
            let code = t.encode(&local_order, &mut local);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, local_order));
            }
        }
        components.push(best.expect("at least one start node"));
    }
    components.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, nodes) in components {
        order.extend(nodes);
    }
    Perm::from_vec_unchecked(order)
}

/// The canonical representative of `h`'s class: canonical node order, with
/// boundary permutations in normal form. Left interface nodes are numbered
/// `0..A`, so `L` is the identity.
pub fn canonicalize(h: &Har) -> Har {
    h.permute(&canonical_order(h))
        .expect("order has size K")
        .with_normal_boundaries()
}

/// Whether `f` and `g` have the same type and the same canonical form.
pub fn iso_eq(f: &Har, g: &Har) -> bool {
    f.dom() == g.dom()
        && f.cod() == g.cod()
        && f.size() == g.size()
        && canonicalize(f) == canonicalize(g)
}

/// A permutation `p` with `f ≃_p g` (interface form), if one exists.
pub fn find_witness(f: &Har, g: &Har) -> Option<Perm> {
    if !iso_eq(f, g) {
        return None;
    }
    let cf = canonical_order(f);
    let cg = canonical_order(g);
    Some(cf.compose(&cg.inverse()).expect("same size"))
}
