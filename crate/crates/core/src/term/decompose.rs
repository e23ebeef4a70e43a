use super::Term;
use crate::har::{canonical_order, Har};
use crate::perm::Perm;
use crate::signature::Signature;

/// A composite of `sym 1 1` and identities realising the wiring `p`, whose
/// `i`-th output is input `p[i]`. The identity becomes `id K`.
pub fn perm_to_term(p: &Perm) -> Term {
    let k = p.len();
    // bubble sort p by adjacent swaps; the swaps, in reverse, rebuild p
    let mut arr = p.as_slice().to_vec();
    let mut swaps = Vec::new();
    for end in (1..k).rev() {
        for j in 0..end {
            if arr[j] > arr[j + 1] {
                arr.swap(j, j + 1);
                swaps.push(j);
            }
        }
    }
    let layer = |j: usize| {
        let parts = [
            (j > 0).then_some(Term::Id(j)),
            Some(Term::Sym(1, 1)),
            (j + 2 < k).then(|| Term::Id(k - j - 2)),
        ];
        Term::par_all(parts.into_iter().flatten()).expect("contains the swap")
    };
    Term::seq_all(swaps.into_iter().rev().map(layer)).unwrap_or(Term::Id(k))
}

/// Wiring that reorders `from` into `to` (equal as sets).
fn routing(from: &[usize], to: &[usize], position: &mut [usize]) -> Term {
    for (i, &u) in from.iter().enumerate() {
        position[u] = i;
    }
    perm_to_term(&Perm::from_vec_unchecked(
        to.iter().map(|&u| position[u]).collect(),
    ))
}

/// Rewrites `h` as `p0 ; (id k1 * g1) ; p1 ; ... ; (id kn * gn) ; pn`, one
/// generator per layer with wirings `pi` in between. Boxes are taken in
/// topological order of the canonical form of `h`. The input must be valid
/// for `sig`.
pub fn decompose(h: &Har, sig: &Signature) -> Term {
    let h = h.permute(&canonical_order(h)).expect("order has size K");
    let m = h.adjacency();
    let out = m.transpose();
    let order = m.topological_order().expect("square").expect("acyclic");
    let ordered = |row: (&[usize], &[u32])| {
        let mut list = vec![0; row.0.len()];
        for (&v, &l) in row.0.iter().zip(row.1) {
            list[l as usize - 1] = v;
        }
        list
    };

    let mut position = vec![0; h.size()];
    let mut frontier = h.left_interface().to_vec();
    let mut layers = Vec::new();
    for u in order {
        let Some(op) = h.labels()[u].op() else {
            continue;
        };
        let inputs = ordered(m.row(u));
        let mut next: Vec<usize> = frontier
            .iter()
            .copied()
            .filter(|v| !inputs.contains(v))
            .collect();
        let kept = next.len();
        next.extend_from_slice(&inputs);
        layers.push(routing(&frontier, &next, &mut position));
        layers.push(Term::Id(kept).par(Term::Gen(sig.op(op).name.clone())));
        next.truncate(kept);
        next.extend(ordered(out.row(u)));
        frontier = next;
    }
    layers.push(routing(&frontier, h.right_interface(), &mut position));
    Term::seq_all(layers).expect("at least one layer")
}

/// Whether `t` has the shape produced by [`decompose`]: a sequence that
/// alternates generator-free wirings with layers `id k * g`, starting and
/// ending with a wiring.
pub fn is_layered_normal_form(t: &Term) -> bool {
    fn flatten<'a>(t: &'a Term, out: &mut Vec<&'a Term>) {
        match t {
            Term::Seq(a, b) => {
                flatten(a, out);
                flatten(b, out);
            }
            other => out.push(other),
        }
    }
    let mut parts = Vec::new();
    flatten(t, &mut parts);
    let is_layer = |p: &Term| matches!(p, Term::Par(a, b) if matches!(**a, Term::Id(_)) && matches!(**b, Term::Gen(_)));
    let mut expect_wiring = true;
    let mut prev_wiring = false;
    for p in parts {
        if is_layer(p) {
            if expect_wiring {
                return false;
            }
            expect_wiring = true;
            prev_wiring = false;
        } else if p.generator_count() == 0 {
            expect_wiring = false;
            prev_wiring = true;
        } else {
            return false;
        }
    }
    prev_wiring
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::har::iso_eq;
    use crate::sample;
    use crate::term::parse;

    #[test]
    fn perm_terms() {
        let sig = Signature::new();
        assert_eq!(perm_to_term(&Perm::identity(4)), Term::Id(4));
        assert_eq!(perm_to_term(&Perm::block_swap(1, 1)), Term::Sym(1, 1));
        for map in [
            vec![2, 0, 1],
            vec![3, 2, 1, 0],
            vec![1, 0, 3, 2],
            vec![2, 3, 4, 0, 1],
        ] {
            let p = Perm::new(map).unwrap();
            let h = perm_to_term(&p).eval_har(&sig).unwrap();
            assert!(iso_eq(&h, &Har::permutation(p)));
        }
    }

    #[test]
    fn decompose_examples() {
        let sig = sample::signature();
        assert_eq!(decompose(&Har::identity(3), &sig), Term::Id(3));

        let beta = Har::generator(&sig, "beta").unwrap();
        let t = decompose(&beta, &sig);
        assert!(is_layered_normal_form(&t));
        assert!(iso_eq(&t.eval_har(&sig).unwrap(), &beta));

        let t = decompose(&sample::har(), &sig);
        assert!(is_layered_normal_form(&t), "{t}");
        assert_eq!(t.generator_count(), 3);
        assert!(iso_eq(&t.eval_har(&sig).unwrap(), &sample::har()));
    }

    #[test]
    fn normal_form_shape() {
        assert!(is_layered_normal_form(&parse("id 2").unwrap()));
        assert!(is_layered_normal_form(
            &parse("sym 1 1 ; id 1 * beta ; id 3").unwrap()
        ));
        assert!(!is_layered_normal_form(&parse("beta").unwrap()));
        assert!(!is_layered_normal_form(
            &parse("id 1 ; beta * id 0 ; id 2").unwrap()
        ));
        assert!(!is_layered_normal_form(
            &parse("id 1 ; id 0 * beta").unwrap()
        ));
    }
}
