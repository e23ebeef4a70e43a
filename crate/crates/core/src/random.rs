//! Seeded generators for terms and HARs, used by tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::har::Har;
use crate::perm::Perm;
use crate::signature::Signature;
use crate::term::Term;

/// A uniformly random permutation of `0..n`.
pub fn random_perm<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Perm {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Perm::from_vec_unchecked(map)
}

/// A well-typed term with domain `dom` and at most `max_gens` generator
/// occurrences, mixing sequential and parallel composition, identities and
/// symmetries.
pub fn random_term<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    dom: usize,
    max_gens: usize,
) -> Term {
    let (t, _) = term_from(rng, sig, dom, max_gens);
    t
}

fn wiring<R: Rng + ?Sized>(rng: &mut R, width: usize) -> Term {
    if width > 0 && rng.random_bool(0.5) {
        let a = rng.random_range(0..=width);
        Term::Sym(a, width - a)
    } else {
        Term::Id(width)
    }
}

/// Returns the term and its codomain.
fn term_from<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    dom: usize,
    budget: usize,
) -> (Term, usize) {
    let fitting: Vec<_> = sig.iter().filter(|(_, op)| op.arity <= dom).collect();
    if budget == 0 || fitting.is_empty() {
        return (wiring(rng, dom), dom);
    }
    match rng.random_range(0..10) {
        // one generator placed somewhere within identities, usually
        // followed by more of the budget
        0..=3 => {
            let (_, op) = fitting[rng.random_range(0..fitting.len())];
            let before = rng.random_range(0..=dom - op.arity);
            let after = dom - op.arity - before;
            let mut t = Term::Gen(op.name.clone());
            if before > 0 || rng.random_bool(0.1) {
                t = Term::Id(before).par(t);
            }
            if after > 0 || rng.random_bool(0.1) {
                t = t.par(Term::Id(after));
            }
            let cod = dom - op.arity + op.coarity;
            if budget > 1 && rng.random_bool(0.7) {
                let (rest, cod) = term_from(rng, sig, cod, budget - 1);
                (t.seq(rest), cod)
            } else {
                (t, cod)
            }
        }
        4..=6 => {
            let first = rng.random_range(0..=budget);
            let (a, mid) = term_from(rng, sig, dom, first);
            let (b, cod) = term_from(rng, sig, mid, budget - first);
            (a.seq(b), cod)
        }
        7..=8 => {
            let split = rng.random_range(0..=dom);
            let first = rng.random_range(0..=budget);
            let (a, c1) = term_from(rng, sig, split, first);
            let (b, c2) = term_from(rng, sig, dom - split, budget - first);
            (a.par(b), c1 + c2)
        }
        _ => {
            let (t, cod) = term_from(rng, sig, dom, budget);
            (wiring(rng, dom).seq(t), cod)
        }
    }
}

/// Renumbers `h` by a random permutation `p` and reshuffles the positions
/// of `L` and `R` that carry no information. The result `g` satisfies
/// `h ≃_p g`.
pub fn scramble<R: Rng + ?Sized>(rng: &mut R, h: &Har) -> (Har, Perm) {
    let k = h.size();
    let p = random_perm(rng, k);
    let g = h.permute(&p).expect("sizes agree");
    let mut left = g.left().as_slice().to_vec();
    let mut right = g.right().as_slice().to_vec();
    left[g.dom()..].shuffle(rng);
    right[..k - g.cod()].shuffle(rng);
    let g = Har::new(
        g.dom(),
        g.cod(),
        g.adjacency().clone(),
        Perm::from_vec_unchecked(left),
        Perm::from_vec_unchecked(right),
        g.labels().to_vec(),
    )
    .expect("sizes agree");
    (g, p)
}

/// A scrambled evaluation of a random term of domain `dom`.
pub fn random_har<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    dom: usize,
    max_gens: usize,
) -> Har {
    let h = random_term(rng, sig, dom, max_gens)
        .eval_har(sig)
        .expect("generated terms are well typed");
    scramble(rng, &h).0
}

/// Three composable random HARs `f: a -> b`, `g: b -> c`, `h: c -> d`.
pub fn composable_triple<R: Rng + ?Sized>(
    rng: &mut R,
    sig: &Signature,
    max_gens: usize,
) -> [Har; 3] {
    let dom = rng.random_range(0..=4);
    let f = random_har(rng, sig, dom, max_gens);
    let g = random_har(rng, sig, f.cod(), max_gens);
    let h = random_har(rng, sig, g.cod(), max_gens);
    [f, g, h]
}
