//! Boolean circuits and the benchmark families built from them.
//!
//! Adders take `(a, b, carry_in)` with `a` and `b` least significant bit
//! first and produce `(sum, carry_out)`, sum again least significant first.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::har::{Har, HarError};
use crate::signature::Signature;
use crate::term::{parse, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("a repeated combination needs at least one copy")]
    Empty,
    #[error("`{0}` does not have equal arity and coarity")]
    NotEndomorphism(String),
    #[error("unknown benchmark family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Har(#[from] HarError),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// `copy: 1 -> 2`, `xor: 2 -> 1`, `and: 2 -> 1`, `not: 1 -> 1`.
pub fn bool_signature() -> Signature {
    Signature::from_ops([("copy", 1, 2), ("xor", 2, 1), ("and", 2, 1), ("not", 1, 1)])
        .expect("valid names")
}

/// Combines `n >= 1` copies of `h` as a balanced tree.
fn balanced(
    h: &Har,
    n: usize,
    combine: &impl Fn(&Har, &Har) -> Result<Har, HarError>,
) -> Result<Har, HarError> {
    if n == 1 {
        return Ok(h.clone());
    }
    let left = balanced(h, n / 2, combine)?;
    if n.is_multiple_of(2) {
        return combine(&left, &left);
    }
    let right = balanced(h, n - n / 2, combine)?;
    combine(&left, &right)
}

/// `g * g * ... * g` with `k` copies.
pub fn repeated_tensor(sig: &Signature, name: &str, k: usize) -> Result<Har, CircuitError> {
    if k == 0 {
        return Err(CircuitError::Empty);
    }
    let g = Har::generator(sig, name)?;
    Ok(balanced(&g, k, &|a, b| Ok(a.tensor(b)))?)
}

/// `g ; g ; ... ; g` with `k` copies.
pub fn repeated_compose(sig: &Signature, name: &str, k: usize) -> Result<Har, CircuitError> {
    if k == 0 {
        return Err(CircuitError::Empty);
    }
    let g = Har::generator(sig, name)?;
    if g.dom() != g.cod() {
        return Err(CircuitError::NotEndomorphism(name.to_string()));
    }
    Ok(balanced(&g, k, &|a, b| a.compose(b))?)
}

/// One-bit full adder `(a, b, c) -> (s, c')` with `s = (a ^ b) ^ c` and
/// `c' = (a & b) ^ ((a ^ b) & c)`; the two products are never both set, so
/// `xor` stands in for `or`.
pub const FULL_ADDER: &str =
    "(copy * copy * copy) ; (id 1 * sym 1 1 * id 3) ; (xor * and * id 2) ; \
(copy * id 3) ; (id 2 * sym 1 2) ; (id 1 * sym 1 1 * id 2) ; (xor * and * id 1) ; (id 1 * xor)";

pub fn full_adder_term() -> Term {
    parse(FULL_ADDER).expect("fixed text parses")
}

/// Joins two `n`-bit adders into a `2n`-bit ripple-carry adder: route the
/// low halves and the carry into `low`, then thread its carry into `high`
/// along with the high halves.
pub fn join_adders(low: &Har, high: &Har) -> Result<Har, CircuitError> {
    let n = low.cod() - 1;
    if low.dom() != 2 * n + 1 || high.dom() != low.dom() || high.cod() != low.cod() {
        return Err(HarError::BoundaryMismatch {
            cod: low.cod(),
            dom: high.dom(),
        }
        .into());
    }
    let id = Har::identity;
    let route = id(n)
        .tensor(&Har::symmetry(n, n))
        .tensor(&id(n + 1))
        .compose(&id(2 * n).tensor(&Har::symmetry(2 * n, 1)))?;
    let out = route
        .compose(&low.tensor(&id(2 * n)))?
        .compose(&id(n).tensor(&Har::symmetry(1, 2 * n)))?
        .compose(&id(n).tensor(high))?;
    Ok(out)
}

/// Ripple-carry adder of type `2 bits + 1 -> bits + 1`.
pub fn adder(sig: &Signature, bits: usize) -> Result<Har, CircuitError> {
    if !bits.is_power_of_two() {
        return Err(CircuitError::NotPowerOfTwo(bits));
    }
    let mut h = full_adder_term().eval_har(sig)?;
    let mut width = 1;
    while width < bits {
        h = join_adders(&h, &h)?;
        width *= 2;
    }
    Ok(h)
}

/// The four scaling experiments. Each builds two diagrams with `2^(k-1)`
/// generators or cells and times one combination of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchFamily {
    /// `f * f` for `f` a tensor of `and` gates.
    Tensor,
    /// `f ; f` for `f` a chain of `not` gates: a one-wire boundary.
    ComposeSmall,
    /// `f ; f` for `f` a tensor of `not` gates: the boundary is all of `f`'s
    /// outputs.
    ComposeLarge,
    /// Two adders joined into one of twice the width.
    Adder,
}

impl BenchFamily {
    pub const ALL: [BenchFamily; 4] = [
        BenchFamily::Tensor,
        BenchFamily::ComposeSmall,
        BenchFamily::ComposeLarge,
        BenchFamily::Adder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchFamily::Tensor => "tensor",
            BenchFamily::ComposeSmall => "compose-small",
            BenchFamily::ComposeLarge => "compose-large",
            BenchFamily::Adder => "adder",
        }
    }

    /// The pair of inputs at scale `k >= 1`.
    pub fn build(self, sig: &Signature, k: u32) -> Result<(Har, Har), CircuitError> {
        let n = 1usize << k.saturating_sub(1);
        let f = match self {
            BenchFamily::Tensor => repeated_tensor(sig, "and", n)?,
            BenchFamily::ComposeSmall => repeated_compose(sig, "not", n)?,
            BenchFamily::ComposeLarge => repeated_tensor(sig, "not", n)?,
            BenchFamily::Adder => adder(sig, n)?,
        };
        Ok((f.clone(), f))
    }

    /// The measured operation.
    pub fn combine(self, f: &Har, g: &Har) -> Result<Har, CircuitError> {
        match self {
            BenchFamily::Tensor => Ok(f.tensor(g)),
            BenchFamily::ComposeSmall | BenchFamily::ComposeLarge => Ok(f.compose(g)?),
            BenchFamily::Adder => join_adders(f, g),
        }
    }
}

impl fmt::Display for BenchFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchFamily {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CircuitError::UnknownFamily(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::har::iso_eq;
    use crate::signature::SignatureError;

    #[test]
    fn signature_entries() {
        let sig = bool_signature();
        let and = sig.op(sig.lookup("and").unwrap());
        assert_eq!((and.arity, and.coarity), (2, 1));
        let copy = sig.op(sig.lookup("copy").unwrap());
        assert_eq!((copy.arity, copy.coarity), (1, 2));
        assert_eq!(sig.lookup("or"), Err(SignatureError::Unknown("or".into())));
    }

    #[test]
    fn repeated_folds() {
        let sig = bool_signature();
        assert_eq!(
            repeated_tensor(&sig, "and", 1).unwrap(),
            Har::generator(&sig, "and").unwrap()
        );
        let chain = repeated_compose(&sig, "not", 2).unwrap();
        assert_eq!((chain.size(), chain.dom(), chain.cod()), (5, 1, 1));
        for k in [1, 3, 6, 7] {
            let t = repeated_tensor(&sig, "not", k).unwrap();
            assert_eq!(
                (t.dom(), t.cod(), t.size(), t.box_count()),
                (k, k, 3 * k, k)
            );
            t.validate(&sig).unwrap();
            let c = repeated_compose(&sig, "not", k).unwrap();
            assert_eq!((c.size(), c.box_count()), (2 * k + 1, k));
            c.validate(&sig).unwrap();
        }
        // balanced and left-nested folds agree
        let g = Har::generator(&sig, "and").unwrap();
        let nested = (1..5).fold(g.clone(), |acc, _| acc.tensor(&g));
        assert!(iso_eq(&nested, &repeated_tensor(&sig, "and", 5).unwrap()));
        assert_eq!(repeated_tensor(&sig, "and", 0), Err(CircuitError::Empty));
        assert!(matches!(
            repeated_compose(&sig, "copy", 2),
            Err(CircuitError::NotEndomorphism(_))
        ));
    }

    #[test]
    fn adders() {
        let sig = bool_signature();
        let one = adder(&sig, 1).unwrap();
        one.validate(&sig).unwrap();
        assert_eq!((one.dom(), one.cod(), one.box_count()), (3, 2, 9));
        let two = adder(&sig, 2).unwrap();
        two.validate(&sig).unwrap();
        assert_eq!((two.dom(), two.cod(), two.box_count()), (5, 3, 18));
        let mut prev = two;
        for bits in [4, 8, 16] {
            let h = adder(&sig, bits).unwrap();
            h.validate(&sig).unwrap();
            assert_eq!((h.dom(), h.cod()), (2 * bits + 1, bits + 1));
            assert_eq!(h.box_count(), 2 * prev.box_count());
            prev = h;
        }
        assert_eq!(adder(&sig, 3), Err(CircuitError::NotPowerOfTwo(3)));
    }

    /// Simulates a circuit on one input assignment via its hypergraph.
    fn simulate(h: &Har, sig: &Signature, inputs: &[bool]) -> Vec<bool> {
        let g = crate::hypergraph::MaHypergraph::from_har(h, sig).unwrap();
        let mut value: Vec<Option<bool>> = vec![None; g.nodes];
        for (&u, &x) in g.left.iter().zip(inputs) {
            value[u] = Some(x);
        }
        let mut done = vec![false; g.edges.len()];
        while done.iter().any(|d| !d) {
            for (i, e) in g.edges.iter().enumerate() {
                if done[i] {
                    continue;
                }
                let Some(args) = e
                    .sources
                    .iter()
                    .map(|&u| value[u])
                    .collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                let outs = match sig.op(e.op).name.as_str() {
                    "copy" => vec![args[0], args[0]],
                    "xor" => vec![args[0] ^ args[1]],
                    "and" => vec![args[0] & args[1]],
                    "not" => vec![!args[0]],
                    other => panic!("unexpected gate {other}"),
                };
                for (&w, v) in e.targets.iter().zip(outs) {
                    value[w] = Some(v);
                }
                done[i] = true;
            }
        }
        g.right.iter().map(|&u| value[u].unwrap()).collect()
    }

    #[test]
    fn adders_add() {
        let sig = bool_signature();
        let bits_of = |x: u64, n: usize| (0..n).map(|i| x >> i & 1 == 1).collect::<Vec<_>>();
        for bits in [1, 2, 4] {
            let h = adder(&sig, bits).unwrap();
            for a in 0..1u64 << bits {
                for b in 0..1u64 << bits {
                    for c in 0..2 {
                        let mut input = bits_of(a, bits);
                        input.extend(bits_of(b, bits));
                        input.push(c == 1);
                        assert_eq!(simulate(&h, &sig, &input), bits_of(a + b + c, bits + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn families() {
        let sig = bool_signature();
        for fam in BenchFamily::ALL {
            assert_eq!(fam.name().parse::<BenchFamily>().unwrap(), fam);
            for k in 1..=4 {
                let (f, g) = fam.build(&sig, k).unwrap();
                let out = fam.combine(&f, &g).unwrap();
                out.validate(&sig).unwrap();
                assert_eq!(out.box_count(), f.box_count() + g.box_count());
            }
        }
        let (f, _) = BenchFamily::ComposeSmall.build(&sig, 5).unwrap();
        assert_eq!(f.cod(), 1);
        let (f, _) = BenchFamily::ComposeLarge.build(&sig, 5).unwrap();
        assert_eq!(f.cod(), 16);
        assert!("or".parse::<BenchFamily>().is_err());
    }
}
