use super::{Term, TermError};
use crate::har::{Har, HarError};
use crate::hypergraph::MaHypergraph;
use crate::signature::Signature;

fn expect_typed(e: HarError) -> TermError {
    match e {
        HarError::Signature(s) => TermError::Signature(s),
        other => unreachable!("typechecked term failed to evaluate: {other}"),
    }
}

impl Term {
    /// Evaluates to a HAR: generators become singletons, `;` composition
    /// and `*` tensor.
    pub fn eval_har(&self, sig: &Signature) -> Result<Har, TermError> {
        self.typecheck(sig)?;
        Ok(self.eval_typed(sig))
    }

    fn eval_typed(&self, sig: &Signature) -> Har {
        match self {
            Term::Gen(name) => Har::generator(sig, name)
                .map_err(expect_typed)
                .expect("typechecked"),
            Term::Id(n) => Har::identity(*n),
            Term::Sym(a, b) => Har::symmetry(*a, *b),
            Term::Par(a, b) => a.eval_typed(sig).tensor(&b.eval_typed(sig)),
            Term::Seq(a, b) => a
                .eval_typed(sig)
                .compose(&b.eval_typed(sig))
                .expect("typechecked"),
        }
    }

    /// Evaluates to a hypergraph by pushouts and disjoint unions.
    pub fn eval_hyp(&self, sig: &Signature) -> Result<MaHypergraph, TermError> {
        self.typecheck(sig)?;
        Ok(self.eval_hyp_typed(sig))
    }

    fn eval_hyp_typed(&self, sig: &Signature) -> MaHypergraph {
        match self {
            Term::Gen(name) => MaHypergraph::generator(sig, sig.lookup(name).expect("typechecked")),
            Term::Id(n) => MaHypergraph::identity(*n),
            Term::Sym(a, b) => MaHypergraph::symmetry(*a, *b),
            Term::Par(a, b) => a
                .eval_hyp_typed(sig)
                .tensor_disjoint(&b.eval_hyp_typed(sig)),
            Term::Seq(a, b) => a
                .eval_hyp_typed(sig)
                .compose_pushout(&b.eval_hyp_typed(sig))
                .expect("typechecked"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::har::iso_eq;
    use crate::sample;
    use crate::term::parse;

    #[test]
    fn atoms_evaluate_to_constructors() {
        let sig = sample::signature();
        assert_eq!(Term::Id(2).eval_har(&sig).unwrap(), Har::identity(2));
        assert_eq!(Term::Sym(1, 2).eval_har(&sig).unwrap(), Har::symmetry(1, 2));
        assert_eq!(
            Term::gen("beta").eval_har(&sig).unwrap(),
            Har::generator(&sig, "beta").unwrap()
        );
    }

    #[test]
    fn golden_term() {
        let sig = sample::signature();
        let t = parse(sample::TERM).unwrap();
        let h = t.eval_har(&sig).unwrap();
        h.validate(&sig).unwrap();
        assert!(iso_eq(&h, &sample::har()));
        assert!(crate::hypergraph::hyp_iso(
            &t.eval_hyp(&sig).unwrap(),
            &sample::hypergraph()
        ));
    }
}
