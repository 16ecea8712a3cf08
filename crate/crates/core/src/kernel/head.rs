//! Head analysis of normalized types.

use super::term::{Name, Term};
use super::{normalize_type, KernelCtx, KernelError};

/// The outermost former of a type in normal form.
///
/// `Pair` and `All` carry their codomain under one binder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeadForm {
    Unit,
    Pair(Term, Term),
    FunL(Term, Term),
    FunR(Term, Term),
    All(Term, Term),
    Prod(Term, Term),
    /// An atomic family applied to its parameter.
    Atom(Name, Term),
    Universe,
    Neutral(Term),
}

/// Normalizes `ty` and reads off its head.
pub fn canonical_form(ctx: &KernelCtx, ty: &Term) -> Result<HeadForm, KernelError> {
    Ok(head_of(&normalize_type(ctx, ty)?))
}

/// Head of a type already in normal form.
pub fn head_of(nf: &Term) -> HeadForm {
    let two = |a: &Term, b: &Term| (a.clone(), b.clone());
    match nf {
        Term::Unit => HeadForm::Unit,
        Term::Univ => HeadForm::Universe,
        Term::Sigma(a, b) => {
            let (a, b) = two(a, b);
            HeadForm::Pair(a, b)
        }
        Term::Pi(a, b) => {
            let (a, b) = two(a, b);
            HeadForm::All(a, b)
        }
        Term::FunL(a, b) => {
            let (a, b) = two(a, b);
            HeadForm::FunL(a, b)
        }
        Term::FunR(a, b) => {
            let (a, b) = two(a, b);
            HeadForm::FunR(a, b)
        }
        Term::Prod(a, b) => {
            let (a, b) = two(a, b);
            HeadForm::Prod(a, b)
        }
        Term::App(f, s) => match &**f {
            Term::Const(p, _) => HeadForm::Atom(p.clone(), (**s).clone()),
            _ => HeadForm::Neutral(nf.clone()),
        },
        _ => HeadForm::Neutral(nf.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_head() {
        let t = Term::sigma(Term::Unit, Term::Unit);
        assert_eq!(
            canonical_form(&KernelCtx::empty(), &t).unwrap(),
            HeadForm::Pair(Term::Unit, Term::Unit)
        );
    }

    #[test]
    fn beta_then_head() {
        // (λX.X) ⊤ with λX.X : U → U
        let id = Term::ann(Term::lam(Term::Var(0)), Term::pi(Term::Univ, Term::Univ));
        let t = Term::app(id, Term::Unit);
        assert_eq!(canonical_form(&KernelCtx::empty(), &t).unwrap(), HeadForm::Unit);
    }

    #[test]
    fn atom_head() {
        let p = Term::constant("P", Term::pi(Term::Unit, Term::Univ));
        let t = Term::app(p, Term::Tt);
        assert_eq!(
            canonical_form(&KernelCtx::empty(), &t).unwrap(),
            HeadForm::Atom("P".into(), Term::Tt)
        );
    }
}
