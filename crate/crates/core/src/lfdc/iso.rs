//! Coherence isomorphisms as explicit kernel substitutions and terms.

use crate::kernel::{shift, KernelCtx, KernelSubst, Term};

use super::{
    oplus, same_ctx, tensor, unit_type, CtxIso, CtxMorphism, LfdcError, MorIso, Morphism, SemType,
};

fn v0() -> Term {
    Term::Var(0)
}

/// `η_Γ : Γ•𝟙 ≃ Γ`.
pub fn eta(gamma: &KernelCtx) -> Result<CtxIso, LfdcError> {
    let n = gamma.len();
    let ext = gamma.extended(Term::Unit);
    let fwd = CtxMorphism::new(ext.clone(), gamma.clone(), KernelSubst::weakening(n, 1))?;
    let mut ins = KernelSubst::identity(n);
    ins.push(Term::Tt);
    let bwd = CtxMorphism::new(gamma.clone(), ext, ins)?;
    Ok(CtxIso { fwd, bwd })
}

/// `ρ_S : ⊕_S(𝟙) ≃ S`.
pub fn rho(s: &SemType) -> Result<MorIso, LfdcError> {
    let dom = oplus(s, &unit_type(&s.extended()))?;
    let fwd = Morphism::new(dom.clone(), s.clone(), Term::fst(v0()))?;
    let bwd = Morphism::new(s.clone(), dom, Term::pair(v0(), Term::Tt))?;
    Ok(MorIso { fwd, bwd })
}

/// `ℓ_S : ⊕_𝟙(η*S) ≃ S`.
pub fn ell(s: &SemType) -> Result<MorIso, LfdcError> {
    let one = unit_type(&s.ctx);
    let dom = oplus(&one, &SemType::new(one.extended(), shift(&s.body, 1))?)?;
    let fwd = Morphism::new(dom.clone(), s.clone(), Term::snd(v0()))?;
    let bwd = Morphism::new(s.clone(), dom, Term::pair(Term::Tt, v0()))?;
    Ok(MorIso { fwd, bwd })
}

/// `α_{S,T} : Γ•(⊕_S T) ≃ (Γ•S)•T`.
pub fn alpha(s: &SemType, t: &SemType) -> Result<CtxIso, LfdcError> {
    let sum = oplus(s, t)?;
    let n = s.ctx.len();
    let src = sum.extended();
    let tgt = t.extended();
    let mut split = KernelSubst::weakening(n, 1);
    split.push(Term::fst(v0()));
    split.push(Term::snd(v0()));
    let fwd = CtxMorphism::new(src.clone(), tgt.clone(), split)?;
    let mut join = KernelSubst::weakening(n, 2);
    join.push(Term::pair(Term::Var(1), v0()));
    let bwd = CtxMorphism::new(tgt, src, join)?;
    Ok(CtxIso { fwd, bwd })
}

/// `β_{S,T,R} : ⊕_S(⊕_T R) ≃ ⊕_{⊕_S T}(α*R)`.
pub fn beta(s: &SemType, t: &SemType, r: &SemType) -> Result<MorIso, LfdcError> {
    let inner = oplus(t, r)?;
    let nested = oplus(s, &inner)?;
    let a = alpha(s, t)?;
    let sum = oplus(s, t)?;
    let flat = oplus(&sum, &super::subst_type(&a.fwd, r)?)?;
    let v = v0;
    let fwd_body = Term::pair(
        Term::pair(Term::fst(v()), Term::fst(Term::snd(v()))),
        Term::snd(Term::snd(v())),
    );
    let bwd_body = Term::pair(
        Term::fst(Term::fst(v())),
        Term::pair(Term::snd(Term::fst(v())), Term::snd(v())),
    );
    Ok(MorIso {
        fwd: Morphism::new(nested.clone(), flat.clone(), fwd_body)?,
        bwd: Morphism::new(flat, nested, bwd_body)?,
    })
}

/// `σ_{S,T} : S ⊗ T ≃ T ⊗ S`.
pub fn sigma(s: &SemType, t: &SemType) -> Result<MorIso, LfdcError> {
    same_ctx(&s.ctx, &t.ctx, "symmetry")?;
    let st = tensor(s, t)?;
    let ts = tensor(t, s)?;
    let swap = Term::pair(Term::snd(v0()), Term::fst(v0()));
    Ok(MorIso {
        fwd: Morphism::new(st.clone(), ts.clone(), swap.clone())?,
        bwd: Morphism::new(ts, st, swap)?,
    })
}

/// Splits a type of the form `S ⊗ T` into `S` and `T`, failing if the second
/// component depends on the first.
pub fn untensor(ty: &SemType) -> Result<(SemType, SemType), LfdcError> {
    let Term::Sigma(a, b) = &ty.body else {
        return Err(LfdcError::Shape("symmetry on a non-pair type"));
    };
    let b = crate::kernel::strengthen(b, 0, 1)
        .ok_or(LfdcError::Shape("symmetry on a dependent pair"))?;
    Ok((
        SemType {
            ctx: ty.ctx.clone(),
            body: (**a).clone(),
        },
        SemType {
            ctx: ty.ctx.clone(),
            body: b,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{compose, identity};
    use super::*;

    fn p() -> Term {
        Term::constant("P", Term::Univ)
    }

    fn ctx_roundtrip(i: &CtxIso) {
        let a = i.fwd.after(&i.bwd).unwrap();
        let b = i.bwd.after(&i.fwd).unwrap();
        assert_eq!(a, CtxMorphism::identity(&a.source).unwrap());
        assert_eq!(b, CtxMorphism::identity(&b.source).unwrap());
    }

    fn mor_roundtrip(i: &MorIso) {
        let a = compose(&i.fwd, &i.bwd).unwrap();
        let b = compose(&i.bwd, &i.fwd).unwrap();
        assert_eq!(a, identity(&i.bwd.dom).unwrap());
        assert_eq!(b, identity(&i.fwd.dom).unwrap());
    }

    #[test]
    fn eta_on_empty() {
        let e = eta(&KernelCtx::empty()).unwrap();
        assert!(e.fwd.subst.is_empty());
        assert_eq!(e.bwd.subst.0, alloc::vec![Term::Tt]);
        ctx_roundtrip(&e);
    }

    #[test]
    fn alpha_roundtrip_on_units() {
        let one = unit_type(&KernelCtx::empty());
        let a = alpha(&one, &unit_type(&one.extended())).unwrap();
        ctx_roundtrip(&a);
    }

    #[test]
    fn alpha_roundtrip_dependent() {
        let g = KernelCtx(alloc::vec![p()]);
        let fam = Term::constant("F", Term::pi(p(), Term::Univ));
        let s = SemType::new(g.clone(), p()).unwrap();
        let t = SemType::new(s.extended(), Term::app(fam, Term::Var(0))).unwrap();
        ctx_roundtrip(&alpha(&s, &t).unwrap());
    }

    #[test]
    fn unitors_and_beta_roundtrip() {
        let g = KernelCtx(alloc::vec![p()]);
        let s = SemType::new(g.clone(), Term::sigma(p(), p())).unwrap();
        mor_roundtrip(&rho(&s).unwrap());
        mor_roundtrip(&ell(&s).unwrap());
        let t = SemType::new(s.extended(), p()).unwrap();
        let r = SemType::new(t.extended(), Term::prod(p(), p())).unwrap();
        mor_roundtrip(&beta(&s, &t, &r).unwrap());
    }

    #[test]
    fn symmetry_is_involutive() {
        let g = KernelCtx::empty();
        let s = SemType::new(g.clone(), p()).unwrap();
        let t = SemType::new(g, Term::prod(p(), Term::Unit)).unwrap();
        let st = sigma(&s, &t).unwrap();
        let ts = sigma(&t, &s).unwrap();
        let twice = compose(&ts.fwd, &st.fwd).unwrap();
        assert_eq!(twice, identity(&st.fwd.dom).unwrap());
        let (a, b) = untensor(&st.fwd.dom).unwrap();
        assert_eq!((a, b), (s, t));
    }
}
