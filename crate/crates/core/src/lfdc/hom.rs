//! Hom-set structure: composition, the function-type bijections, products and
//! the structural maps.

use crate::kernel::{strengthen, KernelSubst, Term};

use super::{
    fun_l, fun_r, forall_ty, iso, oplus, prod_ty, same_ctx, subst_type, tensor, unit_type,
    CtxMorphism, LfdcError, Morphism, SemType, StructuralConfig, StructuralRule,
};

fn v0() -> Term {
    Term::Var(0)
}

/// Rebinds the innermost variables of `body`.
///
/// `body` lives over `Γ` (of length `n`) extended by `entries.len()`
/// variables; the result lives over `Γ` extended by `by` fresh variables, with
/// each old bound variable replaced by the matching entry.
fn rebind(body: &Term, n: usize, by: usize, entries: &[Term]) -> Result<Term, LfdcError> {
    let mut s = KernelSubst::weakening(n, by);
    for e in entries {
        s.push(e.clone());
    }
    Ok(crate::kernel::substitute(body, &s)?)
}

fn plug(body: &Term, n: usize, arg: Term) -> Result<Term, LfdcError> {
    rebind(body, n, 1, &[arg])
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism, LfdcError> {
    if f.cod != g.dom {
        return Err(LfdcError::Shape("composition of non-matching morphisms"));
    }
    let body = plug(&g.body, f.ctx().len(), f.body.clone())?;
    Morphism::new(f.dom.clone(), g.cod.clone(), body)
}

pub fn identity(s: &SemType) -> Result<Morphism, LfdcError> {
    Morphism::new(s.clone(), s.clone(), v0())
}

/// `⫽ : Hom(S ⊗ R, T) ≅ Hom(R, ⫽_S T)`.
pub fn curry_l(m: &Morphism) -> Result<Morphism, LfdcError> {
    let (s, r) = iso::untensor(&m.dom)?;
    let inner = rebind(&m.body, s.ctx.len(), 2, &[Term::pair(v0(), Term::Var(1))])?;
    Morphism::new(r, fun_l(&s, &m.cod)?, Term::lam_l(inner))
}

pub fn uncurry_l(n: &Morphism) -> Result<Morphism, LfdcError> {
    let Term::FunL(s, t) = &n.cod.body else {
        return Err(LfdcError::Shape("uncurrying a non-⫽ morphism"));
    };
    let ctx = n.ctx().clone();
    let s = SemType::new(ctx.clone(), (**s).clone())?;
    let t = SemType::new(ctx, (**t).clone())?;
    let f = plug(&n.body, n.ctx().len(), Term::snd(v0()))?;
    Morphism::new(tensor(&s, &n.dom)?, t, Term::app_l(f, Term::fst(v0())))
}

/// `⑊ : Hom(R ⊗ S, T) ≅ Hom(R, ⑊_S T)`.
pub fn curry_r(m: &Morphism) -> Result<Morphism, LfdcError> {
    let (r, s) = iso::untensor(&m.dom)?;
    let inner = rebind(&m.body, s.ctx.len(), 2, &[Term::pair(Term::Var(1), v0())])?;
    Morphism::new(r, fun_r(&s, &m.cod)?, Term::lam_r(inner))
}

pub fn uncurry_r(n: &Morphism) -> Result<Morphism, LfdcError> {
    let Term::FunR(s, t) = &n.cod.body else {
        return Err(LfdcError::Shape("uncurrying a non-⑊ morphism"));
    };
    let ctx = n.ctx().clone();
    let s = SemType::new(ctx.clone(), (**s).clone())?;
    let t = SemType::new(ctx, (**t).clone())?;
    let f = plug(&n.body, n.ctx().len(), Term::fst(v0()))?;
    Morphism::new(tensor(&n.dom, &s)?, t, Term::app_r(f, Term::snd(v0())))
}

/// `Λ : Hom_{Γ•S}(ω^S R, T) ≅ Hom_Γ(R, ∀_S T)`.
pub fn lam_forall(m: &Morphism) -> Result<Morphism, LfdcError> {
    let ext = m.ctx();
    let Some((s_body, gamma)) = ext.0.split_last() else {
        return Err(LfdcError::Shape("abstraction over an empty context"));
    };
    let gamma = crate::kernel::KernelCtx(gamma.to_vec());
    let s = SemType {
        ctx: gamma.clone(),
        body: s_body.clone(),
    };
    let r_body = strengthen(&m.dom.body, 0, 1)
        .ok_or(LfdcError::Shape("abstraction whose domain depends on the bound variable"))?;
    let r = SemType {
        ctx: gamma.clone(),
        body: r_body,
    };
    let inner = rebind(&m.body, gamma.len(), 2, &[v0(), Term::Var(1)])?;
    Morphism::new(r, forall_ty(&s, &m.cod)?, Term::lam(inner))
}

pub fn app_forall(n: &Morphism) -> Result<Morphism, LfdcError> {
    let Term::Pi(s, t) = &n.cod.body else {
        return Err(LfdcError::Shape("instantiating a non-∀ morphism"));
    };
    let len = n.ctx().len();
    let s = SemType::new(n.ctx().clone(), (**s).clone())?;
    let t = SemType::new(s.extended(), (**t).clone())?;
    let wr = super::omega(&s, &n.dom)?;
    let f = rebind(&n.body, len, 2, &[v0()])?;
    Morphism::new(wr, t, Term::app(f, Term::Var(1)))
}

/// `(f, g) : A → S × T`.
pub fn pairing(f: &Morphism, g: &Morphism) -> Result<Morphism, LfdcError> {
    if f.dom != g.dom {
        return Err(LfdcError::Shape("pairing with different domains"));
    }
    let cod = prod_ty(&f.cod, &g.cod)?;
    Morphism::new(f.dom.clone(), cod, Term::tuple(f.body.clone(), g.body.clone()))
}

pub fn proj1(s: &SemType, t: &SemType) -> Result<Morphism, LfdcError> {
    Morphism::new(prod_ty(s, t)?, s.clone(), Term::proj1(v0()))
}

pub fn proj2(s: &SemType, t: &SemType) -> Result<Morphism, LfdcError> {
    Morphism::new(prod_ty(s, t)?, t.clone(), Term::proj2(v0()))
}

/// `⊤_S : S → 𝟙`.
pub fn terminal(cfg: &StructuralConfig, s: &SemType) -> Result<Morphism, LfdcError> {
    cfg.require(StructuralRule::Weakening)?;
    Morphism::new(s.clone(), unit_type(&s.ctx), Term::Tt)
}

/// `𝔡_S : 𝟙_{Γ•S} → ω^S(S)`, reading the type-level variable at term level.
pub fn contraction_d(cfg: &StructuralConfig, s: &SemType) -> Result<Morphism, LfdcError> {
    cfg.require(StructuralRule::Contraction)?;
    Morphism::new(unit_type(&s.extended()), super::omega(s, s)?, Term::Var(1))
}

/// `Δ_S = ⊕_S(𝔡) ∘ ρ⁻¹ : S → S ⊗ S`.
pub fn diagonal(cfg: &StructuralConfig, s: &SemType) -> Result<Morphism, LfdcError> {
    let d = contraction_d(cfg, s)?;
    compose(&oplus_map(s, &d)?, &iso::rho(s)?.bwd)
}

/// `⊕_S(m) : ⊕_S T → ⊕_S T'` for `m : T → T'` over `Γ•S`.
pub fn oplus_map(s: &SemType, m: &Morphism) -> Result<Morphism, LfdcError> {
    same_ctx(&s.extended(), m.ctx(), "functor action of a pair type")?;
    let dom = oplus(s, &m.dom)?;
    let cod = oplus(s, &m.cod)?;
    let inner = rebind(&m.body, s.ctx.len(), 1, &[Term::fst(v0()), Term::snd(v0())])?;
    Morphism::new(dom, cod, Term::pair(Term::fst(v0()), inner))
}

/// `Γ•(g) : Γ•A → Γ•B`.
pub fn context_map(g: &Morphism) -> Result<CtxMorphism, LfdcError> {
    let n = g.ctx().len();
    let mut sub = KernelSubst::weakening(n, 1);
    sub.push(g.body.clone());
    CtxMorphism::new(g.dom.extended(), g.cod.extended(), sub)
}

/// `⟨g, -⟩ : ⊕_A(Γ•(g)* T) → ⊕_{S'} T` for `g : A → S'`.
pub fn pair_left(g: &Morphism, t: &SemType) -> Result<Morphism, LfdcError> {
    same_ctx(&g.cod.extended(), &t.ctx, "pairing map")?;
    let tg = subst_type(&context_map(g)?, t)?;
    let dom = oplus(&g.dom, &tg)?;
    let cod = oplus(&g.cod, t)?;
    let first = plug(&g.body, g.ctx().len(), Term::fst(v0()))?;
    Morphism::new(dom, cod, Term::pair(first, Term::snd(v0())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::KernelCtx;

    fn p() -> Term {
        Term::constant("P", Term::Univ)
    }

    fn q() -> Term {
        Term::constant("Q", Term::Univ)
    }

    fn sample() -> (SemType, SemType, SemType) {
        let g = KernelCtx(alloc::vec![p()]);
        let s = SemType::new(g.clone(), p()).unwrap();
        let r = SemType::new(g.clone(), q()).unwrap();
        let t = SemType::new(g, Term::prod(p(), q())).unwrap();
        (s, r, t)
    }

    #[test]
    fn identity_is_eta_long_variable() {
        let g = KernelCtx::empty();
        let s = SemType::new(g, Term::sigma(p(), q())).unwrap();
        let id = identity(&s).unwrap();
        assert_eq!(id.body, Term::pair(Term::fst(Term::Var(0)), Term::snd(Term::Var(0))));
    }

    #[test]
    fn left_curry_roundtrips() {
        let (s, r, t) = sample();
        let dom = tensor(&s, &r).unwrap();
        let m = Morphism::new(
            dom,
            t,
            Term::tuple(Term::fst(Term::Var(0)), Term::snd(Term::Var(0))),
        )
        .unwrap();
        let c = curry_l(&m).unwrap();
        assert_eq!(uncurry_l(&c).unwrap(), m);
        assert_eq!(curry_l(&uncurry_l(&c).unwrap()).unwrap(), c);
    }

    #[test]
    fn right_curry_roundtrips() {
        let (s, r, t) = sample();
        let dom = tensor(&r, &s).unwrap();
        let m = Morphism::new(
            dom,
            t,
            Term::tuple(Term::snd(Term::Var(0)), Term::fst(Term::Var(0))),
        )
        .unwrap();
        let c = curry_r(&m).unwrap();
        assert_eq!(uncurry_r(&c).unwrap(), m);
    }

    #[test]
    fn forall_roundtrips() {
        let (s, r, _) = sample();
        let fam = Term::constant("F", Term::pi(p(), Term::Univ));
        let t = SemType::new(s.extended(), Term::app(fam, Term::Var(0))).unwrap();
        let k = Term::constant("k", Term::pi(p(), Term::pi(q(), Term::app(
            Term::constant("F", Term::pi(p(), Term::Univ)), Term::Var(1)))));
        let m = Morphism::new(
            super::super::omega(&s, &r).unwrap(),
            t,
            Term::app(Term::app(k, Term::Var(1)), Term::Var(0)),
        )
        .unwrap();
        let l = lam_forall(&m).unwrap();
        assert_eq!(app_forall(&l).unwrap(), m);
    }

    #[test]
    fn projections_of_pairing() {
        let (s, r, _) = sample();
        let f = identity(&s).unwrap();
        let g = Morphism::new(s.clone(), r.clone(), Term::constant("c", q())).unwrap();
        let pr = pairing(&f, &g).unwrap();
        assert_eq!(compose(&proj1(&s, &r).unwrap(), &pr).unwrap(), f);
        assert_eq!(compose(&proj2(&s, &r).unwrap(), &pr).unwrap(), g);
    }

    #[test]
    fn structural_maps_are_gated() {
        let (s, _, _) = sample();
        let off = StructuralConfig::ORDERED;
        assert_eq!(
            terminal(&off, &s).unwrap_err(),
            LfdcError::StructuralRuleDisabled(StructuralRule::Weakening)
        );
        assert_eq!(
            contraction_d(&off, &s).unwrap_err(),
            LfdcError::StructuralRuleDisabled(StructuralRule::Contraction)
        );
    }

    #[test]
    fn diagonal_duplicates() {
        let (s, _, _) = sample();
        let d = diagonal(&StructuralConfig::CARTESIAN, &s).unwrap();
        assert_eq!(d.body, Term::pair(Term::Var(0), Term::Var(0)));
        let (a, b) = iso::untensor(&d.cod).unwrap();
        let first = Morphism::new(d.cod.clone(), a, Term::fst(Term::Var(0))).unwrap();
        let second = Morphism::new(d.cod.clone(), b, Term::snd(Term::Var(0))).unwrap();
        assert_eq!(compose(&first, &d).unwrap(), identity(&s).unwrap());
        assert_eq!(compose(&second, &d).unwrap(), identity(&s).unwrap());
    }

    #[test]
    fn terminal_is_unique_into_unit() {
        let (s, _, _) = sample();
        let t = terminal(&StructuralConfig::CARTESIAN, &s).unwrap();
        let other = Morphism::new(s.clone(), unit_type(&s.ctx), Term::snd(Term::ann(
            Term::pair(Term::Var(0), Term::Tt),
            Term::sigma(p(), Term::Unit),
        )))
        .unwrap();
        assert_eq!(t, other);
    }
}
