//! The strict left-fibred double category given by the syntactic model of the
//! kernel.
//!
//! Contexts are kernel contexts, types over Γ are normal kernel types over Γ,
//! and a morphism `S → T` over Γ is a normal kernel term of type `T` in the
//! context `Γ, x:S`. Substitution is literal kernel substitution, so the
//! Beck-Chevalley and weakening compatibility isos are identities.

mod hom;
mod iso;

use core::fmt;

use crate::kernel::{
    self, normalize_at, normalize_type, shift, shift_from, substitute, KernelCtx, KernelError,
    KernelSubst, Term,
};

pub use hom::*;
pub use iso::*;

/// A normal type over a kernel context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemType {
    pub ctx: KernelCtx,
    pub body: Term,
}

/// A normal term `ctx, x:dom ⊢ body : cod`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub dom: SemType,
    pub cod: SemType,
    pub body: Term,
}

/// A substitution `source → target`; entries are terms over `source`, one
/// per `target` variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtxMorphism {
    pub source: KernelCtx,
    pub target: KernelCtx,
    pub subst: KernelSubst,
}

/// An isomorphism of contexts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtxIso {
    pub fwd: CtxMorphism,
    pub bwd: CtxMorphism,
}

/// An isomorphism of types over one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorIso {
    pub fwd: Morphism,
    pub bwd: Morphism,
}

impl CtxIso {
    pub fn inverse(&self) -> CtxIso {
        CtxIso {
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
        }
    }
}

impl MorIso {
    pub fn inverse(&self) -> MorIso {
        MorIso {
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
        }
    }
}

/// Which structural rules are admitted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct StructuralConfig {
    pub weakening: bool,
    pub contraction: bool,
    pub exchange: bool,
}

impl StructuralConfig {
    pub const ORDERED: StructuralConfig = StructuralConfig {
        weakening: false,
        contraction: false,
        exchange: false,
    };

    pub const LINEAR: StructuralConfig = StructuralConfig {
        weakening: false,
        contraction: false,
        exchange: true,
    };

    pub const CARTESIAN: StructuralConfig = StructuralConfig {
        weakening: true,
        contraction: true,
        exchange: true,
    };

    /// With weakening and contraction, exchange is derivable.
    pub fn exchange_available(&self) -> bool {
        self.exchange || (self.weakening && self.contraction)
    }

    pub fn require(&self, rule: StructuralRule) -> Result<(), LfdcError> {
        let on = match rule {
            StructuralRule::Weakening => self.weakening,
            StructuralRule::Contraction => self.contraction,
            StructuralRule::Exchange => self.exchange_available(),
        };
        if on {
            Ok(())
        } else {
            Err(LfdcError::StructuralRuleDisabled(rule))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructuralRule {
    Weakening,
    Contraction,
    Exchange,
}

impl fmt::Display for StructuralRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructuralRule::Weakening => "weakening",
            StructuralRule::Contraction => "contraction",
            StructuralRule::Exchange => "exchange",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LfdcError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("context mismatch in {0}")]
    ContextMismatch(&'static str),
    #[error("shape mismatch in {0}")]
    Shape(&'static str),
    #[error("{0} is not available")]
    StructuralRuleDisabled(StructuralRule),
}

pub(crate) fn same_ctx(a: &KernelCtx, b: &KernelCtx, op: &'static str) -> Result<(), LfdcError> {
    if a == b {
        Ok(())
    } else {
        Err(LfdcError::ContextMismatch(op))
    }
}

impl SemType {
    /// Normalizes `body` over `ctx`.
    pub fn new(ctx: KernelCtx, body: Term) -> Result<Self, LfdcError> {
        let body = normalize_type(&ctx, &body)?;
        Ok(SemType { ctx, body })
    }

    /// Like [`SemType::new`] but also runs the kernel type checker.
    pub fn checked(ctx: KernelCtx, body: Term) -> Result<Self, LfdcError> {
        let tc = kernel::TypingCtx::new(&ctx)?;
        kernel::check_type(&tc, &body)?;
        SemType::new(ctx, body)
    }

    /// The context extended by this type.
    pub fn extended(&self) -> KernelCtx {
        self.ctx.extended(self.body.clone())
    }
}

impl Morphism {
    /// Normalizes `body` at `cod` over `ctx, x:dom`.
    pub fn new(dom: SemType, cod: SemType, body: Term) -> Result<Self, LfdcError> {
        same_ctx(&dom.ctx, &cod.ctx, "morphism")?;
        let body = normalize_at(&dom.extended(), &body, &shift(&cod.body, 1))?;
        Ok(Morphism { dom, cod, body })
    }

    pub fn ctx(&self) -> &KernelCtx {
        &self.dom.ctx
    }

    /// Runs the kernel type checker on the body.
    pub fn validate(&self) -> Result<(), LfdcError> {
        let tc = kernel::TypingCtx::new(&self.dom.extended())?;
        let cod = tc.eval(&shift(&self.cod.body, 1))?;
        kernel::check(&tc, &self.body, &cod)?;
        Ok(())
    }
}

impl CtxMorphism {
    /// Normalizes each entry at its target type.
    pub fn new(source: KernelCtx, target: KernelCtx, subst: KernelSubst) -> Result<Self, LfdcError> {
        if subst.len() != target.len() {
            return Err(LfdcError::ContextMismatch("substitution length"));
        }
        let mut out = KernelSubst::default();
        for (l, e) in subst.0.iter().enumerate() {
            let ty = substitute(&target.0[l], &out)?;
            out.push(normalize_at(&source, e, &ty)?);
        }
        Ok(CtxMorphism {
            source,
            target,
            subst: out,
        })
    }

    pub fn identity(ctx: &KernelCtx) -> Result<Self, LfdcError> {
        CtxMorphism::new(ctx.clone(), ctx.clone(), KernelSubst::identity(ctx.len()))
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &CtxMorphism) -> Result<Self, LfdcError> {
        same_ctx(&g.target, &self.source, "context composition")?;
        let s = kernel::compose(&g.subst, &self.subst)?;
        CtxMorphism::new(g.source.clone(), self.target.clone(), s)
    }

    /// `f•(S)`: the lift under one binder, `source•f*S → target•S`.
    pub fn lift(&self, s: &SemType) -> Result<Self, LfdcError> {
        same_ctx(&s.ctx, &self.target, "context extension of a substitution")?;
        let fs = subst_type(self, s)?;
        CtxMorphism::new(fs.extended(), s.extended(), self.subst.extend())
    }
}

/// `f*(S)`.
pub fn subst_type(f: &CtxMorphism, s: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&s.ctx, &f.target, "type substitution")?;
    SemType::new(f.source.clone(), substitute(&s.body, &f.subst)?)
}

/// `f*(m)`.
pub fn subst_mor(f: &CtxMorphism, m: &Morphism) -> Result<Morphism, LfdcError> {
    same_ctx(m.ctx(), &f.target, "term substitution")?;
    let dom = subst_type(f, &m.dom)?;
    let cod = subst_type(f, &m.cod)?;
    let body = substitute(&m.body, &f.subst.extend())?;
    Morphism::new(dom, cod, body)
}

/// `Γ•(S)`.
pub fn ctx_extend(gamma: &KernelCtx, s: &SemType) -> Result<KernelCtx, LfdcError> {
    same_ctx(gamma, &s.ctx, "context extension")?;
    Ok(s.extended())
}

pub fn unit_type(gamma: &KernelCtx) -> SemType {
    SemType {
        ctx: gamma.clone(),
        body: Term::Unit,
    }
}

/// `⊕_S(T)` with `T` over `Γ•S`.
pub fn oplus(s: &SemType, t: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&s.extended(), &t.ctx, "dependent pair type")?;
    SemType::new(s.ctx.clone(), Term::sigma(s.body.clone(), t.body.clone()))
}

/// `⫽_S(T)`: abstracts a variable placed to the left of the context.
pub fn fun_l(s: &SemType, t: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&s.ctx, &t.ctx, "left function type")?;
    SemType::new(s.ctx.clone(), Term::fun_l(s.body.clone(), t.body.clone()))
}

/// `⑊_S(T)`: abstracts a variable placed to the right of the context.
pub fn fun_r(s: &SemType, t: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&s.ctx, &t.ctx, "right function type")?;
    SemType::new(s.ctx.clone(), Term::fun_r(s.body.clone(), t.body.clone()))
}

/// `∀_S(T)` with `T` over `Γ•S`.
pub fn forall_ty(s: &SemType, t: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&s.extended(), &t.ctx, "universal type")?;
    SemType::new(s.ctx.clone(), Term::pi(s.body.clone(), t.body.clone()))
}

pub fn prod_ty(s: &SemType, t: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&s.ctx, &t.ctx, "product type")?;
    SemType::new(s.ctx.clone(), Term::prod(s.body.clone(), t.body.clone()))
}

/// `ω^S(T)`: `T` weakened past a new last entry `S`.
pub fn omega(s: &SemType, t: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&s.ctx, &t.ctx, "type-level weakening")?;
    Ok(SemType {
        ctx: s.extended(),
        body: shift(&t.body, 1),
    })
}

/// `Ω^{S,T}(R)` for `R` over `Γ•T`, landing over `Γ•S•ω^S(T)`.
pub fn big_omega(s: &SemType, t: &SemType, r: &SemType) -> Result<SemType, LfdcError> {
    same_ctx(&t.extended(), &r.ctx, "type-level weakening under a binder")?;
    let wt = omega(s, t)?;
    Ok(SemType {
        ctx: wt.extended(),
        body: shift_from(&r.body, 1, 1),
    })
}

/// `ω^S` on a morphism.
pub fn omega_mor(s: &SemType, m: &Morphism) -> Result<Morphism, LfdcError> {
    let dom = omega(s, &m.dom)?;
    let cod = omega(s, &m.cod)?;
    let body = shift_from(&m.body, 1, 1);
    Ok(Morphism { dom, cod, body })
}

/// `S ⊗ T`, the pair type over a weakened second component.
pub fn tensor(s: &SemType, t: &SemType) -> Result<SemType, LfdcError> {
    oplus(s, &omega(s, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Term {
        Term::constant("P", Term::Univ)
    }

    #[test]
    fn formers_are_distinct() {
        let g = KernelCtx::empty();
        let s = SemType::new(g.clone(), p()).unwrap();
        let ws = omega(&s, &s).unwrap();
        let all = forall_ty(&s, &ws).unwrap();
        let arr = fun_r(&s, &s).unwrap();
        assert_ne!(all.body, arr.body);
        let one = unit_type(&g);
        let pair = oplus(&one, &unit_type(&one.extended())).unwrap();
        assert_eq!(pair.body, Term::sigma(Term::Unit, Term::Unit));
    }

    #[test]
    fn omega_of_unit_is_unit() {
        let s = SemType::new(KernelCtx::empty(), p()).unwrap();
        let w = omega(&s, &unit_type(&KernelCtx::empty())).unwrap();
        assert_eq!(w.body, Term::Unit);
        assert!(!kernel::occurs_free(&w.body, 0));
    }

    #[test]
    fn identity_substitution_is_strict() {
        let g = KernelCtx(alloc::vec![p(), Term::sigma(p(), p())]);
        let s = SemType::new(g.clone(), Term::prod(Term::Unit, p())).unwrap();
        let id = CtxMorphism::identity(&g).unwrap();
        assert_eq!(subst_type(&id, &s).unwrap(), s);
    }

    #[test]
    fn contexts_extend_by_one() {
        let g = KernelCtx::empty();
        let c = ctx_extend(&g, &unit_type(&g)).unwrap();
        assert_eq!(c.0, alloc::vec![Term::Unit]);
    }
}
