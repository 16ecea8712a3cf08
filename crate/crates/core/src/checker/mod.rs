//! Bidirectional checking of the surface language, computing denotations.
//!
//! The four judgments are exposed as functions from semantic inputs to
//! semantic outputs: contexts to [`SemCtx`], types to [`SemType`], checked
//! and inferred terms to [`Morphism`]s out of the packed term-level context.

pub mod cx;
pub mod deriv;
pub mod error;
pub mod exchange;
pub mod parse;
pub mod rules;
pub mod split;
pub mod syntax;

use alloc::vec::Vec;

use crate::kernel::{normalize_at, shift, substitute, Term};
use crate::lfdc::{Morphism, SemType, StructuralConfig};
use crate::signature::Signature;
use crate::telescope::{basc, tele_type, SemCtx, Telescope};

pub use cx::{Cx, VarId};
pub use deriv::{Derivation, Judgment};
pub use error::{CheckError, ErrorKind, LinearityKind};
pub use exchange::{exchange_closure, Permutation};
pub use rules::Checker;
pub use split::split_points;
pub use syntax::{Ctx, Elim, Intro, Ty};

type R<T> = Result<T, CheckError>;

/// `Γ Ctx`.
pub fn form_context(ctx: &Ctx, sig: &Signature, cfg: &StructuralConfig) -> R<SemCtx> {
    Ok(form_context_derivation(ctx, sig, cfg)?.0)
}

/// `Γ Ctx`, with its derivation.
pub fn form_context_derivation(ctx: &Ctx, sig: &Signature, cfg: &StructuralConfig) -> R<(SemCtx, Derivation)> {
    let (cx, d) = Checker::new(sig, *cfg, 0).form_context(ctx)?;
    Ok((cx.to_sem().0, d))
}

/// Forms `Γ` and then `Δ` over it, giving the inputs of a checking or
/// inference judgment `Γ ⫶ Δ`.
pub fn form_judgment_context(gamma: &Ctx, delta: &Ctx, sig: &Signature, cfg: &StructuralConfig) -> R<(SemCtx, Telescope)> {
    let mut all = gamma.clone();
    all.0.extend(delta.0.iter().cloned());
    let g = form_context(&all, sig, cfg)?;
    Ok(g.split_tail(delta.0.len()))
}

/// `⟬Γ⟭ ⊢ T Type`.
pub fn form_type(g: &SemCtx, t: &Ty, sig: &Signature, cfg: &StructuralConfig) -> R<SemType> {
    Ok(form_type_derivation(g, t, sig, cfg)?.0)
}

/// `⟬Γ⟭ ⊢ T Type`, with its derivation.
pub fn form_type_derivation(g: &SemCtx, t: &Ty, sig: &Signature, cfg: &StructuralConfig) -> R<(SemType, Derivation)> {
    let cx = Cx::from_sem(g, &Telescope::new(), 0);
    let mut c = Checker::new(sig, *cfg, cx.len() as VarId);
    let d = c.form(&cx, t)?;
    let body = cx::transport(&d.term, &d.cx.ids(), &cx.ids(), &[]).expect("formed in a sub-context");
    Ok((SemType::new(g.kernel(), body)?, d))
}

/// Turns a denotation over the flat context `Γ, Δ` into a morphism
/// `⟦Δ⟧ → T` over `Γ`.
pub fn package(g: &SemCtx, d: &Telescope, ty: &Term, flat: &Term) -> R<Morphism> {
    let base = g.kernel();
    let iso = basc(&base, d)?;
    let body = substitute(flat, &iso.bwd.subst)?;
    let cod = SemType::new(base.clone(), ty.clone())?;
    Ok(Morphism::new(tele_type(&base, d), cod, body)?)
}

/// The inverse of [`package`]: the body of `m : ⟦Δ⟧ → T` as a normal
/// term over the flat context `Γ, Δ`.
pub fn unpack(g: &SemCtx, d: &Telescope, m: &Morphism) -> R<Term> {
    let base = g.kernel();
    let iso = basc(&base, d)?;
    let flat = substitute(&m.body, &iso.fwd.subst)?;
    Ok(normalize_at(&d.over(&base), &flat, &shift(&m.cod.body, d.len()))?)
}

/// `⟬Γ⟭ ⫶ ⟬Δ⟭ ⊢ T ∋ t`, with its derivation.
pub fn check_derivation(
    g: &SemCtx,
    d: &Telescope,
    ty: &SemType,
    t: &Intro,
    sig: &Signature,
    cfg: &StructuralConfig,
) -> R<(Morphism, Derivation)> {
    if ty.ctx != g.kernel() {
        return Err(CheckError::new(ErrorKind::Internal("goal type is not over Γ".into())));
    }
    let cx = Cx::from_sem(g, d, 0);
    let mut c = Checker::new(sig, *cfg, cx.len() as VarId);
    let n = c.check(&cx, &ty.body, t)?;
    let flat = cx::transport(&n.term, &n.cx.ids(), &cx.ids(), &[]).expect("checked in a sub-context");
    Ok((package(g, d, &ty.body, &flat)?, n))
}

pub fn check(g: &SemCtx, d: &Telescope, ty: &SemType, t: &Intro, sig: &Signature, cfg: &StructuralConfig) -> R<Morphism> {
    Ok(check_derivation(g, d, ty, t, sig, cfg)?.0)
}

/// `⟬Γ⟭ ⫶ ⟬Δ⟭ ⊢ e ∈ R`, with its derivation.
pub fn infer_derivation(
    g: &SemCtx,
    d: &Telescope,
    e: &Elim,
    sig: &Signature,
    cfg: &StructuralConfig,
) -> R<(SemType, Morphism, Derivation)> {
    let cx = Cx::from_sem(g, d, 0);
    let mut c = Checker::new(sig, *cfg, cx.len() as VarId);
    let n = c.infer(&cx, e)?;
    let flat = cx::transport(&n.term, &n.cx.ids(), &cx.ids(), &[]).expect("inferred in a sub-context");
    let ty = cx::transport(&n.ty, &n.cx.type_ids(), &cx.type_ids(), &[]).expect("inferred in a sub-context");
    let ty = SemType::new(g.kernel(), ty)?;
    let m = package(g, d, &ty.body, &flat)?;
    Ok((ty, m, n))
}

pub fn infer(g: &SemCtx, d: &Telescope, e: &Elim, sig: &Signature, cfg: &StructuralConfig) -> R<(SemType, Morphism)> {
    let (ty, m, _) = infer_derivation(g, d, e, sig, cfg)?;
    Ok((ty, m))
}

/// The goal type of a checking judgment, weakened over `Δ`.
pub fn over_delta(ty: &SemType, d: &Telescope) -> Term {
    shift(&ty.body, d.len())
}

/// Names bound by a judgment context, for display.
pub fn context_names(g: &SemCtx, d: &Telescope) -> Vec<crate::kernel::Name> {
    let mut out = g.names();
    out.extend(d.names());
    out
}
