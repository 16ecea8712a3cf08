//! The typing rules as procedures.
//!
//! Denotations are computed in flat form: a term over the whole judgment
//! context `Γ, Δ`. The public entry points convert them into morphisms out
//! of `⟦Δ⟧` through the reassociation isomorphism.
//!
//! Every judgment starts by dropping type-level entries that neither the
//! subject, the goal nor any remaining entry mentions. This is type-level
//! weakening read backwards; it lets rules that take a suffix of the context
//! find that suffix.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Display;

use super::cx::{transport, Cx, CxBuilder, Entry, VarId};
use super::deriv::{Derivation, Judgment};
use super::error::{CheckError, ErrorKind, LinearityKind};
use super::split::{self, Split, View, Vis};
use super::syntax::{Ctx, Elim, Intro, Let, LetForm, Name, Names, Pattern, Ty, ANON};
use crate::kernel::{canonical_form, free_vars, instantiate, normalize_type, shift, shift_from, strengthen, HeadForm, Term};
use crate::lfdc::StructuralConfig;
use crate::signature::Signature;

type R<T> = Result<T, CheckError>;

pub struct Checker<'s> {
    sig: &'s Signature,
    cfg: StructuralConfig,
    next: VarId,
    steps: usize,
    trace: Vec<&'static str>,
}

fn mentions<N: Names + ?Sized>(x: &N) -> BTreeSet<Name> {
    let mut s = x.names();
    s.remove(ANON);
    s
}

fn moved(t: &Term, from: &[VarId], to: &[VarId], extras: &[(VarId, Term)]) -> R<Term> {
    transport(t, from, to, extras).ok_or_else(|| CheckError::new(ErrorKind::Internal("variable escapes its scope".into())))
}

/// The denotation of a checking or inference node over `cx`.
fn term_in(d: &Derivation, cx: &Cx) -> R<Term> {
    moved(&d.term, &d.cx.ids(), &cx.ids(), &[])
}

/// The type of a checking or inference node over the type level of `cx`.
fn ty_in(d: &Derivation, cx: &Cx) -> R<Term> {
    moved(&d.ty, &d.cx.type_ids(), &cx.type_ids(), &[])
}

fn describe(t: &Intro) -> String {
    match t {
        Intro::Unit => "the unit ⟨⟩".into(),
        Intro::Pair(..) => "a dependent pair".into(),
        Intro::LamL(..) => "a ⫽-abstraction".into(),
        Intro::LamR(..) => "a ⑊-abstraction".into(),
        Intro::Lam(..) => "a Λ-abstraction".into(),
        Intro::Tuple(..) => "a product pair".into(),
        Intro::Embed(e) => e.to_string(),
    }
}

/// A context of type-level entries with one more type-level entry.
fn push_type(cx: &Cx, id: VarId, name: &Name, ty: Term) -> Cx {
    debug_assert_eq!(cx.k, cx.len());
    let mut out = cx.clone();
    out.entries.push(Entry {
        id,
        name: name.clone(),
        ty,
    });
    out.k = out.len();
    out
}

/// `(Γ, Δ, Θ)` cut out of the type level at `i ≤ j`.
struct Cuts {
    gamma: Vec<VarId>,
    delta: Vec<VarId>,
    theta: Vec<VarId>,
}

impl<'s> Checker<'s> {
    pub fn new(sig: &'s Signature, cfg: StructuralConfig, first_free: VarId) -> Self {
        Checker {
            sig,
            cfg,
            next: first_free,
            steps: 0,
            trace: Vec::new(),
        }
    }

    pub fn cfg(&self) -> &StructuralConfig {
        &self.cfg
    }

    fn fresh(&mut self) -> VarId {
        let v = self.next;
        self.next += 1;
        v
    }

    fn err(&self, kind: ErrorKind, cx: &Cx, subject: &dyn Display) -> CheckError {
        CheckError {
            kind,
            subject: subject.to_string(),
            context: cx.to_string(),
            trace: self.trace.clone(),
            progress: self.steps,
            cause: None,
        }
    }

    /// Fills in location fields left empty by lower layers.
    fn locate(&self, mut e: CheckError, cx: &Cx, subject: &dyn Display) -> CheckError {
        if e.subject.is_empty() {
            e.subject = subject.to_string();
            e.context = cx.to_string();
            e.trace = self.trace.clone();
            e.progress = self.steps;
        }
        e
    }

    fn within<T>(&mut self, rule: &'static str, f: impl FnOnce(&mut Self) -> R<T>) -> R<T> {
        self.trace.push(rule);
        let r = f(self);
        self.trace.pop();
        r
    }

    fn done(&mut self, d: Derivation) -> R<Derivation> {
        self.steps += 1;
        Ok(d)
    }

    /// Tries alternatives in order. The first success wins; otherwise the
    /// failure that got furthest is reported.
    fn attempt<I, T>(&mut self, items: I, none: CheckError, mut f: impl FnMut(&mut Self, I::Item) -> R<T>) -> R<T>
    where
        I: IntoIterator,
    {
        let mut best: Option<(usize, CheckError)> = None;
        for it in items {
            let start = self.steps;
            match f(self, it) {
                Ok(v) => return Ok(v),
                Err(e) => {
                    let p = e.progress.saturating_sub(start);
                    if best.as_ref().is_none_or(|(bp, _)| p > *bp) {
                        best = Some((p, e));
                    }
                }
            }
        }
        Err(best.map_or(none, |b| b.1))
    }

    fn fresh_name(&self, cx: &Cx, x: &Name, subject: &dyn Display) -> R<()> {
        if &**x != ANON && cx.find(x).is_some() {
            return Err(self.err(ErrorKind::DuplicateVariable(x.clone()), cx, subject));
        }
        Ok(())
    }

    fn sub(&self, src: &Cx, ty: &[VarId], tm: &[VarId], subject: &dyn Display) -> R<Cx> {
        let mut b = CxBuilder::new(src);
        if !b.all(ty) {
            return Err(self.err(ErrorKind::SplitError, src, subject));
        }
        b.boundary();
        for &id in tm {
            if !b.old(id) {
                let name = src.entries[src.pos(id).expect("known id")].name.clone();
                let kind = ErrorKind::LinearityError {
                    var: name,
                    kind: LinearityKind::Dependent,
                };
                return Err(self.err(kind, src, subject));
            }
        }
        Ok(b.finish())
    }

    /// Drops unmentioned type-level entries nothing depends on.
    fn strengthen(&self, cx: &Cx, goal: Option<&Term>, names: &BTreeSet<Name>) -> Option<(Cx, Option<Term>)> {
        let k = cx.k;
        let mut keep = vec![false; k];
        let mark = |t: &Term, at: usize, keep: &mut Vec<bool>| {
            for j in free_vars(t) {
                if j < at && at - 1 - j < k {
                    keep[at - 1 - j] = true;
                }
            }
        };
        if let Some(g) = goal {
            mark(g, k, &mut keep);
        }
        for p in k..cx.len() {
            mark(&cx.entries[p].ty, p, &mut keep);
        }
        for (slot, e) in keep.iter_mut().zip(&cx.entries[..k]) {
            if names.contains(&e.name) {
                *slot = true;
            }
        }
        for p in (0..k).rev() {
            if keep[p] {
                mark(&cx.entries[p].ty, p, &mut keep);
            }
        }
        if keep.iter().all(|&b| b) {
            return None;
        }
        let ty: Vec<VarId> = (0..k).filter(|&p| keep[p]).map(|p| cx.entries[p].id).collect();
        let mut b = CxBuilder::new(cx);
        let ok = b.all(&ty);
        b.boundary();
        let ok = ok && b.all(&cx.term_entries().iter().map(|e| e.id).collect::<Vec<_>>());
        debug_assert!(ok);
        let out = b.finish();
        let goal = goal.map(|g| transport(g, &cx.type_ids(), &out.type_ids(), &[]).expect("goal kept"));
        Some((out, goal))
    }

    fn require_used(&self, cx: &Cx, names: &BTreeSet<Name>, subject: &dyn Display) -> R<()> {
        if self.cfg.weakening {
            return Ok(());
        }
        for e in cx.term_entries() {
            if !names.contains(&e.name) {
                let kind = ErrorKind::LinearityError {
                    var: e.name.clone(),
                    kind: LinearityKind::Unused,
                };
                return Err(self.err(kind, cx, subject));
            }
        }
        Ok(())
    }

    fn head(&self, cx: &Cx, ty: &Term, subject: &dyn Display) -> R<HeadForm> {
        canonical_form(&cx.prefix_kernel(), ty).map_err(|e| self.locate(e.into(), cx, subject))
    }

    fn normal(&self, cx: &Cx, ty: &Term) -> R<Term> {
        Ok(normalize_type(&cx.prefix_kernel(), ty)?)
    }

    fn mismatch(&self, cx: &Cx, expected: String, found: &Term, subject: &dyn Display) -> CheckError {
        let found = cx.show_prefix(found);
        self.err(ErrorKind::TypeMismatch { expected, found }, cx, subject)
    }

    fn exch(&self, rule: &'static str, cx: &Cx, sp: &Split, d: Derivation) -> R<Derivation> {
        if !sp.permuted {
            return Ok(d);
        }
        let term = term_in(&d, cx)?;
        Ok(Derivation {
            rule,
            judgment: d.judgment,
            cx: cx.clone(),
            ty: d.ty.clone(),
            term,
            consumed: None,
            additive: false,
            children: vec![d],
        })
    }

    fn splits(&self, cx: &Cx, views: &[View], n: usize, subject: &dyn Display) -> R<Vec<Split>> {
        split::splits(cx, views, n, &self.cfg).map_err(|e| self.locate(e, cx, subject))
    }

    // ---------------------------------------------------------------
    // Context and type formation
    // ---------------------------------------------------------------

    /// `Γ Ctx`. Entries receive fresh identities.
    pub fn form_context(&mut self, ctx: &Ctx) -> R<(Cx, Derivation)> {
        let mut cx = Cx::default();
        let mut d = Derivation::leaf("Emp", Judgment::Ctx, &cx, Term::Univ, Term::Unit);
        for (x, s) in &ctx.0 {
            let subject = ctx;
            if cx.find(x).is_some() {
                return Err(self.err(ErrorKind::DuplicateVariable(x.clone()), &cx, subject));
            }
            let n = self.within("Ext", |c| c.form(&cx, s))?;
            let ty = term_in(&n, &cx)?;
            let id = self.fresh();
            let next = push_type(&cx, id, x, ty);
            d = Derivation::leaf("Ext", Judgment::Ctx, &next, Term::Univ, Term::Unit).with(vec![d, n]);
            cx = next;
        }
        Ok((cx, d))
    }

    /// `Γ ⊢ T Type` for a context with no term-level part.
    pub fn form(&mut self, cx: &Cx, t: &Ty) -> R<Derivation> {
        let names = mentions(t);
        if let Some((cx2, _)) = self.strengthen(cx, None, &names) {
            return self.form(&cx2, t);
        }
        let leaf = |rule, ty: Term| Derivation::leaf(rule, Judgment::Type, cx, Term::Univ, ty);
        match t {
            Ty::Unit => self.done(leaf("𝟙Form", Term::Unit)),
            Ty::Sum(x, s, u) | Ty::Forall(x, s, u) => {
                let rule = if matches!(t, Ty::Sum(..)) { "⊕Form" } else { "∀Form" };
                self.within(rule, |c| {
                    c.fresh_name(cx, x, t)?;
                    let ns = c.form(cx, s)?;
                    let sh = term_in(&ns, cx)?;
                    let id = c.fresh();
                    let ext = push_type(cx, id, x, sh.clone());
                    let nu = c.form(&ext, u)?;
                    let uh = term_in(&nu, &ext)?;
                    let ty = if rule == "⊕Form" { Term::sigma(sh, uh) } else { Term::pi(sh, uh) };
                    c.done(leaf(rule, ty).with(vec![ns, nu]))
                })
            }
            Ty::FunL(s, u) | Ty::FunR(s, u) | Ty::Prod(s, u) => {
                let rule = match t {
                    Ty::FunL(..) => "⫽Form",
                    Ty::FunR(..) => "⑊Form",
                    _ => "×Form",
                };
                self.within(rule, |c| {
                    let ns = c.form(cx, s)?;
                    let nu = c.form(cx, u)?;
                    let (sh, uh) = (term_in(&ns, cx)?, term_in(&nu, cx)?);
                    let ty = match t {
                        Ty::FunL(..) => Term::fun_l(sh, uh),
                        Ty::FunR(..) => Term::fun_r(sh, uh),
                        _ => Term::prod(sh, uh),
                    };
                    c.done(leaf(rule, ty).with(vec![ns, nu]))
                })
            }
            Ty::Atom(p, s) => self.within("Atom", |c| c.atom(cx, t, p, s)),
        }
    }

    fn atom(&mut self, cx: &Cx, t: &Ty, p: &Name, s: &Intro) -> R<Derivation> {
        let binding = self.sig.lookup_atom(p).map_err(|e| self.locate(e, cx, t))?;
        let (dom, head) = (binding.domain.body.clone(), binding.head.clone());
        let names = mentions(s);
        let n = cx.len();
        let mut cands = Vec::new();
        for j in (0..=n).rev() {
            if cx.entries[j..].iter().any(|e| names.contains(&e.name)) {
                continue;
            }
            for i in 0..=j {
                if self.cfg.weakening || cx.entries[i..j].iter().all(|e| names.contains(&e.name)) {
                    cands.push((i, j));
                }
            }
        }
        let none = self.err(ErrorKind::AtomParameterError(p.clone()), cx, t);
        let r = self.attempt(cands, none.clone(), |c, (i, j)| {
            let ids = cx.ids();
            let cs = c.sub(cx, &ids[..i], &ids[i..j], t)?;
            let ns = c.check(&cs, &dom, s)?;
            let sh = term_in(&ns, &cs)?;
            let ty = moved(&Term::app(head.clone(), sh), &cs.ids(), &ids, &[])?;
            c.done(Derivation::leaf("Atom", Judgment::Type, cx, Term::Univ, ty).with(vec![ns]))
        });
        r.map_err(|e| {
            if e.kind == none.kind && e.cause.is_none() {
                return e;
            }
            let mut w = none.clone();
            w.progress = e.progress;
            w.with_cause(e)
        })
    }

    /// Forms a let-motive, reporting failures as motive errors.
    fn motive(&mut self, cx: &Cx, t: &Ty, subject: &dyn Display) -> R<Term> {
        match self.form(cx, t) {
            Ok(d) => term_in(&d, cx),
            Err(e) => {
                let mut w = self.err(ErrorKind::MotiveError, cx, subject);
                w.progress = e.progress;
                Err(w.with_cause(e))
            }
        }
    }

    // ---------------------------------------------------------------
    // Checking
    // ---------------------------------------------------------------

    /// `Γ ⫶ Δ ⊢ T ∋ t` with `T` over the type level of `cx`.
    pub fn check(&mut self, cx: &Cx, goal: &Term, t: &Intro) -> R<Derivation> {
        let names = mentions(t);
        if let Some((cx2, g2)) = self.strengthen(cx, Some(goal), &names) {
            return self.check(&cx2, &g2.expect("goal"), t);
        }
        self.require_used(cx, &names, t)?;
        let head = self.head(cx, goal, t)?;
        let leaf = |rule, term| Derivation::leaf(rule, Judgment::Check, cx, goal.clone(), term);
        match (t, head) {
            (Intro::Unit, HeadForm::Unit) => {
                if cx.k == cx.len() {
                    self.done(leaf("𝟙IntroStr", Term::Tt))
                } else if self.cfg.weakening {
                    self.done(leaf("𝟙IntroWk", Term::Tt))
                } else {
                    let e = &cx.term_entries()[0];
                    let kind = ErrorKind::LinearityError {
                        var: e.name.clone(),
                        kind: LinearityKind::Unused,
                    };
                    Err(self.err(kind, cx, t))
                }
            }
            (Intro::Pair(s, u), HeadForm::Pair(a, b)) => self.within("⊕Intro", |c| c.pair_intro(cx, goal, &a, &b, s, u, t)),
            (Intro::LamL(x, body), HeadForm::FunL(a, b)) => self.within("⫽Intro", |c| {
                c.fresh_name(cx, x, t)?;
                let id = c.fresh();
                let mut bld = CxBuilder::new(cx);
                bld.all(&cx.type_ids());
                bld.boundary();
                bld.fresh(id, x.clone(), a.clone());
                let tm: Vec<VarId> = cx.term_entries().iter().map(|e| e.id).collect();
                bld.all(&tm);
                let inner = bld.finish();
                let n = c.check(&inner, &b, body)?;
                let mut to = cx.ids();
                to.push(id);
                let body = moved(&n.term, &n.cx.ids(), &to, &[])?;
                c.done(leaf("⫽Intro", Term::lam_l(body)).with(vec![n]))
            }),
            (Intro::LamR(x, body), HeadForm::FunR(a, b)) => self.within("⑊Intro", |c| {
                c.fresh_name(cx, x, t)?;
                let id = c.fresh();
                let mut inner = cx.clone();
                inner.entries.push(Entry {
                    id,
                    name: x.clone(),
                    ty: shift(&a, cx.len() - cx.k),
                });
                let n = c.check(&inner, &b, body)?;
                let body = term_in(&n, &inner)?;
                c.done(leaf("⑊Intro", Term::lam_r(body)).with(vec![n]))
            }),
            (Intro::Lam(x, body), HeadForm::All(a, b)) => self.within("∀Intro", |c| {
                c.fresh_name(cx, x, t)?;
                let id = c.fresh();
                let mut bld = CxBuilder::new(cx);
                bld.all(&cx.type_ids());
                bld.fresh(id, x.clone(), a.clone());
                bld.boundary();
                let tm: Vec<VarId> = cx.term_entries().iter().map(|e| e.id).collect();
                bld.all(&tm);
                let inner = bld.finish();
                let n = c.check(&inner, &b, body)?;
                let mut to = cx.ids();
                to.push(id);
                let body = moved(&n.term, &n.cx.ids(), &to, &[])?;
                c.done(leaf("∀Intro", Term::lam(body)).with(vec![n]))
            }),
            (Intro::Tuple(s, u), HeadForm::Prod(a, b)) => self.within("×Intro", |c| {
                let ns = c.check(cx, &a, s)?;
                let nu = c.check(cx, &b, u)?;
                let term = Term::tuple(term_in(&ns, cx)?, term_in(&nu, cx)?);
                let mut d = leaf("×Intro", term).with(vec![ns, nu]);
                d.additive = true;
                c.done(d)
            }),
            (Intro::Embed(e), _) => self.within("Embed", |c| {
                let n = c.infer(cx, e)?;
                let found = c.normal(cx, &ty_in(&n, cx)?)?;
                let expected = c.normal(cx, goal)?;
                if found != expected {
                    return Err(c.mismatch(cx, cx.show_prefix(&expected), &found, t));
                }
                let term = term_in(&n, cx)?;
                c.done(leaf("Embed", term).with(vec![n]))
            }),
            _ => {
                let kind = ErrorKind::TypeMismatch {
                    expected: cx.show_prefix(goal),
                    found: describe(t),
                };
                Err(self.err(kind, cx, t))
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn pair_intro(&mut self, cx: &Cx, goal: &Term, a: &Term, b: &Term, s: &Intro, u: &Intro, t: &Intro) -> R<Derivation> {
        let views = [
            View::new(mentions(s), &[Vis::Term, Vis::Hidden]),
            View::new(mentions(u), &[Vis::Type, Vis::Term]),
        ];
        let splits = self.splits(cx, &views, 2, t)?;
        let none = self.err(ErrorKind::SplitError, cx, t);
        self.attempt(splits, none, |c, sp| {
            let g = sp.cx.type_ids();
            let cs = c.sub(&sp.cx, &g, &sp.blocks[0], t)?;
            let ns = c.check(&cs, a, s)?;
            let sh = term_in(&ns, &cs)?;
            let gd: Vec<VarId> = g.iter().chain(&sp.blocks[0]).copied().collect();
            let ct = c.sub(&sp.cx, &gd, &sp.blocks[1], t)?;
            let goal_t = instantiate(&shift_from(b, 1, sp.blocks[0].len()), &sh);
            let goal_t = c.normal(&ct, &goal_t)?;
            let nt = c.check(&ct, &goal_t, u)?;
            let term = Term::pair(term_in(&ns, &sp.cx)?, term_in(&nt, &sp.cx)?);
            let d = Derivation::leaf("⊕Intro", Judgment::Check, &sp.cx, goal.clone(), term).with(vec![ns, nt]);
            let d = c.exch("ExchI", cx, &sp, d)?;
            c.done(d)
        })
    }

    // ---------------------------------------------------------------
    // Inference
    // ---------------------------------------------------------------

    /// `Γ ⫶ Δ ⊢ e ∈ R`; the node's type is over its own type level.
    pub fn infer(&mut self, cx: &Cx, e: &Elim) -> R<Derivation> {
        let names = mentions(e);
        if let Some((cx2, _)) = self.strengthen(cx, None, &names) {
            return self.infer(&cx2, e);
        }
        self.require_used(cx, &names, e)?;
        match e {
            Elim::Name(x) => self.variable(cx, x, e),
            Elim::Ann(t, ty) => self.within("Annotate", |c| {
                let gamma = cx.type_part();
                let nt = c.form(&gamma, ty)?;
                let th = term_in(&nt, &gamma)?;
                let n = c.check(cx, &th, t)?;
                let term = term_in(&n, cx)?;
                c.done(Derivation::leaf("Annotate", Judgment::Infer, cx, th, term).with(vec![nt, n]))
            }),
            Elim::AppL(s, f) => self.within("⫽Elim", |c| c.app_l(cx, s, f, e)),
            Elim::AppR(f, s) => self.within("⑊Elim", |c| c.app_r(cx, f, s, e)),
            Elim::App(f, s) => self.within("∀Elim", |c| c.app_forall(cx, f, s, e)),
            Elim::Proj1(f) | Elim::Proj2(f) => {
                let first = matches!(e, Elim::Proj1(_));
                let rule = if first { "×Elim1" } else { "×Elim2" };
                self.within(rule, |c| {
                    let n = c.infer(cx, f)?;
                    let ty = ty_in(&n, cx)?;
                    let HeadForm::Prod(a, b) = c.head(cx, &ty, e)? else {
                        return Err(c.mismatch(cx, "a product S × T".into(), &ty, e));
                    };
                    let ft = term_in(&n, cx)?;
                    let (ty, term) = if first { (a, Term::proj1(ft)) } else { (b, Term::proj2(ft)) };
                    c.done(Derivation::leaf(rule, Judgment::Infer, cx, ty, term).with(vec![n]))
                })
            }
            Elim::Let(l) => match l.form() {
                Some(LetForm::UnitTermBare) => self.within("𝟙Elim3", |c| c.unit_elim3(cx, l, e)),
                Some(LetForm::UnitTerm) => self.within("𝟙Elim1", |c| c.term_elim(cx, l, e, false)),
                Some(LetForm::PairTerm) => self.within("⊕Elim1", |c| c.term_elim(cx, l, e, true)),
                Some(LetForm::UnitTypeBare) => self.within("𝟙Elim4", |c| c.unit_elim4(cx, l, e)),
                Some(LetForm::UnitType) => self.within("𝟙Elim2", |c| c.type_elim(cx, l, e, false)),
                Some(LetForm::PairType) => self.within("⊕Elim2", |c| c.type_elim(cx, l, e, true)),
                None => Err(self.err(ErrorKind::MotiveError, cx, e)),
            },
        }
    }

    fn variable(&mut self, cx: &Cx, x: &Name, e: &Elim) -> R<Derivation> {
        let k = cx.k;
        let Some(p) = cx.find(x).filter(|_| &**x != ANON) else {
            let Some(c) = self.sig.constant(x) else {
                return Err(self.err(ErrorKind::UnknownVariable(x.clone()), cx, e));
            };
            if let Some(extra) = cx.term_entries().first() {
                let kind = ErrorKind::LinearityError {
                    var: extra.name.clone(),
                    kind: LinearityKind::Unused,
                };
                return Err(self.err(kind, cx, e));
            }
            let (ty, head) = (c.ty.body.clone(), c.head.clone());
            return self.done(Derivation::leaf("Const", Judgment::Infer, cx, ty, head));
        };
        let id = cx.entries[p].id;
        let (rule, ty, term) = if p >= k {
            if !self.cfg.weakening {
                if cx.len() != k + 1 {
                    return Err(self.err(ErrorKind::SplitError, cx, e));
                }
                ("StrId", cx.entries[p].ty.clone(), Term::Var(0))
            } else {
                let Some(ty) = strengthen(&cx.entries[p].ty, 0, p - k) else {
                    let kind = ErrorKind::LinearityError {
                        var: x.clone(),
                        kind: LinearityKind::Dependent,
                    };
                    return Err(self.err(kind, cx, e));
                };
                ("WkId", ty, cx.var(p))
            }
        } else if self.cfg.contraction && !self.cfg.weakening {
            if p + 1 != k || cx.len() != k {
                return Err(self.err(ErrorKind::SplitError, cx, e));
            }
            ("StrContr", shift(&cx.entries[p].ty, 1), Term::Var(0))
        } else if self.cfg.contraction {
            ("WkContr", shift(&cx.entries[p].ty, k - p), cx.var(p))
        } else {
            let kind = ErrorKind::LinearityError {
                var: x.clone(),
                kind: LinearityKind::TypeLevelOnly,
            };
            return Err(self.err(kind, cx, e));
        };
        let mut d = Derivation::leaf(rule, Judgment::Infer, cx, ty, term);
        if p >= k {
            d.consumed = Some(id);
        }
        self.done(d)
    }

    fn app_l(&mut self, cx: &Cx, s: &Intro, f: &Elim, e: &Elim) -> R<Derivation> {
        let views = [
            View::new(mentions(f), &[Vis::Hidden, Vis::Term]),
            View::new(mentions(s), &[Vis::Term, Vis::Hidden]),
        ];
        let splits = self.splits(cx, &views, 2, e)?;
        let none = self.err(ErrorKind::SplitError, cx, e);
        self.attempt(splits, none, |c, sp| {
            let g = sp.cx.type_ids();
            let cf = c.sub(&sp.cx, &g, &sp.blocks[1], e)?;
            let nf = c.infer(&cf, f)?;
            let fty = ty_in(&nf, &cf)?;
            let HeadForm::FunL(a, b) = c.head(&cf, &fty, e)? else {
                return Err(c.mismatch(&cf, "a function S ⫽ T".into(), &fty, e));
            };
            let cs = c.sub(&sp.cx, &g, &sp.blocks[0], e)?;
            let ns = c.check(&cs, &a, s)?;
            let term = Term::app_l(term_in(&nf, &sp.cx)?, term_in(&ns, &sp.cx)?);
            let d = Derivation::leaf("⫽Elim", Judgment::Infer, &sp.cx, b, term).with(vec![nf, ns]);
            let d = c.exch("ExchE", cx, &sp, d)?;
            c.done(d)
        })
    }

    fn app_r(&mut self, cx: &Cx, f: &Elim, s: &Intro, e: &Elim) -> R<Derivation> {
        let views = [
            View::new(mentions(f), &[Vis::Term, Vis::Hidden]),
            View::new(mentions(s), &[Vis::Hidden, Vis::Term]),
        ];
        let splits = self.splits(cx, &views, 2, e)?;
        let none = self.err(ErrorKind::SplitError, cx, e);
        self.attempt(splits, none, |c, sp| {
            let g = sp.cx.type_ids();
            let cf = c.sub(&sp.cx, &g, &sp.blocks[0], e)?;
            let nf = c.infer(&cf, f)?;
            let fty = ty_in(&nf, &cf)?;
            let HeadForm::FunR(a, b) = c.head(&cf, &fty, e)? else {
                return Err(c.mismatch(&cf, "a function S ⊸ T".into(), &fty, e));
            };
            let cs = c.sub(&sp.cx, &g, &sp.blocks[1], e)?;
            let ns = c.check(&cs, &a, s)?;
            let term = Term::app_r(term_in(&nf, &sp.cx)?, term_in(&ns, &sp.cx)?);
            let d = Derivation::leaf("⑊Elim", Judgment::Infer, &sp.cx, b, term).with(vec![nf, ns]);
            let d = c.exch("ExchE", cx, &sp, d)?;
            c.done(d)
        })
    }

    fn app_forall(&mut self, cx: &Cx, f: &Elim, s: &Intro, e: &Elim) -> R<Derivation> {
        let k = cx.k;
        let (fnames, snames) = (mentions(f), mentions(s));
        let cands: Vec<usize> = (0..=k)
            .filter(|&j| {
                let delta = &cx.entries[j..k];
                delta.iter().all(|x| !fnames.contains(&x.name))
                    && (self.cfg.weakening || delta.iter().all(|x| snames.contains(&x.name)))
            })
            .collect();
        let none = self.err(ErrorKind::SplitError, cx, e);
        self.attempt(cands, none, |c, j| {
            let ids = cx.ids();
            let tm: Vec<VarId> = ids[k..].to_vec();
            let cf = c.sub(cx, &ids[..j], &tm, e)?;
            let nf = c.infer(&cf, f)?;
            let fty = ty_in(&nf, &cf)?;
            let HeadForm::All(a, b) = c.head(&cf, &fty, e)? else {
                return Err(c.mismatch(&cf, "a dependent function ∀x : S. T".into(), &fty, e));
            };
            let cs = c.sub(cx, &ids[..j], &ids[j..k], e)?;
            let ns = c.check(&cs, &a, s)?;
            let sh = term_in(&ns, &cs)?;
            let ty = instantiate(&shift_from(&b, 1, k - j), &sh);
            let ty = c.normal(cx, &ty)?;
            let term = Term::app(term_in(&nf, cx)?, moved(&sh, &cs.ids(), &ids, &[])?);
            c.done(Derivation::leaf("∀Elim", Judgment::Infer, cx, ty, term).with(vec![nf, ns]))
        })
    }

    // ---------------------------------------------------------------
    // Pattern matching
    // ---------------------------------------------------------------

    fn check_binders(&self, cx: &Cx, l: &Let, e: &Elim) -> R<()> {
        let mut seen: Vec<&Name> = Vec::new();
        let pat: Vec<&Name> = match &l.pattern {
            Pattern::Pair(x, y) => vec![x, y],
            Pattern::Unit => vec![],
        };
        for x in l.binders.iter().chain(pat).chain(l.withs.iter().map(|(w, _)| w)) {
            self.fresh_name(cx, x, e)?;
            if &**x != ANON && seen.contains(&x) && !l.binders.contains(x) {
                return Err(self.err(ErrorKind::DuplicateVariable(x.clone()), cx, e));
            }
            seen.push(x);
        }
        Ok(())
    }

    /// Infers the scrutinee and checks it has the expected positive type.
    fn scrutinee(&mut self, cx: &Cx, l: &Let, pair: bool, e: &Elim) -> R<(Derivation, Term)> {
        let n = self.infer(cx, &l.scrutinee)?;
        let ty = self.normal(cx, &ty_in(&n, cx)?)?;
        let ok = match &ty {
            Term::Unit => !pair,
            Term::Sigma(..) => pair,
            _ => false,
        };
        if !ok {
            let expected = if pair { "a dependent pair type" } else { "𝟙" };
            return Err(self.mismatch(cx, expected.into(), &ty, e));
        }
        Ok((n, ty))
    }

    /// `let[R] ⟨⟩ = e in r`.
    fn unit_elim3(&mut self, cx: &Cx, l: &Let, e: &Elim) -> R<Derivation> {
        self.check_binders(cx, l, e)?;
        let views = [
            View::new(mentions(&l.scrutinee), &[Vis::Type, Vis::Term]),
            View::new(mentions(&l.motive), &[Vis::Hidden, Vis::Hidden]),
            View::new(mentions(&l.body), &[Vis::Term, Vis::Hidden]),
        ];
        let splits = self.splits(cx, &views, 2, e)?;
        let none = self.err(ErrorKind::SplitError, cx, e);
        self.attempt(splits, none, |c, sp| {
            let g = sp.cx.type_ids();
            let gd: Vec<VarId> = g.iter().chain(&sp.blocks[0]).copied().collect();
            let ce = c.sub(&sp.cx, &gd, &sp.blocks[1], e)?;
            let (ne, _) = c.scrutinee(&ce, l, false, e)?;
            let gamma = sp.cx.type_part();
            let rh = c.motive(&gamma, &l.motive, e)?;
            let cr = c.sub(&sp.cx, &g, &sp.blocks[0], e)?;
            let nr = c.check(&cr, &rh, &l.body)?;
            let term = term_in(&nr, &sp.cx)?;
            let d = Derivation::leaf("𝟙Elim3", Judgment::Infer, &sp.cx, rh, term).with(vec![ne, nr]);
            let d = c.exch("ExchE", cx, &sp, d)?;
            c.done(d)
        })
    }

    /// `let[a. R^U] ⟨⟩ = e with z = u in r` and its pair counterpart.
    fn term_elim(&mut self, cx: &Cx, l: &Let, e: &Elim, pair: bool) -> R<Derivation> {
        self.check_binders(cx, l, e)?;
        let rule = if pair { "⊕Elim1" } else { "𝟙Elim1" };
        let (z, u) = (&l.withs[0].0, &l.withs[0].1);
        let views = [
            View::new(mentions(&l.scrutinee), &[Vis::Type, Vis::Term, Vis::Hidden]),
            View::new(mentions(&l.motive), &[Vis::Hidden, Vis::Hidden, Vis::Hidden]),
            View::new(mentions(&l.sup[0]), &[Vis::Type, Vis::Hidden, Vis::Hidden]),
            View::new(mentions(u), &[Vis::Type, Vis::Type, Vis::Term]),
            View::new(mentions(&l.body), &[Vis::Term, Vis::Hidden, Vis::Hidden]),
        ];
        let splits = self.splits(cx, &views, 3, e)?;
        let none = self.err(ErrorKind::SplitError, cx, e);
        self.attempt(splits, none, |c, sp| {
            let g = sp.cx.type_ids();
            let gd: Vec<VarId> = g.iter().chain(&sp.blocks[0]).copied().collect();
            let gdt: Vec<VarId> = gd.iter().chain(&sp.blocks[1]).copied().collect();
            // e in Γ, Δ ⫶ Θ
            let ce = c.sub(&sp.cx, &gd, &sp.blocks[1], e)?;
            let (ne, ety) = c.scrutinee(&ce, l, pair, e)?;
            let eh = term_in(&ne, &ce)?;
            // R in Γ
            let rh = c.motive(&sp.cx.type_part(), &l.motive, e)?;
            // U in Γ, Δ, a : 𝟙 or Γ, Δ, a : ⊕S T
            let a_id = c.fresh();
            let cgd = c.sub(&sp.cx, &gd, &[], e)?;
            let cua = push_type(&cgd, a_id, &l.binders[0], ety.clone());
            let uh = c.motive(&cua, &l.sup[0], e)?;
            let ua_ids = cua.ids();
            // u in Γ, Δ, Θ ⫶ Φ against U[a := e]
            let cu = c.sub(&sp.cx, &gdt, &sp.blocks[2], e)?;
            let goal_u = moved(&uh, &ua_ids, &ce.ids(), &[(a_id, eh.clone())])?;
            let goal_u = c.normal(&cu, &goal_u)?;
            let nu = c.check(&cu, &goal_u, u)?;
            // r in Γ ⫶ Δ, (x : S, y : T,) z : U[a := ⟨⟩ or ⟨x, y⟩]
            let z_id = c.fresh();
            let mut bld = CxBuilder::new(&sp.cx);
            bld.all(&g);
            bld.boundary();
            bld.all(&sp.blocks[0]);
            let mut pat = Vec::new();
            let at = if let (Pattern::Pair(x, y), Term::Sigma(s, t)) = (&l.pattern, &ety) {
                let (x_id, y_id) = (c.fresh(), c.fresh());
                let base = bld.ids();
                bld.fresh(x_id, x.clone(), moved(s, &gd, &base, &[])?);
                let mut bx = base.clone();
                bx.push(x_id);
                bld.fresh(y_id, y.clone(), moved(t, &{ let mut v = gd.clone(); v.push(x_id); v }, &bx, &[])?);
                pat = vec![x_id, y_id];
                Term::pair(Term::Var(1), Term::Var(0))
            } else {
                Term::Tt
            };
            let zty = moved(&uh, &ua_ids, &bld.ids(), &[(a_id, at)])?;
            bld.fresh(z_id, z.clone(), zty);
            let cr = bld.finish();
            let nr = c.check(&cr, &rh, &l.body)?;
            // r[x := fst e, y := snd e, z := u]
            let to = sp.cx.ids();
            let ehere = moved(&eh, &ce.ids(), &to, &[])?;
            let mut extras = vec![(z_id, term_in(&nu, &sp.cx)?)];
            if let [x_id, y_id] = pat[..] {
                extras.push((x_id, Term::fst(ehere.clone())));
                extras.push((y_id, Term::snd(ehere)));
            }
            let term = moved(&nr.term, &nr.cx.ids(), &to, &extras)?;
            let d = Derivation::leaf(rule, Judgment::Infer, &sp.cx, rh, term).with(vec![ne, nu, nr]);
            let d = c.exch("ExchE", cx, &sp, d)?;
            c.done(d)
        })
    }

    /// Cuts of the type level for the rules whose scrutinee borrows a
    /// suffix of it.
    fn cuts(&self, cx: &Cx, l: &Let, with_theta: bool) -> Vec<Cuts> {
        let k = cx.k;
        let ids = cx.ids();
        let sn = mentions(&l.scrutinee);
        let un = l.withs.first().map(|(_, u)| mentions(u)).unwrap_or_default();
        let mut hidden = mentions(&l.motive);
        for s in &l.sup {
            hidden.extend(mentions(s));
        }
        hidden.extend(mentions(&l.body));
        let mut out = Vec::new();
        for i in 0..=k {
            let js: Vec<usize> = if with_theta { (i..=k).collect() } else { vec![k] };
            for j in js {
                let (delta, theta) = (&cx.entries[i..j], &cx.entries[j..k]);
                let borrowed = || delta.iter().chain(theta);
                if borrowed().any(|x| hidden.contains(&x.name)) || theta.iter().any(|x| sn.contains(&x.name)) {
                    continue;
                }
                if !self.cfg.weakening
                    && !(delta.iter().all(|x| sn.contains(&x.name)) && theta.iter().all(|x| un.contains(&x.name)))
                {
                    continue;
                }
                out.push(Cuts {
                    gamma: ids[..i].to_vec(),
                    delta: ids[i..j].to_vec(),
                    theta: ids[j..k].to_vec(),
                });
            }
        }
        out
    }

    /// `let[a,b. R^U] ⟨⟩ = e with z = u in r`.
    fn unit_elim4(&mut self, cx: &Cx, l: &Let, e: &Elim) -> R<Derivation> {
        self.check_binders(cx, l, e)?;
        let (z, u) = (&l.withs[0].0, &l.withs[0].1);
        let none = self.err(ErrorKind::SplitError, cx, e);
        let cuts = self.cuts(cx, l, false);
        self.attempt(cuts, none, |c, cut| {
            let Cuts { gamma, delta, .. } = cut;
            // e in Γ ⫶ Δ
            let ce = c.sub(cx, &gamma, &delta, e)?;
            let (ne, _) = c.scrutinee(&ce, l, false, e)?;
            let eh = term_in(&ne, &ce)?;
            let cg = c.sub(cx, &gamma, &[], e)?;
            // R in Γ, a : 𝟙 and U in Γ, b : 𝟙
            let (a_id, b_id) = (c.fresh(), c.fresh());
            let cra = push_type(&cg, a_id, &l.binders[0], Term::Unit);
            let rh = c.motive(&cra, &l.motive, e)?;
            let cub = push_type(&cg, b_id, &l.binders[1], Term::Unit);
            let uh = c.motive(&cub, &l.sup[0], e)?;
            // u in Γ, Δ ⫶ Θ against U[b := e]
            let goal_u = moved(&uh, &cub.ids(), &ce.ids(), &[(b_id, eh.clone())])?;
            let goal_u = c.normal(cx, &goal_u)?;
            let nu = c.check(cx, &goal_u, u)?;
            // r in Γ ⫶ z : U[b := ⟨⟩] against R[a := ⟨⟩]
            let z_id = c.fresh();
            let mut cr = cg.clone();
            cr.entries.push(Entry {
                id: z_id,
                name: z.clone(),
                ty: moved(&uh, &cub.ids(), &gamma, &[(b_id, Term::Tt)])?,
            });
            let goal_r = moved(&rh, &cra.ids(), &gamma, &[(a_id, Term::Tt)])?;
            let goal_r = c.normal(&cr, &goal_r)?;
            let nr = c.check(&cr, &goal_r, &l.body)?;
            let term = moved(&nr.term, &nr.cx.ids(), &cx.ids(), &[(z_id, term_in(&nu, cx)?)])?;
            let ty = moved(&rh, &cra.ids(), &cx.type_ids(), &[(a_id, moved(&eh, &ce.ids(), &cx.type_ids(), &[])?)])?;
            let ty = c.normal(cx, &ty)?;
            c.done(Derivation::leaf("𝟙Elim4", Judgment::Infer, cx, ty, term).with(vec![ne, nu, nr]))
        })
    }

    /// `let[a,b,c. R^{U,V}] p = e with w = u and z = v in r` for `p` either
    /// `⟨⟩` or `⟨x, y⟩`.
    fn type_elim(&mut self, cx: &Cx, l: &Let, e: &Elim, pair: bool) -> R<Derivation> {
        self.check_binders(cx, l, e)?;
        let rule = if pair { "⊕Elim2" } else { "𝟙Elim2" };
        let (w, u) = (&l.withs[0].0, &l.withs[0].1);
        let (z, v) = (&l.withs[1].0, &l.withs[1].1);
        let none = self.err(ErrorKind::SplitError, cx, e);
        let cuts = self.cuts(cx, l, true);
        self.attempt(cuts, none, |c, cut| {
            let Cuts { gamma, delta, theta } = cut;
            let gd: Vec<VarId> = gamma.iter().chain(&delta).copied().collect();
            let all = cx.ids();
            // e in Γ ⫶ Δ
            let ce = c.sub(cx, &gamma, &delta, e)?;
            let (ne, ety) = c.scrutinee(&ce, l, pair, e)?;
            let eh = term_in(&ne, &ce)?;
            let cg = c.sub(cx, &gamma, &[], e)?;
            // R in Γ, a; U in Γ, b; V in Γ, b, c : U
            let (a_id, b_id, c_id) = (c.fresh(), c.fresh(), c.fresh());
            let cra = push_type(&cg, a_id, &l.binders[0], ety.clone());
            let rh = c.motive(&cra, &l.motive, e)?;
            let cub = push_type(&cg, b_id, &l.binders[1], ety.clone());
            let uh = c.motive(&cub, &l.sup[0], e)?;
            let cvc = push_type(&cub, c_id, &l.binders[2], uh.clone());
            let vh = c.motive(&cvc, &l.sup[1], e)?;
            // u in Γ, Δ ⫶ Θ against U[b := e]
            let cu = c.sub(cx, &gd, &theta, e)?;
            let goal_u = moved(&uh, &cub.ids(), &gd, &[(b_id, eh.clone())])?;
            let goal_u = c.normal(&cu, &goal_u)?;
            let nu = c.check(&cu, &goal_u, u)?;
            let uhat = term_in(&nu, &cu)?;
            // v in Γ, Δ, Θ ⫶ Φ against V[b := e, c := u]
            let gdt = cx.type_ids();
            let e_gdt = moved(&eh, &gd, &gdt, &[])?;
            let goal_v = moved(&vh, &cvc.ids(), &gdt, &[(b_id, e_gdt.clone()), (c_id, uhat.clone())])?;
            let goal_v = c.normal(cx, &goal_v)?;
            let nv = c.check(cx, &goal_v, v)?;
            // r in Γ, (x : S, y : T,) w : U[b := p] ⫶ z : V[b := p, c := w]
            let mut bld = CxBuilder::new(&cg);
            bld.all(&gamma);
            let mut pat = Vec::new();
            let at = if let (Pattern::Pair(x, y), Term::Sigma(s, t)) = (&l.pattern, &ety) {
                let (x_id, y_id) = (c.fresh(), c.fresh());
                bld.fresh(x_id, x.clone(), s.as_ref().clone());
                bld.fresh(y_id, y.clone(), t.as_ref().clone());
                pat = vec![x_id, y_id];
                Term::pair(Term::Var(1), Term::Var(0))
            } else {
                Term::Tt
            };
            let w_id = c.fresh();
            let wty = moved(&uh, &cub.ids(), &bld.ids(), &[(b_id, at.clone())])?;
            bld.fresh(w_id, w.clone(), wty);
            bld.boundary();
            let at_w = shift(&at, 1);
            let zty = moved(&vh, &cvc.ids(), &bld.ids(), &[(b_id, at_w.clone()), (c_id, Term::Var(0))])?;
            let z_id = c.fresh();
            bld.fresh(z_id, z.clone(), zty);
            let cr = bld.finish();
            let goal_r = moved(&rh, &cra.ids(), &cr.type_ids(), &[(a_id, at_w)])?;
            let goal_r = c.normal(&cr, &goal_r)?;
            let nr = c.check(&cr, &goal_r, &l.body)?;
            // r[x := fst e, y := snd e, w := u, z := v]
            let mut extras = vec![(w_id, moved(&uhat, &cu.ids(), &all, &[])?), (z_id, term_in(&nv, cx)?)];
            if let [x_id, y_id] = pat[..] {
                let e_all = moved(&eh, &gd, &all, &[])?;
                extras.push((x_id, Term::fst(e_all.clone())));
                extras.push((y_id, Term::snd(e_all)));
            }
            let term = moved(&nr.term, &nr.cx.ids(), &all, &extras)?;
            let ty = moved(&rh, &cra.ids(), &gdt, &[(a_id, e_gdt)])?;
            let ty = c.normal(cx, &ty)?;
            c.done(Derivation::leaf(rule, Judgment::Infer, cx, ty, term).with(vec![ne, nu, nv, nr]))
        })
    }
}
