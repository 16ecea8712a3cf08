//! Well-typed terms and types of the intuitionistic core, built by a
//! type-directed generator.
//!
//! Types are drawn over three opaque families `P, Q : Π _:⊤. U` and
//! `F : Π _:P tt. U`, encoded the way signatures encode atoms. Generated terms and types are sprinkled with β-redexes so
//! that normalization has work to do; the head of a generated type is
//! recorded before any redex is wrapped around it.

use lfdc_core::kernel::{instantiate, normalize_type, shift, strengthen, substitute, KernelCtx, KernelSubst, Term};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeadTag {
    Unit,
    Pair,
    FunL,
    FunR,
    All,
    Prod,
    Atom(&'static str),
}

pub fn p() -> Term {
    Term::app(Term::constant("P", Term::pi(Term::Unit, Term::Univ)), Term::Tt)
}

pub fn q() -> Term {
    Term::app(Term::constant("Q", Term::pi(Term::Unit, Term::Univ)), Term::Tt)
}

pub fn fam() -> Term {
    Term::constant("F", Term::pi(p(), Term::Univ))
}

pub struct KernelGen {
    rng: StdRng,
    holes: usize,
}

impl KernelGen {
    pub fn new(seed: u64) -> Self {
        KernelGen {
            rng: StdRng::seed_from_u64(seed),
            holes: 0,
        }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    /// A context of `len` entries, each over the preceding ones.
    pub fn ctx(&mut self, len: usize, depth: usize) -> KernelCtx {
        let mut c = KernelCtx::empty();
        for _ in 0..len {
            let (t, _) = self.ty(&c, depth);
            c.push(t);
        }
        c
    }

    /// A type over `ctx` together with the head it normalizes to.
    pub fn ty(&mut self, ctx: &KernelCtx, depth: usize) -> (Term, HeadTag) {
        let (t, head) = self.plain_ty(ctx, depth);
        if depth > 0 && self.rng.gen_bool(0.3) {
            (self.wrap_ty(ctx, t), head)
        } else {
            (t, head)
        }
    }

    fn plain_ty(&mut self, ctx: &KernelCtx, depth: usize) -> (Term, HeadTag) {
        let d = depth.saturating_sub(1);
        let pick = if depth == 0 {
            self.rng.gen_range(0..4)
        } else {
            self.rng.gen_range(0..10)
        };
        match pick {
            0 => (Term::Unit, HeadTag::Unit),
            1 => (p(), HeadTag::Atom("P")),
            2 => (q(), HeadTag::Atom("Q")),
            3 => {
                let arg = self.term(ctx, &p(), d);
                (Term::app(fam(), arg), HeadTag::Atom("F"))
            }
            4 | 9 => {
                let (a, _) = self.ty(ctx, d);
                let (b, _) = self.ty(&ctx.extended(a.clone()), d);
                (Term::sigma(a, b), HeadTag::Pair)
            }
            5 => {
                let (a, _) = self.ty(ctx, d);
                let (b, _) = self.ty(&ctx.extended(a.clone()), d);
                (Term::pi(a, b), HeadTag::All)
            }
            6 => (Term::fun_l(self.ty(ctx, d).0, self.ty(ctx, d).0), HeadTag::FunL),
            7 => (Term::fun_r(self.ty(ctx, d).0, self.ty(ctx, d).0), HeadTag::FunR),
            _ => (Term::prod(self.ty(ctx, d).0, self.ty(ctx, d).0), HeadTag::Prod),
        }
    }

    /// A type-level redex that reduces to `t`.
    fn wrap_ty(&mut self, ctx: &KernelCtx, t: Term) -> Term {
        match self.rng.gen_range(0..3) {
            0 => Term::app(Term::ann(Term::lam(Term::Var(0)), Term::pi(Term::Univ, Term::Univ)), t),
            1 => {
                let (a, _) = self.ty(ctx, 0);
                let x = self.term(ctx, &a, 0);
                Term::app(Term::ann(Term::lam(shift(&t, 1)), Term::pi(a, Term::Univ)), x)
            }
            _ => Term::fst(Term::ann(
                Term::pair(t, Term::Tt),
                Term::sigma(Term::Univ, Term::Unit),
            )),
        }
    }

    /// Some type and a term of it.
    pub fn any(&mut self, ctx: &KernelCtx, depth: usize) -> (Term, Term) {
        let (ty, _) = self.ty(ctx, depth.min(2));
        let t = self.term(ctx, &ty, depth);
        (ty, t)
    }

    /// A term of type `ty` over `ctx`.
    pub fn term(&mut self, ctx: &KernelCtx, ty: &Term, depth: usize) -> Term {
        let nf = normalize_type(ctx, ty).expect("generated types are well formed");
        if depth > 0 && self.rng.gen_bool(0.25) {
            return self.redex(ctx, &nf, depth);
        }
        let d = depth.saturating_sub(1);
        match &nf {
            Term::Unit if self.rng.gen_bool(0.6) => Term::Tt,
            Term::Sigma(a, b) if self.rng.gen_bool(0.8) => {
                let x = self.term(ctx, a, d);
                let y = self.term(ctx, &instantiate(b, &x), d);
                Term::pair(x, y)
            }
            Term::Pi(a, b) => Term::lam(self.term(&ctx.extended((**a).clone()), b, d)),
            Term::FunL(a, b) => Term::lam_l(self.term(&ctx.extended((**a).clone()), &shift(b, 1), d)),
            Term::FunR(a, b) => Term::lam_r(self.term(&ctx.extended((**a).clone()), &shift(b, 1), d)),
            Term::Prod(a, b) if self.rng.gen_bool(0.8) => Term::tuple(self.term(ctx, a, d), self.term(ctx, b, d)),
            _ => self.atomic(ctx, &nf, d),
        }
    }

    /// A redex of type `nf`.
    fn redex(&mut self, ctx: &KernelCtx, nf: &Term, depth: usize) -> Term {
        let d = depth - 1;
        let t = self.term(ctx, nf, d);
        match self.rng.gen_range(0..5) {
            0 => {
                let (a, _) = self.ty(ctx, 0);
                let arg = self.term(ctx, &a, 0);
                Term::app(Term::ann(Term::lam(shift(&t, 1)), Term::pi(a, shift(nf, 1))), arg)
            }
            1 => Term::fst(Term::ann(Term::pair(t, Term::Tt), Term::sigma(nf.clone(), Term::Unit))),
            2 => Term::snd(Term::ann(Term::pair(Term::Tt, t), Term::sigma(Term::Unit, shift(nf, 1)))),
            3 => Term::proj2(Term::ann(Term::tuple(Term::Tt, t), Term::prod(Term::Unit, nf.clone()))),
            _ => {
                let (a, _) = self.ty(ctx, 0);
                let arg = self.term(ctx, &a, 0);
                Term::app_r(Term::ann(Term::lam_r(shift(&t, 1)), Term::fun_r(a, nf.clone())), arg)
            }
        }
    }

    /// A variable, a projection or application of one, or failing those an
    /// opaque constant applied to the whole context.
    fn atomic(&mut self, ctx: &KernelCtx, nf: &Term, depth: usize) -> Term {
        let n = ctx.len();
        let same = |t: &Term| normalize_type(ctx, t).ok().as_ref() == Some(nf);
        let mut cands: Vec<Term> = Vec::new();
        // Arguments are generated one level down, and only with depth to
        // spare, so that a variable of type `P ⑊ P` cannot recurse forever.
        let apply = depth > 0;
        let d = depth.saturating_sub(1);
        for i in 0..n {
            let vt = normalize_type(ctx, &shift(&ctx.0[n - 1 - i], i + 1)).expect("context entries are well formed");
            let v = Term::Var(i);
            if vt == *nf {
                cands.push(v.clone());
            }
            match &vt {
                Term::Sigma(a, _) if same(a) => cands.push(Term::fst(v)),
                Term::Prod(a, b) => {
                    if same(a) {
                        cands.push(Term::proj1(v.clone()));
                    }
                    if same(b) {
                        cands.push(Term::proj2(v));
                    }
                }
                Term::FunR(a, b) if apply && same(b) => {
                    let arg = self.term(ctx, a, d);
                    cands.push(Term::app_r(v, arg));
                }
                Term::FunL(a, b) if apply && same(b) => {
                    let arg = self.term(ctx, a, d);
                    cands.push(Term::app_l(v, arg));
                }
                Term::Pi(a, b) if apply => {
                    if let Some(b0) = strengthen(b, 0, 1) {
                        if same(&b0) {
                            let arg = self.term(ctx, a, d);
                            cands.push(Term::app(v, arg));
                        }
                    }
                }
                _ => {}
            }
        }
        if cands.is_empty() || self.rng.gen_bool(0.1) {
            return self.hole(ctx, nf);
        }
        let k = self.rng.gen_range(0..cands.len());
        cands.swap_remove(k)
    }

    /// `h v₀ … vₙ₋₁` for a fresh constant `h : Π ctx. nf`.
    pub fn hole(&mut self, ctx: &KernelCtx, nf: &Term) -> Term {
        let mut ty = nf.clone();
        for e in ctx.0.iter().rev() {
            ty = Term::pi(e.clone(), ty);
        }
        self.holes += 1;
        let mut t = Term::constant(format!("h{}", self.holes), ty);
        for i in (0..ctx.len()).rev() {
            t = Term::app(t, Term::Var(i));
        }
        t
    }

    /// A substitution from `source` to `target`.
    pub fn subst(&mut self, source: &KernelCtx, target: &KernelCtx, depth: usize) -> KernelSubst {
        let mut out = KernelSubst::default();
        for e in &target.0 {
            let ty = substitute(e, &out).expect("well scoped");
            let t = self.term(source, &ty, depth);
            out.push(t);
        }
        out
    }
}
