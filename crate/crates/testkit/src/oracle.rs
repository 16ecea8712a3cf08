//! Checks written from first principles on de Bruijn terms.
//!
//! The functions here re-implement shifting and single-variable
//! substitution with their own traversal instead of the kernel's, and
//! unpack a morphism out of a packed telescope by hand, so that the suites
//! can compare the library's structured constructions against plain
//! variable manipulation on flat contexts.

use std::sync::Arc;

use lfdc_core::kernel::{normalize_at, KernelCtx, Term};
use lfdc_core::lfdc::Morphism;

/// Rebuilds `t`, sending each free variable `Var(i)` seen under `depth`
/// binders to `f(i - depth, depth)`.
fn walk(t: &Term, depth: usize, f: &mut dyn FnMut(usize, usize) -> Term) -> Term {
    use Term::*;
    let one = |a: &Arc<Term>, d: usize, f: &mut dyn FnMut(usize, usize) -> Term| Arc::new(walk(a, d, f));
    match t {
        Var(i) if *i < depth => Var(*i),
        Var(i) => f(*i - depth, depth),
        Const(..) | Univ | Unit | Tt => t.clone(),
        Sigma(a, b) => Sigma(one(a, depth, f), one(b, depth + 1, f)),
        Pi(a, b) => Pi(one(a, depth, f), one(b, depth + 1, f)),
        Lam(b) => Lam(one(b, depth + 1, f)),
        LamL(b) => LamL(one(b, depth + 1, f)),
        LamR(b) => LamR(one(b, depth + 1, f)),
        Pair(a, b) => Pair(one(a, depth, f), one(b, depth, f)),
        App(a, b) => App(one(a, depth, f), one(b, depth, f)),
        FunL(a, b) => FunL(one(a, depth, f), one(b, depth, f)),
        AppL(a, b) => AppL(one(a, depth, f), one(b, depth, f)),
        FunR(a, b) => FunR(one(a, depth, f), one(b, depth, f)),
        AppR(a, b) => AppR(one(a, depth, f), one(b, depth, f)),
        Prod(a, b) => Prod(one(a, depth, f), one(b, depth, f)),
        Tuple(a, b) => Tuple(one(a, depth, f), one(b, depth, f)),
        Ann(a, b) => Ann(one(a, depth, f), one(b, depth, f)),
        Fst(a) => Fst(one(a, depth, f)),
        Snd(a) => Snd(one(a, depth, f)),
        Proj1(a) => Proj1(one(a, depth, f)),
        Proj2(a) => Proj2(one(a, depth, f)),
    }
}

/// Adds `by` to every free variable at or above `cutoff`.
pub fn shift_above(t: &Term, cutoff: usize, by: usize) -> Term {
    walk(t, 0, &mut |i, d| Term::Var(if i >= cutoff { i + by + d } else { i + d }))
}

/// Replaces the free variable `j` of `t` by `e`, where `e` lives in the
/// context with the `j` entries below the variable removed and `n` entries
/// inserted in its place; variables above `j` move up by `n - 1`.
pub fn replace(t: &Term, j: usize, e: &Term, n: usize) -> Term {
    walk(t, 0, &mut |i, d| {
        if i < j {
            Term::Var(i + d)
        } else if i == j {
            shift_above(e, 0, j + d)
        } else {
            Term::Var(i - 1 + n + d)
        }
    })
}

/// A morphism `⟦Δ⟧ → T` over `Γ`, with `Δ` of length `n`, unpacked to a
/// term over the flat context `Γ, Δ`. Returns the flat context, the term and
/// its type, all normalized.
pub fn flat(m: &Morphism, n: usize) -> (KernelCtx, Term, Term) {
    let mut ctx = m.ctx().clone();
    let base = ctx.len();
    let mut rest = &m.dom.body;
    for _ in 0..n {
        let Term::Sigma(a, b) = rest else {
            panic!("domain is not a packed telescope of length {n}");
        };
        ctx.push((**a).clone());
        rest = b;
    }
    assert_eq!(*rest, Term::Unit, "domain is not a packed telescope of length {n}");
    let mut packed = Term::Tt;
    for i in 0..n {
        packed = Term::pair(Term::Var(i), packed);
    }
    // `Var(0)` of the body is the packed argument; the base context sits
    // above it and moves up past the flat entries.
    let body = walk(&m.body, 0, &mut |i, d| {
        if i == 0 {
            shift_above(&packed, 0, d)
        } else {
            Term::Var(i - 1 + n + d)
        }
    });
    let ty = shift_above(&m.cod.body, 0, n);
    let body = normalize_at(&ctx, &body, &ty).expect("flat body is well typed");
    let ty = lfdc_core::kernel::normalize_type(&ctx, &ty).expect("flat type is well formed");
    debug_assert_eq!(ctx.len(), base + n);
    (ctx, body, ty)
}

/// Normalizes `t` at `ty` over `ctx`.
pub fn nf(ctx: &KernelCtx, t: &Term, ty: &Term) -> Term {
    normalize_at(ctx, t, ty).expect("oracle terms are well typed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_respects_binders() {
        let t = Term::lam(Term::app(Term::Var(0), Term::Var(1)));
        assert_eq!(shift_above(&t, 0, 2), Term::lam(Term::app(Term::Var(0), Term::Var(3))));
        assert_eq!(shift_above(&Term::Var(0), 1, 5), Term::Var(0));
    }

    #[test]
    fn replace_middle_variable() {
        // Over `c, x, y` replace `x` (index 1) by a term over `c, u, v`.
        let t = Term::pair(Term::Var(2), Term::pair(Term::Var(1), Term::Var(0)));
        let e = Term::pair(Term::Var(1), Term::Var(0));
        let out = replace(&t, 1, &e, 2);
        let want = Term::pair(Term::Var(3), Term::pair(Term::pair(Term::Var(2), Term::Var(1)), Term::Var(0)));
        assert_eq!(out, want);
    }
}
