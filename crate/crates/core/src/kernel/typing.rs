//! Bidirectional kernel typing and the normalization entry points.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::nbe::{do_fst, eval, fresh, read_back, read_ty, Env, Value, V};
use super::term::Term;
use super::{KernelCtx, KernelError};

/// A kernel context in evaluated form: every variable is bound to a fresh
/// neutral of its type.
#[derive(Clone, Debug, Default)]
pub struct TypingCtx {
    pub env: Env,
    types: Vec<V>,
}

impl TypingCtx {
    pub fn new(ctx: &KernelCtx) -> Result<Self, KernelError> {
        let mut c = TypingCtx::default();
        for ty in &ctx.0 {
            let v = eval(&c.env, ty)?;
            c = c.bind(v);
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn bind(&self, ty: V) -> Self {
        let mut types = self.types.clone();
        let x = fresh(types.len(), ty.clone());
        types.push(ty);
        TypingCtx {
            env: self.env.push(x),
            types,
        }
    }

    fn fresh_var(&self) -> V {
        self.env.get(0).cloned().expect("non-empty context")
    }

    pub fn eval(&self, t: &Term) -> Result<V, KernelError> {
        eval(&self.env, t)
    }

    pub fn quote_ty(&self, v: &V) -> Result<Term, KernelError> {
        read_ty(self.len(), v)
    }

    fn conv(&self, a: &V, b: &V) -> Result<bool, KernelError> {
        Ok(read_ty(self.len(), a)? == read_ty(self.len(), b)?)
    }
}

fn mismatch(ctx: &TypingCtx, expected: &V, found: &V) -> KernelError {
    let show = |v: &V| {
        ctx.quote_ty(v)
            .map(|t| alloc::format!("{t:?}"))
            .unwrap_or_else(|_| "?".into())
    };
    KernelError::ty(alloc::format!(
        "expected {}, found {}",
        show(expected),
        show(found)
    ))
}

/// Synthesizes the type of `t`.
pub fn infer(ctx: &TypingCtx, t: &Term) -> Result<V, KernelError> {
    match t {
        Term::Var(i) => {
            let n = ctx.len();
            if *i >= n {
                return Err(KernelError::scope(*i, n));
            }
            Ok(ctx.types[n - 1 - i].clone())
        }
        Term::Const(_, ty) => {
            check_type(&TypingCtx::default(), &ty.0).map_err(|e| e.at("const"))?;
            eval(&Env::new(), &ty.0)
        }
        Term::Univ => Err(KernelError::ty("the universe has no type")),
        Term::Unit => Ok(Arc::new(Value::Univ)),
        Term::Tt => Ok(Arc::new(Value::Unit)),
        Term::Sigma(a, b) | Term::Pi(a, b) => {
            check(ctx, a, &Arc::new(Value::Univ)).map_err(|e| e.at("domain"))?;
            let av = ctx.eval(a)?;
            check(&ctx.bind(av), b, &Arc::new(Value::Univ)).map_err(|e| e.at("codomain"))?;
            Ok(Arc::new(Value::Univ))
        }
        Term::FunL(a, b) | Term::FunR(a, b) | Term::Prod(a, b) => {
            check(ctx, a, &Arc::new(Value::Univ)).map_err(|e| e.at("left"))?;
            check(ctx, b, &Arc::new(Value::Univ)).map_err(|e| e.at("right"))?;
            Ok(Arc::new(Value::Univ))
        }
        Term::Fst(p) | Term::Snd(p) => {
            let pt = infer(ctx, p).map_err(|e| e.at("pair"))?;
            let Value::Sigma(a, b) = &*pt else {
                return Err(KernelError::ty("projection from a non-Σ"));
            };
            if matches!(t, Term::Fst(_)) {
                Ok(a.clone())
            } else {
                b.apply(do_fst(&ctx.eval(p)?)?)
            }
        }
        Term::Proj1(p) | Term::Proj2(p) => {
            let pt = infer(ctx, p).map_err(|e| e.at("tuple"))?;
            let Value::Prod(a, b) = &*pt else {
                return Err(KernelError::ty("projection from a non-product"));
            };
            Ok(if matches!(t, Term::Proj1(_)) { a } else { b }.clone())
        }
        Term::App(f, a) => {
            let ft = infer(ctx, f).map_err(|e| e.at("function"))?;
            let Value::Pi(dom, cod) = &*ft else {
                return Err(KernelError::ty("application of a non-Π"));
            };
            check(ctx, a, dom).map_err(|e| e.at("argument"))?;
            cod.apply(ctx.eval(a)?)
        }
        Term::AppL(f, a) | Term::AppR(f, a) => {
            let ft = infer(ctx, f).map_err(|e| e.at("function"))?;
            let (dom, cod) = match (&*ft, t) {
                (Value::FunL(d, c), Term::AppL(..)) | (Value::FunR(d, c), Term::AppR(..)) => (d, c),
                _ => return Err(KernelError::ty("application at the wrong arrow")),
            };
            check(ctx, a, dom).map_err(|e| e.at("argument"))?;
            Ok(cod.clone())
        }
        Term::Ann(t, ty) => {
            check_type(ctx, ty).map_err(|e| e.at("annotation"))?;
            let tv = ctx.eval(ty)?;
            check(ctx, t, &tv).map_err(|e| e.at("annotated"))?;
            Ok(tv)
        }
        Term::Pair(..) | Term::Lam(_) | Term::LamL(_) | Term::LamR(_) | Term::Tuple(..) => Err(
            KernelError::ty("cannot infer the type of an unannotated introduction"),
        ),
    }
}

/// Checks `t` against the type value `ty`.
pub fn check(ctx: &TypingCtx, t: &Term, ty: &V) -> Result<(), KernelError> {
    match (t, &**ty) {
        (Term::Lam(b), Value::Pi(a, c)) => {
            let inner = ctx.bind(a.clone());
            let cod = c.apply(inner.fresh_var())?;
            check(&inner, b, &cod).map_err(|e| e.at("body"))
        }
        (Term::LamL(b), Value::FunL(a, c)) | (Term::LamR(b), Value::FunR(a, c)) => {
            check(&ctx.bind(a.clone()), b, c).map_err(|e| e.at("body"))
        }
        (Term::Pair(x, y), Value::Sigma(a, b)) => {
            check(ctx, x, a).map_err(|e| e.at("fst"))?;
            let bt = b.apply(ctx.eval(x)?)?;
            check(ctx, y, &bt).map_err(|e| e.at("snd"))
        }
        (Term::Tuple(x, y), Value::Prod(a, b)) => {
            check(ctx, x, a).map_err(|e| e.at("left"))?;
            check(ctx, y, b).map_err(|e| e.at("right"))
        }
        _ => {
            let found = infer(ctx, t)?;
            if ctx.conv(ty, &found)? {
                Ok(())
            } else {
                Err(mismatch(ctx, ty, &found))
            }
        }
    }
}

/// Checks that `t` is a type, small or large.
pub fn check_type(ctx: &TypingCtx, t: &Term) -> Result<(), KernelError> {
    match t {
        Term::Univ | Term::Unit => Ok(()),
        Term::Sigma(a, b) | Term::Pi(a, b) => {
            check_type(ctx, a).map_err(|e| e.at("domain"))?;
            let av = ctx.eval(a)?;
            check_type(&ctx.bind(av), b).map_err(|e| e.at("codomain"))
        }
        Term::FunL(a, b) | Term::FunR(a, b) | Term::Prod(a, b) => {
            check_type(ctx, a).map_err(|e| e.at("left"))?;
            check_type(ctx, b).map_err(|e| e.at("right"))
        }
        _ => check(ctx, t, &Arc::new(Value::Univ)),
    }
}

/// βη-normal form of `t` at type `ty`.
pub fn normalize_at(ctx: &KernelCtx, t: &Term, ty: &Term) -> Result<Term, KernelError> {
    let c = TypingCtx::new(ctx)?;
    read_back(c.len(), &c.eval(ty)?, &c.eval(t)?)
}

/// Normal form of a type.
pub fn normalize_type(ctx: &KernelCtx, ty: &Term) -> Result<Term, KernelError> {
    let c = TypingCtx::new(ctx)?;
    read_ty(c.len(), &c.eval(ty)?)
}

/// Normal form of a term whose type can be synthesized.
pub fn normalize(ctx: &KernelCtx, t: &Term) -> Result<Term, KernelError> {
    let c = TypingCtx::new(ctx)?;
    let ty = infer(&c, t)?;
    read_back(c.len(), &ty, &c.eval(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(tys: &[Term]) -> KernelCtx {
        KernelCtx(tys.to_vec())
    }

    #[test]
    fn beta_reduces_identity() {
        // y : ⊤ ⫶ (λx.x : ⊤ → ⊤) y, but at a neutral type so η does not hide it
        let p = Term::constant("P", Term::Univ);
        let g = ctx(core::slice::from_ref(&p));
        let id = Term::ann(Term::lam(Term::Var(0)), Term::pi(p.clone(), p.clone()));
        let t = Term::app(id, Term::Var(0));
        assert_eq!(normalize(&g, &t).unwrap(), Term::Var(0));
    }

    #[test]
    fn fst_of_pair() {
        let p = Term::constant("P", Term::Univ);
        let g = ctx(&[p.clone(), p.clone()]);
        let pr = Term::ann(
            Term::pair(Term::Var(1), Term::Var(0)),
            Term::sigma(p.clone(), p.clone()),
        );
        assert_eq!(normalize(&g, &Term::fst(pr)).unwrap(), Term::Var(1));
    }

    #[test]
    fn infer_tt_and_lambda_limit() {
        let c = TypingCtx::default();
        assert!(matches!(&*infer(&c, &Term::Tt).unwrap(), Value::Unit));
        assert!(infer(&c, &Term::lam(Term::Var(0))).is_err());
    }

    #[test]
    fn pair_checks_against_sigma() {
        let c = TypingCtx::default();
        let s = Term::sigma(Term::Unit, Term::Unit);
        let t = Term::ann(Term::pair(Term::Tt, Term::Tt), s.clone());
        let ty = infer(&c, &t).unwrap();
        assert_eq!(c.quote_ty(&ty).unwrap(), s);
    }

    #[test]
    fn variables_are_eta_expanded() {
        let g = ctx(&[Term::sigma(Term::Unit, Term::Unit)]);
        assert_eq!(normalize(&g, &Term::Var(0)).unwrap(), Term::pair(Term::Tt, Term::Tt));
        let p = Term::constant("P", Term::Univ);
        let h = ctx(&[Term::fun_r(p.clone(), p.clone())]);
        assert_eq!(
            normalize(&h, &Term::Var(0)).unwrap(),
            Term::lam_r(Term::app_r(Term::Var(1), Term::Var(0)))
        );
    }

    #[test]
    fn universe_has_no_type_and_large_types_check() {
        let c = TypingCtx::default();
        assert!(infer(&c, &Term::Univ).is_err());
        assert!(check_type(&c, &Term::pi(Term::Unit, Term::Univ)).is_ok());
        assert!(infer(&c, &Term::pi(Term::Unit, Term::Univ)).is_err());
    }

    #[test]
    fn error_path_points_at_subterm() {
        let c = TypingCtx::default();
        let t = Term::ann(Term::pair(Term::Tt, Term::Unit), Term::sigma(Term::Unit, Term::Unit));
        match infer(&c, &t).unwrap_err() {
            KernelError::Type { path, .. } => assert_eq!(path, alloc::vec!["snd", "annotated"]),
            e => panic!("{e:?}"),
        }
    }
}
