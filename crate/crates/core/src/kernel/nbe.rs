//! Normalization by evaluation with typed neutrals and η-long readback.

use alloc::sync::Arc;

use super::term::{ConstType, Name, Term};
use super::KernelError;

pub type V = Arc<Value>;

/// Semantic values. Variables are de Bruijn levels.
#[derive(Clone, Debug)]
pub enum Value {
    /// A stuck term together with its type.
    Neutral { ty: V, ne: Neutral },
    Univ,
    Unit,
    Tt,
    Sigma(V, Closure),
    Pair(V, V),
    Pi(V, Closure),
    Lam(Closure),
    FunL(V, V),
    LamL(Closure),
    FunR(V, V),
    LamR(Closure),
    Prod(V, V),
    Tuple(V, V),
}

#[derive(Clone, Debug)]
pub enum Neutral {
    Var(usize),
    Const(Name, ConstType),
    Fst(Arc<Neutral>),
    Snd(Arc<Neutral>),
    App(Arc<Neutral>, Normal),
    AppL(Arc<Neutral>, Normal),
    AppR(Arc<Neutral>, Normal),
    Proj1(Arc<Neutral>),
    Proj2(Arc<Neutral>),
}

/// An argument in a neutral spine, kept with its type for η-long readback.
#[derive(Clone, Debug)]
pub struct Normal {
    pub ty: V,
    pub val: V,
}

/// Persistent environment; index 0 is the head.
#[derive(Clone, Debug, Default)]
pub struct Env(Option<Arc<EnvNode>>, usize);

#[derive(Debug)]
struct EnvNode {
    val: V,
    next: Env,
}

impl Env {
    pub fn new() -> Self {
        Env(None, 0)
    }

    pub fn len(&self) -> usize {
        self.1
    }

    pub fn is_empty(&self) -> bool {
        self.1 == 0
    }

    pub fn push(&self, val: V) -> Self {
        Env(
            Some(Arc::new(EnvNode {
                val,
                next: self.clone(),
            })),
            self.1 + 1,
        )
    }

    pub fn get(&self, i: usize) -> Option<&V> {
        let mut cur = self;
        for _ in 0..i {
            cur = &cur.0.as_ref()?.next;
        }
        cur.0.as_ref().map(|n| &n.val)
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: Arc<Term>,
}

impl Closure {
    pub fn apply(&self, v: V) -> Result<V, KernelError> {
        eval(&self.env.push(v), &self.body)
    }
}

fn stuck(what: &str) -> KernelError {
    KernelError::ty(alloc::format!("ill-typed {what}"))
}

pub fn fresh(level: usize, ty: V) -> V {
    Arc::new(Value::Neutral {
        ty,
        ne: Neutral::Var(level),
    })
}

pub fn eval(env: &Env, t: &Term) -> Result<V, KernelError> {
    let clo = |b: &Arc<Term>| Closure {
        env: env.clone(),
        body: b.clone(),
    };
    Ok(match t {
        Term::Var(i) => env
            .get(*i)
            .cloned()
            .ok_or_else(|| KernelError::scope(*i, env.len()))?,
        Term::Const(n, ty) => Arc::new(Value::Neutral {
            ty: eval(&Env::new(), &ty.0)?,
            ne: Neutral::Const(n.clone(), ty.clone()),
        }),
        Term::Univ => Arc::new(Value::Univ),
        Term::Unit => Arc::new(Value::Unit),
        Term::Tt => Arc::new(Value::Tt),
        Term::Sigma(a, b) => Arc::new(Value::Sigma(eval(env, a)?, clo(b))),
        Term::Pi(a, b) => Arc::new(Value::Pi(eval(env, a)?, clo(b))),
        Term::Lam(b) => Arc::new(Value::Lam(clo(b))),
        Term::LamL(b) => Arc::new(Value::LamL(clo(b))),
        Term::LamR(b) => Arc::new(Value::LamR(clo(b))),
        Term::Pair(a, b) => Arc::new(Value::Pair(eval(env, a)?, eval(env, b)?)),
        Term::Tuple(a, b) => Arc::new(Value::Tuple(eval(env, a)?, eval(env, b)?)),
        Term::FunL(a, b) => Arc::new(Value::FunL(eval(env, a)?, eval(env, b)?)),
        Term::FunR(a, b) => Arc::new(Value::FunR(eval(env, a)?, eval(env, b)?)),
        Term::Prod(a, b) => Arc::new(Value::Prod(eval(env, a)?, eval(env, b)?)),
        Term::Fst(p) => do_fst(&eval(env, p)?)?,
        Term::Snd(p) => do_snd(&eval(env, p)?)?,
        Term::Proj1(p) => do_proj1(&eval(env, p)?)?,
        Term::Proj2(p) => do_proj2(&eval(env, p)?)?,
        Term::App(f, a) => do_app(&eval(env, f)?, eval(env, a)?)?,
        Term::AppL(f, a) => do_app_l(&eval(env, f)?, eval(env, a)?)?,
        Term::AppR(f, a) => do_app_r(&eval(env, f)?, eval(env, a)?)?,
        Term::Ann(t, _) => eval(env, t)?,
    })
}

fn neutral(ty: V, ne: Neutral) -> V {
    Arc::new(Value::Neutral { ty, ne })
}

pub fn do_fst(v: &V) -> Result<V, KernelError> {
    match &**v {
        Value::Pair(a, _) => Ok(a.clone()),
        Value::Neutral { ty, ne } => match &**ty {
            Value::Sigma(a, _) => Ok(neutral(a.clone(), Neutral::Fst(Arc::new(ne.clone())))),
            _ => Err(stuck("first projection")),
        },
        _ => Err(stuck("first projection")),
    }
}

pub fn do_snd(v: &V) -> Result<V, KernelError> {
    match &**v {
        Value::Pair(_, b) => Ok(b.clone()),
        Value::Neutral { ty, ne } => match &**ty {
            Value::Sigma(_, b) => {
                let ty = b.apply(do_fst(v)?)?;
                Ok(neutral(ty, Neutral::Snd(Arc::new(ne.clone()))))
            }
            _ => Err(stuck("second projection")),
        },
        _ => Err(stuck("second projection")),
    }
}

pub fn do_proj1(v: &V) -> Result<V, KernelError> {
    match &**v {
        Value::Tuple(a, _) => Ok(a.clone()),
        Value::Neutral { ty, ne } => match &**ty {
            Value::Prod(a, _) => Ok(neutral(a.clone(), Neutral::Proj1(Arc::new(ne.clone())))),
            _ => Err(stuck("product projection")),
        },
        _ => Err(stuck("product projection")),
    }
}

pub fn do_proj2(v: &V) -> Result<V, KernelError> {
    match &**v {
        Value::Tuple(_, b) => Ok(b.clone()),
        Value::Neutral { ty, ne } => match &**ty {
            Value::Prod(_, b) => Ok(neutral(b.clone(), Neutral::Proj2(Arc::new(ne.clone())))),
            _ => Err(stuck("product projection")),
        },
        _ => Err(stuck("product projection")),
    }
}

pub fn do_app(f: &V, a: V) -> Result<V, KernelError> {
    match &**f {
        Value::Lam(c) => c.apply(a),
        Value::Neutral { ty, ne } => match &**ty {
            Value::Pi(dom, cod) => {
                let ty = cod.apply(a.clone())?;
                let arg = Normal {
                    ty: dom.clone(),
                    val: a,
                };
                Ok(neutral(ty, Neutral::App(Arc::new(ne.clone()), arg)))
            }
            _ => Err(stuck("application")),
        },
        _ => Err(stuck("application")),
    }
}

pub fn do_app_l(f: &V, a: V) -> Result<V, KernelError> {
    match &**f {
        Value::LamL(c) => c.apply(a),
        Value::Neutral { ty, ne } => match &**ty {
            Value::FunL(dom, cod) => {
                let arg = Normal {
                    ty: dom.clone(),
                    val: a,
                };
                Ok(neutral(cod.clone(), Neutral::AppL(Arc::new(ne.clone()), arg)))
            }
            _ => Err(stuck("left application")),
        },
        _ => Err(stuck("left application")),
    }
}

pub fn do_app_r(f: &V, a: V) -> Result<V, KernelError> {
    match &**f {
        Value::LamR(c) => c.apply(a),
        Value::Neutral { ty, ne } => match &**ty {
            Value::FunR(dom, cod) => {
                let arg = Normal {
                    ty: dom.clone(),
                    val: a,
                };
                Ok(neutral(cod.clone(), Neutral::AppR(Arc::new(ne.clone()), arg)))
            }
            _ => Err(stuck("right application")),
        },
        _ => Err(stuck("right application")),
    }
}

/// Reads back `v` at type `ty` under `n` bound levels, η-expanding fully.
pub fn read_back(n: usize, ty: &V, v: &V) -> Result<Term, KernelError> {
    Ok(match &**ty {
        Value::Univ => read_ty(n, v)?,
        Value::Unit => Term::Tt,
        Value::Sigma(a, b) => {
            let x = do_fst(v)?;
            let y = do_snd(v)?;
            let bt = b.apply(x.clone())?;
            Term::pair(read_back(n, a, &x)?, read_back(n, &bt, &y)?)
        }
        Value::Prod(a, b) => Term::tuple(
            read_back(n, a, &do_proj1(v)?)?,
            read_back(n, b, &do_proj2(v)?)?,
        ),
        Value::Pi(a, b) => {
            let x = fresh(n, a.clone());
            let bt = b.apply(x.clone())?;
            Term::lam(read_back(n + 1, &bt, &do_app(v, x)?)?)
        }
        Value::FunL(a, b) => {
            let x = fresh(n, a.clone());
            Term::lam_l(read_back(n + 1, b, &do_app_l(v, x)?)?)
        }
        Value::FunR(a, b) => {
            let x = fresh(n, a.clone());
            Term::lam_r(read_back(n + 1, b, &do_app_r(v, x)?)?)
        }
        Value::Neutral { .. } => match &**v {
            Value::Neutral { ne, .. } => read_ne(n, ne)?,
            _ => return Err(stuck("value at a neutral type")),
        },
        _ => return Err(stuck("type in readback")),
    })
}

/// Reads back a type value.
pub fn read_ty(n: usize, v: &V) -> Result<Term, KernelError> {
    Ok(match &**v {
        Value::Univ => Term::Univ,
        Value::Unit => Term::Unit,
        Value::Sigma(a, b) => {
            let body = b.apply(fresh(n, a.clone()))?;
            Term::sigma(read_ty(n, a)?, read_ty(n + 1, &body)?)
        }
        Value::Pi(a, b) => {
            let body = b.apply(fresh(n, a.clone()))?;
            Term::pi(read_ty(n, a)?, read_ty(n + 1, &body)?)
        }
        Value::FunL(a, b) => Term::fun_l(read_ty(n, a)?, read_ty(n, b)?),
        Value::FunR(a, b) => Term::fun_r(read_ty(n, a)?, read_ty(n, b)?),
        Value::Prod(a, b) => Term::prod(read_ty(n, a)?, read_ty(n, b)?),
        Value::Neutral { ne, .. } => read_ne(n, ne)?,
        _ => return Err(stuck("term used as a type")),
    })
}

fn read_ne(n: usize, ne: &Neutral) -> Result<Term, KernelError> {
    Ok(match ne {
        Neutral::Var(l) => {
            if *l >= n {
                return Err(KernelError::scope(*l, n));
            }
            Term::Var(n - 1 - l)
        }
        Neutral::Const(name, ty) => Term::Const(name.clone(), ty.clone()),
        Neutral::Fst(p) => Term::fst(read_ne(n, p)?),
        Neutral::Snd(p) => Term::snd(read_ne(n, p)?),
        Neutral::Proj1(p) => Term::proj1(read_ne(n, p)?),
        Neutral::Proj2(p) => Term::proj2(read_ne(n, p)?),
        Neutral::App(f, a) => Term::app(read_ne(n, f)?, read_back(n, &a.ty, &a.val)?),
        Neutral::AppL(f, a) => Term::app_l(read_ne(n, f)?, read_back(n, &a.ty, &a.val)?),
        Neutral::AppR(f, a) => Term::app_r(read_ne(n, f)?, read_back(n, &a.ty, &a.val)?),
    })
}
