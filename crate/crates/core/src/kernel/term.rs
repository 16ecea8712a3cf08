//! Kernel syntax with de Bruijn indices.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::KernelError;

/// Identifier used for signature constants and for surface names.
pub type Name = Arc<str>;

/// Closed type carried by a constant reference.
///
/// Equality ignores the payload: constant names are unique within a
/// signature, so the name alone identifies the constant.
#[derive(Clone)]
pub struct ConstType(pub Arc<Term>);

impl PartialEq for ConstType {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for ConstType {}

impl fmt::Debug for ConstType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("_")
    }
}

/// Terms and types of the intuitionistic core.
///
/// Binders are anonymous. `Sigma`, `Pi`, `Lam`, `LamL` and `LamR` bind one
/// variable in their last component; the arrow formers `FunL` and `FunR` are
/// non-dependent and bind nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Const(Name, ConstType),
    Univ,
    Unit,
    Tt,
    Sigma(Arc<Term>, Arc<Term>),
    Pair(Arc<Term>, Arc<Term>),
    Fst(Arc<Term>),
    Snd(Arc<Term>),
    Pi(Arc<Term>, Arc<Term>),
    Lam(Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    FunL(Arc<Term>, Arc<Term>),
    LamL(Arc<Term>),
    AppL(Arc<Term>, Arc<Term>),
    FunR(Arc<Term>, Arc<Term>),
    LamR(Arc<Term>),
    AppR(Arc<Term>, Arc<Term>),
    Prod(Arc<Term>, Arc<Term>),
    Tuple(Arc<Term>, Arc<Term>),
    Proj1(Arc<Term>),
    Proj2(Arc<Term>),
    Ann(Arc<Term>, Arc<Term>),
}

macro_rules! ctor1 {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(a: Term) -> Term {
            Term::$variant(Arc::new(a))
        })*
    };
}

macro_rules! ctor2 {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(a: Term, b: Term) -> Term {
            Term::$variant(Arc::new(a), Arc::new(b))
        })*
    };
}

impl Term {
    ctor1! {
        fst => Fst, snd => Snd, lam => Lam, lam_l => LamL, lam_r => LamR,
        proj1 => Proj1, proj2 => Proj2,
    }
    ctor2! {
        sigma => Sigma, pair => Pair, pi => Pi, app => App, fun_l => FunL,
        app_l => AppL, fun_r => FunR, app_r => AppR, prod => Prod,
        tuple => Tuple, ann => Ann,
    }

    pub fn constant(name: impl Into<Name>, ty: Term) -> Term {
        Term::Const(name.into(), ConstType(Arc::new(ty)))
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    fn children(&self) -> Vec<&Term> {
        use Term::*;
        match self {
            Var(_) | Const(..) | Univ | Unit | Tt => Vec::new(),
            Fst(a) | Snd(a) | Lam(a) | LamL(a) | LamR(a) | Proj1(a) | Proj2(a) => {
                alloc::vec![&**a]
            }
            Sigma(a, b) | Pair(a, b) | Pi(a, b) | App(a, b) | FunL(a, b) | AppL(a, b)
            | FunR(a, b) | AppR(a, b) | Prod(a, b) | Tuple(a, b) | Ann(a, b) => {
                alloc::vec![&**a, &**b]
            }
        }
    }
}

/// Rebuilds `t`, replacing each free variable.
///
/// `f(k, depth)` receives the free variable's index relative to the outside
/// of `t` and the number of binders crossed, and returns the replacement
/// already valid under those binders. Returning `None` aborts the traversal.
pub fn map_free<F>(t: &Term, depth: usize, f: &mut F) -> Option<Term>
where
    F: FnMut(usize, usize) -> Option<Term>,
{
    use Term::*;
    let go = |t: &Arc<Term>, d: usize, f: &mut F| map_free(t, d, f).map(Arc::new);
    Some(match t {
        Var(i) if *i < depth => Var(*i),
        Var(i) => return f(*i - depth, depth),
        Const(..) | Univ | Unit | Tt => t.clone(),
        Sigma(a, b) => Sigma(go(a, depth, f)?, go(b, depth + 1, f)?),
        Pi(a, b) => Pi(go(a, depth, f)?, go(b, depth + 1, f)?),
        Lam(b) => Lam(go(b, depth + 1, f)?),
        LamL(b) => LamL(go(b, depth + 1, f)?),
        LamR(b) => LamR(go(b, depth + 1, f)?),
        Pair(a, b) => Pair(go(a, depth, f)?, go(b, depth, f)?),
        App(a, b) => App(go(a, depth, f)?, go(b, depth, f)?),
        FunL(a, b) => FunL(go(a, depth, f)?, go(b, depth, f)?),
        AppL(a, b) => AppL(go(a, depth, f)?, go(b, depth, f)?),
        FunR(a, b) => FunR(go(a, depth, f)?, go(b, depth, f)?),
        AppR(a, b) => AppR(go(a, depth, f)?, go(b, depth, f)?),
        Prod(a, b) => Prod(go(a, depth, f)?, go(b, depth, f)?),
        Tuple(a, b) => Tuple(go(a, depth, f)?, go(b, depth, f)?),
        Ann(a, b) => Ann(go(a, depth, f)?, go(b, depth, f)?),
        Fst(a) => Fst(go(a, depth, f)?),
        Snd(a) => Snd(go(a, depth, f)?),
        Proj1(a) => Proj1(go(a, depth, f)?),
        Proj2(a) => Proj2(go(a, depth, f)?),
    })
}

/// Adds `by` to every free index at or above `cutoff`.
pub fn shift_from(t: &Term, cutoff: usize, by: usize) -> Term {
    if by == 0 {
        return t.clone();
    }
    map_free(t, 0, &mut |k, d| {
        Some(Term::Var(if k >= cutoff { k + by + d } else { k + d }))
    })
    .expect("shifting never fails")
}

/// Weakens `t` over `by` new innermost entries.
pub fn shift(t: &Term, by: usize) -> Term {
    shift_from(t, 0, by)
}

/// Removes the entries `cutoff .. cutoff + by` from the scope of `t`.
///
/// Fails if any of them occurs free.
pub fn strengthen(t: &Term, cutoff: usize, by: usize) -> Option<Term> {
    map_free(t, 0, &mut |k, d| {
        if k < cutoff {
            Some(Term::Var(k + d))
        } else if k < cutoff + by {
            None
        } else {
            Some(Term::Var(k - by + d))
        }
    })
}

/// True iff index `i` occurs free in `t`.
pub fn occurs_free(t: &Term, i: usize) -> bool {
    let mut found = false;
    map_free(t, 0, &mut |k, d| {
        found |= k == i;
        Some(Term::Var(k + d))
    });
    found
}

/// All free indices of `t`, relative to its outside.
pub fn free_vars(t: &Term) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    map_free(t, 0, &mut |k, d| {
        out.insert(k);
        Some(Term::Var(k + d))
    });
    out
}

/// A simultaneous substitution.
///
/// Entry `l` is the term (over the source context) replacing the target
/// variable at de Bruijn level `l`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KernelSubst(pub Vec<Term>);

impl KernelSubst {
    /// The identity on a context of length `n`.
    pub fn identity(n: usize) -> Self {
        KernelSubst((0..n).map(|l| Term::Var(n - 1 - l)).collect())
    }

    /// Maps a context of length `n` into its extension by `by` entries.
    pub fn weakening(n: usize, by: usize) -> Self {
        KernelSubst((0..n).map(|l| Term::Var(n - 1 - l + by)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lifts the substitution under one binder on both sides.
    pub fn extend(&self) -> Self {
        let mut v: Vec<Term> = self.0.iter().map(|t| shift(t, 1)).collect();
        v.push(Term::Var(0));
        KernelSubst(v)
    }

    pub fn push(&mut self, t: Term) {
        self.0.push(t);
    }
}

/// Capture-avoiding simultaneous substitution.
pub fn substitute(t: &Term, s: &KernelSubst) -> Result<Term, KernelError> {
    let n = s.len();
    let mut bad = None;
    let out = map_free(t, 0, &mut |k, d| {
        if k >= n {
            bad = Some(k);
            return None;
        }
        Some(shift(&s.0[n - 1 - k], d))
    });
    out.ok_or_else(|| KernelError::scope(bad.unwrap_or(0), n))
}

/// The substitution `σ` with `t[σ] = t[g][f]`.
pub fn compose(f: &KernelSubst, g: &KernelSubst) -> Result<KernelSubst, KernelError> {
    g.0.iter()
        .map(|t| substitute(t, f))
        .collect::<Result<Vec<_>, _>>()
        .map(KernelSubst)
}

/// Substitutes `u` for index 0 and lowers the rest by one.
pub fn instantiate(t: &Term, u: &Term) -> Term {
    map_free(t, 0, &mut |k, d| {
        Some(if k == 0 { shift(u, d) } else { Term::Var(k - 1 + d) })
    })
    .expect("instantiation never fails")
}
