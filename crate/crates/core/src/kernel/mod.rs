//! The intuitionistic core: MLTT with ⊤, Σ, Π, two non-dependent arrows, a
//! primitive binary product and one universe.
//!
//! Judgmental equality is decided by normalizing with NbE and comparing the
//! resulting η-long normal forms structurally.

mod head;
mod nbe;
mod term;
mod typing;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use head::{canonical_form, head_of, HeadForm};
pub use nbe::{Closure, Env, Neutral, Normal, Value};
pub use term::{
    compose, free_vars, instantiate, map_free, occurs_free, shift, shift_from, strengthen,
    substitute, ConstType, KernelSubst, Name, Term,
};
pub use typing::{check, check_type, infer, normalize, normalize_at, normalize_type, TypingCtx};

/// A kernel context; the innermost entry is last.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KernelCtx(pub Vec<Term>);

impl KernelCtx {
    pub fn empty() -> Self {
        KernelCtx(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, ty: Term) {
        self.0.push(ty);
    }

    pub fn extended(&self, ty: Term) -> Self {
        let mut c = self.clone();
        c.push(ty);
        c
    }

    /// The prefix of length `n`.
    pub fn prefix(&self, n: usize) -> Self {
        KernelCtx(self.0[..n].to_vec())
    }

    /// Type of de Bruijn index `i`, weakened to live over the whole context.
    pub fn lookup(&self, i: usize) -> Option<Term> {
        let n = self.len();
        (i < n).then(|| shift(&self.0[n - 1 - i], i + 1))
    }
}

impl From<Vec<Term>> for KernelCtx {
    fn from(v: Vec<Term>) -> Self {
        KernelCtx(v)
    }
}

/// Structural identity of normal forms.
pub fn alpha_equal(a: &Term, b: &Term) -> bool {
    a == b
}

/// Failures raised by the kernel.
///
/// Scope and stuck errors indicate a bug in the caller; type errors come from
/// validating signature entries and fixtures.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("index {index} out of scope in a context of length {len}")]
    Scope { index: usize, len: usize },
    #[error("{}", TypeErrorDisplay(path, message))]
    Type {
        /// Subterm path, innermost step first.
        path: Vec<&'static str>,
        message: String,
    },
}

struct TypeErrorDisplay<'a>(&'a [&'static str], &'a String);

impl fmt::Display for TypeErrorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "{}", self.1);
        }
        f.write_str("at ")?;
        for (k, step) in self.0.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("/")?;
            }
            f.write_str(step)?;
        }
        write!(f, ": {}", self.1)
    }
}

impl KernelError {
    pub(crate) fn scope(index: usize, len: usize) -> Self {
        KernelError::Scope { index, len }
    }

    pub(crate) fn ty(message: impl Into<String>) -> Self {
        KernelError::Type {
            path: Vec::new(),
            message: message.into(),
        }
    }

    /// Records one more step of the path to the offending subterm.
    pub(crate) fn at(mut self, step: &'static str) -> Self {
        if let KernelError::Type { path, .. } = &mut self {
            path.push(step);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_and_product_are_distinct() {
        let s = Term::sigma(Term::Unit, Term::Unit);
        let p = Term::prod(Term::Unit, Term::Unit);
        assert!(!alpha_equal(&s, &p));
        assert!(alpha_equal(&Term::lam(Term::Var(0)), &Term::lam(Term::Var(0))));
    }

    #[test]
    fn error_path_prints_outermost_first() {
        let e = KernelError::ty("boom").at("fst").at("app");
        assert_eq!(alloc::format!("{e}"), "at app/fst: boom");
    }
}
