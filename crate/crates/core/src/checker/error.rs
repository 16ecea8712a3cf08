//! Structured diagnostics.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::{KernelError, Name};
use crate::lfdc::{LfdcError, StructuralRule};

/// How a term-level variable violated the active discipline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearityKind {
    /// Two premises that must use disjoint resources both mention it.
    UsedTwice,
    /// Nothing consumes it and weakening is off.
    Unused,
    /// It lives in the type-level context and contraction is off.
    TypeLevelOnly,
    /// Its type depends on a resource it would have to be separated from.
    Dependent,
}

impl fmt::Display for LinearityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinearityKind::UsedTwice => "is used twice",
            LinearityKind::Unused => "is not used at the term level",
            LinearityKind::TypeLevelOnly => "is only available at the type level",
            LinearityKind::Dependent => "has a type depending on discarded resources",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    DuplicateVariable(Name),
    UnknownVariable(Name),
    UnknownAtom(Name),
    UnknownConstant(Name),
    TypeMismatch { expected: String, found: String },
    SplitError,
    StructuralRuleDisabled(StructuralRule),
    LinearityError { var: Name, kind: LinearityKind },
    MotiveError,
    AtomParameterError(Name),
    Internal(String),
}

impl ErrorKind {
    /// The name used by `fail(Kind)` expectations.
    pub fn tag(&self) -> &'static str {
        match self {
            ErrorKind::DuplicateVariable(_) => "DuplicateVariable",
            ErrorKind::UnknownVariable(_) => "UnknownVariable",
            ErrorKind::UnknownAtom(_) => "UnknownAtom",
            ErrorKind::UnknownConstant(_) => "UnknownConstant",
            ErrorKind::TypeMismatch { .. } => "TypeMismatch",
            ErrorKind::SplitError => "SplitError",
            ErrorKind::StructuralRuleDisabled(_) => "StructuralRuleDisabled",
            ErrorKind::LinearityError { .. } => "LinearityError",
            ErrorKind::MotiveError => "MotiveError",
            ErrorKind::AtomParameterError(_) => "AtomParameterError",
            ErrorKind::Internal(_) => "Internal",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorKind::DuplicateVariable(x) => write!(f, "variable `{x}` is already bound"),
            ErrorKind::UnknownVariable(x) => write!(f, "unknown variable `{x}`"),
            ErrorKind::UnknownAtom(p) => write!(f, "unknown atomic type family `{p}`"),
            ErrorKind::UnknownConstant(p) => write!(f, "unknown constant `{p}`"),
            ErrorKind::TypeMismatch { expected, found } => {
                write!(f, "type mismatch: expected {expected}, found {found}")
            }
            ErrorKind::SplitError => f.write_str("no admissible split of the term-level context"),
            ErrorKind::StructuralRuleDisabled(r) => write!(f, "{r} is not enabled"),
            ErrorKind::LinearityError { var, kind } => write!(f, "variable `{var}` {kind}"),
            ErrorKind::MotiveError => f.write_str("ill-formed motive"),
            ErrorKind::AtomParameterError(p) => write!(f, "no context split admits the parameter of `{p}`"),
            ErrorKind::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

/// A failed judgment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckError {
    pub kind: ErrorKind,
    /// The subject of the failing judgment.
    pub subject: String,
    /// `Γ ⫶ Δ` at the failure.
    pub context: String,
    /// Rules entered on the way down, outermost first.
    pub trace: Vec<&'static str>,
    /// Judgments completed before the failure; ranks alternatives.
    pub progress: usize,
    pub cause: Option<Box<CheckError>>,
}

impl CheckError {
    pub fn new(kind: ErrorKind) -> Self {
        CheckError {
            kind,
            subject: String::new(),
            context: String::new(),
            trace: Vec::new(),
            progress: 0,
            cause: None,
        }
    }

    pub fn with_cause(mut self, cause: CheckError) -> Self {
        self.cause = Some(Box::new(cause));
        self
    }

    /// The innermost error of the cause chain.
    pub fn root(&self) -> &CheckError {
        let mut e = self;
        while let Some(c) = &e.cause {
            e = c;
        }
        e
    }

    /// Whether this error or any of its causes has the given tag.
    pub fn matches(&self, tag: &str) -> bool {
        let mut e = Some(self);
        while let Some(x) = e {
            if x.kind.tag() == tag {
                return true;
            }
            e = x.cause.as_deref();
        }
        false
    }
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.subject.is_empty() {
            write!(f, "\n  in: {}", self.subject)?;
        }
        if !self.context.is_empty() {
            write!(f, "\n  context: {}", self.context)?;
        }
        if !self.trace.is_empty() {
            write!(f, "\n  rules: {}", self.trace.join(" > "))?;
        }
        if let Some(c) = &self.cause {
            let inner = c.to_string().replace('\n', "\n  ");
            write!(f, "\n  caused by: {inner}")?;
        }
        Ok(())
    }
}

impl From<KernelError> for CheckError {
    fn from(e: KernelError) -> Self {
        CheckError::new(ErrorKind::Internal(e.to_string()))
    }
}

impl From<LfdcError> for CheckError {
    fn from(e: LfdcError) -> Self {
        match e {
            LfdcError::StructuralRuleDisabled(r) => CheckError::new(ErrorKind::StructuralRuleDisabled(r)),
            e => CheckError::new(ErrorKind::Internal(e.to_string())),
        }
    }
}
