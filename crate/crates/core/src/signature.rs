//! Signatures of atomic type families and constants.
//!
//! Both kinds of binding become opaque kernel constants: an atom `P` over a
//! closed domain `S` is a constant of type `Π _:S. U`, and a constant `p` of
//! closed type `S` is a constant of type `S`. Neither has computational
//! behaviour.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::checker::error::{CheckError, ErrorKind};
use crate::checker::parse::{parse_items, ParseError};
use crate::checker::syntax::{Item, Names, Ty};
use crate::checker::{self, Derivation};
use crate::kernel::{KernelCtx, Name, Term};
use crate::lfdc::{Morphism, SemType, StructuralConfig};
use crate::telescope::SemCtx;

/// `P(⟦S⟧) ↦ ⟦P⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomBinding {
    pub name: Name,
    /// Closed.
    pub domain: SemType,
    /// Over `ε•domain`.
    pub family: SemType,
    /// The kernel constant `P : Π _:S. U`.
    pub head: Term,
}

/// `p : ⟦S⟧ ↦ ⟦p⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstBinding {
    pub name: Name,
    /// Closed.
    pub ty: SemType,
    /// `⟦p⟧ : 𝟙 → ⟦S⟧` over the empty context.
    pub value: Morphism,
    /// The kernel constant `p : S`.
    pub head: Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Atom,
    Const,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    atoms: BTreeMap<Name, AtomBinding>,
    consts: BTreeMap<Name, ConstBinding>,
    order: Vec<(Name, DeclKind)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignatureError {
    DuplicateBinding(Name),
    OpenSignatureType { name: Name, var: Name },
    Elaboration { name: Name, error: CheckError },
    Parse(ParseError),
    NotADeclaration,
    /// Another error, at a source position.
    At { line: usize, col: usize, error: Box<SignatureError> },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::DuplicateBinding(x) => write!(f, "`{x}` is already declared"),
            SignatureError::OpenSignatureType { name, var } => {
                write!(f, "the type of `{name}` mentions the free variable `{var}`")
            }
            SignatureError::Elaboration { name, error } => write!(f, "in the declaration of `{name}`: {error}"),
            SignatureError::Parse(e) => write!(f, "{e}"),
            SignatureError::NotADeclaration => f.write_str("only `atom` and `const` declarations may appear here"),
            SignatureError::At { line, col, error } => write!(f, "{line}:{col}: {error}"),
        }
    }
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// Declared names in declaration order.
    pub fn declarations(&self) -> &[(Name, DeclKind)] {
        &self.order
    }

    pub fn atom(&self, name: &str) -> Option<&AtomBinding> {
        self.atoms.get(name)
    }

    pub fn constant(&self, name: &str) -> Option<&ConstBinding> {
        self.consts.get(name)
    }

    pub fn lookup_atom(&self, name: &str) -> Result<&AtomBinding, CheckError> {
        self.atom(name)
            .ok_or_else(|| CheckError::new(ErrorKind::UnknownAtom(name.into())))
    }

    pub fn lookup_const(&self, name: &str) -> Result<&ConstBinding, CheckError> {
        self.constant(name)
            .ok_or_else(|| CheckError::new(ErrorKind::UnknownConstant(name.into())))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.atoms.contains_key(name) || self.consts.contains_key(name)
    }

    fn closed(&self, name: &Name, ty: &Ty, cfg: &StructuralConfig) -> Result<(SemType, Derivation), SignatureError> {
        if self.contains(name) {
            return Err(SignatureError::DuplicateBinding(name.clone()));
        }
        if let Some(var) = ty.free_names().into_iter().find(|x| self.constant(x).is_none()) {
            return Err(SignatureError::OpenSignatureType {
                name: name.clone(),
                var,
            });
        }
        checker::form_type_derivation(&SemCtx::new(), ty, self, cfg).map_err(|error| SignatureError::Elaboration {
            name: name.clone(),
            error,
        })
    }

    /// Adds `P(S)`, elaborating `S` against the current signature.
    pub fn declare_atom(&self, name: impl Into<Name>, domain: &Ty, cfg: &StructuralConfig) -> Result<Signature, SignatureError> {
        Ok(self.declare_atom_traced(name, domain, cfg)?.0)
    }

    /// [`Signature::declare_atom`], also returning the formation
    /// derivation of the domain.
    pub fn declare_atom_traced(
        &self,
        name: impl Into<Name>,
        domain: &Ty,
        cfg: &StructuralConfig,
    ) -> Result<(Signature, Derivation), SignatureError> {
        let name = name.into();
        let (domain, trace) = self.closed(&name, domain, cfg)?;
        let head = Term::constant(name.clone(), Term::pi(domain.body.clone(), Term::Univ));
        let family = SemType::checked(domain.extended(), Term::app(head.clone(), Term::Var(0)))
            .map_err(|e| internal(&name, e.into()))?;
        let mut out = self.clone();
        out.order.push((name.clone(), DeclKind::Atom));
        out.atoms.insert(
            name.clone(),
            AtomBinding {
                name,
                domain,
                family,
                head,
            },
        );
        Ok((out, trace))
    }

    /// Adds `p : S`, elaborating `S` against the current signature.
    pub fn declare_const(&self, name: impl Into<Name>, ty: &Ty, cfg: &StructuralConfig) -> Result<Signature, SignatureError> {
        Ok(self.declare_const_traced(name, ty, cfg)?.0)
    }

    /// [`Signature::declare_const`], also returning the formation
    /// derivation of the type.
    pub fn declare_const_traced(
        &self,
        name: impl Into<Name>,
        ty: &Ty,
        cfg: &StructuralConfig,
    ) -> Result<(Signature, Derivation), SignatureError> {
        let name = name.into();
        let (ty, trace) = self.closed(&name, ty, cfg)?;
        let head = Term::constant(name.clone(), ty.body.clone());
        let unit = SemType {
            ctx: KernelCtx::empty(),
            body: Term::Unit,
        };
        let value = Morphism::new(unit, ty.clone(), head.clone()).map_err(|e| internal(&name, e.into()))?;
        value.validate().map_err(|e| internal(&name, e.into()))?;
        let mut out = self.clone();
        out.order.push((name.clone(), DeclKind::Const));
        out.consts.insert(
            name.clone(),
            ConstBinding {
                name,
                ty,
                value,
                head,
            },
        );
        Ok((out, trace))
    }

    /// Processes the declarations of a source text in order. Nothing is
    /// kept unless every declaration succeeds.
    pub fn extend_from_str(&self, src: &str, cfg: &StructuralConfig) -> Result<Signature, SignatureError> {
        let items = parse_items(src).map_err(SignatureError::Parse)?;
        let mut sig = self.clone();
        for it in items {
            let at = |error| SignatureError::At {
                line: it.line,
                col: it.col,
                error: Box::new(error),
            };
            sig = match &it.item {
                Item::Atom(p, s) => sig.declare_atom(p.clone(), s, cfg),
                Item::Const(p, s) => sig.declare_const(p.clone(), s, cfg),
                _ => Err(SignatureError::NotADeclaration),
            }
            .map_err(at)?;
        }
        Ok(sig)
    }

    pub fn from_str(src: &str, cfg: &StructuralConfig) -> Result<Signature, SignatureError> {
        Signature::new().extend_from_str(src, cfg)
    }
}

fn internal(name: &Name, e: CheckError) -> SignatureError {
    SignatureError::Elaboration {
        name: name.clone(),
        error: e,
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, kind) in &self.order {
            let (kw, ty) = match kind {
                DeclKind::Atom => ("atom", &self.atoms[name].domain.body),
                DeclKind::Const => ("const", &self.consts[name].ty.body),
            };
            writeln!(f, "{kw} {name} : {}.", crate::pretty::closed(ty))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shareable_across_threads() {
        fn is<T: Send + Sync>() {}
        is::<Signature>();
    }
}
