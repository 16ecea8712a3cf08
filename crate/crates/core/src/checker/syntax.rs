//! Surface syntax: contexts, types, introduction forms and elimination forms.
//!
//! The embedding of an elimination form into an introduction form is an
//! explicit node, even though the concrete syntax leaves it implicit.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use crate::kernel::Name;

/// A binder name that cannot be referred to.
pub const ANON: &str = "_";

/// `ε | Γ, x : S`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ctx(pub Vec<(Name, Ty)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ty {
    /// `𝟙`
    Unit,
    /// `⊕x : S. T`; `S ⊗ T` when the name is `_`.
    Sum(Name, Box<Ty>, Box<Ty>),
    /// `S ⫽ T`, stored as (domain, codomain).
    FunL(Box<Ty>, Box<Ty>),
    /// `T ⑊ S`, also written `S ⊸ T`; stored as (domain, codomain).
    FunR(Box<Ty>, Box<Ty>),
    /// `∀x : S. T`
    Forall(Name, Box<Ty>, Box<Ty>),
    /// `S × T`
    Prod(Box<Ty>, Box<Ty>),
    /// `P s`
    Atom(Name, Box<Intro>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intro {
    /// `⟨⟩`
    Unit,
    /// `⟨s, t⟩`
    Pair(Box<Intro>, Box<Intro>),
    /// `⫽x. t`
    LamL(Name, Box<Intro>),
    /// `⑊x. t`
    LamR(Name, Box<Intro>),
    /// `Λx. t`
    Lam(Name, Box<Intro>),
    /// `(s, t)`
    Tuple(Box<Intro>, Box<Intro>),
    /// An elimination form used where an introduction form is expected.
    Embed(Box<Elim>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elim {
    Let(Box<Let>),
    /// `f ◁ s`
    AppR(Box<Elim>, Box<Intro>),
    /// `s ▷ f`
    AppL(Box<Intro>, Box<Elim>),
    /// `f · s`
    App(Box<Elim>, Box<Intro>),
    /// `π₁ e`
    Proj1(Box<Elim>),
    /// `π₂ e`
    Proj2(Box<Elim>),
    /// `t : T`
    Ann(Box<Intro>, Box<Ty>),
    /// A variable or a signature constant; scope decides which.
    Name(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pattern {
    /// `⟨⟩`
    Unit,
    /// `⟨x, y⟩`
    Pair(Name, Name),
}

/// `let[a,b,c. R ^ U, V] pat = e with w = u and z = v in r`, with the
/// optional parts present according to the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Let {
    pub binders: Vec<Name>,
    pub motive: Ty,
    pub sup: Vec<Ty>,
    pub pattern: Pattern,
    pub scrutinee: Elim,
    pub withs: Vec<(Name, Intro)>,
    pub body: Intro,
}

/// The six let-forms of the grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetForm {
    /// `let[a. R^U] ⟨⟩ = e with z = u in r`
    UnitTerm,
    /// `let[a,b,c. R^{U,V}] ⟨⟩ = e with w = u and z = v in r`
    UnitType,
    /// `let[R] ⟨⟩ = e in r`
    UnitTermBare,
    /// `let[a,b. R^U] ⟨⟩ = e with z = u in r`
    UnitTypeBare,
    /// `let[a. R^U] ⟨x,y⟩ = e with z = u in r`
    PairTerm,
    /// `let[a,b,c. R^{U,V}] ⟨x,y⟩ = e with w = u and z = v in r`
    PairType,
}

impl Let {
    /// Classifies by pattern and by the number of binders, motives and
    /// with-bindings.
    pub fn form(&self) -> Option<LetForm> {
        let unit = self.pattern == Pattern::Unit;
        Some(match (unit, self.binders.len(), self.sup.len(), self.withs.len()) {
            (true, 1, 1, 1) => LetForm::UnitTerm,
            (true, 3, 2, 2) => LetForm::UnitType,
            (true, 0, 0, 0) => LetForm::UnitTermBare,
            (true, 2, 1, 1) => LetForm::UnitTypeBare,
            (false, 1, 1, 1) => LetForm::PairTerm,
            (false, 3, 2, 2) => LetForm::PairType,
            _ => return None,
        })
    }
}

impl Intro {
    pub fn embed(e: Elim) -> Intro {
        Intro::Embed(Box::new(e))
    }

    pub fn name(x: impl Into<Name>) -> Intro {
        Intro::embed(Elim::Name(x.into()))
    }

    pub fn pair(a: Intro, b: Intro) -> Intro {
        Intro::Pair(Box::new(a), Box::new(b))
    }

    pub fn tuple(a: Intro, b: Intro) -> Intro {
        Intro::Tuple(Box::new(a), Box::new(b))
    }

    pub fn lam_l(x: impl Into<Name>, t: Intro) -> Intro {
        Intro::LamL(x.into(), Box::new(t))
    }

    pub fn lam_r(x: impl Into<Name>, t: Intro) -> Intro {
        Intro::LamR(x.into(), Box::new(t))
    }

    pub fn lam(x: impl Into<Name>, t: Intro) -> Intro {
        Intro::Lam(x.into(), Box::new(t))
    }

    /// The elimination form inside an embedding.
    pub fn as_elim(&self) -> Option<&Elim> {
        match self {
            Intro::Embed(e) => Some(e),
            _ => None,
        }
    }
}

impl Elim {
    pub fn name(x: impl Into<Name>) -> Elim {
        Elim::Name(x.into())
    }

    pub fn app_r(f: Elim, s: Intro) -> Elim {
        Elim::AppR(Box::new(f), Box::new(s))
    }

    pub fn app_l(s: Intro, f: Elim) -> Elim {
        Elim::AppL(Box::new(s), Box::new(f))
    }

    pub fn app(f: Elim, s: Intro) -> Elim {
        Elim::App(Box::new(f), Box::new(s))
    }

    pub fn ann(t: Intro, ty: Ty) -> Elim {
        Elim::Ann(Box::new(t), Box::new(ty))
    }
}

impl Ty {
    pub fn atom(p: impl Into<Name>, s: Intro) -> Ty {
        Ty::Atom(p.into(), Box::new(s))
    }

    pub fn sum(x: impl Into<Name>, s: Ty, t: Ty) -> Ty {
        Ty::Sum(x.into(), Box::new(s), Box::new(t))
    }

    pub fn tensor(s: Ty, t: Ty) -> Ty {
        Ty::sum(ANON, s, t)
    }

    pub fn forall(x: impl Into<Name>, s: Ty, t: Ty) -> Ty {
        Ty::Forall(x.into(), Box::new(s), Box::new(t))
    }

    pub fn fun_l(dom: Ty, cod: Ty) -> Ty {
        Ty::FunL(Box::new(dom), Box::new(cod))
    }

    /// `dom ⊸ cod`.
    pub fn lolli(dom: Ty, cod: Ty) -> Ty {
        Ty::FunR(Box::new(dom), Box::new(cod))
    }

    pub fn prod(s: Ty, t: Ty) -> Ty {
        Ty::Prod(Box::new(s), Box::new(t))
    }
}

/// Every identifier occurring in a piece of syntax, bound or free.
pub trait Names {
    fn names_into(&self, out: &mut BTreeSet<Name>);

    /// Identifiers with at least one free occurrence.
    fn free_into(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>);

    fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.names_into(&mut out);
        out
    }

    fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.free_into(&mut Vec::new(), &mut out);
        out
    }
}

fn under<R>(bound: &mut Vec<Name>, xs: &[&Name], f: impl FnOnce(&mut Vec<Name>) -> R) -> R {
    let n = bound.len();
    bound.extend(xs.iter().map(|x| (*x).clone()));
    let r = f(bound);
    bound.truncate(n);
    r
}

impl Names for Ty {
    fn names_into(&self, out: &mut BTreeSet<Name>) {
        match self {
            Ty::Unit => {}
            Ty::Sum(x, s, t) | Ty::Forall(x, s, t) => {
                out.insert(x.clone());
                s.names_into(out);
                t.names_into(out);
            }
            Ty::FunL(s, t) | Ty::FunR(s, t) | Ty::Prod(s, t) => {
                s.names_into(out);
                t.names_into(out);
            }
            Ty::Atom(p, s) => {
                out.insert(p.clone());
                s.names_into(out);
            }
        }
    }

    fn free_into(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Ty::Unit => {}
            Ty::Sum(x, s, t) | Ty::Forall(x, s, t) => {
                s.free_into(bound, out);
                under(bound, &[x], |b| t.free_into(b, out));
            }
            Ty::FunL(s, t) | Ty::FunR(s, t) | Ty::Prod(s, t) => {
                s.free_into(bound, out);
                t.free_into(bound, out);
            }
            Ty::Atom(_, s) => s.free_into(bound, out),
        }
    }
}

impl Names for Intro {
    fn names_into(&self, out: &mut BTreeSet<Name>) {
        match self {
            Intro::Unit => {}
            Intro::Pair(a, b) | Intro::Tuple(a, b) => {
                a.names_into(out);
                b.names_into(out);
            }
            Intro::LamL(x, t) | Intro::LamR(x, t) | Intro::Lam(x, t) => {
                out.insert(x.clone());
                t.names_into(out);
            }
            Intro::Embed(e) => e.names_into(out),
        }
    }

    fn free_into(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Intro::Unit => {}
            Intro::Pair(a, b) | Intro::Tuple(a, b) => {
                a.free_into(bound, out);
                b.free_into(bound, out);
            }
            Intro::LamL(x, t) | Intro::LamR(x, t) | Intro::Lam(x, t) => {
                under(bound, &[x], |b| t.free_into(b, out))
            }
            Intro::Embed(e) => e.free_into(bound, out),
        }
    }
}

impl Names for Elim {
    fn names_into(&self, out: &mut BTreeSet<Name>) {
        match self {
            Elim::Let(l) => {
                out.extend(l.binders.iter().cloned());
                l.motive.names_into(out);
                for u in &l.sup {
                    u.names_into(out);
                }
                if let Pattern::Pair(x, y) = &l.pattern {
                    out.insert(x.clone());
                    out.insert(y.clone());
                }
                l.scrutinee.names_into(out);
                for (w, u) in &l.withs {
                    out.insert(w.clone());
                    u.names_into(out);
                }
                l.body.names_into(out);
            }
            Elim::AppR(f, s) | Elim::App(f, s) | Elim::AppL(s, f) => {
                f.names_into(out);
                s.names_into(out);
            }
            Elim::Proj1(e) | Elim::Proj2(e) => e.names_into(out),
            Elim::Ann(t, ty) => {
                t.names_into(out);
                ty.names_into(out);
            }
            Elim::Name(x) => {
                out.insert(x.clone());
            }
        }
    }

    fn free_into(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Elim::Let(l) => l.free_into(bound, out),
            Elim::AppR(f, s) | Elim::App(f, s) | Elim::AppL(s, f) => {
                f.free_into(bound, out);
                s.free_into(bound, out);
            }
            Elim::Proj1(e) | Elim::Proj2(e) => e.free_into(bound, out),
            Elim::Ann(t, ty) => {
                t.free_into(bound, out);
                ty.free_into(bound, out);
            }
            Elim::Name(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
        }
    }
}

impl Let {
    fn free_into(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        // Motives bind a, b, c in turn; the body sees the pattern variables
        // and the with-bindings.
        let b = &self.binders;
        match b.len() {
            0 => self.motive.free_into(bound, out),
            _ => under(bound, &[&b[0]], |bd| self.motive.free_into(bd, out)),
        }
        match b.len() {
            1 => under(bound, &[&b[0]], |bd| self.sup[0].free_into(bd, out)),
            2 => under(bound, &[&b[1]], |bd| self.sup[0].free_into(bd, out)),
            3 => {
                under(bound, &[&b[1]], |bd| self.sup[0].free_into(bd, out));
                under(bound, &[&b[1], &b[2]], |bd| self.sup[1].free_into(bd, out));
            }
            _ => {}
        }
        self.scrutinee.free_into(bound, out);
        for (_, u) in &self.withs {
            u.free_into(bound, out);
        }
        let mut inner: Vec<&Name> = Vec::new();
        if let Pattern::Pair(x, y) = &self.pattern {
            inner.push(x);
            inner.push(y);
        }
        inner.extend(self.withs.iter().map(|(w, _)| w));
        under(bound, &inner, |bd| self.body.free_into(bd, out));
    }
}

/// Replaces free occurrences of a name by an elimination form.
pub trait Subst: Sized {
    fn subst(&self, x: &str, e: &Elim) -> Self;
}

impl Subst for Ty {
    fn subst(&self, x: &str, e: &Elim) -> Ty {
        let b = |t: &Ty| Box::new(t.subst(x, e));
        match self {
            Ty::Unit => Ty::Unit,
            Ty::Sum(y, s, t) if &**y == x => Ty::Sum(y.clone(), b(s), t.clone()),
            Ty::Forall(y, s, t) if &**y == x => Ty::Forall(y.clone(), b(s), t.clone()),
            Ty::Sum(y, s, t) => Ty::Sum(y.clone(), b(s), b(t)),
            Ty::Forall(y, s, t) => Ty::Forall(y.clone(), b(s), b(t)),
            Ty::FunL(s, t) => Ty::FunL(b(s), b(t)),
            Ty::FunR(s, t) => Ty::FunR(b(s), b(t)),
            Ty::Prod(s, t) => Ty::Prod(b(s), b(t)),
            Ty::Atom(p, s) => Ty::Atom(p.clone(), Box::new(s.subst(x, e))),
        }
    }
}

impl Subst for Intro {
    fn subst(&self, x: &str, e: &Elim) -> Intro {
        let b = |t: &Intro| Box::new(t.subst(x, e));
        match self {
            Intro::Unit => Intro::Unit,
            Intro::Pair(s, t) => Intro::Pair(b(s), b(t)),
            Intro::Tuple(s, t) => Intro::Tuple(b(s), b(t)),
            Intro::LamL(y, _) | Intro::LamR(y, _) | Intro::Lam(y, _) if &**y == x => self.clone(),
            Intro::LamL(y, t) => Intro::LamL(y.clone(), b(t)),
            Intro::LamR(y, t) => Intro::LamR(y.clone(), b(t)),
            Intro::Lam(y, t) => Intro::Lam(y.clone(), b(t)),
            Intro::Embed(f) => Intro::Embed(Box::new(f.subst(x, e))),
        }
    }
}

impl Subst for Elim {
    fn subst(&self, x: &str, e: &Elim) -> Elim {
        match self {
            Elim::Name(y) if &**y == x => e.clone(),
            Elim::Name(_) => self.clone(),
            Elim::AppR(f, s) => Elim::app_r(f.subst(x, e), s.subst(x, e)),
            Elim::AppL(s, f) => Elim::app_l(s.subst(x, e), f.subst(x, e)),
            Elim::App(f, s) => Elim::app(f.subst(x, e), s.subst(x, e)),
            Elim::Proj1(f) => Elim::Proj1(Box::new(f.subst(x, e))),
            Elim::Proj2(f) => Elim::Proj2(Box::new(f.subst(x, e))),
            Elim::Ann(t, ty) => Elim::ann(t.subst(x, e), ty.subst(x, e)),
            Elim::Let(l) => Elim::Let(Box::new(l.subst(x, e))),
        }
    }
}

impl Let {
    fn subst(&self, x: &str, e: &Elim) -> Let {
        let b = &self.binders;
        let hides = |names: &[&Name]| names.iter().any(|n| &***n == x);
        let motive = if b.first().is_some_and(|a| &**a == x) {
            self.motive.clone()
        } else {
            self.motive.subst(x, e)
        };
        let sup = self
            .sup
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let scope: Vec<&Name> = match (b.len(), i) {
                    (1, _) => alloc::vec![&b[0]],
                    (2, _) => alloc::vec![&b[1]],
                    (3, 0) => alloc::vec![&b[1]],
                    (3, _) => alloc::vec![&b[1], &b[2]],
                    _ => Vec::new(),
                };
                if hides(&scope) {
                    u.clone()
                } else {
                    u.subst(x, e)
                }
            })
            .collect();
        let mut inner: Vec<&Name> = Vec::new();
        if let Pattern::Pair(p, q) = &self.pattern {
            inner.push(p);
            inner.push(q);
        }
        inner.extend(self.withs.iter().map(|(w, _)| w));
        let body = if hides(&inner) {
            self.body.clone()
        } else {
            self.body.subst(x, e)
        };
        Let {
            binders: self.binders.clone(),
            motive,
            sup,
            pattern: self.pattern.clone(),
            scrutinee: self.scrutinee.subst(x, e),
            withs: self
                .withs
                .iter()
                .map(|(w, u)| (w.clone(), u.subst(x, e)))
                .collect(),
            body,
        }
    }
}

/// A top-level item of a signature or query file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Atom(Name, Ty),
    Const(Name, Ty),
    Import(String),
    Ctx(Ctx),
    Type(Ctx, Ty),
    Check(Ctx, Ctx, Ty, Intro),
    Infer(Ctx, Ctx, Elim),
    /// Succeeds iff the inner item fails, optionally with the given error
    /// kind.
    Fail(Option<Name>, Box<Item>),
}

/// An item with the position of its first token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub col: usize,
    pub item: Item,
}

// Printing. Term levels: 0 admits binders, annotations, lets and infix `⊸`;
// 1 admits `▷`; 2 admits application spines and projections; 3 only atoms.
// Type levels: 0 admits binders and arrows, 1 admits `×` and `⊗`, 2 only
// atoms.

/// The constant named `⊸`, which the term syntax also writes infix.
pub const LOLLI: &str = "⊸";

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, (x, s)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} : {s}")?;
        }
        Ok(())
    }
}

impl Ty {
    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        let paren = match self {
            Ty::Sum(x, ..) if &**x == ANON => level > 1,
            Ty::Sum(..) | Ty::Forall(..) | Ty::FunL(..) | Ty::FunR(..) => level > 0,
            Ty::Prod(..) => level > 1,
            Ty::Unit | Ty::Atom(..) => false,
        };
        if paren {
            f.write_str("(")?;
        }
        match self {
            Ty::Unit => f.write_str("𝟙")?,
            Ty::Sum(x, s, t) if &**x == ANON => {
                s.fmt_at(f, 2)?;
                f.write_str(" ⊗ ")?;
                t.fmt_at(f, 1)?;
            }
            Ty::Sum(x, s, t) | Ty::Forall(x, s, t) => {
                let sym = if matches!(self, Ty::Sum(..)) { "⊕" } else { "∀" };
                write!(f, "{sym}{x} : ")?;
                s.fmt_at(f, 0)?;
                f.write_str(". ")?;
                t.fmt_at(f, 0)?;
            }
            Ty::FunL(s, t) | Ty::FunR(s, t) => {
                s.fmt_at(f, 1)?;
                f.write_str(if matches!(self, Ty::FunL(..)) { " ⫽ " } else { " ⊸ " })?;
                t.fmt_at(f, 0)?;
            }
            Ty::Prod(s, t) => {
                s.fmt_at(f, 2)?;
                f.write_str(" × ")?;
                t.fmt_at(f, 1)?;
            }
            Ty::Atom(p, s) => {
                write!(f, "{p}")?;
                if matches!(&**s, Intro::Embed(e) if matches!(**e, Elim::Name(_))) {
                    write!(f, "({s})")?;
                } else {
                    s.fmt_arg(f)?;
                }
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl Intro {
    fn level(&self) -> u8 {
        match self {
            Intro::Unit | Intro::Pair(..) | Intro::Tuple(..) => 3,
            Intro::LamL(..) | Intro::LamR(..) | Intro::Lam(..) => 0,
            Intro::Embed(e) => e.level(),
        }
    }

    /// Prints as an argument: atoms directly, anything else in parentheses.
    fn fmt_arg(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 3)
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        if self.level() < level {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Intro::Unit => f.write_str("⟨⟩"),
            Intro::Pair(..) => {
                f.write_str("⟨")?;
                let mut cur = self;
                while let Intro::Pair(a, b) = cur {
                    a.fmt_at(f, 0)?;
                    f.write_str(", ")?;
                    cur = b;
                }
                cur.fmt_at(f, 0)?;
                f.write_str("⟩")
            }
            Intro::Tuple(a, b) => {
                f.write_str("(")?;
                a.fmt_at(f, 0)?;
                f.write_str(", ")?;
                b.fmt_at(f, 0)?;
                f.write_str(")")
            }
            Intro::LamL(x, t) | Intro::LamR(x, t) | Intro::Lam(x, t) => {
                let sym = match self {
                    Intro::LamL(..) => "⫽",
                    Intro::LamR(..) => "⑊",
                    _ => "Λ",
                };
                write!(f, "{sym}{x}. ")?;
                t.fmt_at(f, 0)
            }
            Intro::Embed(e) => e.fmt_at(f, level),
        }
    }
}

impl fmt::Display for Intro {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl Elim {
    /// `a ⊸ b`, which abbreviates `⊸ ◁ a ◁ b`.
    pub fn lolli(a: Intro, b: Intro) -> Elim {
        Elim::app_r(Elim::app_r(Elim::name(LOLLI), a), b)
    }

    fn as_lolli(&self) -> Option<(&Intro, &Intro)> {
        match self {
            Elim::AppR(g, b) => match &**g {
                Elim::AppR(h, a) if matches!(&**h, Elim::Name(n) if &**n == LOLLI) => Some((a, b)),
                _ => None,
            },
            _ => None,
        }
    }

    fn level(&self) -> u8 {
        if self.as_lolli().is_some() {
            return 0;
        }
        match self {
            Elim::Let(_) | Elim::Ann(..) => 0,
            Elim::AppL(..) => 1,
            Elim::AppR(..) | Elim::App(..) | Elim::Proj1(_) | Elim::Proj2(_) => 2,
            Elim::Name(_) => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        if self.level() < level {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        if let Some((a, b)) = self.as_lolli() {
            a.fmt_at(f, 1)?;
            f.write_str(" ⊸ ")?;
            return b.fmt_at(f, 0);
        }
        match self {
            Elim::Name(x) => write!(f, "{x}"),
            Elim::Proj1(e) | Elim::Proj2(e) => {
                f.write_str(if matches!(self, Elim::Proj1(_)) { "π₁ " } else { "π₂ " })?;
                e.fmt_at(f, 3)
            }
            Elim::AppR(g, s) | Elim::App(g, s) => {
                g.fmt_at(f, 2)?;
                f.write_str(if matches!(self, Elim::AppR(..)) { " ◁ " } else { " · " })?;
                s.fmt_arg(f)
            }
            Elim::AppL(s, g) => {
                s.fmt_at(f, 2)?;
                f.write_str(" ▷ ")?;
                g.fmt_at(f, 1)
            }
            Elim::Ann(t, ty) => {
                t.fmt_at(f, 1)?;
                f.write_str(" : ")?;
                ty.fmt_at(f, 0)
            }
            Elim::Let(l) => write!(f, "{l}"),
        }
    }
}

impl fmt::Display for Elim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Display for Let {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("let[")?;
        if !self.binders.is_empty() {
            for (i, a) in self.binders.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(". ")?;
        }
        write!(f, "{}", self.motive)?;
        for (i, u) in self.sup.iter().enumerate() {
            f.write_str(if i == 0 { " ^ " } else { ", " })?;
            write!(f, "{u}")?;
        }
        f.write_str("] ")?;
        match &self.pattern {
            Pattern::Unit => f.write_str("⟨⟩")?,
            Pattern::Pair(x, y) => write!(f, "⟨{x}, {y}⟩")?,
        }
        write!(f, " = {}", self.scrutinee)?;
        for (i, (w, u)) in self.withs.iter().enumerate() {
            f.write_str(if i == 0 { " with " } else { " and " })?;
            write!(f, "{w} = {u}")?;
        }
        write!(f, " in {}", self.body)
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Atom(p, s) => write!(f, "atom {p} : {s}."),
            Item::Const(p, s) => write!(f, "const {p} : {s}."),
            Item::Import(path) => write!(f, "import \"{path}\"."),
            Item::Ctx(g) => write!(f, "ctx {g}."),
            Item::Type(g, t) => write!(f, "type {g} ⊢ {t}."),
            Item::Check(g, d, t, s) => write!(f, "check {g} ⫶ {d} ⊢ {t} ∋ {s}."),
            Item::Infer(g, d, e) => write!(f, "infer {g} ⫶ {d} ⊢ {e}."),
            Item::Fail(None, inner) => write!(f, "fail {inner}"),
            Item::Fail(Some(k), inner) => write!(f, "fail({k}) {inner}"),
        }
    }
}
