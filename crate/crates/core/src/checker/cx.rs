//! Flat judgment contexts.
//!
//! A judgment `Γ ⫶ Δ` is represented as one list of entries whose first `k`
//! are type-level. Entries carry stable identities so that premise contexts,
//! which reorder and drop entries, can be related back to their conclusion by
//! renaming.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::{map_free, shift, KernelCtx, Name, Term};
use crate::pretty;
use crate::telescope::{SemCtx, Telescope};

pub type VarId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub id: VarId,
    pub name: Name,
    /// Over the preceding entries.
    pub ty: Term,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cx {
    pub entries: Vec<Entry>,
    /// Number of type-level entries.
    pub k: usize,
}

impl Cx {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ids(&self) -> Vec<VarId> {
        self.entries.iter().map(|e| e.id).collect()
    }

    pub fn type_ids(&self) -> Vec<VarId> {
        self.entries[..self.k].iter().map(|e| e.id).collect()
    }

    pub fn term_entries(&self) -> &[Entry] {
        &self.entries[self.k..]
    }

    pub fn pos(&self, id: VarId) -> Option<usize> {
        self.entries.iter().position(|e| e.id == id)
    }

    /// The last entry with this name.
    pub fn find(&self, name: &str) -> Option<usize> {
        self.entries.iter().rposition(|e| &*e.name == name)
    }

    pub fn names(&self) -> Vec<Name> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn kernel(&self) -> KernelCtx {
        KernelCtx(self.entries.iter().map(|e| e.ty.clone()).collect())
    }

    pub fn prefix_kernel(&self) -> KernelCtx {
        KernelCtx(self.entries[..self.k].iter().map(|e| e.ty.clone()).collect())
    }

    /// The type-level part alone, as a context with no term-level entries.
    pub fn type_part(&self) -> Cx {
        Cx {
            entries: self.entries[..self.k].to_vec(),
            k: self.k,
        }
    }

    /// Every entry moved to the type level.
    pub fn all_type_level(&self) -> Cx {
        Cx {
            entries: self.entries.clone(),
            k: self.len(),
        }
    }

    /// The variable for the entry at `pos`, over the whole context.
    pub fn var(&self, pos: usize) -> Term {
        Term::Var(self.len() - 1 - pos)
    }

    /// The type of the entry at `pos`, over the whole context.
    pub fn ty_over_all(&self, pos: usize) -> Term {
        shift(&self.entries[pos].ty, self.len() - pos)
    }

    /// Whether the entry at `later` mentions the entry at `earlier`.
    pub fn depends(&self, later: usize, earlier: usize) -> bool {
        debug_assert!(earlier < later);
        crate::kernel::occurs_free(&self.entries[later].ty, later - 1 - earlier)
    }

    /// Splits into the semantic context and telescope.
    pub fn to_sem(&self) -> (SemCtx, Telescope) {
        let mut g = SemCtx::new();
        let mut d = Telescope::new();
        for (i, e) in self.entries.iter().enumerate() {
            if i < self.k {
                g.push(e.name.clone(), e.ty.clone());
            } else {
                d.push(e.name.clone(), e.ty.clone());
            }
        }
        (g, d)
    }

    /// Builds a context from a semantic context and telescope, numbering
    /// entries from `first_id`.
    pub fn from_sem(g: &SemCtx, d: &Telescope, first_id: VarId) -> Cx {
        let entries = g
            .entries
            .iter()
            .chain(d.entries.iter())
            .enumerate()
            .map(|(i, b)| Entry {
                id: first_id + i as VarId,
                name: b.name.clone(),
                ty: b.ty.clone(),
            })
            .collect();
        Cx { entries, k: g.len() }
    }

    /// Prints a term over the whole context.
    pub fn show(&self, t: &Term) -> String {
        pretty::term(t, &self.names())
    }

    /// Prints a type over the type-level prefix.
    pub fn show_prefix(&self, t: &Term) -> String {
        pretty::term(t, &self.names()[..self.k])
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = pretty::distinct(&self.names());
        let item = |f: &mut fmt::Formatter<'_>, i: usize| {
            write!(f, "{} : {}", names[i], pretty::term(&self.entries[i].ty, &names[..i]))
        };
        if self.k == 0 {
            f.write_str("ε")?;
        }
        for i in 0..self.k {
            if i > 0 {
                f.write_str(", ")?;
            }
            item(f, i)?;
        }
        f.write_str(" ⫶ ")?;
        if self.k == self.len() {
            f.write_str("ε")?;
        }
        for i in self.k..self.len() {
            if i > self.k {
                f.write_str(", ")?;
            }
            item(f, i)?;
        }
        Ok(())
    }
}

/// Renames the free variables of `t` from the scope `from` to the scope
/// `to`. Identities missing from `to` are replaced by the matching term in
/// `extras`, given over `to`; anything else makes the transport fail.
pub fn transport(t: &Term, from: &[VarId], to: &[VarId], extras: &[(VarId, Term)]) -> Option<Term> {
    if from == to && extras.is_empty() {
        return Some(t.clone());
    }
    map_free(t, 0, &mut |k, d| {
        let id = *from.get(from.len().checked_sub(k + 1)?)?;
        if let Some(q) = to.iter().position(|&x| x == id) {
            return Some(Term::Var(to.len() - 1 - q + d));
        }
        extras
            .iter()
            .find(|(x, _)| *x == id)
            .map(|(_, u)| shift(u, d))
    })
}

/// Assembles a premise context from entries of a conclusion context and
/// fresh entries.
pub struct CxBuilder<'a> {
    src: &'a Cx,
    out: Cx,
}

impl<'a> CxBuilder<'a> {
    pub fn new(src: &'a Cx) -> Self {
        CxBuilder {
            src,
            out: Cx::default(),
        }
    }

    /// Copies the entry with this identity. Fails if its type mentions an
    /// entry not yet copied.
    pub fn old(&mut self, id: VarId) -> bool {
        let Some(p) = self.src.pos(id) else {
            return false;
        };
        let e = &self.src.entries[p];
        let from: Vec<VarId> = self.src.entries[..p].iter().map(|e| e.id).collect();
        match transport(&e.ty, &from, &self.out.ids(), &[]) {
            Some(ty) => {
                self.out.entries.push(Entry {
                    id,
                    name: e.name.clone(),
                    ty,
                });
                true
            }
            None => false,
        }
    }

    pub fn all(&mut self, ids: &[VarId]) -> bool {
        ids.iter().all(|&id| self.old(id))
    }

    /// Adds an entry whose type is already over the entries built so far.
    pub fn fresh(&mut self, id: VarId, name: Name, ty: Term) {
        self.out.entries.push(Entry { id, name, ty });
    }

    pub fn ids(&self) -> Vec<VarId> {
        self.out.ids()
    }

    /// Ends the type-level part.
    pub fn boundary(&mut self) {
        self.out.k = self.out.len();
    }

    pub fn finish(self) -> Cx {
        self.out
    }
}
