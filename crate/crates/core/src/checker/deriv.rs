//! Derivation trees recorded by the checker.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::cx::{Cx, VarId};
use crate::kernel::{Name, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Judgment {
    Ctx,
    Type,
    Check,
    Infer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: &'static str,
    pub judgment: Judgment,
    /// The context the rule was applied in. Premises may live in smaller
    /// type-level contexts than their conclusion asks for.
    pub cx: Cx,
    /// For checking and inference, the type over the type-level part; for
    /// type formation, the universe.
    pub ty: Term,
    /// For checking and inference, the denotation over the whole context;
    /// for type formation, the type.
    pub term: Term,
    /// The variable an identity rule consumed.
    pub consumed: Option<VarId>,
    /// Whether the premises share one term-level context.
    pub additive: bool,
    pub children: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(rule: &'static str, judgment: Judgment, cx: &Cx, ty: Term, term: Term) -> Self {
        Derivation {
            rule,
            judgment,
            cx: cx.clone(),
            ty,
            term,
            consumed: None,
            additive: false,
            children: Vec::new(),
        }
    }

    pub fn with(mut self, children: Vec<Derivation>) -> Self {
        self.children = children;
        self
    }

    /// How often each term-level entry of this judgment is consumed by an
    /// identity rule somewhere above it. Uses in premises where the entry is
    /// type-level do not count.
    pub fn usage(&self) -> BTreeMap<VarId, usize> {
        let mut out: BTreeMap<VarId, usize> = BTreeMap::new();
        for c in &self.children {
            for (id, n) in c.usage() {
                let slot = out.entry(id).or_insert(0);
                *slot = if self.additive { (*slot).max(n) } else { *slot + n };
            }
        }
        if let Some(id) = self.consumed {
            *out.entry(id).or_insert(0) += 1;
        }
        let terms: Vec<VarId> = self.cx.term_entries().iter().map(|e| e.id).collect();
        out.retain(|id, _| terms.contains(id));
        out
    }

    /// Term-level entries, at any node, whose use count is not exactly one.
    pub fn linearity_violations(&self) -> Vec<(Name, usize)> {
        let mut out = Vec::new();
        self.violations_into(&mut out);
        out
    }

    fn violations_into(&self, out: &mut Vec<(Name, usize)>) {
        if matches!(self.judgment, Judgment::Check | Judgment::Infer) {
            let u = self.usage();
            for e in self.cx.term_entries() {
                let n = u.get(&e.id).copied().unwrap_or(0);
                if n != 1 {
                    out.push((e.name.clone(), n));
                }
            }
        }
        for c in &self.children {
            c.violations_into(out);
        }
    }

    /// Rule names in pre-order.
    pub fn rules(&self) -> Vec<&'static str> {
        let mut out = alloc::vec![self.rule];
        for c in &self.children {
            out.extend(c.rules());
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// The tree of rule names, one per line, indented by depth.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        let _ = writeln!(out, "{}", self.rule);
        for c in &self.children {
            c.render_into(depth + 1, out);
        }
    }
}
