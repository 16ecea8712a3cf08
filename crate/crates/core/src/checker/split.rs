//! Distributing the term-level context over the premises of a rule.
//!
//! A rule divides its term-level context into consecutive blocks. Each
//! premise sees every block either not at all, at the type level, or as its
//! own term-level context. Without exchange a block assignment must respect
//! the context order; with exchange, entries may move past entries they do
//! not depend on.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::cx::{Cx, CxBuilder, VarId};
use super::error::{CheckError, ErrorKind, LinearityKind};
use crate::kernel::Name;
use crate::lfdc::StructuralConfig;
use crate::telescope::Telescope;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vis {
    Hidden,
    Type,
    Term,
}

/// What one premise mentions and how it sees each block.
#[derive(Clone, Debug)]
pub struct View {
    pub names: BTreeSet<Name>,
    pub vis: Vec<Vis>,
}

impl View {
    pub fn new(names: BTreeSet<Name>, vis: &[Vis]) -> Self {
        View {
            names,
            vis: vis.to_vec(),
        }
    }
}

/// One admissible distribution.
#[derive(Clone, Debug)]
pub struct Split {
    /// The conclusion context with term-level entries reordered by block.
    pub cx: Cx,
    pub blocks: Vec<Vec<VarId>>,
    pub permuted: bool,
}

/// Every admissible distribution, in lexicographic order of block indices.
pub fn splits(cx: &Cx, views: &[View], nblocks: usize, cfg: &StructuralConfig) -> Result<Vec<Split>, CheckError> {
    let terms = cx.term_entries();
    let n = terms.len();
    let allowed: Vec<Vec<usize>> = terms
        .iter()
        .map(|e| (0..nblocks).filter(|&b| admits(views, &e.name, b, cfg)).collect())
        .collect();
    for (i, a) in allowed.iter().enumerate() {
        if a.is_empty() {
            return Err(diagnose(views, &terms[i].name));
        }
    }
    let exchange = cfg.exchange_available();
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    search(cx, views, &allowed, exchange, 0, &mut assign, &mut out);
    if out.is_empty() {
        return Err(CheckError::new(ErrorKind::SplitError));
    }
    Ok(out)
}

fn admits(views: &[View], x: &Name, b: usize, cfg: &StructuralConfig) -> bool {
    let mentioning = || views.iter().filter(|v| v.names.contains(x));
    if mentioning().any(|v| v.vis[b] == Vis::Hidden) {
        return false;
    }
    if cfg.weakening {
        views.iter().any(|v| v.vis[b] == Vis::Term)
    } else {
        mentioning().any(|v| v.vis[b] == Vis::Term)
    }
}

fn diagnose(views: &[View], x: &Name) -> CheckError {
    let consumers: BTreeSet<usize> = views
        .iter()
        .filter(|v| v.names.contains(x))
        .filter_map(|v| v.vis.iter().position(|&s| s == Vis::Term))
        .collect();
    let kind = match consumers.len() {
        0 => LinearityKind::Unused,
        1 => return CheckError::new(ErrorKind::SplitError),
        _ => LinearityKind::UsedTwice,
    };
    CheckError::new(ErrorKind::LinearityError { var: x.clone(), kind })
}

fn search(
    cx: &Cx,
    views: &[View],
    allowed: &[Vec<usize>],
    exchange: bool,
    i: usize,
    assign: &mut Vec<usize>,
    out: &mut Vec<Split>,
) {
    let k = cx.k;
    if i == allowed.len() {
        if let Some(s) = build(cx, assign, views.first().map_or(0, |v| v.vis.len())) {
            out.push(s);
        }
        return;
    }
    for &b in &allowed[i] {
        let ok = (0..i).all(|j| {
            let a = assign[j];
            let dep = cx.depends(k + i, k + j);
            if a > b && !(exchange && !dep) {
                return false;
            }
            // A premise that sees this entry must also see what its type
            // mentions.
            !dep || views.iter().all(|v| v.vis[b] == Vis::Hidden || v.vis[a] != Vis::Hidden)
        });
        if ok {
            assign[i] = b;
            search(cx, views, allowed, exchange, i + 1, assign, out);
        }
    }
}

fn build(cx: &Cx, assign: &[usize], nblocks: usize) -> Option<Split> {
    let k = cx.k;
    let mut order: Vec<usize> = (0..assign.len()).collect();
    order.sort_by_key(|&i| (assign[i], i));
    let permuted = order.iter().enumerate().any(|(a, &b)| a != b);
    let mut bld = CxBuilder::new(cx);
    if !bld.all(&cx.type_ids()) {
        return None;
    }
    bld.boundary();
    let mut blocks = vec![Vec::new(); nblocks];
    for &i in &order {
        let id = cx.entries[k + i].id;
        if !bld.old(id) {
            return None;
        }
        blocks[assign[i]].push(id);
    }
    Some(Split {
        cx: bld.finish(),
        blocks,
        permuted,
    })
}

/// All `n + 1` ways to cut a telescope into a prefix and a suffix, from the
/// empty prefix to the empty suffix.
pub fn split_points(delta: &Telescope) -> Vec<(Telescope, Telescope)> {
    (0..=delta.len()).map(|k| delta.split_at(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::cx::Entry;
    use crate::kernel::Term;

    fn flat(names: &[&str], deps: &[(usize, usize)]) -> Cx {
        // Entry i has type `P #j` when it depends on j, else a constant.
        let p = Term::constant("P", Term::pi(Term::Unit, Term::Univ));
        let entries = names
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let ty = match deps.iter().find(|(a, _)| *a == i) {
                    Some(&(_, j)) => Term::app(p.clone(), Term::Var(i - 1 - j)),
                    None => Term::constant("A", Term::Univ),
                };
                Entry {
                    id: i as VarId,
                    name: (*n).into(),
                    ty,
                }
            })
            .collect();
        Cx { entries, k: 0 }
    }

    fn names(xs: &[&str]) -> BTreeSet<Name> {
        xs.iter().map(|x| (*x).into()).collect()
    }

    fn pair_views(s: &[&str], t: &[&str]) -> Vec<View> {
        vec![
            View::new(names(s), &[Vis::Term, Vis::Hidden]),
            View::new(names(t), &[Vis::Type, Vis::Term]),
        ]
    }

    #[test]
    fn ordered_split_is_unique() {
        let cx = flat(&["x", "y"], &[]);
        let s = splits(&cx, &pair_views(&["x"], &["y"]), 2, &StructuralConfig::ORDERED).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].blocks, vec![vec![0], vec![1]]);
        assert!(!s[0].permuted);
    }

    #[test]
    fn reversed_needs_exchange() {
        let cx = flat(&["x", "y"], &[]);
        let v = pair_views(&["y"], &["x"]);
        let e = splits(&cx, &v, 2, &StructuralConfig::ORDERED).unwrap_err();
        assert_eq!(e.kind, ErrorKind::SplitError);
        let s = splits(&cx, &v, 2, &StructuralConfig::LINEAR).unwrap();
        assert!(s[0].permuted);
        assert_eq!(s[0].blocks, vec![vec![1], vec![0]]);
    }

    #[test]
    fn dependency_blocks_exchange() {
        let cx = flat(&["x", "y"], &[(1, 0)]);
        let v = pair_views(&["y"], &["x"]);
        assert!(splits(&cx, &v, 2, &StructuralConfig::LINEAR).is_err());
    }

    #[test]
    fn double_use_is_reported() {
        let cx = flat(&["q"], &[]);
        let v = vec![
            View::new(names(&["q"]), &[Vis::Term, Vis::Hidden]),
            View::new(names(&["q"]), &[Vis::Hidden, Vis::Term]),
        ];
        let e = splits(&cx, &v, 2, &StructuralConfig::LINEAR).unwrap_err();
        assert_eq!(
            e.kind,
            ErrorKind::LinearityError {
                var: "q".into(),
                kind: LinearityKind::UsedTwice
            }
        );
    }

    #[test]
    fn split_points_in_order() {
        let d = Telescope::from_types(&["a", "b", "c"], vec![Term::Unit; 3]);
        let s = split_points(&d);
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().map(|(p, _)| p.len()).collect::<Vec<_>>(), [0, 1, 2, 3]);
        assert_eq!(split_points(&Telescope::new()).len(), 1);
    }
}
