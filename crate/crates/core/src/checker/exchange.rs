//! Reorderings of a term-level context reachable by swapping neighbours
//! that do not depend on each other.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::kernel::{occurs_free, strengthen, KernelCtx, Name, Term};
use crate::lfdc::{alpha, context_map, sigma, CtxIso, CtxMorphism, LfdcError, SemType, StructuralConfig};
use crate::telescope::{SemCtx, Telescope};

/// One reordering of `Δ` together with `⟦Γ, Δ⟧ ≃ ⟦Γ, Δ'⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    pub delta: Telescope,
    /// `order[i]` is the original position of the entry now at `i`.
    pub order: Vec<usize>,
    /// `fwd` runs from the original context to the reordered one.
    pub witness: CtxIso,
}

/// The swap of two adjacent independent entries `S, T` over `prefix`:
/// `α⁻¹ ∘ •(σ) ∘ α`.
fn swap(prefix: &KernelCtx, s: &Term, t: &Term) -> Result<CtxIso, LfdcError> {
    let t0 = strengthen(t, 0, 1).ok_or(LfdcError::Shape("swap of dependent entries"))?;
    let s_ty = SemType::new(prefix.clone(), s.clone())?;
    let t_dep = SemType::new(s_ty.extended(), t.clone())?;
    let t_ty = SemType::new(prefix.clone(), t0)?;
    let s_dep = SemType::new(t_ty.extended(), crate::kernel::shift(s, 1))?;
    let a1 = alpha(&s_ty, &t_dep)?;
    let sw = sigma(&s_ty, &t_ty)?;
    let a2 = alpha(&t_ty, &s_dep)?;
    Ok(CtxIso {
        fwd: a2.fwd.after(&context_map(&sw.fwd)?)?.after(&a1.bwd)?,
        bwd: a1.fwd.after(&context_map(&sw.bwd)?)?.after(&a2.bwd)?,
    })
}

/// Extends an isomorphism of contexts over the entries `rest`, each given
/// over the source side.
fn lift_over(mut iso: CtxIso, rest: &[Term]) -> Result<CtxIso, LfdcError> {
    for r in rest {
        let r = SemType::new(iso.fwd.source.clone(), r.clone())?;
        let bwd = iso.bwd.lift(&r)?;
        let moved = crate::lfdc::subst_type(&iso.bwd, &r)?;
        let fwd = iso.fwd.lift(&moved)?;
        iso = CtxIso { fwd, bwd };
    }
    Ok(iso)
}

/// Breadth-first closure of `Δ` under swaps of adjacent entries whose later
/// type does not mention the earlier one. The original comes first. With
/// exchange unavailable only the original is returned.
pub fn exchange_closure(g: &SemCtx, d: &Telescope, cfg: &StructuralConfig) -> Result<Vec<Permutation>, LfdcError> {
    let flat = g.extend(d).kernel();
    let k = g.len();
    let start = Permutation {
        delta: d.clone(),
        order: (0..d.len()).collect(),
        witness: CtxIso {
            fwd: CtxMorphism::identity(&flat)?,
            bwd: CtxMorphism::identity(&flat)?,
        },
    };
    let mut out = Vec::new();
    let mut seen: Vec<(Vec<Name>, Vec<Term>)> = Vec::from([(d.names(), d.types())]);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        if cfg.exchange_available() {
            let ctx = g.extend(&p.delta).kernel();
            for i in 0..p.delta.len().saturating_sub(1) {
                let (s, t) = (&p.delta.entries[i].ty, &p.delta.entries[i + 1].ty);
                if occurs_free(t, 0) {
                    continue;
                }
                let prefix = KernelCtx(ctx.0[..k + i].to_vec());
                let rest: Vec<Term> = ctx.0[k + i + 2..].to_vec();
                let step = lift_over(swap(&prefix, s, t)?, &rest)?;
                // Later entries are re-expressed through the swap.
                let mut names = p.delta.names();
                names.swap(i, i + 1);
                let types = step.fwd.target.0[k..].to_vec();
                if seen.iter().any(|(n, t)| *n == names && *t == types) {
                    continue;
                }
                seen.push((names.clone(), types.clone()));
                let mut delta = Telescope::new();
                for (n, t) in names.into_iter().zip(types) {
                    delta.push(n, t);
                }
                let mut order = p.order.clone();
                order.swap(i, i + 1);
                queue.push_back(Permutation {
                    delta,
                    order,
                    witness: CtxIso {
                        fwd: step.fwd.after(&p.witness.fwd)?,
                        bwd: p.witness.bwd.after(&step.bwd)?,
                    },
                });
            }
        }
        out.push(p);
    }
    Ok(out)
}
