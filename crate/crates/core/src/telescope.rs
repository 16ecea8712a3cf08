//! Telescopes over a base context and the operations indexed by them:
//! iterated pair types, reassociation, substitution, lifting, telescopic
//! weakening and projection.
//!
//! Every function here follows one recursive clause per constructor of the
//! telescope, so the results agree with raw de Bruijn shifting only because
//! the syntactic model is strict. The tests check that agreement.

use alloc::vec::Vec;

use crate::kernel::{shift_from, substitute, KernelCtx, KernelSubst, Name, Term};
use crate::lfdc::{
    self, alpha, beta, big_omega, compose, context_map, ell, eta, identity, oplus, oplus_map,
    pair_left, subst_mor, subst_type, terminal, unit_type, CtxIso, CtxMorphism, LfdcError, MorIso,
    Morphism, SemType, StructuralConfig,
};

/// A named entry. Equality ignores the name.
#[derive(Clone, Debug)]
pub struct Binding {
    pub name: Name,
    pub ty: Term,
}

impl PartialEq for Binding {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
    }
}

impl Eq for Binding {}

/// A list of named type annotations, each over the preceding prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemCtx {
    pub entries: Vec<Binding>,
}

/// A context segment whose entries live over a base context followed by the
/// preceding entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Telescope {
    pub entries: Vec<Binding>,
}

macro_rules! list_api {
    ($t:ty) => {
        impl $t {
            pub fn new() -> Self {
                Self::default()
            }

            pub fn from_types(names: &[&str], tys: Vec<Term>) -> Self {
                Self {
                    entries: names
                        .iter()
                        .zip(tys)
                        .map(|(n, ty)| Binding {
                            name: (*n).into(),
                            ty,
                        })
                        .collect(),
                }
            }

            pub fn len(&self) -> usize {
                self.entries.len()
            }

            pub fn is_empty(&self) -> bool {
                self.entries.is_empty()
            }

            pub fn push(&mut self, name: impl Into<Name>, ty: Term) {
                self.entries.push(Binding {
                    name: name.into(),
                    ty,
                });
            }

            pub fn types(&self) -> Vec<Term> {
                self.entries.iter().map(|b| b.ty.clone()).collect()
            }

            pub fn names(&self) -> Vec<Name> {
                self.entries.iter().map(|b| b.name.clone()).collect()
            }
        }
    };
}

list_api!(SemCtx);
list_api!(Telescope);

impl SemCtx {
    pub fn kernel(&self) -> KernelCtx {
        KernelCtx(self.types())
    }

    pub fn extend(&self, tele: &Telescope) -> SemCtx {
        let mut out = self.clone();
        out.entries.extend(tele.entries.iter().cloned());
        out
    }

    /// Splits off the last `n` entries as a telescope.
    pub fn split_tail(&self, n: usize) -> (SemCtx, Telescope) {
        let k = self.len() - n;
        (
            SemCtx {
                entries: self.entries[..k].to_vec(),
            },
            Telescope {
                entries: self.entries[k..].to_vec(),
            },
        )
    }
}

impl Telescope {
    /// `base` followed by this telescope.
    pub fn over(&self, base: &KernelCtx) -> KernelCtx {
        let mut c = base.clone();
        c.0.extend(self.types());
        c
    }

    /// Splits at `k`; the suffix lives over `base` plus the prefix.
    pub fn split_at(&self, k: usize) -> (Telescope, Telescope) {
        (
            Telescope {
                entries: self.entries[..k].to_vec(),
            },
            Telescope {
                entries: self.entries[k..].to_vec(),
            },
        )
    }

    pub fn concat(&self, other: &Telescope) -> Telescope {
        let mut out = self.clone();
        out.entries.extend(other.entries.iter().cloned());
        out
    }

    fn head(&self) -> Option<(SemTypeParts<'_>, Telescope)> {
        let (first, rest) = self.entries.split_first()?;
        Some((
            SemTypeParts(&first.name, &first.ty),
            Telescope {
                entries: rest.to_vec(),
            },
        ))
    }

    fn with_types(&self, tys: Vec<Term>) -> Telescope {
        Telescope {
            entries: self
                .entries
                .iter()
                .zip(tys)
                .map(|(b, ty)| Binding {
                    name: b.name.clone(),
                    ty,
                })
                .collect(),
        }
    }
}

struct SemTypeParts<'a>(&'a Name, &'a Term);

impl SemTypeParts<'_> {
    fn over(&self, base: &KernelCtx) -> SemType {
        SemType {
            ctx: base.clone(),
            body: self.1.clone(),
        }
    }
}

fn cons(name: &Name, ty: Term, rest: Telescope) -> Telescope {
    let mut entries = Vec::with_capacity(rest.len() + 1);
    entries.push(Binding {
        name: name.clone(),
        ty,
    });
    entries.extend(rest.entries);
    Telescope { entries }
}

/// `⟦Δ⟧`: the telescope packed into one right-nested pair type ending in ⊤.
pub fn tele_type(base: &KernelCtx, delta: &Telescope) -> SemType {
    let mut body = Term::Unit;
    for b in delta.entries.iter().rev() {
        body = Term::sigma(b.ty.clone(), body);
    }
    SemType {
        ctx: base.clone(),
        body,
    }
}

/// `⊕_Δ(S)` for `S` over `base, Δ`.
pub fn tele_oplus(base: &KernelCtx, delta: &Telescope, s: &SemType) -> Result<SemType, LfdcError> {
    lfdc::same_ctx(&delta.over(base), &s.ctx, "telescope pair type")?;
    let mut acc = s.clone();
    for k in (0..delta.len()).rev() {
        let ctx = delta.split_at(k).0.over(base);
        let t = SemType {
            ctx,
            body: delta.entries[k].ty.clone(),
        };
        acc = oplus(&t, &acc)?;
    }
    Ok(acc)
}

/// `⊕_Δ(m)` for a morphism over `base, Δ`.
pub fn tele_oplus_map(
    base: &KernelCtx,
    delta: &Telescope,
    m: &Morphism,
) -> Result<Morphism, LfdcError> {
    lfdc::same_ctx(&delta.over(base), m.ctx(), "telescope pair map")?;
    let mut acc = m.clone();
    for k in (0..delta.len()).rev() {
        let t = SemType {
            ctx: delta.split_at(k).0.over(base),
            body: delta.entries[k].ty.clone(),
        };
        acc = oplus_map(&t, &acc)?;
    }
    Ok(acc)
}

/// `f*(Θ)` for `Θ` over `f.target`.
pub fn tele_subst(f: &CtxMorphism, theta: &Telescope) -> Result<Telescope, LfdcError> {
    let Some((first, rest)) = theta.head() else {
        return Ok(Telescope::new());
    };
    let s = first.over(&f.target);
    let fs = subst_type(f, &s)?;
    let tail = tele_subst(&f.lift(&s)?, &rest)?;
    Ok(cons(first.0, fs.body, tail))
}

/// `ω^S(Δ)` for `Δ` over `base` and `S` over `base`.
pub fn tele_weaken(base: &KernelCtx, s: &SemType, delta: &Telescope) -> Result<Telescope, LfdcError> {
    lfdc::same_ctx(base, &s.ctx, "telescope weakening")?;
    let Some((first, rest)) = delta.head() else {
        return Ok(Telescope::new());
    };
    let t = first.over(base);
    let wt = lfdc::omega(s, &t)?;
    Ok(cons(first.0, wt.body, tele_omega(s, &t, &rest)?))
}

/// `Ω^{S,T}(Δ)` for `Δ` over `base•T`, landing over `base•S•ω(T)`.
pub fn tele_omega(s: &SemType, t: &SemType, delta: &Telescope) -> Result<Telescope, LfdcError> {
    let Some((first, rest)) = delta.head() else {
        return Ok(Telescope::new());
    };
    let r = first.over(&t.extended());
    let wr = big_omega(s, t, &r)?;
    // Conjugate the remaining entries through α so that the recursion only
    // ever weakens under a single binder.
    let a = alpha(t, &r)?;
    let pulled = tele_subst(&a.fwd, &rest)?;
    let sum = oplus(t, &r)?;
    let inner = tele_omega(s, &sum, &pulled)?;
    let wt = lfdc::omega(s, t)?;
    let back = alpha(&wt, &wr)?;
    Ok(cons(first.0, wr.body, tele_subst(&back.bwd, &inner)?))
}

/// `•asc^Δ : ⟦base, Δ⟧ ≃ base•⟦Δ⟧`.
pub fn basc(base: &KernelCtx, delta: &Telescope) -> Result<CtxIso, LfdcError> {
    let Some((first, rest)) = delta.head() else {
        return Ok(eta(base)?.inverse());
    };
    let s = first.over(base);
    let inner = basc(&s.extended(), &rest)?;
    let a = alpha(&s, &tele_type(&s.extended(), &rest))?;
    Ok(CtxIso {
        fwd: a.bwd.after(&inner.fwd)?,
        bwd: inner.bwd.after(&a.fwd)?,
    })
}

/// `⊕asc^{Δ|S} : ⊕_Δ(S) ≃ ⊕_{⟦Δ⟧}(((•asc^Δ)⁻¹)*S)`.
pub fn oasc(base: &KernelCtx, delta: &Telescope, s: &SemType) -> Result<MorIso, LfdcError> {
    let Some((first, rest)) = delta.head() else {
        return Ok(ell(s)?.inverse());
    };
    let t = first.over(base);
    let inner = oasc(&t.extended(), &rest, s)?;
    let packed = tele_type(&t.extended(), &rest);
    let b = beta(&t, &packed, &inner.fwd.cod.clone().into_family(&packed)?)?;
    Ok(MorIso {
        fwd: compose(&b.fwd, &oplus_map(&t, &inner.fwd)?)?,
        bwd: compose(&oplus_map(&t, &inner.bwd)?, &b.bwd)?,
    })
}

trait IntoFamily {
    fn into_family(self, over: &SemType) -> Result<SemType, LfdcError>;
}

impl IntoFamily for SemType {
    /// The second component of a pair type `⊕_{over}(R)`, as a type over
    /// `over`'s extension.
    fn into_family(self, over: &SemType) -> Result<SemType, LfdcError> {
        match &self.body {
            Term::Sigma(a, r) if **a == over.body => Ok(SemType {
                ctx: over.extended(),
                body: (**r).clone(),
            }),
            _ => Err(LfdcError::Shape("reassociation of a non-pair type")),
        }
    }
}

/// `↓(s) : ⟦base, Δ⟧ → base•S` for `s : ⟦Δ⟧ → S`.
pub fn down(delta: &Telescope, s: &Morphism) -> Result<CtxMorphism, LfdcError> {
    let base = s.ctx();
    let b = basc(base, delta)?;
    context_map(s)?.after(&b.fwd)
}

/// `⇓(s) : ⟦base, Δ, ↓(s)*Θ⟧ → ⟦base, x:S, Θ⟧`.
pub fn big_down(delta: &Telescope, s: &Morphism, theta: &Telescope) -> Result<CtxMorphism, LfdcError> {
    let base = s.ctx();
    let d = down(delta, s)?;
    let theta_sub = tele_subst(&d, theta)?;
    let src = basc(&delta.over(base), &theta_sub)?;
    let tgt = basc(&s.cod.extended(), theta)?;
    let packed = tele_type(&s.cod.extended(), theta);
    tgt.bwd.after(&d.lift(&packed)?)?.after(&src.fwd)
}

/// `↑^Δ(S)`.
pub fn lift_up(base: &KernelCtx, delta: &Telescope, s: &SemType) -> Result<SemType, LfdcError> {
    let Some((first, rest)) = delta.head() else {
        return Ok(s.clone());
    };
    let t = first.over(base);
    lift_up(&t.extended(), &rest, &lfdc::omega(&t, s)?)
}

/// `↑^Δ(m)`, the functor action of lifting on a morphism.
pub fn lift_up_mor(base: &KernelCtx, delta: &Telescope, m: &Morphism) -> Result<Morphism, LfdcError> {
    let Some((first, rest)) = delta.head() else {
        return Ok(m.clone());
    };
    let t = first.over(base);
    lift_up_mor(&t.extended(), &rest, &lfdc::omega_mor(&t, m)?)
}

/// `↑^Δ(Θ)`: a telescope over `base` lifted past `Δ`.
pub fn lift_tele(base: &KernelCtx, delta: &Telescope, theta: &Telescope) -> Result<Telescope, LfdcError> {
    let Some((first, rest)) = delta.head() else {
        return Ok(theta.clone());
    };
    let t = first.over(base);
    lift_tele(&t.extended(), &rest, &tele_weaken(base, &t, theta)?)
}

/// `⇑^{Δ|S}(T)` for `T` over `base•S`.
pub fn big_lift(
    base: &KernelCtx,
    delta: &Telescope,
    s: &SemType,
    t: &SemType,
) -> Result<SemType, LfdcError> {
    let Some((first, rest)) = delta.head() else {
        return Ok(t.clone());
    };
    let u = first.over(base);
    let ws = lfdc::omega(&u, s)?;
    big_lift(&u.extended(), &rest, &ws, &big_omega(&u, s, t)?)
}

/// `W^{S|Δ}(X)` for `X` over `base, Δ`, landing over `base, x:S, ω(Δ)`.
pub fn tele_w(base: &KernelCtx, s: &SemType, delta: &Telescope, x: &SemType) -> Result<SemType, LfdcError> {
    let (unpack, omega_d, pack) = w_parts(base, s, delta)?;
    let y = subst_type(&unpack.bwd, x)?;
    let wy = big_omega(s, &tele_type(base, delta), &y)?;
    debug_assert_eq!(wy.ctx, omega_d.extended());
    subst_type(&pack.fwd, &wy)
}

/// `W^{S|Δ}` on a morphism over `base, Δ`.
pub fn tele_w_mor(base: &KernelCtx, s: &SemType, delta: &Telescope, m: &Morphism) -> Result<Morphism, LfdcError> {
    let (unpack, _, pack) = w_parts(base, s, delta)?;
    let y = subst_mor(&unpack.bwd, m)?;
    let packed = tele_type(base, delta);
    let wy = Morphism::new(
        big_omega(s, &packed, &y.dom)?,
        big_omega(s, &packed, &y.cod)?,
        shift_from(&y.body, 2, 1),
    )?;
    subst_mor(&pack.fwd, &wy)
}

/// `W^{S|Δ}(Θ)` for a telescope over `base, Δ`.
pub fn tele_w_tele(
    base: &KernelCtx,
    s: &SemType,
    delta: &Telescope,
    theta: &Telescope,
) -> Result<Telescope, LfdcError> {
    let mut out = Telescope::new();
    let mut d = delta.clone();
    for b in &theta.entries {
        let x = SemType {
            ctx: d.over(base),
            body: b.ty.clone(),
        };
        out.push(b.name.clone(), tele_w(base, s, &d, &x)?.body);
        d.entries.push(b.clone());
    }
    Ok(out)
}

fn w_parts(
    base: &KernelCtx,
    s: &SemType,
    delta: &Telescope,
) -> Result<(CtxIso, SemType, CtxIso), LfdcError> {
    let unpack = basc(base, delta)?;
    let omega_d = lfdc::omega(s, &tele_type(base, delta))?;
    let wdelta = tele_weaken(base, s, delta)?;
    let pack = basc(&s.extended(), &wdelta)?;
    Ok((unpack, omega_d, pack))
}

/// `proj^{Δ|S} : ⊕_Δ(↑^Δ S) → S`, discarding the telescope. Needs weakening.
pub fn proj(
    cfg: &StructuralConfig,
    base: &KernelCtx,
    delta: &Telescope,
    s: &SemType,
) -> Result<Morphism, LfdcError> {
    if delta.is_empty() {
        return identity(s);
    }
    let (init, last) = delta.split_at(delta.len() - 1);
    let under = init.over(base);
    let t = SemType {
        ctx: under.clone(),
        body: last.entries[0].ty.clone(),
    };
    let r = lift_up(base, &init, s)?;
    let top = terminal(cfg, &t)?;
    let one = unit_type(&under);
    let eta_r = subst_type(&eta(&under)?.fwd, &r)?;
    debug_assert_eq!(one.extended(), eta_r.ctx);
    let drop = compose(&ell(&r)?.fwd, &pair_left(&top, &eta_r)?)?;
    compose(&proj(cfg, base, &init, s)?, &tele_oplus_map(base, &init, &drop)?)
}

/// Applies `f` to every entry of `theta` through the kernel directly.
pub fn raw_subst(theta: &Telescope, f: &KernelSubst) -> Result<Telescope, LfdcError> {
    let mut s = f.clone();
    let mut tys = Vec::new();
    for b in &theta.entries {
        tys.push(substitute(&b.ty, &s)?);
        s = s.extend();
    }
    Ok(theta.with_types(tys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::normalize_type;

    fn p() -> Term {
        Term::constant("P", Term::Univ)
    }

    fn fam() -> Term {
        Term::constant("F", Term::pi(p(), Term::Univ))
    }

    /// `x:P, y:F x, z:P` over a base `g:P`.
    fn sample() -> (KernelCtx, Telescope) {
        let base = KernelCtx(alloc::vec![p()]);
        let tele = Telescope::from_types(
            &["x", "y", "z"],
            alloc::vec![p(), Term::app(fam(), Term::Var(0)), p()],
        );
        (base, tele)
    }

    #[test]
    fn empty_telescope_is_unit() {
        let base = KernelCtx::empty();
        assert_eq!(tele_type(&base, &Telescope::new()), unit_type(&base));
    }

    #[test]
    fn singleton_telescope_type() {
        let t = Telescope::from_types(&["x"], alloc::vec![Term::Unit]);
        assert_eq!(
            tele_type(&KernelCtx::empty(), &t).body,
            Term::sigma(Term::Unit, Term::Unit)
        );
    }

    #[test]
    fn tele_oplus_of_empty_is_identity() {
        let base = KernelCtx(alloc::vec![p()]);
        let s = SemType::new(base.clone(), p()).unwrap();
        assert_eq!(tele_oplus(&base, &Telescope::new(), &s).unwrap(), s);
    }

    #[test]
    fn weaken_matches_shift() {
        let (base, tele) = sample();
        let s = SemType::new(base.clone(), Term::prod(p(), p())).unwrap();
        let w = tele_weaken(&base, &s, &tele).unwrap();
        for (i, b) in tele.entries.iter().enumerate() {
            assert_eq!(w.entries[i].ty, shift_from(&b.ty, i, 1));
        }
        assert!(tele_weaken(&base, &s, &Telescope::new()).unwrap().is_empty());
    }

    #[test]
    fn basc_base_case_is_eta_inverse() {
        let base = KernelCtx(alloc::vec![p()]);
        assert_eq!(basc(&base, &Telescope::new()).unwrap(), eta(&base).unwrap().inverse());
    }

    #[test]
    fn reassociations_roundtrip() {
        let (base, tele) = sample();
        let b = basc(&base, &tele).unwrap();
        assert_eq!(b.fwd.after(&b.bwd).unwrap(), CtxMorphism::identity(&b.bwd.source).unwrap());
        assert_eq!(b.bwd.after(&b.fwd).unwrap(), CtxMorphism::identity(&b.fwd.source).unwrap());
        let s = SemType::new(tele.over(&base), Term::app(fam(), Term::Var(2))).unwrap();
        let o = oasc(&base, &tele, &s).unwrap();
        assert_eq!(compose(&o.bwd, &o.fwd).unwrap(), identity(&o.fwd.dom).unwrap());
        assert_eq!(compose(&o.fwd, &o.bwd).unwrap(), identity(&o.bwd.dom).unwrap());
        assert_eq!(o.fwd.dom, tele_oplus(&base, &tele, &s).unwrap());
    }

    #[test]
    fn oasc_base_case_is_ell_inverse() {
        let base = KernelCtx::empty();
        let s = SemType::new(base.clone(), p()).unwrap();
        assert_eq!(oasc(&base, &Telescope::new(), &s).unwrap(), ell(&s).unwrap().inverse());
    }

    #[test]
    fn lifts_match_shift() {
        let (base, tele) = sample();
        let s = SemType::new(base.clone(), Term::app(fam(), Term::Var(0))).unwrap();
        assert_eq!(lift_up(&base, &Telescope::new(), &s).unwrap(), s);
        assert_eq!(lift_up(&base, &tele, &s).unwrap().body, crate::kernel::shift(&s.body, 3));
        let one = tele.split_at(1).0;
        let ws = lfdc::omega(&SemType::new(base.clone(), p()).unwrap(), &s).unwrap();
        assert_eq!(lift_up(&base, &one, &s).unwrap(), ws);
        let t = SemType::new(s.extended(), Term::app(fam(), Term::Var(1))).unwrap();
        assert_eq!(
            big_lift(&base, &tele, &s, &t).unwrap().body,
            shift_from(&t.body, 1, 3)
        );
    }

    #[test]
    fn telescopic_weakening_matches_shift() {
        let (base, tele) = sample();
        let s = SemType::new(base.clone(), Term::Unit).unwrap();
        let x = SemType::new(tele.over(&base), Term::app(fam(), Term::Var(2))).unwrap();
        let w = tele_w(&base, &s, &tele, &x).unwrap();
        let expect = normalize_type(&w.ctx, &shift_from(&x.body, 3, 1)).unwrap();
        assert_eq!(w.body, expect);
    }

    #[test]
    fn down_of_identity_on_singleton() {
        let base = KernelCtx(alloc::vec![p()]);
        let tele = Telescope::from_types(&["x"], alloc::vec![p()]);
        let packed = tele_type(&base, &tele);
        let s = SemType::new(base.clone(), p()).unwrap();
        let first = Morphism::new(packed, s, Term::fst(Term::Var(0))).unwrap();
        let d = down(&tele, &first).unwrap();
        assert_eq!(d, CtxMorphism::identity(&tele.over(&base)).unwrap());
    }

    #[test]
    fn down_of_unit_on_empty_inserts_tt() {
        let base = KernelCtx(alloc::vec![p()]);
        let one = unit_type(&base);
        let id = identity(&one).unwrap();
        let d = down(&Telescope::new(), &id).unwrap();
        assert_eq!(d.subst.0, alloc::vec![Term::Var(0), Term::Tt]);
    }

    #[test]
    fn big_down_commutes_with_substitution() {
        let base = KernelCtx(alloc::vec![p()]);
        let tele = Telescope::from_types(&["x"], alloc::vec![p()]);
        let s = SemType::new(base.clone(), p()).unwrap();
        let first = Morphism::new(tele_type(&base, &tele), s.clone(), Term::fst(Term::Var(0))).unwrap();
        let theta = Telescope::from_types(&["y"], alloc::vec![Term::app(fam(), Term::Var(0))]);
        let bd = big_down(&tele, &first, &theta).unwrap();
        let d = down(&tele, &first).unwrap();
        let sub = tele_subst(&d, &theta).unwrap();
        assert_eq!(bd.source, sub.over(&tele.over(&base)));
        assert_eq!(bd, CtxMorphism::identity(&bd.source).unwrap());
        // With Θ empty, ⇓ is ↓ conjugated by the unit reassociation.
        let e = big_down(&tele, &first, &Telescope::new()).unwrap();
        assert_eq!(e, d);
    }

    #[test]
    fn projection_base_and_gating() {
        let (base, tele) = sample();
        let s = SemType::new(base.clone(), p()).unwrap();
        let cfg = StructuralConfig::CARTESIAN;
        assert_eq!(proj(&cfg, &base, &Telescope::new(), &s).unwrap(), identity(&s).unwrap());
        let pr = proj(&cfg, &base, &tele, &s).unwrap();
        let lifted = lift_up(&base, &tele, &s).unwrap();
        assert_eq!(pr.dom, tele_oplus(&base, &tele, &lifted).unwrap());
        pr.validate().unwrap();
        assert!(proj(&StructuralConfig::ORDERED, &base, &tele, &s).is_err());
    }
}
