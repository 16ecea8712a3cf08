//! Property suites over generated inputs, each returning a report instead of
//! panicking so that callers can print a summary line.

use std::fmt;

use lfdc_core::checker::syntax::{Ctx, Subst};
use lfdc_core::checker::{self, CheckError, Intro, Ty};
use lfdc_core::kernel::{
    alpha_equal, canonical_form, check as kcheck, compose, normalize_at, shift, substitute, HeadForm, KernelCtx,
    KernelSubst, Term, TypingCtx,
};
use lfdc_core::lfdc::{
    big_omega, context_map, fun_l, fun_r, omega, oplus, pair_left, prod_ty, subst_mor, subst_type, unit_type, CtxMorphism,
    Morphism, SemType, StructuralConfig,
};
use lfdc_core::signature::Signature;
use lfdc_core::telescope::{
    big_down, down, oasc, tele_oplus_map, tele_subst, tele_type, tele_w_mor, SemCtx, Telescope,
};
use lfdc_core::lfdc;

use crate::kernel_gen::{HeadTag, KernelGen};
use crate::oracle::{flat, nf, replace, shift_above};
use crate::surface::{self, Judgment, SurfaceGen};

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Report) {
        self.cases += other.cases;
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cases, {} checks, {} failures", self.cases, self.checks, self.failures.len())
    }
}

fn tag_of(h: &HeadForm) -> Option<HeadTag> {
    Some(match h {
        HeadForm::Unit => HeadTag::Unit,
        HeadForm::Pair(..) => HeadTag::Pair,
        HeadForm::FunL(..) => HeadTag::FunL,
        HeadForm::FunR(..) => HeadTag::FunR,
        HeadForm::All(..) => HeadTag::All,
        HeadForm::Prod(..) => HeadTag::Prod,
        HeadForm::Atom(p, _) => match &**p {
            "P" => HeadTag::Atom("P"),
            "Q" => HeadTag::Atom("Q"),
            "F" => HeadTag::Atom("F"),
            _ => return None,
        },
        HeadForm::Universe | HeadForm::Neutral(_) => return None,
    })
}

/// Normalization idempotence and type preservation, the equivalence laws
/// of α-equality on normal forms, and head preservation of canonical forms,
/// over `n` generated terms.
pub fn kernel_properties(seed: u64, n: usize) -> Report {
    let mut g = KernelGen::new(seed);
    let mut r = Report::default();
    let mut prev: Option<(KernelCtx, Term, Term)> = None;
    for case in 0..n {
        let len = case % 4;
        let ctx = g.ctx(len, 1);
        let (ty, head) = g.ty(&ctx, 2);
        let t = g.term(&ctx, &ty, 3);
        r.cases += 1;
        let tc = TypingCtx::new(&ctx).expect("generated context");
        let tyv = tc.eval(&ty).expect("generated type");
        r.expect(kcheck(&tc, &t, &tyv).is_ok(), || format!("generated term is ill typed: {t:?}"));
        let n1 = normalize_at(&ctx, &t, &ty).expect("normalizes");
        let n2 = normalize_at(&ctx, &n1, &ty).expect("normalizes");
        r.expect(n1 == n2, || format!("normalization is not idempotent on {t:?}"));
        r.expect(kcheck(&tc, &n1, &tyv).is_ok(), || format!("normal form is ill typed: {n1:?}"));

        let h = canonical_form(&ctx, &ty).expect("well formed");
        r.expect(tag_of(&h) == Some(head), || format!("head {h:?} of {ty:?}, generated as {head:?}"));
        // A β-redex around the type keeps its head.
        let wrapped = Term::app(Term::ann(Term::lam(shift(&ty, 1)), Term::pi(Term::Unit, Term::Univ)), Term::Tt);
        let hw = canonical_form(&ctx, &wrapped).expect("well formed");
        r.expect(hw == h, || format!("redex changed the head of {ty:?}"));

        // Reflexivity, and agreement with judgmental equality: a redex
        // around `t` has the same normal form.
        r.expect(alpha_equal(&n1, &n1), || "α-equality is not reflexive".into());
        let beta = Term::app(Term::ann(Term::lam(shift(&t, 1)), Term::pi(Term::Unit, shift(&ty, 1))), Term::Tt);
        let nb = normalize_at(&ctx, &beta, &ty).expect("normalizes");
        r.expect(alpha_equal(&n1, &nb), || format!("β-redex around {t:?} has a different normal form"));

        // Symmetry and transitivity over a second and third term of the same
        // type.
        let u = g.term(&ctx, &ty, 2);
        let nu = normalize_at(&ctx, &u, &ty).expect("normalizes");
        r.expect(alpha_equal(&n1, &nu) == alpha_equal(&nu, &n1), || "α-equality is not symmetric".into());
        let v = if case % 2 == 0 { u.clone() } else { g.term(&ctx, &ty, 2) };
        let nv = normalize_at(&ctx, &v, &ty).expect("normalizes");
        if alpha_equal(&n1, &nu) && alpha_equal(&nu, &nv) {
            r.expect(alpha_equal(&n1, &nv), || "α-equality is not transitive".into());
        }
        if let Some((pctx, pty, pn)) = &prev {
            if *pctx == ctx && *pty == ty {
                r.expect(alpha_equal(&n1, pn) == (n1 == *pn), || "α-equality differs from identity".into());
            }
        }
        prev = Some((ctx, ty, n1));
    }
    let sigma = Term::sigma(Term::Unit, Term::Unit);
    let prod = Term::prod(Term::Unit, Term::Unit);
    r.expect(!alpha_equal(&sigma, &prod), || "Σ(⊤, ⊤) equals ⊤ × ⊤".into());
    r
}

fn sem(ctx: &KernelCtx, body: Term) -> SemType {
    SemType::new(ctx.clone(), body).expect("generated type")
}

/// Strict preservation of identities and composites by substitution, and
/// the Beck-Chevalley and weakening isomorphisms holding as identities, over
/// `n` generated instances.
pub fn strictness(seed: u64, n: usize) -> Report {
    let mut g = KernelGen::new(seed);
    let mut r = Report::default();
    for case in 0..n {
        r.cases += 1;
        let theta = g.ctx(case % 3, 1);
        let delta = g.ctx((case / 3) % 3, 1);
        let gamma = g.ctx((case / 9) % 3, 1);
        let gs = g.subst(&delta, &theta, 1);
        let fs = g.subst(&gamma, &delta, 1);
        let gm = CtxMorphism::new(delta.clone(), theta.clone(), gs.clone()).expect("generated substitution");
        let fm = CtxMorphism::new(gamma.clone(), delta.clone(), fs.clone()).expect("generated substitution");

        let (s_raw, _) = g.ty(&theta, 2);
        let (t_raw, _) = g.ty(&theta, 2);
        let term = g.term(&theta, &s_raw, 2);
        let s = sem(&theta, s_raw);

        // Identities, exactly.
        let id = KernelSubst::identity(theta.len());
        r.expect(substitute(&term, &id).unwrap() == term, || format!("identity substitution moved {term:?}"));
        let idm = CtxMorphism::identity(&theta).unwrap();
        r.expect(subst_type(&idm, &s).unwrap() == s, || "identity substitution moved a type".into());

        // Composites, exactly.
        let lhs = substitute(&substitute(&term, &gs).unwrap(), &fs).unwrap();
        let rhs = substitute(&term, &compose(&fs, &gs).unwrap()).unwrap();
        r.expect(lhs == rhs, || format!("composite law fails on {term:?}"));
        let both = gm.after(&fm).unwrap();
        let twice = subst_type(&fm, &subst_type(&gm, &s).unwrap()).unwrap();
        r.expect(twice == subst_type(&both, &s).unwrap(), || "composite law fails on a type".into());
        // Brute force: substituted normal forms agree with normal forms of
        // the raw substitution.
        let direct = normalize_at(&gamma, &rhs, &substitute(&substitute(&s.body, &gs).unwrap(), &fs).unwrap()).unwrap();
        let via = normalize_at(&gamma, &lhs, &twice.body).unwrap();
        r.expect(direct == via, || "composite law fails after normalization".into());

        let m = {
            let (cod, _) = g.ty(&theta, 1);
            let cod = sem(&theta, cod);
            let body = g.term(&s.extended(), &shift(&cod.body, 1), 2);
            Morphism::new(s.clone(), cod, body).unwrap()
        };
        let mm = subst_mor(&fm, &subst_mor(&gm, &m).unwrap()).unwrap();
        r.expect(mm == subst_mor(&both, &m).unwrap(), || "composite law fails on a morphism".into());
        r.expect(subst_mor(&idm, &m).unwrap() == m, || "identity substitution moved a morphism".into());

        // γ and δ.
        let (tb, _) = g.ty(&s.extended(), 1);
        let t_dep = sem(&s.extended(), tb);
        let lhs = subst_type(&gm, &oplus(&s, &t_dep).unwrap()).unwrap();
        let rhs = oplus(&subst_type(&gm, &s).unwrap(), &subst_type(&gm.lift(&s).unwrap(), &t_dep).unwrap()).unwrap();
        r.expect(lhs == rhs, || "γ is not an identity".into());
        r.expect(subst_type(&gm, &unit_type(&theta)).unwrap() == unit_type(&delta), || "δ is not an identity".into());

        // The other type formers commute with substitution on the nose.
        let t = sem(&theta, t_raw);
        for (name, former) in [
            ("⫽", fun_l as fn(&SemType, &SemType) -> Result<SemType, lfdc::LfdcError>),
            ("⑊", fun_r),
            ("×", prod_ty),
        ] {
            let lhs = subst_type(&gm, &former(&s, &t).unwrap()).unwrap();
            let rhs = former(&subst_type(&gm, &s).unwrap(), &subst_type(&gm, &t).unwrap()).unwrap();
            r.expect(lhs == rhs, || format!("substitution does not commute with {name}"));
            let lhs = omega(&s, &former(&s, &t).unwrap()).unwrap();
            let rhs = former(&omega(&s, &s).unwrap(), &omega(&s, &t).unwrap()).unwrap();
            r.expect(lhs == rhs, || format!("weakening does not commute with {name}"));
        }

        // ζ and θ, for `h : A → S'` over Θ.
        let (a_raw, _) = g.ty(&theta, 1);
        let (s2_raw, _) = g.ty(&theta, 1);
        let a = sem(&theta, a_raw);
        let s2 = sem(&theta, s2_raw);
        let h_body = g.term(&a.extended(), &shift(&s2.body, 1), 1);
        let h = Morphism::new(a.clone(), s2.clone(), h_body).unwrap();
        let ch = context_map(&h).unwrap();
        let zeta_l = subst_type(&ch, &omega(&s2, &t).unwrap()).unwrap();
        r.expect(zeta_l == omega(&a, &t).unwrap(), || "ζ is not an identity".into());
        let (rb, _) = g.ty(&t.extended(), 1);
        let rr = sem(&t.extended(), rb);
        let lifted = ch.lift(&omega(&s2, &t).unwrap()).unwrap();
        let theta_l = subst_type(&lifted, &big_omega(&s2, &t, &rr).unwrap()).unwrap();
        r.expect(theta_l == big_omega(&a, &t, &rr).unwrap(), || "θ is not an identity".into());

        // ξ and χ.
        r.expect(
            omega(&s, &unit_type(&theta)).unwrap() == unit_type(&s.extended()),
            || "ξ is not an identity".into(),
        );
        let chi_l = omega(&s, &oplus(&t, &rr).unwrap()).unwrap();
        let chi_r = oplus(&omega(&s, &t).unwrap(), &big_omega(&s, &t, &rr).unwrap()).unwrap();
        r.expect(chi_l == chi_r, || "χ is not an identity".into());
    }
    r
}

/// A generated judgment together with its elaboration.
pub struct Elaborated {
    pub judgment: Judgment,
    pub gamma: SemCtx,
    pub delta: Telescope,
    pub ty: SemType,
    pub denotation: Morphism,
}

pub fn signature() -> Signature {
    Signature::from_str(surface::SIGNATURE, &StructuralConfig::ORDERED).expect("test signature loads")
}

pub fn elaborate(j: &Judgment, sig: &Signature, cfg: &StructuralConfig) -> Result<Elaborated, CheckError> {
    let (gamma, delta) = checker::form_judgment_context(&j.gamma, &j.delta, sig, cfg)?;
    let ty = checker::form_type(&gamma, &j.ty, sig, cfg)?;
    let denotation = checker::check(&gamma, &delta, &ty, &j.term, sig, cfg)?;
    Ok(Elaborated {
        judgment: j.clone(),
        gamma,
        delta,
        ty,
        denotation,
    })
}

/// `n` derivable judgments with terms of depth at most 5, and how many
/// candidates were drawn to find them.
pub fn corpus(seed: u64, n: usize, sig: &Signature, cfg: &StructuralConfig) -> (Vec<Elaborated>, usize) {
    let mut g = SurfaceGen::new(seed);
    let mut out = Vec::new();
    let mut drawn = 0;
    while out.len() < n {
        drawn += 1;
        let j = g.judgment(5);
        assert!(surface::depth(&j.term) <= 5);
        if let Ok(e) = elaborate(&j, sig, cfg) {
            out.push(e);
        }
    }
    (out, drawn)
}

/// Use counts in the derivations of `n` generated judgments: every
/// term-level entry of every checking or inference node is consumed exactly
/// once. Meant for configurations without weakening and contraction.
pub fn linearity(seed: u64, n: usize, cfg: &StructuralConfig) -> Report {
    let sig = signature();
    let (corpus, _) = corpus(seed, n, &sig, cfg);
    let mut r = Report::default();
    for e in &corpus {
        r.cases += 1;
        let d = checker::check_derivation(&e.gamma, &e.delta, &e.ty, &e.judgment.term, &sig, cfg);
        match d {
            Ok((_, d)) => {
                let v = d.linearity_violations();
                r.expect(v.is_empty(), || format!("{}: use counts {v:?}", e.judgment));
            }
            Err(err) => r.expect(false, || format!("{}: {err}", e.judgment)),
        }
    }
    r
}

/// Inserting a fresh type-level variable at every position of `Γ`.
pub fn weakening(seed: u64, n: usize, cfg: &StructuralConfig) -> Report {
    let sig = signature();
    let (corpus, _) = corpus(seed, n, &sig, cfg);
    let mut g = SurfaceGen::new(seed ^ 0x77);
    let mut r = Report::default();
    for e in &corpus {
        r.cases += 1;
        let j = &e.judgment;
        for i in 0..=j.gamma.0.len() {
            let s = g.closed_type();
            let w = g.name("w");
            let mut gamma = j.gamma.0.clone();
            gamma.insert(i, (w, s.clone()));
            let weak = Judgment {
                gamma: Ctx(gamma),
                ..j.clone()
            };
            let got = match elaborate(&weak, &sig, cfg) {
                Ok(x) => x,
                Err(err) => {
                    r.expect(false, || format!("{weak} is not derivable: {err}"));
                    continue;
                }
            };
            let (g1, g2) = e.gamma.split_tail(j.gamma.0.len() - i);
            let s_sem = checker::form_type(&g1, &s, &sig, cfg).expect("closed type");
            let want = tele_w_mor(&g1.kernel(), &s_sem, &g2, &e.denotation).expect("weakening of the denotation");
            r.expect(got.denotation == want, || {
                format!("{weak}: denotation differs from the weakened original")
            });
            // Flat oracle: weakening is a shift past the entries after the
            // inserted one.
            let d = j.delta.0.len();
            let (_, body, _) = flat(&e.denotation, d);
            let (ctx2, body2, ty2) = flat(&got.denotation, d);
            let shifted = nf(&ctx2, &shift_above(&body, g2.len() + d, 1), &ty2);
            r.expect(shifted == body2, || format!("{weak}: flat denotation is not a shift of the original"));
        }
    }
    r
}

/// Term-level and type-level substitution of generated elimination forms
/// into generated judgments, `n` pairs of each kind where the judgment has
/// a variable of that kind.
pub fn substitution(seed: u64, n: usize, cfg: &StructuralConfig) -> Report {
    let sig = signature();
    let mut g = SurfaceGen::new(seed ^ 0x55);
    let mut r = Report::default();
    let mut term_pairs = 0;
    let mut type_pairs = 0;
    let mut round = 0u64;
    while term_pairs < n || type_pairs < n {
        let (corpus, _) = corpus(seed.wrapping_add(round), 64, &sig, cfg);
        round += 1;
        for e in &corpus {
            if term_pairs < n && !e.judgment.delta.0.is_empty() {
                let k = rand::Rng::gen_range(g.rng(), 0..e.judgment.delta.0.len());
                let mut one = term_level(&mut g, e, k, &sig, cfg);
                one.cases = 1;
                r.merge(one);
                term_pairs += 1;
            }
            if type_pairs < n && !e.judgment.gamma.0.is_empty() {
                let k = rand::Rng::gen_range(g.rng(), 0..e.judgment.gamma.0.len());
                let mut one = type_level(&mut g, e, k, &sig, cfg);
                one.cases = 1;
                r.merge(one);
                type_pairs += 1;
            }
        }
    }
    r
}

/// `Γ ⫶ Δ₁, x:S, Φ ⊢ t` and `Γ, Δ₁ ⫶ Θ ⊢ e ∈ S` give
/// `Γ ⫶ Δ₁, Θ, ⟦e⟧*(Φ) ⊢ t[e/x]` with denotation `⟦t⟧ ∘ ⊕_{Δ₁}(⟦e⟧)`.
fn term_level(g: &mut SurfaceGen, e: &Elaborated, k: usize, sig: &Signature, cfg: &StructuralConfig) -> Report {
    let mut r = Report::default();
    let j = &e.judgment;
    let (x, s) = j.delta.0[k].clone();
    let mut outer = j.gamma.0.clone();
    outer.extend(j.delta.0[..k].iter().cloned());
    let (theta_s, sub) = g.substitutable(&outer, &s);
    let t2 = j.term.subst(&x, &sub);
    let what = || format!("{j} with {x} := {sub}");
    let (ge, theta) = match checker::form_judgment_context(&Ctx(outer), &Ctx(theta_s), sig, cfg) {
        Ok(v) => v,
        Err(err) => {
            r.expect(false, || format!("{}: context of the substituted term: {err}", what()));
            return r;
        }
    };
    let (se, me) = match checker::infer(&ge, &theta, &sub, sig, cfg) {
        Ok(v) => v,
        Err(err) => {
            r.expect(false, || format!("{}: substituted term does not infer: {err}", what()));
            return r;
        }
    };
    let (d1, rest) = e.delta.split_at(k);
    let phi = rest.split_at(1).1;
    r.expect(se.body == rest.entries[0].ty, || format!("{}: substituted term has the wrong type", what()));
    let dn = down(&theta, &me).expect("↓");
    let ephi = tele_subst(&dn, &phi).expect("substituted telescope");
    let newd = d1.concat(&theta).concat(&ephi);
    let got = match checker::check(&e.gamma, &newd, &e.ty, &t2, sig, cfg) {
        Ok(m) => m,
        Err(err) => {
            r.expect(false, || format!("{}: {t2} does not re-check: {err}", what()));
            return r;
        }
    };
    // The displayed denotation.
    let base = e.gamma.kernel();
    let over = d1.over(&base);
    let fam = tele_type(&se.extended(), &phi);
    let pl = pair_left(&me, &fam).expect("pairing map");
    let oa = oasc(&over, &theta, &tele_type(&theta.over(&over), &ephi)).expect("⊕asc");
    let want = lfdc::compose(&pl, &oa.fwd)
        .and_then(|mid| tele_oplus_map(&base, &d1, &mid))
        .and_then(|outer| lfdc::compose(&e.denotation, &outer));
    match want {
        Ok(w) => {
            let same = normalize_at(&w.dom.extended(), &w.body, &shift(&w.cod.body, 1)).ok()
                == Some(got.body.clone())
                && w.cod == got.cod
                && SemType::new(base.clone(), w.dom.body.clone()).ok()
                    == SemType::new(base.clone(), got.dom.body.clone()).ok();
            r.expect(same, || format!("{}: denotation differs from ⟦t⟧ ∘ ⊕(⟦e⟧)", what()));
        }
        Err(err) => r.expect(false, || format!("{}: composite denotation: {err}", what())),
    }
    // Flat oracle: plain substitution of the unpacked denotation of `e`.
    let (_, body, _) = flat(&e.denotation, e.delta.len());
    let (_, ebody, _) = flat(&me, theta.len());
    let (ctx2, body2, ty2) = flat(&got, newd.len());
    let replaced = nf(&ctx2, &replace(&body, phi.len(), &ebody, theta.len()), &ty2);
    r.expect(replaced == body2, || format!("{}: flat denotation is not the substitution instance", what()));
    r
}

/// `Γ₁, x:S, Θ ⫶ Φ ⊢ T ∋ t` and `Γ₁ ⫶ Δ ⊢ e ∈ S` give
/// `Γ₁, Δ, ⟦e⟧*(Θ) ⫶ ⇓(⟦e⟧)*(Φ) ⊢ ⇓(⟦e⟧)*(T) ∋ t[e/x]` with denotation
/// `⇓(⟦e⟧)*(⟦t⟧)`.
fn type_level(g: &mut SurfaceGen, e: &Elaborated, k: usize, sig: &Signature, cfg: &StructuralConfig) -> Report {
    let mut r = Report::default();
    let j = &e.judgment;
    let (x, s) = j.gamma.0[k].clone();
    let outer = j.gamma.0[..k].to_vec();
    let (delta_s, sub) = g.substitutable(&outer, &s);
    let t2: Intro = j.term.subst(&x, &sub);
    let ty2: Ty = j.ty.subst(&x, &sub);
    let what = || format!("{j} with {x} := {sub}");
    let (g1, de) = match checker::form_judgment_context(&Ctx(outer), &Ctx(delta_s), sig, cfg) {
        Ok(v) => v,
        Err(err) => {
            r.expect(false, || format!("{}: context of the substituted term: {err}", what()));
            return r;
        }
    };
    let (_, me) = match checker::infer(&g1, &de, &sub, sig, cfg) {
        Ok(v) => v,
        Err(err) => {
            r.expect(false, || format!("{}: substituted term does not infer: {err}", what()));
            return r;
        }
    };
    let theta = e.gamma.split_tail(j.gamma.0.len() - k - 1).1;
    let dn = down(&de, &me).expect("↓");
    let bd = big_down(&de, &me, &theta).expect("⇓");
    let new_gamma = g1.extend(&de).extend(&tele_subst(&dn, &theta).expect("substituted telescope"));
    r.expect(new_gamma.kernel() == bd.source, || format!("{}: ⇓ has an unexpected source", what()));
    let phi = tele_subst(&bd, &e.delta).expect("substituted telescope");
    let want_ty = subst_type(&bd, &e.ty).expect("substituted type");
    // Type formation commutes with substitution as well.
    match checker::form_type(&new_gamma, &ty2, sig, cfg) {
        Ok(t) => r.expect(t == want_ty, || format!("{}: ⟦T[e/x]⟧ differs from ⇓(⟦e⟧)*⟦T⟧", what())),
        Err(err) => r.expect(false, || format!("{}: {ty2} is not a type: {err}", what())),
    }
    let got = match checker::check(&new_gamma, &phi, &want_ty, &t2, sig, cfg) {
        Ok(m) => m,
        Err(err) => {
            r.expect(false, || format!("{}: {t2} does not re-check: {err}", what()));
            return r;
        }
    };
    let want = subst_mor(&bd, &e.denotation).expect("substituted denotation");
    r.expect(got == want, || format!("{}: denotation differs from ⇓(⟦e⟧)*⟦t⟧", what()));
    let (_, body, _) = flat(&e.denotation, e.delta.len());
    let (_, ebody, _) = flat(&me, de.len());
    let (ctx2, body2, ty2k) = flat(&got, phi.len());
    let j_idx = theta.len() + e.delta.len();
    let replaced = nf(&ctx2, &replace(&body, j_idx, &ebody, de.len()), &ty2k);
    r.expect(replaced == body2, || format!("{}: flat denotation is not the substitution instance", what()));
    r
}
