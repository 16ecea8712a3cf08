use lfdc_core::checker::parse::{parse_ctx, parse_elim, parse_intro, parse_ty};
use lfdc_core::checker::{
    self, check_derivation, exchange_closure, form_context, form_judgment_context, form_type, infer_derivation,
    split_points, CheckError, ErrorKind, LinearityKind,
};
use lfdc_core::kernel::{Term, KernelCtx};
use lfdc_core::lfdc::{self, Morphism, SemType, StructuralConfig};
use lfdc_core::signature::Signature;
use lfdc_core::telescope::{SemCtx, Telescope};

const ATOMS: &str = "atom A : 𝟙. atom B : 𝟙. atom C : 𝟙. atom F : A⟨⟩. const p : A⟨⟩.";

const WEAK: StructuralConfig = StructuralConfig {
    weakening: true,
    contraction: false,
    exchange: false,
};

const CONTR: StructuralConfig = StructuralConfig {
    weakening: false,
    contraction: true,
    exchange: false,
};

fn sig() -> Signature {
    Signature::from_str(ATOMS, &StructuralConfig::ORDERED).unwrap()
}

fn atom(name: &str) -> Term {
    Term::app(Term::constant(name, Term::pi(Term::Unit, Term::Univ)), Term::Tt)
}

fn judgment(g: &str, d: &str, cfg: &StructuralConfig) -> (SemCtx, Telescope) {
    form_judgment_context(&parse_ctx(g).unwrap(), &parse_ctx(d).unwrap(), &sig(), cfg).unwrap()
}

fn check_in(g: &str, d: &str, ty: &str, t: &str, cfg: &StructuralConfig) -> Result<Morphism, CheckError> {
    let (sg, sd) = judgment(g, d, cfg);
    let ty = form_type(&sg, &parse_ty(ty).unwrap(), &sig(), cfg).unwrap();
    let (m, deriv) = check_derivation(&sg, &sd, &ty, &parse_intro(t).unwrap(), &sig(), cfg)?;
    m.validate().expect("denotation is well typed");
    assert_eq!(deriv.judgment, checker::Judgment::Check);
    Ok(m)
}

fn infer_in(g: &str, d: &str, e: &str, cfg: &StructuralConfig) -> Result<(SemType, Morphism, Vec<&'static str>), CheckError> {
    let (sg, sd) = judgment(g, d, cfg);
    let (ty, m, deriv) = infer_derivation(&sg, &sd, &parse_elim(e).unwrap(), &sig(), cfg)?;
    m.validate().expect("denotation is well typed");
    Ok((ty, m, deriv.rules()))
}

fn kind(r: Result<impl std::fmt::Debug, CheckError>) -> ErrorKind {
    r.unwrap_err().kind
}

fn unit() -> SemType {
    lfdc::unit_type(&KernelCtx::empty())
}

#[test]
fn contexts_are_formed_in_order() {
    let s = sig();
    let cfg = StructuralConfig::ORDERED;
    assert_eq!(form_context(&parse_ctx("ε").unwrap(), &s, &cfg).unwrap().len(), 0);
    let g = form_context(&parse_ctx("x : 𝟙").unwrap(), &s, &cfg).unwrap();
    assert_eq!(g.types(), vec![Term::Unit]);
    let e = form_context(&parse_ctx("x : 𝟙, x : 𝟙").unwrap(), &s, &cfg).unwrap_err();
    assert_eq!(e.kind, ErrorKind::DuplicateVariable("x".into()));
    let g = form_context(&parse_ctx("x : A⟨⟩, y : F(x)").unwrap(), &s, &cfg).unwrap();
    assert_eq!(g.len(), 2);
}

#[test]
fn type_formers() {
    let s = sig();
    let cfg = StructuralConfig::ORDERED;
    let e = SemCtx::new();
    assert_eq!(form_type(&e, &parse_ty("𝟙").unwrap(), &s, &cfg).unwrap().body, Term::Unit);
    let t = form_type(&e, &parse_ty("⊕x : 𝟙. 𝟙").unwrap(), &s, &cfg).unwrap();
    assert_eq!(t.body, Term::sigma(Term::Unit, Term::Unit));
    let t = form_type(&e, &parse_ty("A⟨⟩").unwrap(), &s, &cfg).unwrap();
    assert_eq!(t.body, atom("A"));
    let t = form_type(&e, &parse_ty("∀x : A⟨⟩. F(x)").unwrap(), &s, &cfg).unwrap();
    let Term::Pi(_, body) = &t.body else { panic!() };
    assert!(matches!(&**body, Term::App(_, v) if **v == Term::Var(0)));
    let t = form_type(&e, &parse_ty("(A⟨⟩ ⫽ B⟨⟩) × (A⟨⟩ ⊸ B⟨⟩)").unwrap(), &s, &cfg).unwrap();
    assert_eq!(
        t.body,
        Term::prod(Term::fun_l(atom("A"), atom("B")), Term::fun_r(atom("A"), atom("B")))
    );
}

#[test]
fn unknown_atoms_and_parameters() {
    let s = sig();
    let cfg = StructuralConfig::ORDERED;
    let e = form_type(&SemCtx::new(), &parse_ty("Q⟨⟩").unwrap(), &s, &cfg).unwrap_err();
    assert_eq!(e.kind, ErrorKind::UnknownAtom("Q".into()));
    let e = form_type(&SemCtx::new(), &parse_ty("F⟨⟩").unwrap(), &s, &cfg).unwrap_err();
    assert_eq!(e.kind, ErrorKind::AtomParameterError("F".into()));
    assert!(e.cause.is_some());
}

#[test]
fn unit_intro_is_the_identity() {
    let m = check_in("ε", "ε", "𝟙", "⟨⟩", &StructuralConfig::ORDERED).unwrap();
    assert_eq!(m, lfdc::identity(&unit()).unwrap());
}

#[test]
fn pair_of_units() {
    let m = check_in("ε", "ε", "⊕x : 𝟙. 𝟙", "⟨⟨⟩, ⟨⟩⟩", &StructuralConfig::ORDERED).unwrap();
    assert_eq!(m.dom.body, Term::Unit);
    assert_eq!(m.body, Term::pair(Term::Tt, Term::Tt));
}

#[test]
fn left_abstraction_respects_order() {
    let cfg = StructuralConfig::ORDERED;
    // The bound variable lands to the left of `x`.
    let m = check_in("ε", "x : A⟨⟩", "A⟨⟩ ⫽ (A⟨⟩ ⊗ A⟨⟩)", "⫽y. ⟨y, x⟩", &cfg).unwrap();
    assert_eq!(
        m.body,
        Term::lam_l(Term::pair(Term::Var(0), Term::fst(Term::Var(1))))
    );
    let swapped = check_in("ε", "x : A⟨⟩", "A⟨⟩ ⫽ (A⟨⟩ ⊗ A⟨⟩)", "⫽y. ⟨x, y⟩", &cfg);
    assert_eq!(kind(swapped), ErrorKind::SplitError);
    check_in("ε", "x : A⟨⟩", "A⟨⟩ ⫽ (A⟨⟩ ⊗ A⟨⟩)", "⫽y. ⟨x, y⟩", &StructuralConfig::LINEAR).unwrap();
    // Right abstraction puts it on the other side.
    check_in("ε", "x : A⟨⟩", "A⟨⟩ ⊸ (A⟨⟩ ⊗ A⟨⟩)", "λy. ⟨x, y⟩", &cfg).unwrap();
}

#[test]
fn shape_mismatch() {
    let e = check_in("ε", "ε", "𝟙", "⟨⟨⟩, ⟨⟩⟩", &StructuralConfig::ORDERED).unwrap_err();
    assert!(matches!(e.kind, ErrorKind::TypeMismatch { .. }));
    let e = check_in("ε", "x : A⟨⟩", "B⟨⟩", "x", &StructuralConfig::ORDERED).unwrap_err();
    let ErrorKind::TypeMismatch { expected, found } = e.kind else { panic!() };
    assert_eq!((expected.as_str(), found.as_str()), ("B⟨⟩", "A⟨⟩"));
}

#[test]
fn strict_identity() {
    let (ty, m, rules) = infer_in("ε", "x : 𝟙", "x", &StructuralConfig::ORDERED).unwrap();
    assert_eq!(ty.body, Term::Unit);
    // The packed context `⟦x : 𝟙⟧` is `⊕_𝟙(𝟙)`; up to the unitor this is the
    // identity.
    let id = lfdc::identity(&unit()).unwrap();
    let rho = lfdc::rho(&unit()).unwrap();
    assert_eq!(m, lfdc::compose(&id, &rho.fwd).unwrap());
    assert_eq!(rules, ["StrId"]);
}

#[test]
fn unused_variable_without_weakening() {
    let e = infer_in("ε", "x : A⟨⟩, y : B⟨⟩", "x", &StructuralConfig::ORDERED).unwrap_err();
    assert_eq!(
        e.kind,
        ErrorKind::LinearityError {
            var: "y".into(),
            kind: LinearityKind::Unused
        }
    );
    let (ty, m, rules) = infer_in("ε", "x : A⟨⟩, y : B⟨⟩", "x", &WEAK).unwrap();
    assert_eq!(ty.body, atom("A"));
    assert_eq!(rules, ["WkId"]);
    assert_eq!(m.body, Term::fst(Term::Var(0)));
    let m = check_in("ε", "x : A⟨⟩", "𝟙", "⟨⟩", &WEAK).unwrap();
    assert_eq!(m.body, Term::Tt);
}

#[test]
fn weak_identity_respects_dependency() {
    // `y` mentions `x`, so `x` cannot be projected out from under it...
    let (ty, _, _) = infer_in("ε", "x : A⟨⟩, y : F(x)", "x", &WEAK).unwrap();
    assert_eq!(ty.body, atom("A"));
    // ...but `y` cannot be returned with `x` dropped.
    let e = infer_in("ε", "x : A⟨⟩, y : F(x)", "y", &WEAK).unwrap_err();
    assert!(matches!(
        e.kind,
        ErrorKind::LinearityError {
            kind: LinearityKind::Dependent,
            ..
        }
    ));
}

#[test]
fn type_level_variables_need_contraction() {
    let e = infer_in("x : A⟨⟩", "ε", "x", &StructuralConfig::ORDERED).unwrap_err();
    assert!(matches!(
        e.kind,
        ErrorKind::LinearityError {
            kind: LinearityKind::TypeLevelOnly,
            ..
        }
    ));
    let (ty, m, rules) = infer_in("x : A⟨⟩", "ε", "x", &CONTR).unwrap();
    assert_eq!(rules, ["StrContr"]);
    assert_eq!(ty.body, atom("A"));
    assert_eq!(m.body, Term::Var(1));
    let cart = StructuralConfig::CARTESIAN;
    let (_, m, rules) = infer_in("x : A⟨⟩, y : B⟨⟩", "z : C⟨⟩", "x", &cart).unwrap();
    assert_eq!(rules, ["WkContr"]);
    assert_eq!(m.body, Term::Var(2));
}

#[test]
fn constants_need_an_empty_term_context() {
    let (ty, m, rules) = infer_in("ε", "ε", "p", &StructuralConfig::ORDERED).unwrap();
    assert_eq!(rules, ["Const"]);
    assert_eq!(ty.body, atom("A"));
    assert_eq!(m.body, sig().constant("p").unwrap().head);
    let e = infer_in("ε", "x : B⟨⟩", "p", &StructuralConfig::ORDERED).unwrap_err();
    assert!(matches!(e.kind, ErrorKind::LinearityError { .. }));
    let e = infer_in("ε", "ε", "nope", &StructuralConfig::ORDERED).unwrap_err();
    assert_eq!(e.kind, ErrorKind::UnknownVariable("nope".into()));
}

#[test]
fn applications() {
    let cfg = StructuralConfig::ORDERED;
    let (ty, _, rules) = infer_in("ε", "f : A⟨⟩ ⊸ B⟨⟩, x : A⟨⟩", "f ◁ x", &cfg).unwrap();
    assert_eq!(ty.body, atom("B"));
    assert_eq!(rules, ["⑊Elim", "StrId", "Embed", "StrId"]);
    let (ty, _, _) = infer_in("ε", "x : A⟨⟩, f : A⟨⟩ ⫽ B⟨⟩", "x ▷ f", &cfg).unwrap();
    assert_eq!(ty.body, atom("B"));
    assert!(infer_in("ε", "x : A⟨⟩, f : A⟨⟩ ⊸ B⟨⟩", "f ◁ x", &cfg).is_err());
    let (_, _, rules) = infer_in("ε", "x : A⟨⟩, f : A⟨⟩ ⊸ B⟨⟩", "f ◁ x", &StructuralConfig::LINEAR).unwrap();
    assert_eq!(rules[0], "ExchE");
}

#[test]
fn dependent_application_moves_the_argument_up() {
    let cfg = StructuralConfig::ORDERED;
    let (ty, m, rules) = infer_in("a : A⟨⟩", "f : ∀x : A⟨⟩. F(x)", "f · a", &cfg).unwrap();
    assert_eq!(rules, ["∀Elim", "StrId", "Embed", "StrId"]);
    let Term::App(_, arg) = &ty.body else { panic!() };
    assert_eq!(**arg, Term::Var(0));
    assert_eq!(m.body, Term::app(Term::fst(Term::Var(0)), Term::Var(1)));
}

#[test]
fn products_share_the_context() {
    let cfg = StructuralConfig::ORDERED;
    let m = check_in("ε", "x : A⟨⟩", "A⟨⟩ × A⟨⟩", "(x, x)", &cfg).unwrap();
    assert_eq!(m.body, Term::tuple(Term::fst(Term::Var(0)), Term::fst(Term::Var(0))));
    let (ty, _, _) = infer_in("ε", "x : A⟨⟩ × B⟨⟩", "π₂ x", &cfg).unwrap();
    assert_eq!(ty.body, atom("B"));
}

#[test]
fn annotation() {
    let (ty, _, rules) = infer_in("ε", "ε", "(λx. x) : A⟨⟩ ⊸ A⟨⟩", &StructuralConfig::ORDERED).unwrap();
    assert_eq!(ty.body, Term::fun_r(atom("A"), atom("A")));
    assert_eq!(rules, ["Annotate", "⑊Form", "Atom", "𝟙IntroStr", "Atom", "𝟙IntroStr", "⑊Intro", "Embed", "StrId"]);
}

#[test]
fn unit_eliminations() {
    let cfg = StructuralConfig::ORDERED;
    // The body's resources come first, the scrutinee's after them.
    let (ty, m, rules) = infer_in("ε", "x : A⟨⟩, u : 𝟙", "let[A⟨⟩] ⟨⟩ = u in x", &cfg).unwrap();
    assert_eq!(rules[0], "𝟙Elim3");
    assert_eq!(ty.body, atom("A"));
    assert_eq!(m.body, Term::fst(Term::Var(0)));
    let (ty, _, rules) = infer_in(
        "ε",
        "x : A⟨⟩, u : 𝟙, y : B⟨⟩",
        "let[a. A⟨⟩ ⊗ B⟨⟩ ^ B⟨⟩] ⟨⟩ = u with z = y in ⟨x, z⟩",
        &cfg,
    )
    .unwrap();
    assert_eq!(rules[0], "𝟙Elim1");
    assert_eq!(ty.body, Term::sigma(atom("A"), atom("B")));
    let (ty, m, rules) = infer_in("w : 𝟙", "x : A⟨⟩", "let[a, b. A⟨⟩ ^ A⟨⟩] ⟨⟩ = w with z = x in z", &cfg).unwrap();
    assert_eq!(rules[0], "𝟙Elim4");
    assert_eq!(ty.body, atom("A"));
    assert_eq!(m.body, Term::fst(Term::Var(0)));
    let (ty, _, rules) = infer_in(
        "w : 𝟙",
        "x : A⟨⟩",
        "let[a, b, c. A⟨⟩ ^ 𝟙, A⟨⟩] ⟨⟩ = w with v = ⟨⟩ and z = x in z",
        &cfg,
    )
    .unwrap();
    assert_eq!(rules[0], "𝟙Elim2");
    assert_eq!(ty.body, atom("A"));
}

#[test]
fn pair_eliminations() {
    let cfg = StructuralConfig::ORDERED;
    let (ty, m, rules) = infer_in(
        "ε",
        "p : A⟨⟩ ⊗ B⟨⟩",
        "let[a. A⟨⟩ ⊗ (B⟨⟩ ⊗ 𝟙) ^ 𝟙] ⟨x, y⟩ = p with z = ⟨⟩ in ⟨x, y, z⟩",
        &cfg,
    )
    .unwrap();
    assert_eq!(rules[0], "⊕Elim1");
    assert_eq!(ty.body, Term::sigma(atom("A"), Term::sigma(atom("B"), Term::Unit)));
    let v = || Term::fst(Term::Var(0));
    assert_eq!(m.body, Term::pair(Term::fst(v()), Term::pair(Term::snd(v()), Term::Tt)));
    // Swapping the components needs exchange.
    let swapped = "let[a. B⟨⟩ ⊗ A⟨⟩ ^ 𝟙] ⟨x, y⟩ = p with z = ⟨⟩ in let[B⟨⟩ ⊗ A⟨⟩] ⟨⟩ = z in ⟨y, x⟩";
    assert!(infer_in("ε", "p : A⟨⟩ ⊗ B⟨⟩", swapped, &cfg).is_err());
    infer_in("ε", "p : A⟨⟩ ⊗ B⟨⟩", swapped, &StructuralConfig::LINEAR).unwrap();
    let (ty, m, rules) = infer_in(
        "p : A⟨⟩ ⊗ B⟨⟩",
        "q : C⟨⟩",
        "let[a, b, c. C⟨⟩ ^ 𝟙, C⟨⟩] ⟨x, y⟩ = p with w = ⟨⟩ and z = q in z",
        &cfg,
    )
    .unwrap();
    assert_eq!(rules[0], "⊕Elim2");
    assert_eq!(ty.body, atom("C"));
    assert_eq!(m.body, Term::fst(Term::Var(0)));
}

#[test]
fn motives_must_be_types() {
    let e = infer_in("ε", "u : 𝟙", "let[Q⟨⟩] ⟨⟩ = u in ⟨⟩", &StructuralConfig::ORDERED).unwrap_err();
    assert_eq!(e.kind, ErrorKind::MotiveError);
    assert!(e.matches("UnknownAtom"));
}

#[test]
fn duplicate_binders() {
    let e = check_in("ε", "x : A⟨⟩", "A⟨⟩ ⊸ A⟨⟩", "λx. x", &StructuralConfig::CARTESIAN).unwrap_err();
    assert_eq!(e.kind, ErrorKind::DuplicateVariable("x".into()));
}

#[test]
fn split_point_counts() {
    assert_eq!(split_points(&Telescope::new()).len(), 1);
    assert_eq!(split_points(&Telescope::from_types(&["x"], vec![Term::Unit])).len(), 2);
    let three = Telescope::from_types(&["x", "y", "z"], vec![Term::Unit; 3]);
    let s = split_points(&three);
    assert_eq!(s.len(), 4);
    for (k, (pre, post)) in s.iter().enumerate() {
        assert_eq!((pre.len(), post.len()), (k, 3 - k));
    }
}

#[test]
fn exchange_closure_sizes() {
    let lin = StructuralConfig::LINEAR;
    let (g, d) = judgment("ε", "x : A⟨⟩, y : B⟨⟩", &lin);
    let perms = exchange_closure(&g, &d, &lin).unwrap();
    assert_eq!(perms.len(), 2);
    assert_eq!(perms[1].delta.names(), ["y".into(), "x".into()]);
    let (g, d) = judgment("ε", "x : A⟨⟩, y : F(x)", &lin);
    assert_eq!(exchange_closure(&g, &d, &lin).unwrap().len(), 1);
    let (g, d) = judgment("ε", "x : A⟨⟩, y : B⟨⟩, z : C⟨⟩", &lin);
    let perms = exchange_closure(&g, &d, &lin).unwrap();
    assert_eq!(perms.len(), 6);
    assert_eq!(exchange_closure(&g, &d, &StructuralConfig::ORDERED).unwrap().len(), 1);
    for p in &perms {
        let round = p.witness.bwd.after(&p.witness.fwd).unwrap();
        assert_eq!(round, lfdc::CtxMorphism::identity(&round.source).unwrap());
    }
}

#[test]
fn outputs_are_deterministic() {
    let run = || infer_in("ε", "x : A⟨⟩, f : A⟨⟩ ⊸ B⟨⟩", "f ◁ x", &StructuralConfig::LINEAR).unwrap();
    assert_eq!(run(), run());
}
