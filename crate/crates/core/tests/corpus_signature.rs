use lfdc_core::lfdc::StructuralConfig;
use lfdc_core::checker::CheckError;
use lfdc_core::signature::{Signature, SignatureError};

const CUT: &str = include_str!("../../cli/corpus/cut_admissibility.lf");

#[test]
fn cut_admissibility_signature_loads() {
    let sig = Signature::from_str(CUT, &StructuralConfig::LINEAR);
    match sig {
        Ok(s) => assert_eq!(s.len(), 15),
        Err(e) => panic!("{e}"),
    }
}

fn base() -> Signature {
    Signature::from_str(CUT, &StructuralConfig::LINEAR).unwrap()
}

const BAD2: &str = "const ⊸Rbad₂ : ∀a, b : Prop⟨⟩. (Ante(a) ⊸ Ante(a) ⊸ Conse(b)) ⊸ Conse(a ⊸ b).
const prinBad₂ : ∀a, b, c : Prop⟨⟩. ∀f : Ante(a) ⊸ Ante(a) ⊸ Conse(b). ∀p_a : Conse(a). ∀g : Ante(b) ⊸ Conse(c).
  CutStep⟨a ⊸ b, c, (⟨⊸Rbad₂ · a · b ◁ f, λq. ⊸L · a · b · c ◁ p_a ◁ g ◁ q⟩, cut · b · c ◁ ⟨cut · a · b ◁ ⟨p_a, λq_a. f ◁ q_a ◁ q_a⟩, g⟩)⟩.";

const BAD0: &str = "const ⊸Rbad₀ : ∀a, b : Prop⟨⟩. Conse(b) ⊸ Conse(a ⊸ b).
const prinBad₀ : ∀a, b, c : Prop⟨⟩. ∀f : Conse(b). ∀p_a : Conse(a). ∀g : Ante(b) ⊸ Conse(c).
  CutStep⟨a ⊸ b, c, (⟨⊸Rbad₀ · a · b ◁ f, λq. ⊸L · a · b · c ◁ p_a ◁ g ◁ q⟩, cut · b · c ◁ ⟨cut · a · b ◁ ⟨p_a, λq_a. f⟩, g⟩)⟩.";

fn rejection(src: &str) -> CheckError {
    let mut e = base().extend_from_str(src, &StructuralConfig::LINEAR).expect_err("accepted");
    loop {
        match e {
            SignatureError::At { error, .. } => e = *error,
            SignatureError::Elaboration { error, .. } => return error,
            other => panic!("unexpected {other}"),
        }
    }
}

#[test]
fn bad_right_rule_axioms_alone_are_fine() {
    for src in [BAD2, BAD0] {
        let first = src.lines().next().unwrap();
        base().extend_from_str(first, &StructuralConfig::LINEAR).unwrap();
    }
}

#[test]
fn doubled_hypothesis_is_rejected() {
    let e = rejection(BAD2);
    assert!(e.matches("LinearityError"), "{e}");
    assert!(e.to_string().contains("q_a"), "{e}");
    assert!(e.to_string().contains("twice"), "{e}");
}

#[test]
fn dropped_hypothesis_is_rejected() {
    let e = rejection(BAD0);
    assert!(e.matches("LinearityError"), "{e}");
    assert!(e.to_string().contains("q_a"), "{e}");
    assert!(e.to_string().contains("not used"), "{e}");
}

#[test]
fn principal_cut_needs_exchange() {
    let e = Signature::from_str(CUT, &StructuralConfig::ORDERED).expect_err("accepted without exchange");
    assert!(e.to_string().contains("prin⊸"), "{e}");
}
