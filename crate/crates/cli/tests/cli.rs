mod common;

use common::{corpus, lfdc, scratch, stdout, CORPUS};

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn every_corpus_file_passes_under_its_flags() {
    for (name, _, flags) in CORPUS {
        let p = corpus(name);
        let mut args = vec!["check"];
        args.extend_from_slice(flags);
        args.push(path(&p));
        let o = lfdc(&args);
        assert_eq!(o.status.code(), Some(0), "{name}:\n{}", stdout(&o));
    }
}

#[test]
fn ordered_corpus_fails_under_wrong_flags() {
    // Under exchange the swapped pair checks, so its `fail` does not hold.
    let p = corpus("ordered.lf");
    let o = lfdc(&["check", "--exchange", path(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn empty_file_passes() {
    let p = scratch("empty", "");
    let o = lfdc(&["check", path(&p)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 passed, 0 failed"));
}

#[test]
fn failures_exit_one() {
    let p = scratch("mismatch", "atom A : 𝟙.\natom B : 𝟙.\ncheck ε ⫶ x : A⟨⟩ ⊢ B⟨⟩ ∋ x.\n");
    let o = lfdc(&["check", path(&p)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL 3:1"), "{out}");
    assert!(out.contains("expected B⟨⟩, found A⟨⟩"), "{out}");
}

#[test]
fn expectations_check_the_error_kind() {
    let src = "atom A : 𝟙.\natom B : 𝟙.\nfail(SplitError) check ε ⫶ x : A⟨⟩ ⊢ B⟨⟩ ∋ x.\n";
    let o = lfdc(&["check", path(&scratch("kind", src))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expected a failure of kind SplitError, but got TypeMismatch"));
    let o = lfdc(&["check", path(&scratch("nokind", "fail check ε ⫶ ε ⊢ 𝟙 ∋ ⟨⟩.\n"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expected a failure, but the item checks"));
}

#[test]
fn failed_declarations_do_not_enter_the_signature() {
    let src = "atom A : 𝟙.\nfail const c : Q⟨⟩.\nfail(UnknownVariable) infer ε ⫶ ε ⊢ c.\n";
    let o = lfdc(&["check", path(&scratch("rollback", src))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn parse_and_io_errors_exit_two() {
    let p = scratch("parse", "atom A : 𝟙.\ncheck ε ⊢ 𝟙.\n");
    let o = lfdc(&["check", path(&p)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains(":2:"), "{}", stdout(&o));
    let o = lfdc(&["check", "/no/such/file.lf"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(lfdc(&[]).status.code(), Some(2));
    assert_eq!(lfdc(&["check"]).status.code(), Some(2));
    assert_eq!(lfdc(&["check", "--linear", "x.lf"]).status.code(), Some(2));
    assert_eq!(lfdc(&["elaborate", "x.lf", "one"]).status.code(), Some(2));
}

#[test]
fn import_cycles_are_detected() {
    let a = scratch("cycle_a", "import \"cycle_b.lf\".\n");
    scratch("cycle_b", "atom A : 𝟙.\nimport \"cycle_a.lf\".\n");
    let o = lfdc(&["check", path(&a)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("import cycle"), "{}", stdout(&o));
}

#[test]
fn imports_are_resolved_next_to_the_importer() {
    scratch("lib", "atom A : 𝟙.\nconst p : A⟨⟩.\ninfer ε ⫶ ε ⊢ nope.\n");
    let main = scratch("main", "import \"lib.lf\".\nimport \"lib.lf\".\ninfer ε ⫶ ε ⊢ p.\n");
    let o = lfdc(&["check", path(&main)]);
    let out = stdout(&o);
    // The imported file's queries are not run.
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("2 declarations"), "{out}");
    assert!(out.contains("already imported"), "{out}");
}

#[test]
fn reports_follow_the_order_of_the_arguments() {
    let files: Vec<_> = (0..6)
        .map(|i| scratch(&format!("order{i}"), &format!("atom A{i} : 𝟙.\n")))
        .collect();
    let mut args = vec!["check"];
    args.extend(files.iter().map(|p| path(p)));
    let out = stdout(&lfdc(&args));
    let pos: Vec<usize> = files.iter().map(|p| out.find(path(p)).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{out}");
}

#[test]
fn ascii_fallbacks() {
    let src = "atom A : 1.\natom B : 1.\ncheck eps ; x : A<>, y : B<> |- A<> (*) B<> <= <x, y>.\ninfer eps ; f : A<> -o B<>, x : A<> |- f <| x.\n";
    let o = lfdc(&["check", path(&scratch("ascii", src))]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn color_is_opt_in() {
    let p = corpus("linear.lf");
    let plain = lfdc(&["check", "--exchange", path(&p)]);
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = std::process::Command::new(env!("CARGO_BIN_EXE_lfdc"))
        .args(["check", "--exchange", path(&p)])
        .env("LFDC_COLOR", "always")
        .output()
        .unwrap();
    assert!(stdout(&colored).contains("\x1b[32m"));
}

#[test]
fn elaborate_unit() {
    let p = scratch("unit", "check ε ⫶ ε ⊢ 𝟙 ∋ ⟨⟩.\n");
    let o = lfdc(&["elaborate", path(&p), "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("denotation: λδ. ⟨⟩ : 𝟙 → 𝟙"), "{out}");
    assert!(out.contains("rules:\n  𝟙IntroStr\n"), "{out}");
}

#[test]
fn elaborate_principal_cut() {
    let p = corpus("cut_admissibility.lf");
    let o = lfdc(&["elaborate", "--exchange", path(&p), "15"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("const prin⊸ :"), "{out}");
    assert!(out.contains("kernel: prin⊸ : Π x : Prop⟨⟩. Π x1 : Prop⟨⟩. Π x2 : Prop⟨⟩."), "{out}");
    assert!(out.contains("CutStep⟨"), "{out}");
    assert!(out.contains("rules:\n  ∀Form\n"), "{out}");
}

#[test]
fn elaborate_skips_imports_when_counting() {
    let p = corpus("reed_negatives.lf");
    let o = lfdc(&["elaborate", "--exchange", path(&p), "2"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("rejected as expected"), "{out}");
    assert!(out.contains("`q_a` is used twice"), "{out}");
}

#[test]
fn elaborate_bad_index() {
    let p = corpus("ordered.lf");
    assert_eq!(lfdc(&["elaborate", path(&p), "0"]).status.code(), Some(2));
    assert_eq!(lfdc(&["elaborate", path(&p), "1000"]).status.code(), Some(2));
}

#[test]
fn elaborate_failing_item_exits_one() {
    let p = scratch("elabfail", "atom A : 𝟙.\ninfer ε ⫶ x : A⟨⟩, y : A⟨⟩ ⊢ x.\n");
    let o = lfdc(&["elaborate", path(&p), "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not used"));
}
