use lfdc_core::lfdc::StructuralConfig;
use lfdc_testkit::suites::{self, Report};
use lfdc_testkit::DEFAULT_SEED;

fn assert_clean(name: &str, r: &Report) {
    println!("{name}: {r}");
    for f in r.failures.iter().take(10) {
        println!("  {f}");
    }
    assert!(r.passed(), "{name}: {} failures", r.failures.len());
}

#[test]
fn kernel_laws() {
    let r = suites::kernel_properties(DEFAULT_SEED, 200);
    assert_clean("kernel", &r);
}

#[test]
fn strictness_laws() {
    let r = suites::strictness(DEFAULT_SEED, 60);
    assert_clean("strictness", &r);
}

#[test]
fn weakening_is_admissible() {
    let r = suites::weakening(DEFAULT_SEED, 60, &StructuralConfig::ORDERED);
    assert_clean("weakening", &r);
}

#[test]
fn substitution_is_admissible() {
    let r = suites::substitution(DEFAULT_SEED, 60, &StructuralConfig::ORDERED);
    assert_clean("substitution", &r);
}

#[test]
fn generated_derivations_are_linear() {
    let r = suites::linearity(DEFAULT_SEED, 100, &StructuralConfig::ORDERED);
    assert_clean("linearity", &r);
}
