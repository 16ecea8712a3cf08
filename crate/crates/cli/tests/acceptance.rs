//! One line per acceptance criterion, then a single assertion over all of
//! them so that every line is printed even when an early one fails.
//!
//! Run with `cargo test -p lfdc-cli --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use common::{corpus, lfdc, stdout, CORPUS};
use lfdc_cli::check_file;
use lfdc_core::checker::syntax::Item;
use lfdc_core::lfdc::StructuralConfig;
use lfdc_testkit::suites::{self, Report};
use lfdc_testkit::DEFAULT_SEED;

const CORPUS_BUDGET: Duration = Duration::from_secs(10);
const KERNEL_BUDGET: Duration = Duration::from_secs(60);
const MIN_WEAKENING: usize = 200;
const MIN_SUBSTITUTION: usize = 200;
const MIN_KERNEL: usize = 500;
const MIN_STRICTNESS: usize = 100;

/// The signature of the cut-admissibility development, in order.
const CUT_NAMES: [&str; 15] = [
    "Prop", "Ante", "Conse", "⊸", "⊸R", "⊸L", "id", "cut", "CF", "cfId", "cf⊸R", "cf⊸L", "CutStep", "cfCut", "prin⊸",
];

struct Line {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn suite(name: &'static str, r: &Report, min: usize, extra: Option<(Duration, Duration)>) -> Line {
    let mut ok = r.passed() && r.cases >= min;
    let mut detail = format!("{r} (need ≥ {min} cases)");
    if let Some((took, budget)) = extra {
        ok &= took < budget;
        detail.push_str(&format!(", {:.2?} of {budget:?}", took));
    }
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first failure: {f}"));
    }
    Line { name, ok, detail }
}

fn cut_corpus() -> Line {
    let p = corpus("cut_admissibility.lf");
    let start = Instant::now();
    let o = lfdc(&["check", "--exchange", p.to_str().unwrap()]);
    let took = start.elapsed();
    let report = check_file(&p, &StructuralConfig::LINEAR);
    let names: Vec<String> = report
        .entries
        .iter()
        .filter_map(|e| match &e.item {
            Item::Atom(n, _) | Item::Const(n, _) => Some(n.to_string()),
            _ => None,
        })
        .collect();
    let prin = report
        .entries
        .iter()
        .any(|e| e.passed && matches!(&e.item, Item::Const(n, _) if &**n == "prin⊸"));
    let ok = o.status.code() == Some(0) && took < CORPUS_BUDGET && names == CUT_NAMES && prin && report.status().code() == 0;
    Line {
        name: "cut-admissibility corpus loads under exchange",
        ok,
        detail: format!(
            "exit {:?}, {} declarations, prin⊸ elaborated: {prin}, {took:.2?} of {CORPUS_BUDGET:?}",
            o.status.code(),
            names.len()
        ),
    }
}

fn reed_negatives() -> Line {
    let p = corpus("reed_negatives.lf");
    let o = lfdc(&["check", "--exchange", p.to_str().unwrap()]);
    let out = stdout(&o);
    let twice = out.contains("rejected: variable `q_a` is used twice");
    let unused = out.contains("rejected: variable `q_a` is not used at the term level");
    // Both expectations carry the `LinearityError` tag, so the exit code
    // alone already demands that kind of error.
    let tagged = out.matches("ok   ").count() == 5 && out.matches("fail(LinearityError) const prinBad").count() == 2;
    Line {
        name: "bad right rules are rejected for linearity",
        ok: o.status.code() == Some(0) && twice && unused && tagged,
        detail: format!("exit {:?}, used twice: {twice}, unused: {unused}", o.status.code()),
    }
}

fn linearity() -> Line {
    let mut judgments = 0;
    let mut entries = 0;
    let mut bad = Vec::new();
    for (name, cfg, _) in CORPUS {
        if cfg.weakening || cfg.contraction {
            continue;
        }
        let report = check_file(&corpus(name), cfg);
        for e in report.entries.iter().filter(|e| e.passed) {
            for d in &e.derivations {
                judgments += 1;
                entries += d.usage().len();
                for (var, n) in d.linearity_violations() {
                    bad.push(format!("{name}:{}: `{var}` used {n} times", e.line));
                }
            }
        }
    }
    let generated = suites::linearity(DEFAULT_SEED, 200, &StructuralConfig::ORDERED);
    Line {
        name: "term-level variables are used exactly once",
        ok: bad.is_empty() && judgments > 0 && generated.passed(),
        detail: format!(
            "{judgments} corpus derivations ({entries} term-level entries at the roots), {} violations; generated: {generated}",
            bad.len()
        ),
    }
}

fn full_run() -> Vec<u8> {
    let mut out = Vec::new();
    for (name, _, flags) in CORPUS {
        let p = corpus(name);
        let mut args = vec!["check"];
        args.extend_from_slice(flags);
        args.push(p.to_str().unwrap());
        let o = lfdc(&args);
        out.extend(o.stdout);
        out.extend(o.status.code().unwrap_or(-1).to_string().bytes());
    }
    out
}

fn determinism() -> Line {
    let (a, b) = (full_run(), full_run());
    // All files at once, checked in parallel, must match as well. Under
    // exchange the ordered file has failures, which must be just as stable.
    let all: Vec<String> = CORPUS.iter().map(|(n, ..)| corpus(n).to_str().unwrap().to_string()).collect();
    let mut args = vec!["check", "--exchange"];
    args.extend(all.iter().map(String::as_str));
    let (c, d) = (lfdc(&args).stdout, lfdc(&args).stdout);
    Line {
        name: "reports are byte-identical across runs",
        ok: a == b && c == d && !a.is_empty(),
        detail: format!("{} bytes per file-by-file run, {} bytes per parallel run", a.len(), c.len()),
    }
}

#[test]
fn acceptance() {
    let mut lines = vec![cut_corpus(), reed_negatives()];

    let r = suites::weakening(DEFAULT_SEED, MIN_WEAKENING, &StructuralConfig::ORDERED);
    lines.push(suite("weakening is admissible", &r, MIN_WEAKENING, None));

    // Each pair substitutes for a term-level or for a type-level variable;
    // the suite draws the given number of each.
    let r = suites::substitution(DEFAULT_SEED, 128, &StructuralConfig::ORDERED);
    lines.push(suite("substitution is admissible", &r, MIN_SUBSTITUTION, None));

    let start = Instant::now();
    let r = suites::kernel_properties(DEFAULT_SEED, MIN_KERNEL);
    let took = start.elapsed();
    lines.push(suite("kernel normalization laws", &r, MIN_KERNEL, Some((took, KERNEL_BUDGET))));

    let r = suites::strictness(DEFAULT_SEED, MIN_STRICTNESS);
    lines.push(suite("strictness laws", &r, MIN_STRICTNESS, None));

    lines.push(linearity());
    lines.push(determinism());

    println!();
    for (i, l) in lines.iter().enumerate() {
        println!("[{}] {} {}: {}", i + 1, if l.ok { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let failed: Vec<&str> = lines.iter().filter(|l| !l.ok).map(|l| l.name).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
