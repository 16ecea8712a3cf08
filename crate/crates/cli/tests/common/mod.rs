#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use lfdc_core::lfdc::StructuralConfig;

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

/// Every corpus file with the structural rules it is meant to be checked
/// under, and the matching command-line flags.
pub const CORPUS: &[(&str, StructuralConfig, &[&str])] = &[
    ("cut_admissibility.lf", StructuralConfig::LINEAR, &["--exchange"]),
    ("reed_negatives.lf", StructuralConfig::LINEAR, &["--exchange"]),
    ("ordered.lf", StructuralConfig::ORDERED, &[]),
    ("linear.lf", StructuralConfig::LINEAR, &["--exchange"]),
    ("structural.lf", StructuralConfig::CARTESIAN, &["--weakening", "--contraction"]),
];

pub fn lfdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lfdc"))
        .args(args)
        .env_remove("LFDC_COLOR")
        .output()
        .expect("the binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// A scratch file holding `src`, unique to this process and `tag`.
pub fn scratch(tag: &str, src: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lfdc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let p = dir.join(format!("{tag}.lf"));
    std::fs::write(&p, src).expect("write scratch file");
    p
}
