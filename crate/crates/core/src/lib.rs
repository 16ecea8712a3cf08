#![no_std]
//! Substructural dependent type checking over the syntactic model of an
//! intuitionistic type theory.
//!
//! Judgments compute denotations as kernel terms. Weakening, contraction and
//! exchange can each be switched on or off.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod kernel;
pub mod checker;
pub mod lfdc;
pub mod pretty;
pub mod signature;
pub mod telescope;
