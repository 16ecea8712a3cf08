//! Random generators and independent oracles shared by the test suites.
//!
//! [`kernel_gen`] produces well-typed terms of the intuitionistic core,
//! [`surface`] produces derivable substructural judgments, and [`oracle`]
//! holds checks written against first principles rather than against the
//! library's own combinators.

pub mod kernel_gen;
pub mod oracle;
pub mod suites;
pub mod surface;

pub use kernel_gen::{HeadTag, KernelGen};
pub use surface::{Judgment, SurfaceGen, SIGNATURE};

/// The seed used by suites that do not vary it.
pub const DEFAULT_SEED: u64 = 0x5eed_1fdc;
