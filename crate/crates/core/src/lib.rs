//! A proof checker for Martin-Löf type theory with a homotopy-flavoured
//! standard library, whose proofs are linear deductive chains.

pub mod chain;
pub mod doors;
pub mod env;
pub mod kernel;
pub mod stdlib;
pub mod surface;
pub mod syntax;

pub use chain::{Chain, ChainError, ChainResult, Link, LinkKind};
pub use env::{Entry, EntryKind, Environment, TheoremRecord};
pub use kernel::{Fuel, KernelError};
pub use syntax::{Context, Term, Tm};
