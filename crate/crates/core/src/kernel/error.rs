use std::cell::Cell;
use std::fmt;

use thiserror::Error;

use crate::surface::print_term_in;
use crate::syntax::Tm;

/// A term together with the names of the variables in scope, so it can be
/// printed the way the user wrote the surrounding context.
#[derive(Clone, Debug, PartialEq)]
pub struct Located {
    pub term: Tm,
    pub names: Vec<String>,
}

impl Located {
    pub fn new(term: Tm, names: &[String]) -> Self {
        Self {
            term,
            names: names.to_vec(),
        }
    }
}

impl fmt::Display for Located {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term_in(&self.names, &self.term))
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum KernelError {
    #[error("unbound variable #{index} (context has {depth} entries)")]
    UnboundVariable { index: usize, depth: usize },

    #[error("unknown constant `{0}`")]
    UnknownConstant(String),

    #[error("universe mismatch: `{term}` should be a type but has type `{found}`")]
    UniverseMismatch { term: Located, found: Located },

    #[error("`{term}` is applied as a function but has type `{ty}`")]
    NotAFunction { term: Located, ty: Located },

    #[error("motive `{motive}` does not fit {eliminator}: {reason}")]
    MotiveMismatch {
        motive: Located,
        eliminator: &'static str,
        reason: String,
    },

    #[error("scrutinee `{term}` of {eliminator} has type `{found}`")]
    ScrutineeMismatch {
        term: Located,
        eliminator: &'static str,
        found: Located,
    },

    #[error("annotation mismatch in `{term}`: annotated `{annotation}`, expected `{expected}`")]
    AnnotationMismatch {
        term: Located,
        annotation: Located,
        expected: Located,
    },

    #[error("type mismatch: `{term}` has type `{found}` but `{expected}` was expected")]
    TypeMismatch {
        term: Located,
        expected: Located,
        found: Located,
    },

    #[error("reduction budget of {limit} steps exhausted")]
    FuelExhausted { limit: u64 },

    #[error("evaluation reached an ill-typed configuration: {0}")]
    IllTyped(String),

    #[error("duplicate name `{0}` in context")]
    DuplicateName(String),

    #[error("ill-formed type for context entry `{name}`: {reason}")]
    IllFormedEntry { name: String, reason: Box<KernelError> },
}

impl KernelError {
    pub fn is_fuel_exhausted(&self) -> bool {
        match self {
            KernelError::FuelExhausted { .. } => true,
            KernelError::IllFormedEntry { reason, .. } => reason.is_fuel_exhausted(),
            _ => false,
        }
    }
}

pub type KResult<T> = Result<T, KernelError>;

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Reduction-step budget shared by one kernel invocation.
#[derive(Debug)]
pub struct Fuel {
    limit: u64,
    remaining: Cell<u64>,
}

impl Fuel {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            remaining: Cell::new(limit),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.remaining.get()
    }

    pub fn used(&self) -> u64 {
        self.limit - self.remaining.get()
    }

    /// Consumes one reduction step.
    pub fn tick(&self) -> KResult<()> {
        match self.remaining.get() {
            0 => Err(KernelError::FuelExhausted { limit: self.limit }),
            n => {
                self.remaining.set(n - 1);
                Ok(())
            }
        }
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(DEFAULT_FUEL)
    }
}
