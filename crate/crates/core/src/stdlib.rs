//! The standard library: definitions, axioms and theorems shipped as `.dc`
//! sources, checked declaration by declaration into a frozen environment.

use thiserror::Error;

use crate::chain::{verify_chain, ChainError, ChainResult};
use crate::env::{Entry, EntryKind, Environment, TheoremRecord};
use crate::kernel::{self, Fuel, KernelError, DEFAULT_FUEL};
use crate::surface::{parse_file_with, Decl, ParseError};
use crate::syntax::Context;

/// File names in load order, one per line.
pub const MANIFEST: &str = include_str!("../stdlib/manifest.txt");

/// Rule-to-theorem map: `rule name | theorem`, one per line.
pub const COVERAGE: &str = include_str!("../stdlib/coverage.txt");

const SOURCES: &[(&str, &str)] = &[
    ("prelude.dc", include_str!("../stdlib/prelude.dc")),
    ("paths.dc", include_str!("../stdlib/paths.dc")),
    ("basic.dc", include_str!("../stdlib/basic.dc")),
    ("nat.dc", include_str!("../stdlib/nat.dc")),
    ("leibniz.dc", include_str!("../stdlib/leibniz.dc")),
    ("operators.dc", include_str!("../stdlib/operators.dc")),
    ("rules.dc", include_str!("../stdlib/rules.dc")),
];

/// Kept out of the load order: a statement left as an exercise.
pub const EXERCISES: &[(&str, &str)] = &[(
    "exercises/equality_sigma.dc",
    include_str!("../stdlib/exercises/equality_sigma.dc"),
)];

#[derive(Clone, Debug, PartialEq, Error)]
pub enum DeclError {
    #[error("`{0}` is already declared")]
    Duplicate(String),
    #[error("ill-formed type: {0}")]
    IllFormedType(KernelError),
    #[error("body does not have the declared type: {0}")]
    Body(KernelError),
    #[error("{0}")]
    Chain(ChainError),
    #[error("the chain's witness does not prove the statement: {0}")]
    Statement(KernelError),
}

impl DeclError {
    /// Link index for reports: 0 when the failure is not tied to a link.
    pub fn link_index(&self) -> usize {
        match self {
            DeclError::Chain(e) => e.link_index(),
            _ => 0,
        }
    }

    pub fn is_fuel_exhausted(&self) -> bool {
        match self {
            DeclError::IllFormedType(e) | DeclError::Body(e) | DeclError::Statement(e) => e.is_fuel_exhausted(),
            DeclError::Chain(e) => e.is_fuel_exhausted(),
            DeclError::Duplicate(_) => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum LoadError {
    #[error("{file}:{source}")]
    Parse { file: String, source: ParseError },
    #[error("{file}: {name}: {source}")]
    Declaration {
        file: String,
        name: String,
        source: Box<DeclError>,
    },
    #[error("manifest lists unknown file `{0}`")]
    UnknownFile(String),
}

/// Checks one theorem's chain and that its witness proves the statement.
pub fn verify_theorem(env: &Environment, record: &TheoremRecord, fuel: &Fuel) -> Result<ChainResult, DeclError> {
    let result = verify_chain(env, &record.chain, fuel).map_err(DeclError::Chain)?;
    kernel::check(env, &record.telescope, &result.witness, &record.goal, fuel).map_err(DeclError::Statement)?;
    Ok(result)
}

/// Checks `decl` against `env` and appends it. A fresh budget of
/// `fuel_limit` steps is used for the declaration.
pub fn add_declaration(env: &mut Environment, decl: &Decl, fuel_limit: u64) -> Result<Option<ChainResult>, DeclError> {
    let fuel = Fuel::new(fuel_limit);
    if env.contains(decl.name()) {
        return Err(DeclError::Duplicate(decl.name().to_string()));
    }
    let empty = Context::new();
    let (entry, result) = match decl {
        Decl::Def { name, ty, body } => {
            kernel::check_type(env, &empty, ty, &fuel).map_err(DeclError::IllFormedType)?;
            kernel::check(env, &empty, body, ty, &fuel).map_err(DeclError::Body)?;
            let entry = Entry {
                name: name.clone(),
                ty: ty.clone(),
                body: Some(body.clone()),
                kind: EntryKind::Definition,
            };
            (entry, None)
        }
        Decl::Axiom { name, ty } => {
            kernel::check_type(env, &empty, ty, &fuel).map_err(DeclError::IllFormedType)?;
            let entry = Entry {
                name: name.clone(),
                ty: ty.clone(),
                body: None,
                kind: EntryKind::Axiom,
            };
            (entry, None)
        }
        Decl::Theorem {
            name,
            anchor,
            telescope,
            goal,
            chain,
        } => {
            let record = TheoremRecord {
                name: name.clone(),
                anchor: anchor.clone(),
                telescope: telescope.clone(),
                goal: goal.clone(),
                chain: chain.clone(),
            };
            let ty = record.statement();
            kernel::check_type(env, &empty, &ty, &fuel).map_err(DeclError::IllFormedType)?;
            let result = verify_theorem(env, &record, &fuel)?;
            let entry = Entry {
                name: name.clone(),
                ty,
                body: Some(telescope.close_lambda(result.witness.clone())),
                kind: EntryKind::Theorem(Box::new(record)),
            };
            (entry, Some(result))
        }
    };
    env.push(entry);
    Ok(result)
}

/// Per-declaration outcome of checking a source file.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub name: String,
    pub is_theorem: bool,
    pub result: Result<Option<ChainResult>, DeclError>,
}

/// Parses `text` against `env` and checks every declaration in order. A
/// declaration that fails is still made visible, as an axiom, so that the
/// rest of the file can be checked.
pub fn check_source(env: &Environment, text: &str, fuel_limit: u64) -> Result<(Environment, Vec<Outcome>), ParseError> {
    let file = parse_file_with(env, text)?;
    let mut env = env.clone();
    let mut outcomes = Vec::new();
    for decl in &file.declarations {
        let result = add_declaration(&mut env, decl, fuel_limit);
        if result.is_err() && !env.contains(decl.name()) {
            let ty = match decl {
                Decl::Def { ty, .. } | Decl::Axiom { ty, .. } => ty.clone(),
                Decl::Theorem { telescope, goal, .. } => telescope.close_pi(goal.clone()),
            };
            env.push(Entry {
                name: decl.name().to_string(),
                ty,
                body: None,
                kind: EntryKind::Axiom,
            });
        }
        outcomes.push(Outcome {
            name: decl.name().to_string(),
            is_theorem: matches!(decl, Decl::Theorem { .. }),
            result,
        });
    }
    Ok((env, outcomes))
}

/// Corpus sources in manifest order.
pub fn sources() -> Result<Vec<(&'static str, &'static str)>, LoadError> {
    MANIFEST
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|file| {
            SOURCES
                .iter()
                .find(|(name, _)| *name == file)
                .copied()
                .ok_or_else(|| LoadError::UnknownFile(file.to_string()))
        })
        .collect()
}

/// Loads the corpus. Every declaration is checked; the first failure aborts.
pub fn load() -> Result<Environment, LoadError> {
    load_with(DEFAULT_FUEL)
}

pub fn load_with(fuel_limit: u64) -> Result<Environment, LoadError> {
    let mut env = Environment::new();
    for (file, text) in sources()? {
        env = load_file(&env, file, text, fuel_limit)?;
    }
    Ok(env)
}

/// Checks one corpus file on top of `env`.
pub fn load_file(env: &Environment, file: &str, text: &str, fuel_limit: u64) -> Result<Environment, LoadError> {
    let parsed = parse_file_with(env, text).map_err(|source| LoadError::Parse {
        file: file.to_string(),
        source,
    })?;
    let mut env = env.clone();
    for decl in &parsed.declarations {
        add_declaration(&mut env, decl, fuel_limit).map_err(|source| LoadError::Declaration {
            file: file.to_string(),
            name: decl.name().to_string(),
            source: Box::new(source),
        })?;
    }
    Ok(env)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportEntry {
    pub name: String,
    pub result: Result<(), DeclError>,
}

impl ReportEntry {
    /// `OK name` or `FAIL name index reason`.
    pub fn line(&self) -> String {
        match &self.result {
            Ok(()) => format!("OK {}", self.name),
            Err(e) => format!("FAIL {} {} {}", self.name, e.link_index(), e),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.result.is_ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.result.is_err())
    }
}

/// Re-verifies every theorem of `env`, each against the entries that
/// precede it.
pub fn verify_all(env: &Environment) -> Report {
    verify_all_with(env, DEFAULT_FUEL)
}

pub fn verify_all_with(env: &Environment, fuel_limit: u64) -> Report {
    let entries = env
        .entries()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| match &e.kind {
            EntryKind::Theorem(record) => {
                let scope = env.prefix(i);
                let fuel = Fuel::new(fuel_limit);
                Some(ReportEntry {
                    name: record.name.clone(),
                    result: verify_theorem(&scope, record, &fuel).map(|_| ()),
                })
            }
            _ => None,
        })
        .collect();
    Report { entries }
}

/// The rule-to-theorem coverage map.
pub fn coverage() -> Vec<(&'static str, &'static str)> {
    COVERAGE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once('|'))
        .map(|(rule, name)| (rule.trim(), name.trim()))
        .collect()
}
