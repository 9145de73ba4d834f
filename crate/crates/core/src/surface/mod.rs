//! Concrete syntax: parsing and printing of terms, declarations and chains.

mod lexer;
mod parser;
mod printer;

use thiserror::Error;

pub use parser::is_reserved;
pub use printer::{print_chain, print_decl, print_term, print_term_in};

use crate::chain::Chain;
use crate::env::Environment;
use crate::syntax::{Context, Tm};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("`{0}` is already declared")]
    Duplicate(String),
    #[error("cannot infer the type of the left side of `=`: {0}")]
    EqualityType(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            col,
            kind: ParseErrorKind::Syntax(message.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    /// Type and body are closed over the declared parameters.
    Def {
        name: String,
        ty: Tm,
        body: Tm,
    },
    Axiom {
        name: String,
        ty: Tm,
    },
    Theorem {
        name: String,
        anchor: Option<String>,
        telescope: Context,
        goal: Tm,
        chain: Chain,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Def { name, .. } | Decl::Axiom { name, .. } | Decl::Theorem { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SourceFile {
    pub declarations: Vec<Decl>,
}

fn whole_term(mut p: parser::Parser) -> Result<Tm, ParseError> {
    let t = p.term()?;
    if !p.at_end() {
        return Err(p.trailing());
    }
    Ok(t)
}

/// Parses a standalone term. Names that are not bound in the term are read
/// as constants.
pub fn parse_term(text: &str) -> Result<Tm, ParseError> {
    whole_term(parser::Parser::new(text, Environment::new(), Context::new(), true)?)
}

/// Parses a term in scope of `ctx`; every free name must be a context
/// variable or an entry of `env`.
pub fn parse_term_with(env: &Environment, ctx: &Context, text: &str) -> Result<Tm, ParseError> {
    whole_term(parser::Parser::new(text, env.clone(), ctx.clone(), false)?)
}

pub fn parse_file(text: &str) -> Result<SourceFile, ParseError> {
    parse_file_with(&Environment::new(), text)
}

/// Parses a file whose declarations may refer to the entries of `env`.
pub fn parse_file_with(env: &Environment, text: &str) -> Result<SourceFile, ParseError> {
    parser::Parser::new(text, env.clone(), Context::new(), false)?.source_file()
}
