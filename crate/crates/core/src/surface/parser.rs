//! Recursive-descent parser producing nameless terms.
//!
//! Names are resolved while parsing: bound variables become indices, names
//! of environment entries become constants. The `a = b` sugar needs the type
//! of `a`, which is inferred by the kernel against the declarations parsed so
//! far.

use std::sync::Arc;

use super::lexer::{lex, Tok, Token};
use super::{Decl, ParseError, ParseErrorKind, SourceFile};
use crate::chain::{Chain, Closing, Link, LinkKind, EQUIV};
use crate::env::{Entry, EntryKind, Environment};
use crate::kernel::{self, Fuel};
use crate::syntax::{Context, Term, Tm};

const DECL_KEYWORDS: &[&str] = &["def", "axiom", "theorem", "proof", "qed"];

const TERM_KEYWORDS: &[&str] = &[
    "N",
    "Unit",
    "Empty",
    "zero",
    "star",
    "succ",
    "inl",
    "inr",
    "Id",
    "refl",
    "sigma-ind",
    "sum-ind",
    "nat-ind",
    "id-ind",
    "based-ind",
    "empty-ind",
    "unit-ind",
];

pub fn is_reserved(name: &str) -> bool {
    DECL_KEYWORDS.contains(&name) || TERM_KEYWORDS.contains(&name) || universe_level(name).is_some()
}

fn universe_level(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('U')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    env: Environment,
    ctx: Context,
    /// Unknown names become constants instead of errors.
    lenient: bool,
    in_proof: bool,
    parens: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(text: &str, env: Environment, ctx: Context, lenient: bool) -> PResult<Self> {
        Ok(Self {
            toks: lex(text)?,
            pos: 0,
            env,
            ctx,
            lenient,
            in_proof: false,
            parens: 0,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_tok(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.tok)
    }

    fn peek_at(&self, i: usize) -> Option<&Tok> {
        self.toks.get(i).map(|t| &t.tok)
    }

    fn location(&self) -> (usize, usize) {
        match self.peek() {
            Some(t) => (t.line, t.col),
            None => match self.toks.last() {
                Some(t) => (t.line, t.col + 1),
                None => (1, 1),
            },
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.location();
        ParseError::syntax(line, col, message)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.tok.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek_tok() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek_tok(), Some(Tok::Ident(s)) if s == kw)
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek_tok() {
            Some(Tok::Ident(s)) if !is_reserved(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub fn trailing(&self) -> ParseError {
        self.unexpected("end of input")
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Inside a proof block a new line starts a new chain item unless a
    /// parenthesis is still open.
    fn at_item_boundary(&self) -> bool {
        self.in_proof && self.parens == 0 && self.peek().is_some_and(|t| t.line_start)
    }

    fn open(&mut self, tok: Tok) -> PResult<()> {
        self.expect(tok)?;
        self.parens += 1;
        Ok(())
    }

    fn close(&mut self, tok: Tok) -> PResult<()> {
        self.expect(tok)?;
        self.parens -= 1;
        Ok(())
    }

    // ---------------------------------------------------------------- terms

    /// Scans `(x y : T) (z : S) ...` starting at `from`; returns the position
    /// after the last group, or `None` when no binder group starts there.
    fn scan_groups(&self, mut from: usize) -> Option<usize> {
        let mut found = false;
        loop {
            if self.peek_at(from) != Some(&Tok::LParen) {
                break;
            }
            let mut i = from + 1;
            let mut names = 0;
            while let Some(Tok::Ident(s)) = self.peek_at(i) {
                if is_reserved(s) {
                    break;
                }
                names += 1;
                i += 1;
            }
            if names == 0 || self.peek_at(i) != Some(&Tok::Colon) {
                break;
            }
            let mut depth = 1;
            i += 1;
            while depth > 0 {
                match self.peek_at(i)? {
                    Tok::LParen => depth += 1,
                    Tok::RParen => depth -= 1,
                    _ => {}
                }
                i += 1;
            }
            found = true;
            from = i;
        }
        found.then_some(from)
    }

    fn binder_groups_then(&self, op: &Tok) -> bool {
        self.scan_groups(self.pos)
            .is_some_and(|end| self.peek_at(end) == Some(op))
    }

    /// Parses binder groups, pushing every name onto the scope. Returns the
    /// number of names pushed.
    fn groups(&mut self) -> PResult<usize> {
        let mut count = 0;
        while self.scan_groups(self.pos).is_some() {
            self.open(Tok::LParen)?;
            let mut names = Vec::new();
            while !matches!(self.peek_tok(), Some(Tok::Colon)) {
                names.push(self.ident()?);
            }
            self.expect(Tok::Colon)?;
            let ty = self.term()?;
            self.close(Tok::RParen)?;
            for (k, name) in names.into_iter().enumerate() {
                self.ctx.push(name, crate::syntax::shift_up(&ty, k));
                count += 1;
            }
        }
        Ok(count)
    }

    /// Pops `count` binders, wrapping `body` in the binder built by `wrap`.
    fn close_binders(&mut self, count: usize, mut body: Tm, wrap: fn(Tm, Tm) -> Tm) -> Tm {
        for _ in 0..count {
            let (_, ty) = self.ctx.pop().expect("binder pushed by groups");
            body = wrap(ty, body);
        }
        body
    }

    pub fn term(&mut self) -> PResult<Tm> {
        if self.eat(&Tok::Backslash) {
            return self.lambda();
        }
        self.arrow()
    }

    fn lambda(&mut self) -> PResult<Tm> {
        let count = if self.scan_groups(self.pos).is_some() {
            self.groups()?
        } else {
            let mut names = Vec::new();
            while !matches!(self.peek_tok(), Some(Tok::Colon)) {
                names.push(self.ident()?);
            }
            if names.is_empty() {
                return Err(self.unexpected("a binder"));
            }
            self.expect(Tok::Colon)?;
            let ty = self.term()?;
            for (k, name) in names.iter().enumerate() {
                self.ctx.push(name.clone(), crate::syntax::shift_up(&ty, k));
            }
            names.len()
        };
        let body = self.expect(Tok::Dot).and_then(|_| self.term());
        match body {
            Ok(body) => Ok(self.close_binders(count, body, Term::lambda)),
            Err(e) => {
                for _ in 0..count {
                    self.ctx.pop();
                }
                Err(e)
            }
        }
    }

    fn arrow(&mut self) -> PResult<Tm> {
        if self.binder_groups_then(&Tok::Arrow) {
            let count = self.groups()?;
            let body = self.expect(Tok::Arrow).and_then(|_| self.term());
            return self.finish_binders(count, body, Term::pi);
        }
        if self.binder_groups_then(&Tok::Star) {
            let count = self.groups()?;
            let body = self.expect(Tok::Star).and_then(|_| self.term());
            return self.finish_binders(count, body, Term::sigma);
        }
        let lhs = self.equation()?;
        if !self.at_item_boundary() && self.eat(&Tok::Arrow) {
            let rhs = self.term()?;
            return Ok(Term::arrow(lhs, rhs));
        }
        Ok(lhs)
    }

    fn finish_binders(&mut self, count: usize, body: PResult<Tm>, wrap: fn(Tm, Tm) -> Tm) -> PResult<Tm> {
        match body {
            Ok(body) => Ok(self.close_binders(count, body, wrap)),
            Err(e) => {
                for _ in 0..count {
                    self.ctx.pop();
                }
                Err(e)
            }
        }
    }

    fn equation(&mut self) -> PResult<Tm> {
        let (line, col) = self.location();
        let lhs = self.sum()?;
        if self.at_item_boundary() {
            return Ok(lhs);
        }
        if self.eat(&Tok::Eq) {
            let rhs = self.sum()?;
            let ty = kernel::infer(&self.env, &self.ctx, &lhs, &Fuel::default()).map_err(|e| ParseError {
                line,
                col,
                kind: ParseErrorKind::EqualityType(e.to_string()),
            })?;
            return Ok(Term::id(ty, lhs, rhs));
        }
        if self.eat(&Tok::Tilde) {
            let rhs = self.sum()?;
            return Ok(Term::apps(Term::constant(EQUIV), [lhs, rhs]));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> PResult<Tm> {
        let lhs = self.product()?;
        if !self.at_item_boundary() && self.eat(&Tok::Plus) {
            let rhs = self.sum()?;
            return Ok(Term::sum(lhs, rhs));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> PResult<Tm> {
        let lhs = self.application()?;
        if !self.at_item_boundary() && self.eat(&Tok::Star) {
            let rhs = self.product()?;
            return Ok(Term::product(lhs, rhs));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        if self.at_item_boundary() {
            return false;
        }
        match self.peek_tok() {
            Some(Tok::Ident(s)) => !DECL_KEYWORDS.contains(&s.as_str()),
            Some(Tok::Number(_)) | Some(Tok::LParen) => true,
            _ => false,
        }
    }

    fn atoms<const K: usize>(&mut self) -> PResult<[Tm; K]> {
        let mut out: Vec<Tm> = Vec::with_capacity(K);
        for _ in 0..K {
            if !self.starts_atom() {
                return Err(self.unexpected("an argument"));
            }
            out.push(self.atom()?);
        }
        Ok(out.try_into().expect("K atoms"))
    }

    fn application(&mut self) -> PResult<Tm> {
        let mut head = self.head()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            head = Term::app(head, arg);
        }
        Ok(head)
    }

    /// A keyword form with its fixed arguments, or an atom.
    fn head(&mut self) -> PResult<Tm> {
        let Some(Tok::Ident(kw)) = self.peek_tok() else {
            return self.atom();
        };
        let kw = kw.clone();
        let form = match kw.as_str() {
            "succ" | "inl" | "inr" | "Id" | "refl" | "sigma-ind" | "sum-ind" | "nat-ind" | "id-ind" | "based-ind"
            | "empty-ind" | "unit-ind" => kw,
            _ => return self.atom(),
        };
        self.pos += 1;
        Ok(match form.as_str() {
            "succ" => {
                let [n] = self.atoms()?;
                Term::succ(n)
            }
            "inl" | "inr" => {
                self.open(Tok::LBracket)?;
                let other = self.term()?;
                self.close(Tok::RBracket)?;
                let [value] = self.atoms()?;
                Arc::new(if form == "inl" {
                    Term::Inl { value, right: other }
                } else {
                    Term::Inr { value, left: other }
                })
            }
            "Id" => {
                let [a, x, y] = self.atoms()?;
                Term::id(a, x, y)
            }
            "refl" => {
                let [a, x] = self.atoms()?;
                Term::refl(a, x)
            }
            "sigma-ind" => {
                let [motive, handler, scrutinee] = self.atoms()?;
                Arc::new(Term::SigmaInd {
                    motive,
                    handler,
                    scrutinee,
                })
            }
            "sum-ind" => {
                let [motive, on_left, on_right, scrutinee] = self.atoms()?;
                Arc::new(Term::SumInd {
                    motive,
                    on_left,
                    on_right,
                    scrutinee,
                })
            }
            "nat-ind" => {
                let [motive, handler, scrutinee] = self.atoms()?;
                Arc::new(Term::NatInd {
                    motive,
                    handler,
                    scrutinee,
                })
            }
            "id-ind" => {
                let [motive, handler, lhs, rhs, path] = self.atoms()?;
                Arc::new(Term::IdInd {
                    motive,
                    handler,
                    lhs,
                    rhs,
                    path,
                })
            }
            "based-ind" => {
                let [ty, base, motive, handler, endpoint, path] = self.atoms()?;
                Arc::new(Term::BasedIdInd {
                    ty,
                    base,
                    motive,
                    handler,
                    endpoint,
                    path,
                })
            }
            "empty-ind" => {
                let [motive, scrutinee] = self.atoms()?;
                Arc::new(Term::EmptyInd { motive, scrutinee })
            }
            "unit-ind" => {
                let [motive, handler, scrutinee] = self.atoms()?;
                Arc::new(Term::UnitInd {
                    motive,
                    handler,
                    scrutinee,
                })
            }
            _ => unreachable!(),
        })
    }

    fn atom(&mut self) -> PResult<Tm> {
        let (line, col) = self.location();
        match self.peek_tok().cloned() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(Term::numeral(n))
            }
            Some(Tok::LParen) => {
                self.open(Tok::LParen)?;
                // `(a, b, c)` nests to the right: `(a, (b, c))`.
                let mut items = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    items.push(self.term()?);
                }
                let mut t = items.pop().expect("at least one item");
                while let Some(item) = items.pop() {
                    t = Term::pair(item, t);
                }
                self.close(Tok::RParen)?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = universe_level(&name) {
                    self.pos += 1;
                    return Ok(Term::universe(i));
                }
                let t = match name.as_str() {
                    "N" => Term::nat(),
                    "Unit" => Term::unit(),
                    "Empty" => Term::empty(),
                    "zero" => Term::zero(),
                    "star" => Term::star(),
                    _ if is_reserved(&name) => {
                        return Err(self.error(format!("`{name}` needs its arguments here; wrap it in parentheses")))
                    }
                    _ => {
                        self.pos += 1;
                        return self.resolve(&name, line, col);
                    }
                };
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn resolve(&self, name: &str, line: usize, col: usize) -> PResult<Tm> {
        if let Some(i) = self.ctx.index_of(name) {
            return Ok(Term::var(i));
        }
        if self.lenient || self.env.contains(name) {
            return Ok(Term::constant(name));
        }
        Err(ParseError {
            line,
            col,
            kind: ParseErrorKind::Unbound(name.to_string()),
        })
    }

    // --------------------------------------------------------- declarations

    pub fn source_file(&mut self) -> PResult<SourceFile> {
        let mut declarations = Vec::new();
        while !self.at_end() {
            let decl = self.declaration()?;
            self.record(&decl);
            declarations.push(decl);
        }
        Ok(SourceFile { declarations })
    }

    /// Makes a declaration visible to the rest of the file.
    fn record(&mut self, decl: &Decl) {
        let entry = match decl {
            Decl::Def { name, ty, body } => Entry {
                name: name.clone(),
                ty: ty.clone(),
                body: Some(body.clone()),
                kind: EntryKind::Definition,
            },
            Decl::Axiom { name, ty } => Entry {
                name: name.clone(),
                ty: ty.clone(),
                body: None,
                kind: EntryKind::Axiom,
            },
            Decl::Theorem {
                name, telescope, goal, ..
            } => Entry {
                name: name.clone(),
                ty: telescope.close_pi(goal.clone()),
                body: None,
                kind: EntryKind::Axiom,
            },
        };
        self.env.push(entry);
    }

    fn declaration(&mut self) -> PResult<Decl> {
        let kw = match self.peek_tok() {
            Some(Tok::Ident(s)) if matches!(s.as_str(), "def" | "axiom" | "theorem") => s.clone(),
            _ => return Err(self.unexpected("`def`, `axiom` or `theorem`")),
        };
        self.pos += 1;
        let (line, col) = self.location();
        let name = self.ident()?;
        if self.env.contains(&name) {
            return Err(ParseError {
                line,
                col,
                kind: ParseErrorKind::Duplicate(name),
            });
        }
        let anchor = match (kw.as_str(), self.peek_tok()) {
            ("theorem", Some(Tok::Str(s))) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        };
        let outer = self.ctx.len();
        let result = self.declaration_body(&kw, name, anchor);
        while self.ctx.len() > outer {
            self.ctx.pop();
        }
        self.in_proof = false;
        self.parens = 0;
        result
    }

    fn declaration_body(&mut self, kw: &str, name: String, anchor: Option<String>) -> PResult<Decl> {
        self.groups()?;
        let telescope = self.ctx.clone();
        self.expect(Tok::Colon)?;
        let goal = self.term()?;
        match kw {
            "def" => {
                self.expect(Tok::Define)?;
                let body = self.term()?;
                Ok(Decl::Def {
                    name,
                    ty: telescope.close_pi(goal),
                    body: telescope.close_lambda(body),
                })
            }
            "axiom" => Ok(Decl::Axiom {
                name,
                ty: telescope.close_pi(goal),
            }),
            _ => {
                if !self.is_keyword("proof") {
                    return Err(self.unexpected("`proof`"));
                }
                self.pos += 1;
                self.in_proof = true;
                let chain = self.proof(telescope.clone(), goal.clone())?;
                Ok(Decl::Theorem {
                    name,
                    anchor,
                    telescope,
                    goal,
                    chain,
                })
            }
        }
    }

    fn justification(&mut self) -> Option<String> {
        match self.peek_tok() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        }
    }

    fn marker(&self) -> Option<LinkKind> {
        let t = self.peek()?;
        match t.tok {
            Tok::LeftArrow => Some(LinkKind::Consequence),
            Tok::DefEq => Some(LinkKind::DefEqLink),
            Tok::Tilde => Some(LinkKind::EquivLink),
            _ => None,
        }
    }

    /// Parses chain items up to `qed`.
    fn proof(&mut self, context: Context, statement: Tm) -> PResult<Chain> {
        let mut goal = None;
        let mut current = None;
        let mut links = Vec::new();
        let mut pending: Option<(LinkKind, Option<Tm>, Option<String>)> = None;
        let mut closing = None;
        loop {
            if self.is_keyword("qed") {
                self.pos += 1;
                break;
            }
            if self.at_end() {
                return Err(self.unexpected("`qed`"));
            }
            if closing.is_some() {
                return Err(self.unexpected("`qed` after the closing link"));
            }
            if let Some(kind) = self.marker() {
                if pending.is_some() {
                    return Err(self.error("two links without a type between them"));
                }
                self.pos += 1;
                let upper = current.get_or_insert_with(|| statement.clone()).clone();
                goal.get_or_insert_with(|| upper.clone());
                let witness = match kind {
                    LinkKind::DefEqLink => None,
                    _ => Some(self.term()?),
                };
                pending = Some((kind, witness, self.justification()));
                continue;
            }
            if self.eat(&Tok::Inhabits) {
                if pending.is_some() {
                    return Err(self.error("closing link directly after a link; a type is missing"));
                }
                let bottom = current.get_or_insert_with(|| statement.clone()).clone();
                goal.get_or_insert_with(|| bottom.clone());
                let inhabitant = self.term()?;
                closing = Some(Closing {
                    bottom,
                    inhabitant,
                    justification: self.justification(),
                });
                continue;
            }
            let ty = self.term()?;
            match pending.take() {
                Some((kind, witness, justification)) => links.push(Link {
                    kind,
                    upper: current.clone().expect("a link follows a type"),
                    lower: ty.clone(),
                    witness,
                    justification,
                }),
                None if current.is_some() => {
                    return Err(self.error("two types without a link between them"));
                }
                None => goal = Some(ty.clone()),
            }
            current = Some(ty);
        }
        if pending.is_some() {
            return Err(self.error("the last link has no type below it"));
        }
        Ok(Chain {
            context,
            goal: goal.unwrap_or(statement),
            links,
            closing,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{parse_file, parse_term};

    #[test]
    fn lambda_and_pi() {
        assert_eq!(
            parse_term("\\x:N. succ x").unwrap(),
            Term::lambda(Term::nat(), Term::succ(Term::var(0)))
        );
        assert_eq!(
            parse_term("(x:A) -> B x").unwrap(),
            Term::pi(Term::constant("A"), Term::app(Term::constant("B"), Term::var(0)))
        );
        assert_eq!(
            parse_term("refl N zero").unwrap(),
            Term::refl(Term::nat(), Term::zero())
        );
    }

    #[test]
    fn precedence() {
        let t = parse_term("A * B + C -> D").unwrap();
        let expected = Term::arrow(
            Term::sum(
                Term::product(Term::constant("A"), Term::constant("B")),
                Term::constant("C"),
            ),
            Term::constant("D"),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn multi_name_binders() {
        let t = parse_term("(A B : U0) -> A -> B").unwrap();
        let expected = Term::pi(
            Term::universe(0),
            Term::pi(Term::universe(0), Term::arrow(Term::var(1), Term::var(0))),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn equality_sugar_infers_type() {
        assert_eq!(
            parse_term("zero = succ zero").unwrap(),
            Term::id(Term::nat(), Term::zero(), Term::numeral(1))
        );
        assert!(parse_term("(\\x:N. x) = zero").is_ok());
    }

    #[test]
    fn dependent_sigma() {
        let t = parse_term("(x:N) * x = x").unwrap();
        assert_eq!(
            t,
            Term::sigma(Term::nat(), Term::id(Term::nat(), Term::var(0), Term::var(0)))
        );
    }

    #[test]
    fn theorem_chain_markers() {
        let src = "\
theorem t (A : U0) (a : A) : A proof
  A
<- \\x:A. x \"identity\"
  A
== \"nothing\"
  A
~= equiv_refl A
  A
:: a
qed";
        let file = parse_file(src);
        // equiv_refl is unbound in an empty environment
        assert!(matches!(
            file.unwrap_err().kind,
            ParseErrorKind::Unbound(ref n) if n == "equiv_refl"
        ));
    }

    #[test]
    fn chain_kinds_in_order() {
        let src = "\
axiom e : (A : U0) -> A -> A
theorem t (A : U0) (a : A) : A proof
  A
<- \\x:A. x \"identity\"
  A
== \"nothing\"
  A
~= e A
  A
:: a
qed";
        let file = parse_file(src).unwrap();
        let Decl::Theorem { chain, .. } = &file.declarations[1] else {
            panic!()
        };
        assert_eq!(
            chain.kinds(),
            vec![LinkKind::Consequence, LinkKind::DefEqLink, LinkKind::EquivLink]
        );
        assert_eq!(chain.links[0].justification.as_deref(), Some("identity"));
        assert!(chain.closing.is_some());
    }

    #[test]
    fn forward_reference_is_unbound() {
        let err = parse_file("def a : N := b\ndef b : N := zero").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unbound("b".into()));
        assert_eq!((err.line, err.col), (1, 14));
    }

    #[test]
    fn empty_file() {
        assert!(parse_file("").unwrap().declarations.is_empty());
        assert!(parse_file("-- only a comment\n").unwrap().declarations.is_empty());
    }

    #[test]
    fn witness_ends_at_line_break() {
        let src = "\
def f : N -> N := \\n:N. succ n
theorem t : N proof
  N
<- f
  N
:: zero
qed";
        let file = parse_file(src).unwrap();
        let Decl::Theorem { chain, .. } = &file.declarations[1] else {
            panic!()
        };
        assert_eq!(chain.links[0].witness, Some(Term::constant("f")));
    }

    #[test]
    fn parenthesised_terms_span_lines() {
        let src = "\
theorem t : N proof
  N
== \"same\"
  (N
     )
:: zero
qed";
        assert!(parse_file(src).is_ok());
    }
}
