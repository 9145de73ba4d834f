//! Helpers shared by the integration tests and the acceptance suite.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use dchain::chain::Chain;
use dchain::env::{EntryKind, Environment};
use dchain::stdlib;
use dchain::surface::parse_term_with;
use dchain::{Context, Term, Tm};

/// Closed simple types the generator draws from.
#[derive(Clone, Debug, PartialEq)]
pub enum Ty {
    Nat,
    Unit,
    Prod(Box<Ty>, Box<Ty>),
    Sum(Box<Ty>, Box<Ty>),
    Arrow(Box<Ty>, Box<Ty>),
    /// `Id N n n` for a numeral `n`.
    Path(u64),
}

impl Ty {
    pub fn term(&self) -> Tm {
        match self {
            Ty::Nat => Term::nat(),
            Ty::Unit => Term::unit(),
            Ty::Prod(a, b) => Term::product(a.term(), b.term()),
            Ty::Sum(a, b) => Term::sum(a.term(), b.term()),
            Ty::Arrow(a, b) => Term::arrow(a.term(), b.term()),
            Ty::Path(n) => Term::id(Term::nat(), Term::numeral(*n), Term::numeral(*n)),
        }
    }

    pub fn random(rng: &mut StdRng, depth: u32) -> Ty {
        let leaf = depth == 0 || rng.gen_bool(0.4);
        if leaf {
            return match rng.gen_range(0..3) {
                0 => Ty::Nat,
                1 => Ty::Unit,
                _ => Ty::Path(rng.gen_range(0..3)),
            };
        }
        let (a, b) = (
            Box::new(Ty::random(rng, depth - 1)),
            Box::new(Ty::random(rng, depth - 1)),
        );
        match rng.gen_range(0..3) {
            0 => Ty::Prod(a, b),
            1 => Ty::Sum(a, b),
            _ => Ty::Arrow(a, b),
        }
    }
}

/// Generates well-typed terms with redexes of every eliminator.
pub struct Gen<'r> {
    pub rng: &'r mut StdRng,
}

impl Gen<'_> {
    /// A term of type `ty` in a context whose variables have types `ctx`,
    /// outermost first.
    pub fn term(&mut self, ty: &Ty, ctx: &mut Vec<Ty>, depth: u32) -> Tm {
        if depth > 0 && self.rng.gen_bool(0.35) {
            return self.elim(ty, ctx, depth - 1);
        }
        if self.rng.gen_bool(0.3) {
            let hits: Vec<usize> = (0..ctx.len()).filter(|&i| ctx[i] == *ty).collect();
            if !hits.is_empty() {
                let pos = hits[self.rng.gen_range(0..hits.len())];
                return Term::var(ctx.len() - 1 - pos);
            }
        }
        let d = depth.saturating_sub(1);
        match ty {
            Ty::Nat => {
                if depth == 0 || self.rng.gen_bool(0.5) {
                    Term::numeral(self.rng.gen_range(0..3))
                } else {
                    Term::succ(self.term(ty, ctx, d))
                }
            }
            Ty::Unit => Term::star(),
            Ty::Path(n) => Term::refl(Term::nat(), Term::numeral(*n)),
            Ty::Prod(a, b) => Term::pair(self.term(a, ctx, d), self.term(b, ctx, d)),
            Ty::Sum(a, b) => {
                if self.rng.gen_bool(0.5) {
                    Term::Inl {
                        value: self.term(a, ctx, d),
                        right: b.term(),
                    }
                    .into()
                } else {
                    Term::Inr {
                        value: self.term(b, ctx, d),
                        left: a.term(),
                    }
                    .into()
                }
            }
            Ty::Arrow(a, b) => {
                ctx.push((**a).clone());
                let body = self.term(b, ctx, d);
                ctx.pop();
                Term::lambda(a.term(), body)
            }
        }
    }

    fn under(&mut self, binders: &[Ty], ty: &Ty, ctx: &mut Vec<Ty>, depth: u32) -> Tm {
        ctx.extend(binders.iter().cloned());
        let body = self.term(ty, ctx, depth);
        ctx.truncate(ctx.len() - binders.len());
        binders.iter().rev().fold(body, |acc, b| Term::lambda(b.term(), acc))
    }

    fn elim(&mut self, ty: &Ty, ctx: &mut Vec<Ty>, depth: u32) -> Tm {
        let other = Ty::random(self.rng, 1);
        let motive = |scrutinee: &Ty| Term::lambda(scrutinee.term(), ty.term());
        match self.rng.gen_range(0..6) {
            0 => {
                let f = self.under(std::slice::from_ref(&other), ty, ctx, depth);
                Term::app(f, self.term(&other, ctx, depth))
            }
            1 => {
                let prod = Ty::Prod(Box::new(ty.clone()), Box::new(other.clone()));
                let handler = Term::lambda(ty.term(), Term::lambda(other.term(), Term::var(1)));
                Term::SigmaInd {
                    motive: motive(&prod),
                    handler,
                    scrutinee: self.term(&prod, ctx, depth),
                }
                .into()
            }
            2 => {
                let base = self.term(ty, ctx, depth);
                let step = self.under(&[Ty::Nat, ty.clone()], ty, ctx, depth);
                Term::NatInd {
                    motive: motive(&Ty::Nat),
                    handler: Term::pair(base, step),
                    scrutinee: Term::numeral(self.rng.gen_range(0..4)),
                }
                .into()
            }
            3 => {
                let right = Ty::random(self.rng, 1);
                let sum = Ty::Sum(Box::new(other.clone()), Box::new(right.clone()));
                Term::SumInd {
                    motive: motive(&sum),
                    on_left: self.under(&[other], ty, ctx, depth),
                    on_right: self.under(&[right], ty, ctx, depth),
                    scrutinee: self.term(&sum, ctx, depth),
                }
                .into()
            }
            4 => Term::UnitInd {
                motive: motive(&Ty::Unit),
                handler: self.term(ty, ctx, depth),
                scrutinee: self.term(&Ty::Unit, ctx, depth),
            }
            .into(),
            _ => {
                let f = Ty::Arrow(Box::new(other.clone()), Box::new(ty.clone()));
                let g = self.term(&f, ctx, depth);
                Term::app(g, self.term(&other, ctx, depth))
            }
        }
    }
}

/// A closed well-typed term with its type.
pub fn random_typed(rng: &mut StdRng) -> (Tm, Tm) {
    let ty = Ty::random(rng, 2);
    let t = Gen { rng }.term(&ty, &mut Vec::new(), 4);
    (t, ty.term())
}

/// `code m n` computed directly from its defining clauses: `true` for Unit,
/// `false` for Empty.
pub fn code_oracle(m: u64, n: u64) -> bool {
    match (m, n) {
        (0, 0) => true,
        (0, _) | (_, 0) => false,
        (m, n) => code_oracle(m - 1, n - 1),
    }
}

pub fn term(env: &Environment, text: &str) -> Tm {
    parse_term_with(env, &Context::new(), text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Theorem names of the corpus, in load order.
pub fn theorem_names(env: &Environment) -> Vec<String> {
    env.theorems().map(|r| r.name.clone()).collect()
}

/// Terms that are ill typed in every context.
pub fn ill_typed(rng: &mut StdRng) -> Tm {
    match rng.gen_range(0..3) {
        0 => Term::app(Term::star(), Term::star()),
        1 => Term::succ(Term::star()),
        _ => Term::pair(Term::zero(), Term::app(Term::zero(), Term::zero())),
    }
}

/// Replaces one randomly chosen witness of `chain` (a link witness or the
/// closing inhabitant) by an ill-typed term. Returns the 1-based position
/// of the mutated item, counting the closing inhabitant last.
pub fn corrupt(chain: &Chain, rng: &mut StdRng) -> (Chain, usize) {
    let mut slots: Vec<usize> = chain
        .links
        .iter()
        .enumerate()
        .filter(|(_, l)| l.witness.is_some())
        .map(|(i, _)| i)
        .collect();
    if chain.closing.is_some() {
        slots.push(chain.links.len());
    }
    assert!(!slots.is_empty(), "chain without witnesses");
    let pick = slots[rng.gen_range(0..slots.len())];
    let mut mutated = chain.clone();
    let bad = ill_typed(rng);
    match mutated.links.get_mut(pick) {
        Some(link) => link.witness = Some(bad),
        None => mutated.closing.as_mut().expect("closing").inhabitant = bad,
    }
    (mutated, pick + 1)
}

/// Mutates every corpus chain once and re-verifies the whole environment.
/// Returns, per theorem, the names reported as failing.
pub fn mutation_sweep(env: &Environment, rng: &mut StdRng) -> Vec<(String, Vec<String>)> {
    let records: Vec<_> = env
        .entries()
        .iter()
        .filter_map(|e| match &e.kind {
            EntryKind::Theorem(r) => Some((**r).clone()),
            _ => None,
        })
        .collect();
    records
        .iter()
        .map(|r| {
            let (chain, _) = corrupt(&r.chain, rng);
            let mut mutated = env.clone();
            assert!(mutated.replace_chain(&r.name, chain));
            let failing = stdlib::verify_all(&mutated)
                .failures()
                .map(|f| f.name.clone())
                .collect();
            (r.name.clone(), failing)
        })
        .collect()
}
