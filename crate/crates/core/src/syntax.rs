//! Nameless term language and typing contexts.
//!
//! Bound variables are de Bruijn indices: `Var(0)` is the innermost binder.
//! The only binding positions are the codomains of `Pi` and `Sigma` and the
//! body of `Lambda`; eliminators take their motives and handlers as ordinary
//! (usually lambda) terms.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Shared pointer to a term.
pub type Tm = Arc<Term>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Const(Arc<str>),
    Universe(u32),

    Pi(Tm, Tm),
    Lambda(Tm, Tm),
    App(Tm, Tm),

    Sigma(Tm, Tm),
    Pair(Tm, Tm),
    SigmaInd {
        motive: Tm,
        handler: Tm,
        scrutinee: Tm,
    },

    Sum(Tm, Tm),
    /// `inl` carrying the right-hand summand.
    Inl {
        value: Tm,
        right: Tm,
    },
    /// `inr` carrying the left-hand summand.
    Inr {
        value: Tm,
        left: Tm,
    },
    SumInd {
        motive: Tm,
        on_left: Tm,
        on_right: Tm,
        scrutinee: Tm,
    },

    Nat,
    Zero,
    Succ(Tm),
    /// `handler` is a pair `(base, step)`.
    NatInd {
        motive: Tm,
        handler: Tm,
        scrutinee: Tm,
    },

    Empty,
    EmptyInd {
        motive: Tm,
        scrutinee: Tm,
    },

    Unit,
    Star,
    UnitInd {
        motive: Tm,
        handler: Tm,
        scrutinee: Tm,
    },

    Id(Tm, Tm, Tm),
    Refl {
        ty: Tm,
        point: Tm,
    },
    IdInd {
        motive: Tm,
        handler: Tm,
        lhs: Tm,
        rhs: Tm,
        path: Tm,
    },
    BasedIdInd {
        ty: Tm,
        base: Tm,
        motive: Tm,
        handler: Tm,
        endpoint: Tm,
        path: Tm,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("shifting index {index} by {amount} would make it negative")]
pub struct NegativeIndex {
    pub index: usize,
    pub amount: i64,
}

impl Term {
    pub fn var(i: usize) -> Tm {
        Arc::new(Term::Var(i))
    }

    pub fn constant(name: &str) -> Tm {
        Arc::new(Term::Const(Arc::from(name)))
    }

    pub fn universe(level: u32) -> Tm {
        Arc::new(Term::Universe(level))
    }

    pub fn pi(domain: Tm, codomain: Tm) -> Tm {
        Arc::new(Term::Pi(domain, codomain))
    }

    /// Non-dependent function type; `codomain` lives in the outer scope.
    pub fn arrow(domain: Tm, codomain: Tm) -> Tm {
        Arc::new(Term::Pi(domain, shift_up(&codomain, 1)))
    }

    pub fn lambda(domain: Tm, body: Tm) -> Tm {
        Arc::new(Term::Lambda(domain, body))
    }

    pub fn app(f: Tm, a: Tm) -> Tm {
        Arc::new(Term::App(f, a))
    }

    pub fn apps(f: Tm, args: impl IntoIterator<Item = Tm>) -> Tm {
        args.into_iter().fold(f, Term::app)
    }

    pub fn sigma(domain: Tm, codomain: Tm) -> Tm {
        Arc::new(Term::Sigma(domain, codomain))
    }

    pub fn product(left: Tm, right: Tm) -> Tm {
        Arc::new(Term::Sigma(left, shift_up(&right, 1)))
    }

    pub fn pair(a: Tm, b: Tm) -> Tm {
        Arc::new(Term::Pair(a, b))
    }

    pub fn sum(a: Tm, b: Tm) -> Tm {
        Arc::new(Term::Sum(a, b))
    }

    pub fn nat() -> Tm {
        Arc::new(Term::Nat)
    }

    pub fn zero() -> Tm {
        Arc::new(Term::Zero)
    }

    pub fn succ(t: Tm) -> Tm {
        Arc::new(Term::Succ(t))
    }

    pub fn numeral(n: u64) -> Tm {
        (0..n).fold(Term::zero(), |t, _| Term::succ(t))
    }

    pub fn unit() -> Tm {
        Arc::new(Term::Unit)
    }

    pub fn star() -> Tm {
        Arc::new(Term::Star)
    }

    pub fn empty() -> Tm {
        Arc::new(Term::Empty)
    }

    pub fn id(ty: Tm, lhs: Tm, rhs: Tm) -> Tm {
        Arc::new(Term::Id(ty, lhs, rhs))
    }

    pub fn refl(ty: Tm, point: Tm) -> Tm {
        Arc::new(Term::Refl { ty, point })
    }

    /// Reads back `succ^n zero` as `n`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                Term::Zero => return Some(n),
                Term::Succ(p) => {
                    n += 1;
                    t = p;
                }
                _ => return None,
            }
        }
    }

    /// Whether `Var(depth)` (the variable bound `depth` binders out) occurs free.
    pub fn mentions(&self, index: usize) -> bool {
        let mut found = false;
        visit(self, 0, &mut |i, depth| {
            if i == index + depth {
                found = true;
            }
        });
        found
    }

    /// Largest free index plus one; zero for closed terms.
    pub fn free_bound(&self) -> usize {
        let mut bound = 0;
        visit(self, 0, &mut |i, depth| {
            if i >= depth {
                bound = bound.max(i - depth + 1);
            }
        });
        bound
    }

    pub fn is_closed(&self) -> bool {
        self.free_bound() == 0
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        let mut n = 1;
        for_each_child(self, |c, _| n += c.size());
        n
    }
}

/// Calls `f(child, binders_added)` for each immediate subterm.
pub fn for_each_child(t: &Term, mut f: impl FnMut(&Tm, usize)) {
    use Term::*;
    match t {
        Var(_) | Const(_) | Universe(_) | Nat | Zero | Empty | Unit | Star => {}
        Pi(a, b) | Lambda(a, b) | Sigma(a, b) => {
            f(a, 0);
            f(b, 1);
        }
        App(a, b) | Pair(a, b) | Sum(a, b) => {
            f(a, 0);
            f(b, 0);
        }
        Succ(a) => f(a, 0),
        Inl { value, right } => {
            f(value, 0);
            f(right, 0);
        }
        Inr { value, left } => {
            f(value, 0);
            f(left, 0);
        }
        SigmaInd {
            motive,
            handler,
            scrutinee,
        }
        | NatInd {
            motive,
            handler,
            scrutinee,
        }
        | UnitInd {
            motive,
            handler,
            scrutinee,
        } => {
            f(motive, 0);
            f(handler, 0);
            f(scrutinee, 0);
        }
        SumInd {
            motive,
            on_left,
            on_right,
            scrutinee,
        } => {
            f(motive, 0);
            f(on_left, 0);
            f(on_right, 0);
            f(scrutinee, 0);
        }
        EmptyInd { motive, scrutinee } => {
            f(motive, 0);
            f(scrutinee, 0);
        }
        Id(a, b, c) => {
            f(a, 0);
            f(b, 0);
            f(c, 0);
        }
        Refl { ty, point } => {
            f(ty, 0);
            f(point, 0);
        }
        IdInd {
            motive,
            handler,
            lhs,
            rhs,
            path,
        } => {
            f(motive, 0);
            f(handler, 0);
            f(lhs, 0);
            f(rhs, 0);
            f(path, 0);
        }
        BasedIdInd {
            ty,
            base,
            motive,
            handler,
            endpoint,
            path,
        } => {
            f(ty, 0);
            f(base, 0);
            f(motive, 0);
            f(handler, 0);
            f(endpoint, 0);
            f(path, 0);
        }
    }
}

fn visit(t: &Term, depth: usize, f: &mut impl FnMut(usize, usize)) {
    if let Term::Var(i) = t {
        f(*i, depth);
        return;
    }
    for_each_child(t, |c, extra| visit(c, depth + extra, f));
}

/// Rebuilds `t`, replacing every variable via `on_var(index, depth)`.
fn map_vars<E>(t: &Tm, depth: usize, on_var: &mut impl FnMut(usize, usize) -> Result<Tm, E>) -> Result<Tm, E> {
    use Term::*;
    let mut go = |c: &Tm, extra: usize| map_vars(c, depth + extra, on_var);
    Ok(Arc::new(match &**t {
        Var(i) => return on_var(*i, depth),
        Const(_) | Universe(_) | Nat | Zero | Empty | Unit | Star => return Ok(t.clone()),
        Pi(a, b) => Pi(go(a, 0)?, go(b, 1)?),
        Lambda(a, b) => Lambda(go(a, 0)?, go(b, 1)?),
        Sigma(a, b) => Sigma(go(a, 0)?, go(b, 1)?),
        App(a, b) => App(go(a, 0)?, go(b, 0)?),
        Pair(a, b) => Pair(go(a, 0)?, go(b, 0)?),
        Sum(a, b) => Sum(go(a, 0)?, go(b, 0)?),
        Succ(a) => Succ(go(a, 0)?),
        Inl { value, right } => Inl {
            value: go(value, 0)?,
            right: go(right, 0)?,
        },
        Inr { value, left } => Inr {
            value: go(value, 0)?,
            left: go(left, 0)?,
        },
        SigmaInd {
            motive,
            handler,
            scrutinee,
        } => SigmaInd {
            motive: go(motive, 0)?,
            handler: go(handler, 0)?,
            scrutinee: go(scrutinee, 0)?,
        },
        NatInd {
            motive,
            handler,
            scrutinee,
        } => NatInd {
            motive: go(motive, 0)?,
            handler: go(handler, 0)?,
            scrutinee: go(scrutinee, 0)?,
        },
        UnitInd {
            motive,
            handler,
            scrutinee,
        } => UnitInd {
            motive: go(motive, 0)?,
            handler: go(handler, 0)?,
            scrutinee: go(scrutinee, 0)?,
        },
        SumInd {
            motive,
            on_left,
            on_right,
            scrutinee,
        } => SumInd {
            motive: go(motive, 0)?,
            on_left: go(on_left, 0)?,
            on_right: go(on_right, 0)?,
            scrutinee: go(scrutinee, 0)?,
        },
        EmptyInd { motive, scrutinee } => EmptyInd {
            motive: go(motive, 0)?,
            scrutinee: go(scrutinee, 0)?,
        },
        Id(a, b, c) => Id(go(a, 0)?, go(b, 0)?, go(c, 0)?),
        Refl { ty, point } => Refl {
            ty: go(ty, 0)?,
            point: go(point, 0)?,
        },
        IdInd {
            motive,
            handler,
            lhs,
            rhs,
            path,
        } => IdInd {
            motive: go(motive, 0)?,
            handler: go(handler, 0)?,
            lhs: go(lhs, 0)?,
            rhs: go(rhs, 0)?,
            path: go(path, 0)?,
        },
        BasedIdInd {
            ty,
            base,
            motive,
            handler,
            endpoint,
            path,
        } => BasedIdInd {
            ty: go(ty, 0)?,
            base: go(base, 0)?,
            motive: go(motive, 0)?,
            handler: go(handler, 0)?,
            endpoint: go(endpoint, 0)?,
            path: go(path, 0)?,
        },
    }))
}

/// Adds `amount` to every free index `>= cutoff`.
pub fn shift(t: &Tm, amount: i64, cutoff: usize) -> Result<Tm, NegativeIndex> {
    if amount == 0 {
        return Ok(t.clone());
    }
    map_vars(t, cutoff, &mut |i, depth| {
        if i < depth {
            return Ok(Term::var(i));
        }
        let shifted = i as i64 + amount;
        if shifted < 0 {
            Err(NegativeIndex { index: i, amount })
        } else {
            Ok(Term::var(shifted as usize))
        }
    })
}

/// Infallible upward shift of all free indices.
pub fn shift_up(t: &Tm, amount: usize) -> Tm {
    shift(t, amount as i64, 0).expect("upward shift cannot go negative")
}

/// Replaces the outermost free variable of `body` (index 0) with `value` and
/// lowers the remaining free indices by one.
pub fn substitute(body: &Tm, value: &Tm) -> Tm {
    let result: Result<Tm, std::convert::Infallible> = map_vars(body, 0, &mut |i, depth| {
        Ok(if i < depth {
            Term::var(i)
        } else if i == depth {
            shift_up(value, depth)
        } else {
            Term::var(i - 1)
        })
    });
    match result {
        Ok(t) => t,
        Err(never) => match never {},
    }
}

/// Structural equality of nameless terms, i.e. equality up to renaming of
/// bound variables.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    a == b
}

/// An ordered telescope of named variable declarations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(String, Tm)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `name : ty`; `ty` is interpreted in the current context.
    pub fn push(&mut self, name: impl Into<String>, ty: Tm) {
        self.entries.push((name.into(), ty));
    }

    pub fn with(mut self, name: impl Into<String>, ty: Tm) -> Self {
        self.push(name, ty);
        self
    }

    pub fn pop(&mut self) -> Option<(String, Tm)> {
        self.entries.pop()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, Tm)] {
        &self.entries
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    /// Type of `Var(index)`, weakened into the full context.
    pub fn lookup(&self, index: usize) -> Option<(&str, Tm)> {
        let pos = self.entries.len().checked_sub(index + 1)?;
        let (name, ty) = &self.entries[pos];
        Some((name, shift_up(ty, index + 1)))
    }

    /// Index of the innermost variable named `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().rev().position(|(n, _)| n == name)
    }

    /// Wraps `body` in `Pi` binders for every entry, outermost first.
    pub fn close_pi(&self, body: Tm) -> Tm {
        self.entries
            .iter()
            .rev()
            .fold(body, |acc, (_, ty)| Term::pi(ty.clone(), acc))
    }

    /// Wraps `body` in `Lambda` binders for every entry, outermost first.
    pub fn close_lambda(&self, body: Tm) -> Tm {
        self.entries
            .iter()
            .rev()
            .fold(body, |acc, (_, ty)| Term::lambda(ty.clone(), acc))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("·");
        }
        let mut names: Vec<String> = Vec::new();
        for (i, (name, ty)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} : {}", name, crate::surface::print_term_in(&names, ty))?;
            names.push(name.clone());
        }
        Ok(())
    }
}
