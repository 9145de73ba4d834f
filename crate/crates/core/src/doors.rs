//! Type-directed synthesis of maps between types, driven by the entry door of
//! the target and the exit doors of the hypotheses in scope.

use std::fmt;

use thiserror::Error;

use crate::env::Environment;
use crate::kernel::{self, Fuel, KernelError, DEFAULT_FUEL};
use crate::syntax::{alpha_eq, for_each_child, shift, shift_up, substitute, Context, Term, Tm};

pub const DEFAULT_DEPTH: usize = 6;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DoorError {
    #[error("no door for a type headed by {0}")]
    UnsupportedHead(&'static str),
}

/// The shape of a door: an open term over a telescope of holes.
#[derive(Clone, Debug, PartialEq)]
pub enum DoorPattern {
    Shape {
        binders: Context,
        body: Tm,
    },
    /// One of two shapes, tried left first.
    Either(Box<DoorPattern>, Box<DoorPattern>),
}

impl DoorPattern {
    fn shape(binders: Context, body: Tm) -> Self {
        DoorPattern::Shape { binders, body }
    }

    /// All shapes, left to right.
    pub fn shapes(&self) -> Vec<(&Context, &Tm)> {
        match self {
            DoorPattern::Shape { binders, body } => vec![(binders, body)],
            DoorPattern::Either(l, r) => {
                let mut v = l.shapes();
                v.extend(r.shapes());
                v
            }
        }
    }
}

impl fmt::Display for DoorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DoorPattern::Shape { binders, body } => {
                let names = binders.names();
                for (i, (name, ty)) in binders.entries().iter().enumerate() {
                    write!(f, "({} : {}) ", name, crate::surface::print_term_in(&names[..i], ty))?;
                }
                write!(f, "|- {}", crate::surface::print_term_in(&names, body))
            }
            DoorPattern::Either(l, r) => write!(f, "{}  |  {}", l, r),
        }
    }
}

fn head_name(t: &Term) -> &'static str {
    match t {
        Term::Var(_) => "a variable",
        Term::Const(_) => "a constant",
        Term::Universe(_) => "a universe",
        Term::Nat => "N",
        Term::Empty => "Empty",
        Term::Unit => "Unit",
        Term::Id(..) => "Id",
        Term::App(..) => "an application",
        _ => "a non-type",
    }
}

/// First projection of `s : (x:a) * c`, as a `sigma-ind` term.
pub fn first(a: &Tm, c: &Tm, s: Tm) -> Tm {
    let sig = Term::sigma(a.clone(), c.clone());
    Term::SigmaInd {
        motive: Term::lambda(sig, shift_up(a, 1)),
        handler: Term::lambda(a.clone(), Term::lambda(c.clone(), Term::var(1))),
        scrutinee: s,
    }
    .into()
}

/// Second projection of `s : (x:a) * c`, as a `sigma-ind` term.
pub fn second(a: &Tm, c: &Tm, s: Tm) -> Tm {
    let sig = Term::sigma(a.clone(), c.clone());
    // c[x := first w] under the motive binder w
    let c1 = shift(c, 1, 1).expect("upward shift");
    let fam = substitute(&c1, &first(&shift_up(a, 1), &c1, Term::var(0)));
    Term::SigmaInd {
        motive: Term::lambda(sig, fam),
        handler: Term::lambda(a.clone(), Term::lambda(c.clone(), Term::var(0))),
        scrutinee: s,
    }
    .into()
}

/// How a term of type `ty` is built.
pub fn entry_door(ty: &Tm) -> Result<DoorPattern, DoorError> {
    match &**ty {
        Term::Pi(a, _) => {
            let binders = Context::new().with("h", ty.clone());
            let body = Term::lambda(shift_up(a, 1), Term::app(Term::var(1), Term::var(0)));
            Ok(DoorPattern::shape(binders, body))
        }
        Term::Sigma(a, c) => {
            let binders = Context::new().with("a", a.clone()).with("b", c.clone());
            Ok(DoorPattern::shape(binders, Term::pair(Term::var(1), Term::var(0))))
        }
        Term::Sum(a, b) => {
            let left = DoorPattern::shape(
                Context::new().with("a", a.clone()),
                Term::Inl {
                    value: Term::var(0),
                    right: shift_up(b, 1),
                }
                .into(),
            );
            let right = DoorPattern::shape(
                Context::new().with("b", b.clone()),
                Term::Inr {
                    value: Term::var(0),
                    left: shift_up(a, 1),
                }
                .into(),
            );
            Ok(DoorPattern::Either(Box::new(left), Box::new(right)))
        }
        other => Err(DoorError::UnsupportedHead(head_name(other))),
    }
}

/// How a term `u : ty` is taken apart.
pub fn exit_door(ty: &Tm) -> Result<DoorPattern, DoorError> {
    match &**ty {
        Term::Pi(a, _) => {
            let binders = Context::new().with("u", ty.clone());
            let body = Term::lambda(shift_up(a, 1), Term::app(Term::var(1), Term::var(0)));
            Ok(DoorPattern::shape(binders, body))
        }
        Term::Sigma(a, c) => {
            let binders = Context::new().with("u", ty.clone());
            let (a1, c1) = (shift_up(a, 1), shift(c, 1, 1).expect("upward shift"));
            let body = Term::pair(first(&a1, &c1, Term::var(0)), second(&a1, &c1, Term::var(0)));
            Ok(DoorPattern::shape(binders, body))
        }
        // taking a sum apart needs a case split, which depends on the goal
        Term::Sum(..) => Err(DoorError::UnsupportedHead("a coproduct")),
        other => Err(DoorError::UnsupportedHead(head_name(other))),
    }
}

#[derive(Debug)]
pub enum Synthesis {
    /// A closed map `source -> target`, already checked by the kernel.
    Found(Tm),
    NoCandidate,
    /// The search produced a term the kernel refused.
    Rejected(Tm, KernelError),
}

impl Synthesis {
    pub fn term(&self) -> Option<&Tm> {
        match self {
            Synthesis::Found(t) => Some(t),
            _ => None,
        }
    }
}

pub fn synthesize(env: &Environment, ctx: &Context, source: &Tm, target: &Tm) -> Synthesis {
    synthesize_with(env, ctx, source, target, DEFAULT_DEPTH)
}

pub fn synthesize_with(env: &Environment, ctx: &Context, source: &Tm, target: &Tm, depth: usize) -> Synthesis {
    let fuel = Fuel::new(DEFAULT_FUEL);
    let search = Search { env, fuel: &fuel };
    let mut inner = ctx.clone();
    inner.push("u", source.clone());
    let goal = shift_up(target, 1);
    let Some(body) = search.fill(&mut inner, &goal, depth) else {
        return Synthesis::NoCandidate;
    };
    let candidate = Term::lambda(source.clone(), body);
    let expected = Term::arrow(source.clone(), target.clone());
    match kernel::check(env, ctx, &candidate, &expected, &Fuel::new(DEFAULT_FUEL)) {
        Ok(()) => Synthesis::Found(candidate),
        Err(e) => Synthesis::Rejected(candidate, e),
    }
}

struct Search<'a> {
    env: &'a Environment,
    fuel: &'a Fuel,
}

impl Search<'_> {
    fn normal(&self, ctx: &Context, t: &Tm) -> Option<Tm> {
        kernel::normalize(self.env, ctx, t, self.fuel).ok()
    }

    /// An inhabitant of `goal` in `ctx`.
    fn fill(&self, ctx: &mut Context, goal: &Tm, depth: usize) -> Option<Tm> {
        if depth == 0 {
            return None;
        }
        let goal = self.normal(ctx, goal)?;
        match &*goal {
            Term::Pi(a, b) => {
                ctx.push(fresh(ctx, "x"), a.clone());
                let body = self.fill(ctx, b, depth - 1);
                ctx.pop();
                Some(Term::lambda(a.clone(), body?))
            }
            Term::Sigma(a, c) => {
                let fst = self.fill(ctx, a, depth - 1)?;
                let snd = self.fill(ctx, &substitute(c, &fst), depth - 1)?;
                Some(Term::pair(fst, snd))
            }
            Term::Sum(a, b) => {
                if let Some(l) = self.fill(ctx, a, depth - 1) {
                    return Some(
                        Term::Inl {
                            value: l,
                            right: b.clone(),
                        }
                        .into(),
                    );
                }
                let r = self.fill(ctx, b, depth - 1)?;
                Some(
                    Term::Inr {
                        value: r,
                        left: a.clone(),
                    }
                    .into(),
                )
            }
            _ => self.eliminate(ctx, &goal, depth),
        }
    }

    /// Takes a hypothesis apart until it lands in `goal`, most recent first.
    fn eliminate(&self, ctx: &mut Context, goal: &Tm, depth: usize) -> Option<Tm> {
        for i in 0..ctx.len() {
            let (_, ty) = ctx.lookup(i)?;
            let mut ext = ctx.clone();
            let base = ctx.len();
            if let Some(t) = self.spine(&mut ext, base, Term::var(i), ty, goal, depth) {
                return Some(t);
            }
        }
        None
    }

    /// `e : ty` lives in `ext`, which is the base context followed by one
    /// unknown argument per application so far.
    fn spine(&self, ext: &mut Context, base: usize, e: Tm, ty: Tm, goal: &Tm, depth: usize) -> Option<Tm> {
        let n = ext.len() - base;
        let ty = self.normal(ext, &ty)?;
        let mut assigned = vec![None; n];
        if matches(&ty, &shift_up(goal, n), n, 0, &mut assigned) {
            if let Some(t) = self.complete(ext, base, &e, assigned, depth) {
                return Some(t);
            }
        }
        if depth == 0 {
            return None;
        }
        match &*ty {
            Term::Pi(a, b) => {
                ext.push(format!("?{n}"), a.clone());
                let applied = Term::app(shift_up(&e, 1), Term::var(0));
                let r = self.spine(ext, base, applied, b.clone(), goal, depth - 1);
                ext.pop();
                r
            }
            Term::Sigma(a, c) => {
                let p1 = first(a, c, e.clone());
                if let Some(t) = self.spine(ext, base, p1.clone(), a.clone(), goal, depth - 1) {
                    return Some(t);
                }
                self.spine(ext, base, second(a, c, e), substitute(c, &p1), goal, depth - 1)
            }
            _ => None,
        }
    }

    /// Fills the unknown arguments not fixed by matching and closes `e`.
    fn complete(&self, ext: &Context, base: usize, e: &Tm, assigned: Vec<Option<Tm>>, depth: usize) -> Option<Tm> {
        let mut ctx = Context::new();
        for (name, ty) in &ext.entries()[..base] {
            ctx.push(name.clone(), ty.clone());
        }
        let mut values: Vec<Tm> = Vec::with_capacity(assigned.len());
        for (k, slot) in assigned.into_iter().enumerate() {
            let v = match slot {
                Some(v) => v,
                None => {
                    let ty = instantiate(&ext.entries()[base + k].1, &values);
                    self.fill(&mut ctx, &ty, depth.saturating_sub(1))?
                }
            };
            values.push(v);
        }
        Some(instantiate(e, &values))
    }
}

/// Replaces the innermost `values.len()` variables, outermost first.
fn instantiate(t: &Tm, values: &[Tm]) -> Tm {
    let mut t = t.clone();
    for (j, v) in values.iter().enumerate().rev() {
        t = substitute(&t, &shift_up(v, j));
    }
    t
}

fn fresh(ctx: &Context, stem: &str) -> String {
    let names = ctx.names();
    let mut k = ctx.len();
    loop {
        let name = format!("{stem}{k}");
        if !names.contains(&name) {
            return name;
        }
        k += 1;
    }
}

/// First-order matching of `p` against `t`. Variables `depth..depth + n` of
/// `p` are unknowns; `assigned[k]` holds the value of the k-th outermost
/// unknown, in the context below all unknowns.
fn matches(p: &Tm, t: &Tm, n: usize, depth: usize, assigned: &mut [Option<Tm>]) -> bool {
    if let Term::Var(i) = &**p {
        if *i >= depth && *i < depth + n {
            let Ok(value) = shift(t, -((depth + n) as i64), 0) else {
                return false;
            };
            let slot = &mut assigned[n - 1 - (i - depth)];
            return match slot {
                Some(prev) => alpha_eq(prev, &value),
                None => {
                    *slot = Some(value);
                    true
                }
            };
        }
    }
    if std::mem::discriminant(&**p) != std::mem::discriminant(&**t) {
        return false;
    }
    match (&**p, &**t) {
        (Term::Var(i), Term::Var(j)) => return i == j,
        (Term::Const(a), Term::Const(b)) => return a == b,
        (Term::Universe(a), Term::Universe(b)) => return a == b,
        _ => {}
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for_each_child(p, |c, k| left.push((c.clone(), k)));
    for_each_child(t, |c, _| right.push(c.clone()));
    left.len() == right.len()
        && left
            .iter()
            .zip(&right)
            .all(|((a, k), b)| matches(a, b, n, depth + k, assigned))
}
