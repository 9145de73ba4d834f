//! Typing, normalization and definitional equality.

mod check;
mod conv;
mod error;
mod eval;
mod value;

pub use check::Checker;
pub use error::{Fuel, KResult, KernelError, Located, DEFAULT_FUEL};
pub use eval::Evaluator;
pub use value::{Closure, Env, Neutral, Val, Value};

use std::collections::HashSet;

use crate::env::Environment;
use crate::syntax::{Context, Tm};

/// The forms of judgment the kernel decides.
#[derive(Clone, Debug, PartialEq)]
pub enum Judgment {
    ContextWF(Context),
    Typing(Context, Tm, Tm),
    DefEq(Context, Tm, Tm, Tm),
    Inhabited(Context, Tm),
}

/// A checker whose scope holds the entries of `ctx`. The context itself is
/// assumed well formed.
pub fn checker<'a>(env: &'a Environment, ctx: &Context, fuel: &'a Fuel) -> KResult<Checker<'a>> {
    let mut c = Checker::new(Evaluator::new(env, fuel));
    for (name, ty) in ctx.entries() {
        let v = c.eval(ty)?;
        c.bind(name, v);
    }
    Ok(c)
}

pub fn check_context(env: &Environment, ctx: &Context, fuel: &Fuel) -> KResult<()> {
    let mut c = Checker::new(Evaluator::new(env, fuel));
    let mut seen = HashSet::new();
    for (name, ty) in ctx.entries() {
        if !seen.insert(name.as_str()) {
            return Err(KernelError::DuplicateName(name.clone()));
        }
        c.check_type(ty).map_err(|e| KernelError::IllFormedEntry {
            name: name.clone(),
            reason: Box::new(e),
        })?;
        let v = c.eval(ty)?;
        c.bind(name, v);
    }
    Ok(())
}

pub fn infer(env: &Environment, ctx: &Context, t: &Tm, fuel: &Fuel) -> KResult<Tm> {
    let mut c = checker(env, ctx, fuel)?;
    let ty = c.infer(t)?;
    c.quote(&ty)
}

/// Checks `t` against `expected`, which is first checked to be a type.
pub fn check(env: &Environment, ctx: &Context, t: &Tm, expected: &Tm, fuel: &Fuel) -> KResult<()> {
    let mut c = checker(env, ctx, fuel)?;
    c.check_type(expected)?;
    let ty = c.eval(expected)?;
    c.check(t, &ty)
}

/// Checks that `t` is a type; returns its universe level.
pub fn check_type(env: &Environment, ctx: &Context, t: &Tm, fuel: &Fuel) -> KResult<u32> {
    checker(env, ctx, fuel)?.check_type(t)
}

pub fn normalize(env: &Environment, ctx: &Context, t: &Tm, fuel: &Fuel) -> KResult<Tm> {
    let c = checker(env, ctx, fuel)?;
    let v = c.eval(t)?;
    c.quote(&v)
}

pub fn def_eq(env: &Environment, ctx: &Context, a: &Tm, b: &Tm, fuel: &Fuel) -> KResult<bool> {
    let c = checker(env, ctx, fuel)?;
    let (va, vb) = (c.eval(a)?, c.eval(b)?);
    c.conv(&va, &vb)
}

/// Decides a judgment. `Inhabited` needs a witness, so it is only derived
/// through [`Judgment::Typing`] or chain verification and is rejected here.
pub fn decide(env: &Environment, j: &Judgment, fuel: &Fuel) -> KResult<bool> {
    match j {
        Judgment::ContextWF(ctx) => check_context(env, ctx, fuel).map(|_| true),
        Judgment::Typing(ctx, t, ty) => check(env, ctx, t, ty, fuel).map(|_| true),
        Judgment::DefEq(ctx, a, b, ty) => {
            check(env, ctx, a, ty, fuel)?;
            check(env, ctx, b, ty, fuel)?;
            def_eq(env, ctx, a, b, fuel)
        }
        Judgment::Inhabited(..) => Ok(false),
    }
}
