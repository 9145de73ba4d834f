//! Evaluation, eliminator computation rules and read-back.

use std::sync::Arc;

use super::error::{Fuel, KResult, KernelError};
use super::value::{Closure, Env, Neutral, Val, Value};
use crate::env::Environment;
use crate::syntax::{Term, Tm};

/// Evaluator bound to a global environment and a step budget.
#[derive(Clone, Copy)]
pub struct Evaluator<'a> {
    pub globals: &'a Environment,
    pub fuel: &'a Fuel,
}

fn ill_typed<T>(what: &str) -> KResult<T> {
    Err(KernelError::IllTyped(what.to_string()))
}

impl<'a> Evaluator<'a> {
    pub fn new(globals: &'a Environment, fuel: &'a Fuel) -> Self {
        Self { globals, fuel }
    }

    fn closure(env: &Env, body: &Tm) -> Closure {
        Closure {
            env: env.clone(),
            body: body.clone(),
        }
    }

    pub fn eval(&self, env: &Env, t: &Term) -> KResult<Val> {
        use Term as T;
        Ok(Arc::new(match t {
            T::Var(i) => {
                return match env.len().checked_sub(i + 1) {
                    Some(pos) => Ok(env[pos].clone()),
                    None => Err(KernelError::UnboundVariable {
                        index: *i,
                        depth: env.len(),
                    }),
                }
            }
            T::Const(name) => {
                let entry = self
                    .globals
                    .get(name)
                    .ok_or_else(|| KernelError::UnknownConstant(name.to_string()))?;
                return match &entry.body {
                    Some(body) => {
                        self.fuel.tick()?;
                        self.eval(&Vec::new(), body)
                    }
                    None => Ok(Value::neutral(Neutral::Axiom(name.clone()))),
                };
            }
            T::Universe(i) => Value::Universe(*i),
            T::Pi(a, b) => Value::Pi(self.eval(env, a)?, Self::closure(env, b)),
            T::Lambda(a, b) => Value::Lam(self.eval(env, a)?, Self::closure(env, b)),
            T::App(f, a) => {
                let f = self.eval(env, f)?;
                let a = self.eval(env, a)?;
                return self.apply(&f, a);
            }
            T::Sigma(a, b) => Value::Sigma(self.eval(env, a)?, Self::closure(env, b)),
            T::Pair(a, b) => Value::Pair(self.eval(env, a)?, self.eval(env, b)?),
            T::SigmaInd {
                motive,
                handler,
                scrutinee,
            } => {
                let m = self.eval(env, motive)?;
                let h = self.eval(env, handler)?;
                let s = self.eval(env, scrutinee)?;
                return self.sigma_ind(m, h, s);
            }
            T::Sum(a, b) => Value::Sum(self.eval(env, a)?, self.eval(env, b)?),
            T::Inl { value, right } => Value::Inl(self.eval(env, value)?, self.eval(env, right)?),
            T::Inr { value, left } => Value::Inr(self.eval(env, value)?, self.eval(env, left)?),
            T::SumInd {
                motive,
                on_left,
                on_right,
                scrutinee,
            } => {
                let m = self.eval(env, motive)?;
                let l = self.eval(env, on_left)?;
                let r = self.eval(env, on_right)?;
                let s = self.eval(env, scrutinee)?;
                return self.sum_ind(m, l, r, s);
            }
            T::Nat => Value::Nat,
            T::Zero => Value::Zero,
            T::Succ(n) => Value::Succ(self.eval(env, n)?),
            T::NatInd {
                motive,
                handler,
                scrutinee,
            } => {
                let m = self.eval(env, motive)?;
                let h = self.eval(env, handler)?;
                let s = self.eval(env, scrutinee)?;
                return self.nat_ind(m, h, s);
            }
            T::Empty => Value::Empty,
            T::EmptyInd { motive, scrutinee } => {
                let m = self.eval(env, motive)?;
                let s = self.eval(env, scrutinee)?;
                return match &*s {
                    Value::Neutral(n) => Ok(Value::neutral(Neutral::EmptyInd {
                        motive: m,
                        scrutinee: Box::new(n.clone()),
                    })),
                    _ => ill_typed("empty-ind on a non-neutral value"),
                };
            }
            T::Unit => Value::Unit,
            T::Star => Value::Star,
            T::UnitInd {
                motive,
                handler,
                scrutinee,
            } => {
                let m = self.eval(env, motive)?;
                let h = self.eval(env, handler)?;
                let s = self.eval(env, scrutinee)?;
                return self.unit_ind(m, h, s);
            }
            T::Id(a, x, y) => Value::Id(self.eval(env, a)?, self.eval(env, x)?, self.eval(env, y)?),
            T::Refl { ty, point } => Value::Refl(self.eval(env, ty)?, self.eval(env, point)?),
            T::IdInd {
                motive,
                handler,
                lhs,
                rhs,
                path,
            } => {
                let m = self.eval(env, motive)?;
                let h = self.eval(env, handler)?;
                let x = self.eval(env, lhs)?;
                let y = self.eval(env, rhs)?;
                let p = self.eval(env, path)?;
                return self.id_ind(m, h, x, y, p);
            }
            T::BasedIdInd {
                ty,
                base,
                motive,
                handler,
                endpoint,
                path,
            } => {
                let ty = self.eval(env, ty)?;
                let a = self.eval(env, base)?;
                let m = self.eval(env, motive)?;
                let h = self.eval(env, handler)?;
                let b = self.eval(env, endpoint)?;
                let p = self.eval(env, path)?;
                return self.based_id_ind(ty, a, m, h, b, p);
            }
        }))
    }

    /// Instantiates a closure without charging a reduction step.
    pub fn instantiate(&self, clo: &Closure, v: Val) -> KResult<Val> {
        let mut env = clo.env.clone();
        env.push(v);
        self.eval(&env, &clo.body)
    }

    /// Function application; a beta step when `f` is a lambda.
    pub fn apply(&self, f: &Val, a: Val) -> KResult<Val> {
        match &**f {
            Value::Lam(_, clo) => {
                self.fuel.tick()?;
                self.instantiate(clo, a)
            }
            Value::Neutral(n) => Ok(Value::neutral(Neutral::App(Box::new(n.clone()), a))),
            _ => ill_typed("application of a non-function"),
        }
    }

    pub fn sigma_ind(&self, motive: Val, handler: Val, scrutinee: Val) -> KResult<Val> {
        match &*scrutinee {
            Value::Pair(a, b) => {
                self.fuel.tick()?;
                let partial = self.apply(&handler, a.clone())?;
                self.apply(&partial, b.clone())
            }
            Value::Neutral(n) => Ok(Value::neutral(Neutral::SigmaInd {
                motive,
                handler,
                scrutinee: Box::new(n.clone()),
            })),
            _ => ill_typed("sigma-ind on a non-pair"),
        }
    }

    pub fn sum_ind(&self, motive: Val, on_left: Val, on_right: Val, scrutinee: Val) -> KResult<Val> {
        match &*scrutinee {
            Value::Inl(a, _) => {
                self.fuel.tick()?;
                self.apply(&on_left, a.clone())
            }
            Value::Inr(b, _) => {
                self.fuel.tick()?;
                self.apply(&on_right, b.clone())
            }
            Value::Neutral(n) => Ok(Value::neutral(Neutral::SumInd {
                motive,
                on_left,
                on_right,
                scrutinee: Box::new(n.clone()),
            })),
            _ => ill_typed("sum-ind on a non-injection"),
        }
    }

    pub fn nat_ind(&self, motive: Val, handler: Val, scrutinee: Val) -> KResult<Val> {
        match &*scrutinee {
            Value::Zero | Value::Succ(_) => {}
            Value::Neutral(n) => {
                return Ok(Value::neutral(Neutral::NatInd {
                    motive,
                    handler,
                    scrutinee: Box::new(n.clone()),
                }))
            }
            _ => return ill_typed("nat-ind on a non-numeral"),
        }
        let (base, step) = match &*handler {
            Value::Pair(base, step) => (base.clone(), step.clone()),
            Value::Neutral(h) => {
                return Ok(Value::neutral(Neutral::NatIndHandler {
                    motive,
                    handler: Box::new(h.clone()),
                    scrutinee,
                }))
            }
            _ => return ill_typed("nat-ind handler is not a pair"),
        };
        // Iterate instead of recursing so large numerals do not grow the stack.
        let mut preds = Vec::new();
        let mut cur = scrutinee;
        let mut acc = loop {
            match &*cur {
                Value::Zero => {
                    self.fuel.tick()?;
                    break base;
                }
                Value::Succ(p) => {
                    preds.push(p.clone());
                    let next = p.clone();
                    cur = next;
                }
                Value::Neutral(n) => {
                    break Value::neutral(Neutral::NatInd {
                        motive: motive.clone(),
                        handler: handler.clone(),
                        scrutinee: Box::new(n.clone()),
                    })
                }
                _ => return ill_typed("nat-ind on a non-numeral"),
            }
        };
        while let Some(p) = preds.pop() {
            self.fuel.tick()?;
            let partial = self.apply(&step, p)?;
            acc = self.apply(&partial, acc)?;
        }
        Ok(acc)
    }

    pub fn unit_ind(&self, motive: Val, handler: Val, scrutinee: Val) -> KResult<Val> {
        match &*scrutinee {
            Value::Star => {
                self.fuel.tick()?;
                Ok(handler)
            }
            Value::Neutral(n) => Ok(Value::neutral(Neutral::UnitInd {
                motive,
                handler,
                scrutinee: Box::new(n.clone()),
            })),
            _ => ill_typed("unit-ind on a non-unit value"),
        }
    }

    pub fn id_ind(&self, motive: Val, handler: Val, lhs: Val, rhs: Val, path: Val) -> KResult<Val> {
        match &*path {
            Value::Refl(_, x) => {
                self.fuel.tick()?;
                self.apply(&handler, x.clone())
            }
            Value::Neutral(n) => Ok(Value::neutral(Neutral::IdInd {
                motive,
                handler,
                lhs,
                rhs,
                path: Box::new(n.clone()),
            })),
            _ => ill_typed("id-ind on a non-path"),
        }
    }

    pub fn based_id_ind(
        &self,
        ty: Val,
        base: Val,
        motive: Val,
        handler: Val,
        endpoint: Val,
        path: Val,
    ) -> KResult<Val> {
        match &*path {
            Value::Refl(..) => {
                self.fuel.tick()?;
                Ok(handler)
            }
            Value::Neutral(n) => Ok(Value::neutral(Neutral::BasedIdInd {
                ty,
                base,
                motive,
                handler,
                endpoint,
                path: Box::new(n.clone()),
            })),
            _ => ill_typed("based-ind on a non-path"),
        }
    }

    /// Reads a value back into a normal-form term under `depth` binders.
    pub fn quote(&self, depth: usize, v: &Val) -> KResult<Tm> {
        use Value as V;
        let q = |v: &Val| self.quote(depth, v);
        let under = |clo: &Closure| -> KResult<Tm> {
            let body = self.instantiate(clo, Value::var(depth))?;
            self.quote(depth + 1, &body)
        };
        Ok(Arc::new(match &**v {
            V::Universe(i) => Term::Universe(*i),
            V::Pi(a, b) => Term::Pi(q(a)?, under(b)?),
            V::Lam(a, b) => Term::Lambda(q(a)?, under(b)?),
            V::Sigma(a, b) => Term::Sigma(q(a)?, under(b)?),
            V::Pair(a, b) => Term::Pair(q(a)?, q(b)?),
            V::Sum(a, b) => Term::Sum(q(a)?, q(b)?),
            V::Inl(a, r) => Term::Inl {
                value: q(a)?,
                right: q(r)?,
            },
            V::Inr(b, l) => Term::Inr {
                value: q(b)?,
                left: q(l)?,
            },
            V::Nat => Term::Nat,
            V::Zero => Term::Zero,
            V::Succ(n) => Term::Succ(q(n)?),
            V::Empty => Term::Empty,
            V::Unit => Term::Unit,
            V::Star => Term::Star,
            V::Id(a, x, y) => Term::Id(q(a)?, q(x)?, q(y)?),
            V::Refl(a, x) => Term::Refl {
                ty: q(a)?,
                point: q(x)?,
            },
            V::Neutral(n) => return self.quote_neutral(depth, n),
        }))
    }

    pub fn quote_neutral(&self, depth: usize, n: &Neutral) -> KResult<Tm> {
        use Neutral as N;
        let q = |v: &Val| self.quote(depth, v);
        let qn = |n: &Neutral| self.quote_neutral(depth, n);
        Ok(Arc::new(match n {
            N::Var(level) => match depth.checked_sub(level + 1) {
                Some(i) => Term::Var(i),
                None => return ill_typed("variable level out of scope during read-back"),
            },
            N::Axiom(name) => Term::Const(name.clone()),
            N::App(f, a) => Term::App(qn(f)?, q(a)?),
            N::SigmaInd {
                motive,
                handler,
                scrutinee,
            } => Term::SigmaInd {
                motive: q(motive)?,
                handler: q(handler)?,
                scrutinee: qn(scrutinee)?,
            },
            N::SumInd {
                motive,
                on_left,
                on_right,
                scrutinee,
            } => Term::SumInd {
                motive: q(motive)?,
                on_left: q(on_left)?,
                on_right: q(on_right)?,
                scrutinee: qn(scrutinee)?,
            },
            N::NatInd {
                motive,
                handler,
                scrutinee,
            } => Term::NatInd {
                motive: q(motive)?,
                handler: q(handler)?,
                scrutinee: qn(scrutinee)?,
            },
            N::NatIndHandler {
                motive,
                handler,
                scrutinee,
            } => Term::NatInd {
                motive: q(motive)?,
                handler: qn(handler)?,
                scrutinee: q(scrutinee)?,
            },
            N::EmptyInd { motive, scrutinee } => Term::EmptyInd {
                motive: q(motive)?,
                scrutinee: qn(scrutinee)?,
            },
            N::UnitInd {
                motive,
                handler,
                scrutinee,
            } => Term::UnitInd {
                motive: q(motive)?,
                handler: q(handler)?,
                scrutinee: qn(scrutinee)?,
            },
            N::IdInd {
                motive,
                handler,
                lhs,
                rhs,
                path,
            } => Term::IdInd {
                motive: q(motive)?,
                handler: q(handler)?,
                lhs: q(lhs)?,
                rhs: q(rhs)?,
                path: qn(path)?,
            },
            N::BasedIdInd {
                ty,
                base,
                motive,
                handler,
                endpoint,
                path,
            } => Term::BasedIdInd {
                ty: q(ty)?,
                base: q(base)?,
                motive: q(motive)?,
                handler: q(handler)?,
                endpoint: q(endpoint)?,
                path: qn(path)?,
            },
        }))
    }
}
