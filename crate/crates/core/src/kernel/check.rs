//! Bidirectional type checking.

use std::sync::Arc;

use super::error::{KResult, KernelError, Located};
use super::eval::Evaluator;
use super::value::{Closure, Env, Val, Value};
use crate::syntax::{shift_up, Term, Tm};

/// Type checker state: the names, types and values of the variables in scope.
pub struct Checker<'a> {
    pub ev: Evaluator<'a>,
    names: Vec<String>,
    types: Vec<Val>,
    vals: Env,
}

impl<'a> Checker<'a> {
    pub fn new(ev: Evaluator<'a>) -> Self {
        Self {
            ev,
            names: Vec::new(),
            types: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        self.vals.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn env(&self) -> &Env {
        &self.vals
    }

    pub fn bind(&mut self, name: &str, ty: Val) {
        let level = self.depth();
        self.names.push(name.to_string());
        self.types.push(ty);
        self.vals.push(Value::var(level));
    }

    pub fn unbind(&mut self) {
        self.names.pop();
        self.types.pop();
        self.vals.pop();
    }

    fn fresh_name(&self) -> String {
        format!("x{}", self.depth())
    }

    pub fn eval(&self, t: &Term) -> KResult<Val> {
        self.ev.eval(&self.vals, t)
    }

    pub fn quote(&self, v: &Val) -> KResult<Tm> {
        self.ev.quote(self.depth(), v)
    }

    pub fn conv(&self, a: &Val, b: &Val) -> KResult<bool> {
        self.ev.conv(self.depth(), a, b)
    }

    fn here(&self, t: &Tm) -> Located {
        Located::new(t.clone(), &self.names)
    }

    fn here_val(&self, v: &Val) -> KResult<Located> {
        Ok(self.here(&self.quote(v)?))
    }

    /// Checks that `t` is a type and returns its universe level.
    pub fn check_type(&mut self, t: &Tm) -> KResult<u32> {
        let ty = self.infer(t)?;
        match &*ty {
            Value::Universe(i) => Ok(*i),
            _ => Err(KernelError::UniverseMismatch {
                term: self.here(t),
                found: self.here_val(&ty)?,
            }),
        }
    }

    fn under<T>(&mut self, ty: Val, f: impl FnOnce(&mut Self) -> KResult<T>) -> KResult<T> {
        let name = self.fresh_name();
        self.bind(&name, ty);
        let r = f(self);
        self.unbind();
        r
    }

    fn mismatch(&self, t: &Tm, expected: &Val, found: &Val) -> KResult<KernelError> {
        Ok(KernelError::TypeMismatch {
            term: self.here(t),
            expected: self.here_val(expected)?,
            found: self.here_val(found)?,
        })
    }

    fn expect_conv(&self, t: &Tm, expected: &Val, found: &Val) -> KResult<()> {
        if self.conv(expected, found)? {
            Ok(())
        } else {
            Err(self.mismatch(t, expected, found)?)
        }
    }

    fn annotation(&self, t: &Tm, annotation: &Val, expected: &Val) -> KResult<()> {
        if self.conv(annotation, expected)? {
            Ok(())
        } else {
            Err(KernelError::AnnotationMismatch {
                term: self.here(t),
                annotation: self.here_val(annotation)?,
                expected: self.here_val(expected)?,
            })
        }
    }

    fn closure_of(&self, body: Tm) -> Closure {
        Closure {
            env: self.vals.clone(),
            body,
        }
    }

    pub fn check(&mut self, t: &Tm, expected: &Val) -> KResult<()> {
        match (&**t, &**expected) {
            (Term::Lambda(dom, body), Value::Pi(a, b)) => {
                self.check_type(dom)?;
                let d = self.eval(dom)?;
                self.annotation(t, &d, a)?;
                let level = self.depth();
                let cod = self.ev.instantiate(b, Value::var(level))?;
                self.under(d, |c| c.check(body, &cod))
            }
            (Term::Pair(x, y), Value::Sigma(a, b)) => {
                self.check(x, a)?;
                let xv = self.eval(x)?;
                let second = self.ev.instantiate(b, xv)?;
                self.check(y, &second)
            }
            (Term::Inl { value, right }, Value::Sum(a, b)) => {
                self.check_type(right)?;
                let r = self.eval(right)?;
                self.annotation(t, &r, b)?;
                self.check(value, a)
            }
            (Term::Inr { value, left }, Value::Sum(a, b)) => {
                self.check_type(left)?;
                let l = self.eval(left)?;
                self.annotation(t, &l, a)?;
                self.check(value, b)
            }
            _ => {
                let found = self.infer(t)?;
                self.expect_conv(t, expected, &found)
            }
        }
    }

    /// Strips `count` Π binders from the type of a motive and returns the
    /// universe level it lands in.
    fn motive_level(&mut self, motive: &Tm, count: usize, eliminator: &'static str) -> KResult<u32> {
        let mut ty = self.infer(motive)?;
        let base = self.depth();
        for k in 0..count {
            ty = match &*ty {
                Value::Pi(_, clo) => self.ev.instantiate(clo, Value::var(base + k))?,
                _ => {
                    return Err(KernelError::MotiveMismatch {
                        motive: self.here(motive),
                        eliminator,
                        reason: format!("expected a family over {count} argument(s)"),
                    })
                }
            };
        }
        match &*ty {
            Value::Universe(i) => Ok(*i),
            _ => Err(KernelError::MotiveMismatch {
                motive: self.here(motive),
                eliminator,
                reason: "the family does not land in a universe".into(),
            }),
        }
    }

    /// Checks a motive against the expected family type `telescope -> U_i`,
    /// with the telescope given as a term builder taking the codomain.
    fn check_motive(
        &mut self,
        motive: &Tm,
        count: usize,
        eliminator: &'static str,
        family: impl FnOnce(Tm) -> Tm,
    ) -> KResult<()> {
        let level = self.motive_level(motive, count, eliminator)?;
        let expected = self.eval(&family(Term::universe(level)))?;
        let found = self.infer(motive)?;
        if self.conv(&expected, &found)? {
            Ok(())
        } else {
            Err(KernelError::MotiveMismatch {
                motive: self.here(motive),
                eliminator,
                reason: format!(
                    "expected `{}`, found `{}`",
                    self.here_val(&expected)?,
                    self.here_val(&found)?
                ),
            })
        }
    }

    fn scrutinee_mismatch(&self, t: &Tm, eliminator: &'static str, found: &Val) -> KResult<KernelError> {
        Ok(KernelError::ScrutineeMismatch {
            term: self.here(t),
            eliminator,
            found: self.here_val(found)?,
        })
    }

    fn check_term_type(&mut self, t: &Tm, ty: &Tm) -> KResult<()> {
        let v = self.eval(ty)?;
        self.check(t, &v)
    }

    pub fn infer(&mut self, t: &Tm) -> KResult<Val> {
        use Term as T;
        let u = |i: u32| Arc::new(Value::Universe(i));
        match &**t {
            T::Var(i) => match self.types.len().checked_sub(i + 1) {
                Some(pos) => Ok(self.types[pos].clone()),
                None => Err(KernelError::UnboundVariable {
                    index: *i,
                    depth: self.depth(),
                }),
            },
            T::Const(name) => {
                let entry = self
                    .ev
                    .globals
                    .get(name)
                    .ok_or_else(|| KernelError::UnknownConstant(name.to_string()))?;
                self.ev.eval(&Vec::new(), &entry.ty)
            }
            T::Universe(i) => Ok(u(i + 1)),
            T::Pi(a, b) | T::Sigma(a, b) => {
                let la = self.check_type(a)?;
                let av = self.eval(a)?;
                let lb = self.under(av, |c| c.check_type(b))?;
                Ok(u(la.max(lb)))
            }
            T::Lambda(a, body) => {
                self.check_type(a)?;
                let av = self.eval(a)?;
                let bt = self.under(av.clone(), |c| {
                    let ty = c.infer(body)?;
                    c.quote(&ty)
                })?;
                Ok(Arc::new(Value::Pi(av, self.closure_of(bt))))
            }
            T::App(f, a) => {
                let ft = self.infer(f)?;
                match &*ft {
                    Value::Pi(dom, cod) => {
                        self.check(a, dom)?;
                        let av = self.eval(a)?;
                        self.ev.instantiate(cod, av)
                    }
                    _ => Err(KernelError::NotAFunction {
                        term: self.here(f),
                        ty: self.here_val(&ft)?,
                    }),
                }
            }
            T::Pair(a, b) => {
                let at = self.infer(a)?;
                let bt = self.infer(b)?;
                let bt = shift_up(&self.quote(&bt)?, 1);
                Ok(Arc::new(Value::Sigma(at, self.closure_of(bt))))
            }
            T::SigmaInd {
                motive,
                handler,
                scrutinee,
            } => {
                let st = self.infer(scrutinee)?;
                let Value::Sigma(..) = &*st else {
                    return Err(self.scrutinee_mismatch(scrutinee, "sigma-ind", &st)?);
                };
                let s = self.quote(&st)?;
                let Term::Sigma(a, b) = &*s else { unreachable!() };
                self.check_motive(motive, 1, "sigma-ind", |univ| Term::pi(s.clone(), shift_up(&univ, 1)))?;
                // (x : A) -> (y : B x) -> C (x, y)
                let handler_ty = Term::pi(
                    a.clone(),
                    Term::pi(
                        b.clone(),
                        Term::app(shift_up(motive, 2), Term::pair(Term::var(1), Term::var(0))),
                    ),
                );
                self.check_term_type(handler, &handler_ty)?;
                self.eval(&Term::app(motive.clone(), scrutinee.clone()))
            }
            T::Sum(a, b) => {
                let la = self.check_type(a)?;
                let lb = self.check_type(b)?;
                Ok(u(la.max(lb)))
            }
            T::Inl { value, right } => {
                let at = self.infer(value)?;
                self.check_type(right)?;
                Ok(Arc::new(Value::Sum(at, self.eval(right)?)))
            }
            T::Inr { value, left } => {
                let bt = self.infer(value)?;
                self.check_type(left)?;
                Ok(Arc::new(Value::Sum(self.eval(left)?, bt)))
            }
            T::SumInd {
                motive,
                on_left,
                on_right,
                scrutinee,
            } => {
                let st = self.infer(scrutinee)?;
                let Value::Sum(..) = &*st else {
                    return Err(self.scrutinee_mismatch(scrutinee, "sum-ind", &st)?);
                };
                let s = self.quote(&st)?;
                let Term::Sum(a, b) = &*s else { unreachable!() };
                self.check_motive(motive, 1, "sum-ind", |univ| Term::pi(s.clone(), shift_up(&univ, 1)))?;
                let c = shift_up(motive, 1);
                let left_ty = Term::pi(
                    a.clone(),
                    Term::app(
                        c.clone(),
                        Arc::new(Term::Inl {
                            value: Term::var(0),
                            right: shift_up(b, 1),
                        }),
                    ),
                );
                let right_ty = Term::pi(
                    b.clone(),
                    Term::app(
                        c,
                        Arc::new(Term::Inr {
                            value: Term::var(0),
                            left: shift_up(a, 1),
                        }),
                    ),
                );
                self.check_term_type(on_left, &left_ty)?;
                self.check_term_type(on_right, &right_ty)?;
                self.eval(&Term::app(motive.clone(), scrutinee.clone()))
            }
            T::Nat | T::Empty | T::Unit => Ok(u(0)),
            T::Zero => Ok(Arc::new(Value::Nat)),
            T::Succ(n) => {
                self.check(n, &Arc::new(Value::Nat))?;
                Ok(Arc::new(Value::Nat))
            }
            T::NatInd {
                motive,
                handler,
                scrutinee,
            } => {
                self.check(scrutinee, &Arc::new(Value::Nat))?;
                self.check_motive(motive, 1, "nat-ind", |univ| Term::pi(Term::nat(), shift_up(&univ, 1)))?;
                let c = shift_up(motive, 1);
                // C 0 * ((n : N) -> C n -> C (succ n))
                let handler_ty = Term::product(
                    Term::app(motive.clone(), Term::zero()),
                    Term::pi(
                        Term::nat(),
                        Term::arrow(
                            Term::app(c.clone(), Term::var(0)),
                            Term::app(c, Term::succ(Term::var(0))),
                        ),
                    ),
                );
                self.check_term_type(handler, &handler_ty)?;
                self.eval(&Term::app(motive.clone(), scrutinee.clone()))
            }
            T::EmptyInd { motive, scrutinee } => {
                self.check(scrutinee, &Arc::new(Value::Empty))?;
                self.check_motive(motive, 1, "empty-ind", |univ| {
                    Term::pi(Term::empty(), shift_up(&univ, 1))
                })?;
                self.eval(&Term::app(motive.clone(), scrutinee.clone()))
            }
            T::Star => Ok(Arc::new(Value::Unit)),
            T::UnitInd {
                motive,
                handler,
                scrutinee,
            } => {
                self.check(scrutinee, &Arc::new(Value::Unit))?;
                self.check_motive(motive, 1, "unit-ind", |univ| Term::pi(Term::unit(), shift_up(&univ, 1)))?;
                self.check_term_type(handler, &Term::app(motive.clone(), Term::star()))?;
                self.eval(&Term::app(motive.clone(), scrutinee.clone()))
            }
            T::Id(a, x, y) => {
                let level = self.check_type(a)?;
                let av = self.eval(a)?;
                self.check(x, &av)?;
                self.check(y, &av)?;
                Ok(u(level))
            }
            T::Refl { ty, point } => {
                self.check_type(ty)?;
                let av = self.eval(ty)?;
                self.check(point, &av)?;
                let p = self.eval(point)?;
                Ok(Arc::new(Value::Id(av, p.clone(), p)))
            }
            T::IdInd {
                motive,
                handler,
                lhs,
                rhs,
                path,
            } => {
                let pt = self.infer(path)?;
                let Value::Id(av, xv, yv) = &*pt else {
                    return Err(self.scrutinee_mismatch(path, "id-ind", &pt)?);
                };
                self.check(lhs, av)?;
                self.check(rhs, av)?;
                let (l, r) = (self.eval(lhs)?, self.eval(rhs)?);
                self.annotation(lhs, &l, xv)?;
                self.annotation(rhs, &r, yv)?;
                let a = self.quote(av)?;
                // (x y : A) -> x = y -> U
                self.check_motive(motive, 3, "id-ind", |univ| {
                    Term::pi(
                        a.clone(),
                        Term::pi(
                            shift_up(&a, 1),
                            Term::pi(
                                Term::id(shift_up(&a, 2), Term::var(1), Term::var(0)),
                                shift_up(&univ, 3),
                            ),
                        ),
                    )
                })?;
                let handler_ty = Term::pi(
                    a.clone(),
                    Term::apps(
                        shift_up(motive, 1),
                        [Term::var(0), Term::var(0), Term::refl(shift_up(&a, 1), Term::var(0))],
                    ),
                );
                self.check_term_type(handler, &handler_ty)?;
                self.eval(&Term::apps(motive.clone(), [lhs.clone(), rhs.clone(), path.clone()]))
            }
            T::BasedIdInd {
                ty,
                base,
                motive,
                handler,
                endpoint,
                path,
            } => {
                self.check_type(ty)?;
                let av = self.eval(ty)?;
                self.check(base, &av)?;
                self.check(endpoint, &av)?;
                let path_ty = Term::id(ty.clone(), base.clone(), endpoint.clone());
                self.check_term_type(path, &path_ty)?;
                // (y : A) -> a = y -> U
                self.check_motive(motive, 2, "based-ind", |univ| {
                    Term::pi(
                        ty.clone(),
                        Term::pi(
                            Term::id(shift_up(ty, 1), shift_up(base, 1), Term::var(0)),
                            shift_up(&univ, 2),
                        ),
                    )
                })?;
                let handler_ty = Term::apps(motive.clone(), [base.clone(), Term::refl(ty.clone(), base.clone())]);
                self.check_term_type(handler, &handler_ty)?;
                self.eval(&Term::apps(motive.clone(), [endpoint.clone(), path.clone()]))
            }
        }
    }
}
