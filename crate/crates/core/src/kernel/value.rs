//! Semantic values used by normalization by evaluation.
//!
//! Variables in values are de Bruijn *levels*, so values can be moved under
//! binders without shifting.

use std::sync::Arc;

use crate::syntax::Tm;

pub type Val = Arc<Value>;

/// Evaluation environment; the last element is `Var(0)`.
pub type Env = Vec<Val>;

#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: Tm,
}

#[derive(Clone, Debug)]
pub enum Value {
    Universe(u32),
    Pi(Val, Closure),
    Lam(Val, Closure),
    Sigma(Val, Closure),
    Pair(Val, Val),
    Sum(Val, Val),
    Inl(Val, Val),
    Inr(Val, Val),
    Nat,
    Zero,
    Succ(Val),
    Empty,
    Unit,
    Star,
    Id(Val, Val, Val),
    Refl(Val, Val),
    Neutral(Neutral),
}

/// A computation blocked on a variable or an axiom.
#[derive(Clone, Debug)]
pub enum Neutral {
    Var(usize),
    Axiom(Arc<str>),
    App(Box<Neutral>, Val),
    SigmaInd {
        motive: Val,
        handler: Val,
        scrutinee: Box<Neutral>,
    },
    SumInd {
        motive: Val,
        on_left: Val,
        on_right: Val,
        scrutinee: Box<Neutral>,
    },
    NatInd {
        motive: Val,
        handler: Val,
        scrutinee: Box<Neutral>,
    },
    /// Natural-number recursion whose scrutinee is a constructor but whose
    /// `(base, step)` handler is itself blocked.
    NatIndHandler {
        motive: Val,
        handler: Box<Neutral>,
        scrutinee: Val,
    },
    EmptyInd {
        motive: Val,
        scrutinee: Box<Neutral>,
    },
    UnitInd {
        motive: Val,
        handler: Val,
        scrutinee: Box<Neutral>,
    },
    IdInd {
        motive: Val,
        handler: Val,
        lhs: Val,
        rhs: Val,
        path: Box<Neutral>,
    },
    BasedIdInd {
        ty: Val,
        base: Val,
        motive: Val,
        handler: Val,
        endpoint: Val,
        path: Box<Neutral>,
    },
}

impl Value {
    pub fn var(level: usize) -> Val {
        Arc::new(Value::Neutral(Neutral::Var(level)))
    }

    pub fn neutral(n: Neutral) -> Val {
        Arc::new(Value::Neutral(n))
    }

    pub fn as_neutral(&self) -> Option<&Neutral> {
        match self {
            Value::Neutral(n) => Some(n),
            _ => None,
        }
    }
}
