//! Definitional equality on values: structural comparison of normal forms
//! with eta for functions. Pairs and the unit type have no eta rule.

use super::error::KResult;
use super::eval::Evaluator;
use super::value::{Neutral, Val, Value};

impl Evaluator<'_> {
    pub fn conv(&self, depth: usize, a: &Val, b: &Val) -> KResult<bool> {
        use Value as V;
        if std::sync::Arc::ptr_eq(a, b) {
            return Ok(true);
        }
        Ok(match (&**a, &**b) {
            (V::Lam(_, f), V::Lam(_, g)) => {
                let x = Value::var(depth);
                let fx = self.instantiate(f, x.clone())?;
                let gx = self.instantiate(g, x)?;
                self.conv(depth + 1, &fx, &gx)?
            }
            (V::Lam(_, f), V::Neutral(_)) => {
                let x = Value::var(depth);
                let fx = self.instantiate(f, x.clone())?;
                let nx = self.apply(b, x)?;
                self.conv(depth + 1, &fx, &nx)?
            }
            (V::Neutral(_), V::Lam(_, g)) => {
                let x = Value::var(depth);
                let nx = self.apply(a, x.clone())?;
                let gx = self.instantiate(g, x)?;
                self.conv(depth + 1, &nx, &gx)?
            }
            (V::Universe(i), V::Universe(j)) => i == j,
            (V::Pi(a1, b1), V::Pi(a2, b2)) | (V::Sigma(a1, b1), V::Sigma(a2, b2)) => {
                if !self.conv(depth, a1, a2)? {
                    return Ok(false);
                }
                let x = Value::var(depth);
                let l = self.instantiate(b1, x.clone())?;
                let r = self.instantiate(b2, x)?;
                self.conv(depth + 1, &l, &r)?
            }
            (V::Pair(a1, b1), V::Pair(a2, b2)) | (V::Sum(a1, b1), V::Sum(a2, b2)) => {
                self.conv(depth, a1, a2)? && self.conv(depth, b1, b2)?
            }
            // Injection annotations and refl types are fixed by the common type.
            (V::Inl(x, _), V::Inl(y, _)) | (V::Inr(x, _), V::Inr(y, _)) => self.conv(depth, x, y)?,
            (V::Refl(_, x), V::Refl(_, y)) => self.conv(depth, x, y)?,
            (V::Nat, V::Nat) | (V::Zero, V::Zero) | (V::Empty, V::Empty) | (V::Unit, V::Unit) | (V::Star, V::Star) => {
                true
            }
            (V::Succ(m), V::Succ(n)) => self.conv(depth, m, n)?,
            (V::Id(a1, x1, y1), V::Id(a2, x2, y2)) => {
                self.conv(depth, a1, a2)? && self.conv(depth, x1, x2)? && self.conv(depth, y1, y2)?
            }
            (V::Neutral(m), V::Neutral(n)) => self.conv_neutral(depth, m, n)?,
            _ => false,
        })
    }

    fn conv_all(&self, depth: usize, pairs: &[(&Val, &Val)]) -> KResult<bool> {
        for (a, b) in pairs {
            if !self.conv(depth, a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn conv_neutral(&self, depth: usize, m: &Neutral, n: &Neutral) -> KResult<bool> {
        use Neutral as N;
        Ok(match (m, n) {
            (N::Var(i), N::Var(j)) => i == j,
            (N::Axiom(a), N::Axiom(b)) => a == b,
            (N::App(f, a), N::App(g, b)) => self.conv_neutral(depth, f, g)? && self.conv(depth, a, b)?,
            (
                N::SigmaInd {
                    motive: m1,
                    handler: h1,
                    scrutinee: s1,
                },
                N::SigmaInd {
                    motive: m2,
                    handler: h2,
                    scrutinee: s2,
                },
            )
            | (
                N::NatInd {
                    motive: m1,
                    handler: h1,
                    scrutinee: s1,
                },
                N::NatInd {
                    motive: m2,
                    handler: h2,
                    scrutinee: s2,
                },
            )
            | (
                N::UnitInd {
                    motive: m1,
                    handler: h1,
                    scrutinee: s1,
                },
                N::UnitInd {
                    motive: m2,
                    handler: h2,
                    scrutinee: s2,
                },
            ) => self.conv_neutral(depth, s1, s2)? && self.conv_all(depth, &[(m1, m2), (h1, h2)])?,
            (
                N::SumInd {
                    motive: m1,
                    on_left: l1,
                    on_right: r1,
                    scrutinee: s1,
                },
                N::SumInd {
                    motive: m2,
                    on_left: l2,
                    on_right: r2,
                    scrutinee: s2,
                },
            ) => self.conv_neutral(depth, s1, s2)? && self.conv_all(depth, &[(m1, m2), (l1, l2), (r1, r2)])?,
            (
                N::NatIndHandler {
                    motive: m1,
                    handler: h1,
                    scrutinee: s1,
                },
                N::NatIndHandler {
                    motive: m2,
                    handler: h2,
                    scrutinee: s2,
                },
            ) => self.conv_neutral(depth, h1, h2)? && self.conv_all(depth, &[(m1, m2), (s1, s2)])?,
            (
                N::EmptyInd {
                    motive: m1,
                    scrutinee: s1,
                },
                N::EmptyInd {
                    motive: m2,
                    scrutinee: s2,
                },
            ) => self.conv_neutral(depth, s1, s2)? && self.conv(depth, m1, m2)?,
            (
                N::IdInd {
                    motive: m1,
                    handler: h1,
                    lhs: x1,
                    rhs: y1,
                    path: p1,
                },
                N::IdInd {
                    motive: m2,
                    handler: h2,
                    lhs: x2,
                    rhs: y2,
                    path: p2,
                },
            ) => {
                self.conv_neutral(depth, p1, p2)? && self.conv_all(depth, &[(m1, m2), (h1, h2), (x1, x2), (y1, y2)])?
            }
            (
                N::BasedIdInd {
                    ty: t1,
                    base: a1,
                    motive: m1,
                    handler: h1,
                    endpoint: b1,
                    path: p1,
                },
                N::BasedIdInd {
                    ty: t2,
                    base: a2,
                    motive: m2,
                    handler: h2,
                    endpoint: b2,
                    path: p2,
                },
            ) => {
                self.conv_neutral(depth, p1, p2)?
                    && self.conv_all(depth, &[(t1, t2), (a1, a2), (m1, m2), (h1, h2), (b1, b2)])?
            }
            _ => false,
        })
    }
}
