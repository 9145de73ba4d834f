//! Pretty-printer. Output re-parses to an alpha-equivalent term: binders get
//! fresh names `x<depth>` that avoid every name in scope, equalities print
//! as explicit `Id`, and numerals print as `succ` chains.

use super::Decl;
use crate::chain::Chain;
use crate::syntax::{shift, Context, Term, Tm};

const LAMBDA: u8 = 0;
const EQUATION: u8 = 1;
const SUM: u8 = 2;
const PRODUCT: u8 = 3;
const APP: u8 = 4;
const ATOM: u8 = 5;

struct Printer {
    /// Outermost first.
    names: Vec<String>,
}

fn lower(t: &Tm) -> Tm {
    shift(t, -1, 0).expect("binder is not referenced")
}

impl Printer {
    fn fresh(&self) -> String {
        let mut name = format!("x{}", self.names.len());
        while self.names.contains(&name) {
            name.push('\'');
        }
        name
    }

    fn var(&self, i: usize) -> String {
        match self.names.len().checked_sub(i + 1) {
            Some(pos) => {
                let name = &self.names[pos];
                // A shadowed name would resolve to the inner binder.
                if self.names[pos + 1..].contains(name) {
                    format!("#{i}")
                } else {
                    name.clone()
                }
            }
            None => format!("#{i}"),
        }
    }

    fn under<R>(&mut self, f: impl FnOnce(&mut Self, &str) -> R) -> R {
        let name = self.fresh();
        self.names.push(name.clone());
        let r = f(self, &name);
        self.names.pop();
        r
    }

    fn paren(&mut self, t: &Term, level: u8, out: &mut String) {
        if prec(t) < level {
            out.push('(');
            self.term(t, LAMBDA, out);
            out.push(')');
        } else {
            self.term(t, level, out);
        }
    }

    fn args(&mut self, head: &str, args: &[&Tm], out: &mut String) {
        out.push_str(head);
        for a in args {
            out.push(' ');
            self.paren(a, ATOM, out);
        }
    }

    fn term(&mut self, t: &Term, level: u8, out: &mut String) {
        use Term as T;
        if prec(t) < level {
            out.push('(');
            self.term(t, LAMBDA, out);
            out.push(')');
            return;
        }
        match t {
            T::Var(i) => out.push_str(&self.var(*i)),
            T::Const(name) => out.push_str(name),
            T::Universe(i) => out.push_str(&format!("U{i}")),
            T::Pi(a, b) if !b.mentions(0) => {
                self.paren(a, EQUATION, out);
                out.push_str(" -> ");
                self.paren(&lower(b), LAMBDA, out);
            }
            T::Pi(a, b) => self.binder(a, b, " -> ", LAMBDA, out),
            T::Lambda(a, b) => {
                let ty = {
                    let mut s = String::new();
                    self.paren(a, LAMBDA, &mut s);
                    s
                };
                self.under(|p, name| {
                    out.push_str(&format!("\\{name}:{ty}. "));
                    p.paren(b, LAMBDA, out);
                });
            }
            T::App(f, a) => {
                self.paren(f, APP, out);
                out.push(' ');
                self.paren(a, ATOM, out);
            }
            T::Sigma(a, b) if !b.mentions(0) => {
                self.paren(a, APP, out);
                out.push_str(" * ");
                self.paren(&lower(b), PRODUCT, out);
            }
            T::Sigma(a, b) => self.binder(a, b, " * ", LAMBDA, out),
            T::Pair(a, b) => {
                out.push('(');
                self.paren(a, LAMBDA, out);
                out.push_str(" , ");
                self.paren(b, LAMBDA, out);
                out.push(')');
            }
            T::Sum(a, b) => {
                self.paren(a, PRODUCT, out);
                out.push_str(" + ");
                self.paren(b, SUM, out);
            }
            T::Inl { value, right } => self.injection("inl", right, value, out),
            T::Inr { value, left } => self.injection("inr", left, value, out),
            T::Nat => out.push('N'),
            T::Zero => out.push_str("zero"),
            T::Succ(n) => self.args("succ", &[n], out),
            T::Empty => out.push_str("Empty"),
            T::Unit => out.push_str("Unit"),
            T::Star => out.push_str("star"),
            T::Id(a, x, y) => self.args("Id", &[a, x, y], out),
            T::Refl { ty, point } => self.args("refl", &[ty, point], out),
            T::SigmaInd {
                motive,
                handler,
                scrutinee,
            } => self.args("sigma-ind", &[motive, handler, scrutinee], out),
            T::SumInd {
                motive,
                on_left,
                on_right,
                scrutinee,
            } => self.args("sum-ind", &[motive, on_left, on_right, scrutinee], out),
            T::NatInd {
                motive,
                handler,
                scrutinee,
            } => self.args("nat-ind", &[motive, handler, scrutinee], out),
            T::EmptyInd { motive, scrutinee } => self.args("empty-ind", &[motive, scrutinee], out),
            T::UnitInd {
                motive,
                handler,
                scrutinee,
            } => self.args("unit-ind", &[motive, handler, scrutinee], out),
            T::IdInd {
                motive,
                handler,
                lhs,
                rhs,
                path,
            } => self.args("id-ind", &[motive, handler, lhs, rhs, path], out),
            T::BasedIdInd {
                ty,
                base,
                motive,
                handler,
                endpoint,
                path,
            } => self.args("based-ind", &[ty, base, motive, handler, endpoint, path], out),
        }
    }

    fn binder(&mut self, a: &Tm, b: &Tm, op: &str, body_level: u8, out: &mut String) {
        let mut ty = String::new();
        self.paren(a, LAMBDA, &mut ty);
        self.under(|p, name| {
            out.push_str(&format!("({name}:{ty}){op}"));
            p.paren(b, body_level, out);
        });
    }

    fn injection(&mut self, kw: &str, other: &Tm, value: &Tm, out: &mut String) {
        out.push_str(kw);
        out.push('[');
        self.term(other, LAMBDA, out);
        out.push_str("] ");
        self.paren(value, ATOM, out);
    }
}

/// Binding strength of the form `t` prints as.
fn prec(t: &Term) -> u8 {
    use Term as T;
    match t {
        T::Lambda(..) | T::Pi(..) => LAMBDA,
        T::Sigma(_, b) if b.mentions(0) => LAMBDA,
        T::Sum(..) => SUM,
        T::Sigma(..) => PRODUCT,
        T::App(..)
        | T::Succ(_)
        | T::Inl { .. }
        | T::Inr { .. }
        | T::Id(..)
        | T::Refl { .. }
        | T::SigmaInd { .. }
        | T::SumInd { .. }
        | T::NatInd { .. }
        | T::EmptyInd { .. }
        | T::UnitInd { .. }
        | T::IdInd { .. }
        | T::BasedIdInd { .. } => APP,
        _ => ATOM,
    }
}

pub fn print_term(t: &Term) -> String {
    print_term_in(&[], t)
}

/// Prints `t` with free variables named by `names` (outermost first).
pub fn print_term_in(names: &[String], t: &Term) -> String {
    let mut p = Printer { names: names.to_vec() };
    let mut out = String::new();
    p.term(t, LAMBDA, &mut out);
    out
}

fn quoted(j: &Option<String>) -> String {
    match j {
        Some(j) => format!(" \"{j}\""),
        None => String::new(),
    }
}

/// Prints a chain in the vertical proof layout, one item per line.
pub fn print_chain(chain: &Chain) -> String {
    let names = chain.context.names();
    let show = |t: &Tm| print_term_in(&names, t);
    let mut out = format!("  {}\n", show(&chain.goal));
    for link in &chain.links {
        out.push_str(link.kind.marker());
        if let Some(w) = &link.witness {
            out.push(' ');
            out.push_str(&show(w));
        }
        out.push_str(&quoted(&link.justification));
        out.push('\n');
        out.push_str(&format!("  {}\n", show(&link.lower)));
    }
    if let Some(c) = &chain.closing {
        out.push_str(&format!(":: {}{}\n", show(&c.inhabitant), quoted(&c.justification)));
    }
    out
}

fn telescope(ctx: &Context) -> String {
    let mut names: Vec<String> = Vec::new();
    let mut out = String::new();
    for (name, ty) in ctx.entries() {
        out.push_str(&format!(" ({name} : {})", print_term_in(&names, ty)));
        names.push(name.clone());
    }
    out
}

pub fn print_decl(d: &Decl) -> String {
    match d {
        Decl::Def { name, ty, body } => format!("def {name} : {} := {}\n", print_term(ty), print_term(body)),
        Decl::Axiom { name, ty } => format!("axiom {name} : {}\n", print_term(ty)),
        Decl::Theorem {
            name,
            anchor,
            telescope: tele,
            goal,
            chain,
        } => format!(
            "theorem {name}{}{} : {} proof\n{}qed\n",
            quoted(anchor),
            telescope(tele),
            print_term_in(&tele.names(), goal),
            print_chain(chain)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_term;
    use crate::syntax::alpha_eq;

    #[test]
    fn basic_forms() {
        assert_eq!(print_term(&Term::lambda(Term::nat(), Term::var(0))), "\\x0:N. x0");
        assert_eq!(print_term(&Term::pair(Term::zero(), Term::star())), "(zero , star)");
        assert_eq!(print_term(&Term::numeral(1)), "succ zero");
    }

    #[test]
    fn round_trips() {
        for src in [
            "(A B : U0) -> A + B -> B + A",
            "\\f:N -> N. \\x:N. f (f x)",
            "(x:N) * Id N x x",
            "A * B + C -> D",
            "(A -> B) -> A * (B + C)",
            "inl[N] (succ zero)",
            "\\p:(x:N) * N. sigma-ind (\\q:(y:N) * N. N) (\\a:N. \\b:N. a) p",
            "(f:(x:N) -> N) -> Id ((x:N) -> N) f f",
        ] {
            let t = parse_term(src).unwrap();
            let printed = print_term(&t);
            let back = parse_term(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
            assert!(alpha_eq(&t, &back), "{src} -> {printed}");
            assert_eq!(print_term(&back), printed);
        }
    }

    #[test]
    fn avoids_capturing_context_names() {
        let names = vec!["x1".to_string()];
        let t = Term::lambda(Term::nat(), Term::app(Term::var(1), Term::var(0)));
        let printed = print_term_in(&names, &t);
        assert_eq!(printed, "\\x1':N. x1 x1'");
    }
}
