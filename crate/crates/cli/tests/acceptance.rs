//! Acceptance criteria, one line each: `PASS <n> <title>` or
//! `FAIL <n> <title>: <reason>`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::SeedableRng;

use dchain::chain::{classify, LinkKind};
use dchain::doors::{synthesize, Synthesis};
use dchain::kernel::{self, DEFAULT_FUEL};
use dchain::surface::{parse_term, parse_term_with, print_term, print_term_in};
use dchain::syntax::alpha_eq;
use dchain::{stdlib, Context, Environment, Fuel, Term, Tm};

fn fuel() -> Fuel {
    Fuel::new(DEFAULT_FUEL)
}

fn corpus_complete(env: &Environment) -> Result<String, String> {
    let start = Instant::now();
    let run = dchain_cli::run(["dchain", "stdlib"]);
    let elapsed = start.elapsed();
    if run.code != 0 {
        return Err(format!("exit {}: {}{}", run.code, run.stdout, run.stderr));
    }
    let lines: Vec<&str> = run.stdout.lines().collect();
    let expected: Vec<String> = common::theorem_names(env).iter().map(|n| format!("OK {n}")).collect();
    if lines != expected {
        return Err(format!("report differs from the loaded theorems: {lines:?}"));
    }
    if lines.len() < 30 {
        return Err(format!("only {} theorems", lines.len()));
    }
    for (rule, name) in stdlib::coverage() {
        if !expected.contains(&format!("OK {name}")) {
            return Err(format!("{rule} is not covered by `{name}`"));
        }
    }
    Ok(format!("{} theorems in {:.1?}", lines.len(), elapsed))
}

fn nine_cases() -> Result<String, String> {
    use LinkKind::*;
    let kinds = [DefEqLink, EquivLink, Consequence];
    let table = |a: LinkKind, b: LinkKind| match (a, b) {
        (Consequence, _) | (_, Consequence) => Consequence,
        (DefEqLink, DefEqLink) => DefEqLink,
        _ => EquivLink,
    };
    let mut seqs: Vec<Vec<LinkKind>> = kinds.iter().map(|&k| vec![k]).collect();
    let mut all = seqs.clone();
    for _ in 1..5 {
        seqs = seqs
            .iter()
            .flat_map(|s| kinds.iter().map(move |&k| [s.as_slice(), &[k]].concat()))
            .collect();
        all.extend(seqs.iter().cloned());
    }
    for s in &all {
        let folded = s[1..].iter().fold(s[0], |acc, &k| table(acc, k));
        let got = classify(s).map_err(|e| e.to_string())?;
        if got != folded {
            return Err(format!("{s:?}: {got:?} instead of {folded:?}"));
        }
    }
    Ok(format!("{} sequences", all.len()))
}

fn code_oracle(env: &Environment) -> Result<String, String> {
    for m in 0..=6u64 {
        for n in 0..=6u64 {
            let t = Term::apps(Term::constant("code"), [Term::numeral(m), Term::numeral(n)]);
            let nf = kernel::normalize(env, &Context::new(), &t, &fuel()).map_err(|e| e.to_string())?;
            let expected = if common::code_oracle(m, n) {
                Term::unit()
            } else {
                Term::empty()
            };
            if !alpha_eq(&nf, &expected) {
                return Err(format!("code {m} {n} normalizes to {}", print_term(&nf)));
            }
        }
    }
    Ok("49 cases".into())
}

/// Equivalence, its two types, and probes of the second type.
const ROUND_TRIPS: &[(&str, &str, &str, [&str; 5])] = &[
    (
        "comm_plus N Unit",
        "N + Unit",
        "Unit + N",
        [
            "inl[N] star",
            "inr[Unit] 0",
            "inr[Unit] 1",
            "inr[Unit] 4",
            "inr[Unit] (succ 6)",
        ],
    ),
    (
        "pair_ident N N (1, 2) (1, 2)",
        "Id (N * N) (1, 2) (1, 2)",
        "Id N 1 1 * Id N 2 2",
        [
            "(refl N 1, refl N 2)",
            "(refl N (succ 0), refl N 2)",
            "(refl N 1, refl N (succ 1))",
            "(refl N (succ 0), refl N (succ (succ 0)))",
            "pair_ap N N (1, 2) (1, 2) (refl (N * N) (1, 2))",
        ],
    ),
    (
        "sigma_consequent N (\\x:N. Unit) (\\w:(x:N) * Unit. N)",
        "(w:(x:N) * Unit) -> N",
        "(x:N) -> Unit -> N",
        [
            "\\x:N. \\y:Unit. x",
            "\\x:N. \\y:Unit. succ x",
            "\\x:N. \\y:Unit. 0",
            "\\x:N. \\y:Unit. unit-ind (\\t:Unit. N) x y",
            "\\x:N. \\y:Unit. nat-ind (\\k:N. N) (1, \\k:N. \\r:N. succ r) x",
        ],
    ),
    (
        "kappa_equiv N Unit (\\z:N + Unit. N)",
        "(z:N + Unit) -> N",
        "(N -> N) * (Unit -> N)",
        [
            "(\\x:N. x, \\y:Unit. 0)",
            "(\\x:N. succ x, \\y:Unit. 7)",
            "(\\x:N. 2, \\y:Unit. unit-ind (\\t:Unit. N) 4 y)",
            "(\\x:N. nat-ind (\\k:N. N) (0, \\k:N. \\r:N. r) x, \\y:Unit. 1)",
            "(\\x:N. succ (succ x), \\y:Unit. 3)",
        ],
    ),
    (
        "onepoint_pi N 2 (\\x:N. \\p:Id N 2 x. N)",
        "(x:N) -> Id N 2 x -> N",
        "N",
        ["0", "1", "2", "5", "succ 3"],
    ),
    (
        "termsplit_pi N (\\x:N. N) (\\x:N. Unit)",
        "(x:N) -> N * Unit",
        "(N -> N) * (N -> Unit)",
        [
            "(\\x:N. x, \\x:N. star)",
            "(\\x:N. succ x, \\x:N. star)",
            "(\\x:N. 0, \\x:N. star)",
            "(\\x:N. nat-ind (\\k:N. N) (1, \\k:N. \\r:N. r) x, \\x:N. star)",
            "(\\x:N. succ (succ x), \\x:N. star)",
        ],
    ),
];

fn round_trips(env: &Environment) -> Result<String, String> {
    let ctx = Context::new();
    let mut count = 0;
    for (e, x, y, probes) in ROUND_TRIPS {
        let equiv = common::term(env, &format!("equiv ({x}) ({y})"));
        kernel::check(env, &ctx, &common::term(env, e), &equiv, &fuel()).map_err(|err| format!("{e}: {err}"))?;
        for p in probes {
            let there_and_back = common::term(env, &format!("fwd ({x}) ({y}) ({e}) (bwd ({x}) ({y}) ({e}) ({p}))"));
            let p_term = common::term(env, p);
            kernel::check(env, &ctx, &p_term, &common::term(env, y), &fuel()).map_err(|err| format!("{p}: {err}"))?;
            if !kernel::def_eq(env, &ctx, &there_and_back, &p_term, &fuel()).map_err(|err| err.to_string())? {
                return Err(format!("{e}: probe {p} does not come back"));
            }
            count += 1;
        }
    }
    Ok(format!(
        "{} equivalences, {count} probes; homotopies checked by typing only",
        ROUND_TRIPS.len()
    ))
}

fn normalization(env: &Environment) -> Result<String, String> {
    let empty = Environment::new();
    let ctx = Context::new();
    let mut rng = StdRng::seed_from_u64(1000);
    let mut cases: Vec<(Environment, Tm, Tm, String)> = Vec::new();
    for i in 0..1000 {
        let (t, ty) = common::random_typed(&mut rng);
        cases.push((empty.clone(), t, ty, format!("random term {i}")));
    }
    for (i, entry) in env.entries().iter().enumerate() {
        if let Some(body) = &entry.body {
            cases.push((env.prefix(i), body.clone(), entry.ty.clone(), entry.name.clone()));
        }
    }
    let big = || Fuel::new(10 * DEFAULT_FUEL);
    for (scope, t, ty, what) in &cases {
        kernel::check(scope, &ctx, t, ty, &big()).map_err(|e| format!("{what}: {e}"))?;
        let nf = kernel::normalize(scope, &ctx, t, &big()).map_err(|e| format!("{what}: {e}"))?;
        let nf2 = kernel::normalize(scope, &ctx, &nf, &big()).map_err(|e| format!("{what}: {e}"))?;
        if !alpha_eq(&nf, &nf2) {
            return Err(format!("{what}: normalize is not idempotent"));
        }
        kernel::check(scope, &ctx, &nf, ty, &big()).map_err(|e| format!("{what}: subject reduction: {e}"))?;
    }
    Ok(format!("{} terms", cases.len()))
}

fn surface_round_trip(env: &Environment) -> Result<String, String> {
    let mut count = 0;
    let mut check = |ctx: &Context, t: &Tm| -> Result<(), String> {
        let names = ctx.names();
        let printed = print_term_in(&names, t);
        let back = parse_term_with(env, ctx, &printed).map_err(|e| format!("{printed}: {e}"))?;
        if !alpha_eq(&back, t) || print_term_in(&names, &back) != printed {
            return Err(format!("{printed} does not survive a parse cycle"));
        }
        count += 1;
        Ok(())
    };
    let empty = Context::new();
    for entry in env.entries() {
        check(&empty, &entry.ty)?;
        if let Some(b) = &entry.body {
            check(&empty, b)?;
        }
        if let dchain::env::EntryKind::Theorem(r) = &entry.kind {
            let ctx = &r.chain.context;
            check(ctx, &r.goal)?;
            for l in &r.chain.links {
                check(ctx, &l.upper)?;
                check(ctx, &l.lower)?;
                if let Some(w) = &l.witness {
                    check(ctx, w)?;
                }
            }
            if let Some(c) = &r.chain.closing {
                check(ctx, &c.bottom)?;
                check(ctx, &c.inhabitant)?;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..200 {
        let (t, _) = common::random_typed(&mut rng);
        let printed = print_term(&t);
        let back = parse_term(&printed).map_err(|e| format!("{printed}: {e}"))?;
        if !alpha_eq(&back, &t) {
            return Err(format!("{printed} does not survive a parse cycle"));
        }
    }
    Ok(format!("{count} corpus terms, 200 random terms"))
}

/// Variables in scope, source, target and the expected map.
type DoorCase = (
    &'static [(&'static str, &'static str)],
    &'static str,
    &'static str,
    &'static str,
);

fn doors_formulas() -> Result<String, String> {
    let env = Environment::new();
    let cases: [DoorCase; 3] = [
        (
            &[("A", "U0"), ("C", "A -> U0")],
            "(x:A) * C x",
            "(x:A) * C x",
            "\\u:(x:A) * C x. (sigma-ind (\\w:(x:A) * C x. A) (\\x:A. \\y:C x. x) u, \
             sigma-ind (\\w:(x:A) * C x. C (sigma-ind (\\v:(x:A) * C x. A) (\\x:A. \\y:C x. x) w)) (\\x:A. \\y:C x. y) u)",
        ),
        (
            &[("A", "U0"), ("P", "A -> U0"), ("Q", "A -> U0")],
            "(x:A) -> P x -> Q x",
            "((x:A) -> P x) -> (x:A) -> Q x",
            "\\u:(x:A) -> P x -> Q x. \\z:(x:A) -> P x. \\x:A. u x (z x)",
        ),
        (
            &[("A", "U0"), ("P", "U0"), ("Q", "A -> U0")],
            "(x:A) -> P -> Q x",
            "P -> (x:A) -> Q x",
            "\\u:(x:A) -> P -> Q x. \\y:P. \\x:A. u x y",
        ),
    ];
    for (vars, source, target, formula) in cases {
        let mut ctx = Context::new();
        for (name, ty) in vars {
            let t = parse_term_with(&env, &ctx, ty).map_err(|e| e.to_string())?;
            ctx.push(*name, t);
        }
        let parse = |s: &str| parse_term_with(&env, &ctx, s).map_err(|e| e.to_string());
        let (s, t, f) = (parse(source)?, parse(target)?, parse(formula)?);
        let m = match synthesize(&env, &ctx, &s, &t) {
            Synthesis::Found(m) => m,
            other => return Err(format!("{source} to {target}: {other:?}")),
        };
        kernel::check(&env, &ctx, &m, &Term::arrow(s, t), &fuel()).map_err(|e| e.to_string())?;
        if !kernel::def_eq(&env, &ctx, &m, &f, &fuel()).map_err(|e| e.to_string())? {
            return Err(format!("{source} to {target}: got {}", print_term_in(&ctx.names(), &m)));
        }
    }
    Ok("3 formulas".into())
}

fn witness_independence(env: &Environment) -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(8);
    let sweep = common::mutation_sweep(env, &mut rng);
    for (name, failing) in &sweep {
        if failing.as_slice() != std::slice::from_ref(name) {
            return Err(format!("mutating {name} made {failing:?} fail"));
        }
    }
    Ok(format!("{} mutations", sweep.len()))
}

type Criterion<'a> = Box<dyn Fn() -> Result<String, String> + 'a>;

#[test]
fn acceptance() {
    let env = stdlib::load().expect("corpus loads");
    let criteria: Vec<(&str, Criterion)> = vec![
        ("corpus completeness", Box::new(|| corpus_complete(&env))),
        ("nine-case table", Box::new(nine_cases)),
        ("code oracle", Box::new(|| code_oracle(&env))),
        ("quasi-inverse round trips", Box::new(|| round_trips(&env))),
        ("normalization properties", Box::new(|| normalization(&env))),
        ("surface round trip", Box::new(|| surface_round_trip(&env))),
        ("doors reproduction", Box::new(doors_formulas)),
        ("witness independence", Box::new(|| witness_independence(&env))),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {title} ({detail})", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {} {title}: {reason}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
