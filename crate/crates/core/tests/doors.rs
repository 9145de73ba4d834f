use dchain::doors::{synthesize, Synthesis};
use dchain::kernel::{self, DEFAULT_FUEL};
use dchain::surface::parse_term_with;
use dchain::{stdlib, Context, Environment, Fuel, Term, Tm};

fn scope(env: &Environment, entries: &[(&str, &str)]) -> Context {
    let mut ctx = Context::new();
    for (name, ty) in entries {
        let t = parse_term_with(env, &ctx, ty).unwrap();
        ctx.push(*name, t);
    }
    ctx
}

fn found(env: &Environment, ctx: &Context, source: &str, target: &str) -> Tm {
    let s = parse_term_with(env, ctx, source).unwrap();
    let t = parse_term_with(env, ctx, target).unwrap();
    match synthesize(env, ctx, &s, &t) {
        Synthesis::Found(m) => {
            let ty = Term::arrow(s, t);
            kernel::check(env, ctx, &m, &ty, &Fuel::new(DEFAULT_FUEL)).unwrap();
            m
        }
        other => panic!("{source} to {target}: {other:?}"),
    }
}

/// Both maps exist and compose to the identity on every probe.
fn inverse_pair(env: &Environment, ctx: &Context, a: &str, b: &str, probes_a: &[&str], probes_b: &[&str]) {
    let phi = found(env, ctx, a, b);
    let psi = found(env, ctx, b, a);
    let fuel = Fuel::new(DEFAULT_FUEL);
    for (probes, f, g) in [(probes_a, &phi, &psi), (probes_b, &psi, &phi)] {
        assert!(probes.len() >= 5);
        for p in probes {
            let p = parse_term_with(env, ctx, p).unwrap();
            let back = Term::app(g.clone(), Term::app(f.clone(), p.clone()));
            assert!(kernel::def_eq(env, ctx, &back, &p, &fuel).unwrap());
        }
    }
}

#[test]
fn antecedent_maps_are_inverse() {
    let env = Environment::new();
    let ctx = scope(
        &env,
        &[
            ("A", "U0"),
            ("P", "U0"),
            ("Q", "A -> U0"),
            ("f", "P -> (x:A) -> Q x"),
            ("g", "(x:A) -> P -> Q x"),
            ("c", "(x:A) -> Q x"),
        ],
    );
    let probes_a = [
        "f",
        "\\y:P. f y",
        "\\y:P. \\x:A. g x y",
        "\\y:P. c",
        "\\y:P. \\x:A. unit-ind (\\t:Unit. Q x) (f y x) star",
    ];
    let probes_b = [
        "g",
        "\\x:A. \\y:P. f y x",
        "\\x:A. g x",
        "\\x:A. \\y:P. c x",
        "\\x:A. \\y:P. sigma-ind (\\w:P * Unit. Q x) (\\p:P. \\t:Unit. g x p) (y, star)",
    ];
    inverse_pair(
        &env,
        &ctx,
        "P -> (x:A) -> Q x",
        "(x:A) -> P -> Q x",
        &probes_a,
        &probes_b,
    );
}

#[test]
fn sigma_self_map_is_an_involution_on_pairs() {
    let env = Environment::new();
    let probes = [
        "(0, refl N 0)",
        "(1, refl N 1)",
        "(3, refl N 3)",
        "(succ 4, refl N 5)",
        "(2, refl N (succ 1))",
    ];
    inverse_pair(
        &env,
        &Context::new(),
        "(x:N) * Id N x x",
        "(x:N) * Id N x x",
        &probes,
        &probes,
    );
}

#[test]
fn product_swap() {
    let env = Environment::new();
    let probes_a = ["(0, star)", "(1, star)", "(2, star)", "(7, star)", "(succ 0, star)"];
    let probes_b = ["(star, 0)", "(star, 3)", "(star, 4)", "(star, 5)", "(star, succ 2)"];
    inverse_pair(&env, &Context::new(), "N * Unit", "Unit * N", &probes_a, &probes_b);
}

#[test]
fn stdlib_constants_are_opened_before_matching() {
    let env = stdlib::load().unwrap();
    let ctx = Context::new().with("A", Term::universe(0)).with("B", Term::universe(0));
    let s = parse_term_with(&env, &ctx, "A * B").unwrap();
    let t = parse_term_with(&env, &ctx, "(x:A) * (\\y:A. B) x").unwrap();
    assert!(matches!(synthesize(&env, &ctx, &s, &t), Synthesis::Found(_)));
}

#[test]
fn empty_source_has_no_candidate_without_its_eliminator() {
    let env = Environment::new();
    let (s, t) = (Term::empty(), Term::nat());
    let r = synthesize(&env, &Context::new(), &s, &t);
    assert!(matches!(r, Synthesis::NoCandidate));
}
