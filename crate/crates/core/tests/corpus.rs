mod common;

use rand::rngs::StdRng;
use rand::SeedableRng;

use dchain::env::EntryKind;
use dchain::stdlib::{self, add_declaration, EXERCISES};
use dchain::surface::{parse_file_with, parse_term_with, print_decl, print_term, print_term_in};
use dchain::syntax::alpha_eq;
use dchain::{Context, Environment, Tm};

#[test]
fn loads_and_verifies() {
    let env = stdlib::load().unwrap();
    let report = stdlib::verify_all(&env);
    assert!(
        report.all_ok(),
        "{:?}",
        report.failures().map(|f| f.line()).collect::<Vec<_>>()
    );
    assert!(report.entries.len() >= 30);
}

#[test]
fn loading_is_deterministic() {
    let (a, b) = (stdlib::load().unwrap(), stdlib::load().unwrap());
    assert_eq!(a, b);
    let names: Vec<_> = a.entries().iter().map(|e| e.name.clone()).collect();
    let again: Vec<_> = b.entries().iter().map(|e| e.name.clone()).collect();
    assert_eq!(names, again);
}

#[test]
fn commutativity_of_sums_is_stated_as_an_equivalence() {
    let env = stdlib::load().unwrap();
    let record = env.theorem("comm_plus").unwrap();
    let expected = parse_term_with(&env, &record.telescope, "equiv (A + B) (B + A)").unwrap();
    assert!(alpha_eq(&record.goal, &expected));
}

#[test]
fn exercise_is_not_loaded() {
    let env = stdlib::load().unwrap();
    assert!(!env.contains("equality_sigma"));
    for (_, text) in EXERCISES {
        assert!(parse_file_with(&env, text).unwrap().declarations.is_empty());
    }
}

#[test]
fn coverage_names_corpus_theorems() {
    let env = stdlib::load().unwrap();
    let cov = stdlib::coverage();
    assert!(cov.len() >= 16);
    for (rule, name) in cov {
        assert!(env.theorem(name).is_some(), "{rule}: {name}");
    }
}

fn round_trip(env: &Environment, ctx: &Context, t: &Tm, what: &str) {
    let names = ctx.names();
    let printed = print_term_in(&names, t);
    let back = parse_term_with(env, ctx, &printed).unwrap_or_else(|e| panic!("{what}: {e}\n{printed}"));
    assert!(alpha_eq(&back, t), "{what}: {printed}");
    assert_eq!(print_term_in(&names, &back), printed, "{what}");
}

#[test]
fn every_corpus_term_survives_printing() {
    let env = stdlib::load().unwrap();
    let empty = Context::new();
    for entry in env.entries() {
        round_trip(&env, &empty, &entry.ty, &entry.name);
        if let Some(body) = &entry.body {
            round_trip(&env, &empty, body, &entry.name);
        }
        if let EntryKind::Theorem(r) = &entry.kind {
            let ctx = &r.chain.context;
            round_trip(&env, ctx, &r.goal, &r.name);
            for link in &r.chain.links {
                round_trip(&env, ctx, &link.upper, &r.name);
                round_trip(&env, ctx, &link.lower, &r.name);
                if let Some(w) = &link.witness {
                    round_trip(&env, ctx, w, &r.name);
                }
            }
            if let Some(c) = &r.chain.closing {
                round_trip(&env, ctx, &c.bottom, &r.name);
                round_trip(&env, ctx, &c.inhabitant, &r.name);
            }
        }
    }
}

#[test]
fn every_corpus_declaration_survives_printing() {
    let mut env = Environment::new();
    for (file, text) in stdlib::sources().unwrap() {
        for decl in parse_file_with(&env, text).unwrap().declarations {
            let printed = print_decl(&decl);
            let back = parse_file_with(&env, &printed).unwrap_or_else(|e| panic!("{file}: {e}\n{printed}"));
            assert_eq!(back.declarations, vec![decl.clone()], "{file}:\n{printed}");
            add_declaration(&mut env, &decl, dchain::kernel::DEFAULT_FUEL).unwrap();
        }
    }
}

#[test]
fn closed_terms_print_without_context() {
    let env = stdlib::load().unwrap();
    let t = common::term(&env, "comm_plus N Unit");
    assert_eq!(print_term(&t), "comm_plus N Unit");
}

#[test]
fn corrupted_witnesses_fail_alone() {
    let env = stdlib::load().unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for name in [
        "uniq_pairs",
        "isSet_nat",
        "leibniz_tr",
        "onepoint_pi",
        "antecedent_unit_sect",
    ] {
        let record = env.theorem(name).unwrap();
        let (chain, _) = common::corrupt(&record.chain, &mut rng);
        let mut mutated = env.clone();
        assert!(mutated.replace_chain(name, chain));
        let report = stdlib::verify_all(&mutated);
        let failing: Vec<_> = report.failures().map(|f| f.name.as_str()).collect();
        assert_eq!(failing, [name]);
    }
}
