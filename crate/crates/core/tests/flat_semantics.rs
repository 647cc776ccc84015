mod common;

use std::collections::BTreeSet;

use rand::seq::SliceRandom;

use common::*;
use sbcheck::bundled;
use sbcheck::constraints::{Observation, Value};
use sbcheck::flatten::{build_flat, build_flat_seeded, FlatState};
use sbcheck::kripke::{to_kripke, Atom};
use sbcheck::model::{expand_rules, parse_model, to_dsl, validate, Severity};

#[test]
fn bundled_flat_lts_matches_oracle() {
    for (name, sys) in bundled::all() {
        let flat = build_flat(&sys);
        let ours = lts_sets(&flat);
        let oracle = oracle_flat(&sys, &[FlatState::steady(sys.b.initial(), sys.s.initial())]);
        assert_eq!(ours.0.len(), oracle.0.len(), "{name}: state count");
        assert_eq!(ours, oracle, "{name}");
    }
}

#[test]
fn generated_flat_lts_matches_oracle() {
    for sys in random_suite(300) {
        let flat = build_flat(&sys);
        let oracle = oracle_flat(&sys, &[FlatState::steady(sys.b.initial(), sys.s.initial())]);
        assert_eq!(lts_sets(&flat), oracle, "{}", sys.name);
    }
}

#[test]
fn seeded_flattening_matches_oracle() {
    for sys in random_suite(100) {
        let seeds: Vec<FlatState> = (0..sys.b.len())
            .flat_map(|q| (0..sys.s.len()).map(move |r| (q, r)))
            .filter(|&(q, r)| sys.satisfies_label(q, r))
            .map(|(q, r)| FlatState::steady(q, r))
            .collect();
        if seeds.is_empty() {
            continue;
        }
        let flat = build_flat_seeded(&sys, &seeds);
        assert_eq!(lts_sets(&flat), oracle_flat(&sys, &seeds), "{}", sys.name);
        for (k, s) in seeds.iter().enumerate() {
            assert_eq!(flat.state(flat.roots()[k]), *s);
        }
    }
}

#[test]
fn flat_invariants_hold_on_bundled_and_generated() {
    let mut systems: Vec<_> = bundled::all().into_iter().map(|(_, s)| s).collect();
    systems.extend(random_suite(500));
    for sys in &systems {
        let bad = flat_invariant_violations(sys, &build_flat(sys));
        assert!(bad.is_empty(), "{}: {bad:?}", sys.name);
    }
}

#[test]
fn kripke_invariants_hold() {
    let mut systems: Vec<_> = bundled::all().into_iter().map(|(_, s)| s).collect();
    systems.extend(random_suite(200));
    for sys in &systems {
        let flat = build_flat(sys);
        let k = to_kripke(&flat);
        assert_eq!(k.len(), flat.len());
        let dead = (0..flat.len()).filter(|&i| flat.out_degree(i) == 0).count();
        let mut pairs: Vec<_> = flat.edges().iter().map(|e| (e.0, e.2)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(k.edge_count(), pairs.len() + dead);
        for t in 0..k.len() {
            let l = k.labels(t);
            assert!(!k.successors(t).is_empty());
            assert_eq!(!l.contains(Atom::Progress), k.has_added_loop(t));
            assert!(!l.contains(Atom::Steady) || l.contains(Atom::Progress));
            assert!(!l.contains(Atom::Adapting) || l.contains(Atom::Progress));
        }
    }
}

fn tuple(o: &Observation) -> (i64, i64, i64) {
    let get = |n| match o.get(n) {
        Some(Value::Int(k)) => *k,
        other => panic!("{n}: {other:?}"),
    };
    (get("Oc"), get("Ob"), get("Oy"))
}

#[test]
fn bone_expansion_matches_grid_oracle() {
    let sys = bundled::bone_s0();
    let (states, edges) = bone_oracle();
    let ours: BTreeSet<_> = sys.b.states().iter().map(|s| tuple(&s.obs)).collect();
    assert_eq!(sys.b.len(), states.len());
    assert_eq!(ours, states);
    let our_edges: BTreeSet<_> =
        sys.b.transitions().iter().map(|&(a, b)| (tuple(&sys.b.state(a).obs), tuple(&sys.b.state(b).obs))).collect();
    assert_eq!(our_edges, edges);
    for s in sys.b.states() {
        let (c, b, y) = tuple(&s.obs);
        assert!((0..=2).contains(&c) && (0..=4).contains(&b) && (0..=2).contains(&y));
    }
}

#[test]
fn rule_order_does_not_change_expansion() {
    let (sig, rules) = bundled::bone_rules();
    let init = Observation::new(&sig, [("Oc", Value::Int(0)), ("Ob", Value::Int(0)), ("Oy", Value::Int(1))]).unwrap();
    let base = expand_rules(&rules, &sig, init.clone()).level;
    let mut rng = rng(5);
    for _ in 0..20 {
        let mut shuffled = rules.clone();
        shuffled.shuffle(&mut rng);
        let other = expand_rules(&shuffled, &sig, init.clone()).level;
        assert_eq!(other.states(), base.states());
        assert_eq!(other.transitions(), base.transitions());
    }
}

#[test]
fn generated_systems_validate_and_round_trip() {
    for sys in random_suite(300) {
        let diags = validate(&sys);
        assert!(!diags.iter().any(|d| d.severity == Severity::Error), "{}: {diags:?}", sys.name);
        let text = to_dsl(&sys);
        let back = parse_model(&text).unwrap();
        assert_eq!(to_dsl(&back), text);
        assert_eq!(lts_sets(&build_flat(&back)), lts_sets(&build_flat(&sys)));
    }
}

#[test]
fn every_bundled_formula_evaluates_on_every_state() {
    use sbcheck::constraints::{evaluate, typecheck};
    for (name, sys) in bundled::all() {
        let formulas = sys.s.states().iter().map(|s| &s.label).chain(sys.s.transitions().iter().map(|t| &t.invariant));
        for phi in formulas {
            assert!(typecheck(phi, &sys.sig).is_ok(), "{name}: {phi}");
            for q in sys.b.states() {
                let _ = evaluate(phi, &q.obs);
            }
        }
    }
}
