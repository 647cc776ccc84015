mod common;

use std::collections::VecDeque;

use rand::Rng;

use common::*;
use sbcheck::ctl::{
    counterexample_ag, holds_at, sat_eg_fair, sat_set, witness_eg, witness_eg_fair, Ctl, SatSet, WitnessError,
};
use sbcheck::kripke::{Atom, Kripke};

#[test]
fn sat_set_matches_bounded_unrolling() {
    let mut rng = rng(42);
    let mut formulas = 0;
    for _ in 0..300 {
        let k = random_kripke(&mut rng, 12);
        for _ in 0..10 {
            let depth = rng.gen_range(0..=5);
            let phi = random_ctl(&mut rng, depth);
            assert!(phi.depth() <= 5);
            let ours = sat_set(&k, &phi);
            let want = naive_sat(&k, &phi);
            assert_eq!(ours.bits(), want.as_slice(), "{phi}");
            formulas += 1;
        }
    }
    assert_eq!(formulas, 3000);
}

#[test]
fn desugared_formulas_agree() {
    let mut rng = rng(7);
    for _ in 0..200 {
        let k = random_kripke(&mut rng, 12);
        let phi = random_ctl(&mut rng, 4);
        assert_eq!(sat_set(&k, &phi), sat_set(&k, &phi.desugar()), "{phi}");
    }
}

/// States from which some path stays in `a` and visits `fair` infinitely
/// often: a fair state inside `a` that is reachable within `a` and lies on
/// a cycle inside `a`.
fn naive_fair_eg(k: &Kripke, a: &[bool], fair: &[bool]) -> Vec<bool> {
    let n = k.len();
    let reach_within = |from: usize| -> Vec<bool> {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &u in k.successors(from) {
            if a[u] && !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in k.successors(v) {
                if a[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    };
    let recurrent: Vec<bool> = (0..n).map(|u| a[u] && fair[u] && reach_within(u)[u]).collect();
    (0..n)
        .map(|t| a[t] && (recurrent[t] || reach_within(t).iter().enumerate().any(|(u, &r)| r && recurrent[u])))
        .collect()
}

#[test]
fn fair_eg_matches_naive_search() {
    let mut rng = rng(99);
    for _ in 0..300 {
        let k = random_kripke(&mut rng, 12);
        let a: Vec<bool> = (0..k.len()).map(|_| rng.gen_bool(0.7)).collect();
        let fair: Vec<bool> = (0..k.len()).map(|_| rng.gen_bool(0.4)).collect();
        let ours = sat_eg_fair(&k, &SatSet::from_bits(a.clone()), &SatSet::from_bits(fair.clone()));
        assert_eq!(ours.bits(), naive_fair_eg(&k, &a, &fair).as_slice());
        // With every state fair the constraint is vacuous.
        let phi = random_ctl(&mut rng, 3);
        let all = SatSet::full(k.len());
        assert_eq!(sat_eg_fair(&k, &sat_set(&k, &phi), &all), sat_set(&k, &Ctl::eg(phi)));
    }
}

#[test]
fn witnesses_and_counterexamples_reverify() {
    let mut rng = rng(3);
    for _ in 0..300 {
        let k = random_kripke(&mut rng, 12);
        let inner = random_ctl(&mut rng, 2);
        let inner_set = sat_set(&k, &inner);
        let fair = sat_set(&k, &Ctl::atom(Atom::Steady));
        for t in 0..k.len() {
            match witness_eg(&k, &inner, t) {
                Ok(l) => {
                    assert!(holds_at(&k, &Ctl::eg(inner.clone()), t));
                    assert_eq!(l.start(), t);
                    assert!(l.is_path_in(&k));
                    assert!(l.states().all(|s| inner_set.contains(s)));
                }
                Err(WitnessError::NotSatisfied(_)) => assert!(!holds_at(&k, &Ctl::eg(inner.clone()), t)),
                Err(e) => panic!("{e:?}"),
            }
            if let Ok(l) = witness_eg_fair(&k, &inner, &fair, t) {
                assert!(l.is_path_in(&k));
                assert!(l.states().all(|s| inner_set.contains(s)));
                assert!(l.cycle.iter().any(|&s| fair.contains(s)));
            } else {
                assert!(!sat_eg_fair(&k, &inner_set, &fair).contains(t));
            }
            match counterexample_ag(&k, &inner, t) {
                Ok(path) => {
                    assert_eq!(path[0], t);
                    assert!(path.windows(2).all(|w| k.successors(w[0]).contains(&w[1])));
                    assert!(!inner_set.contains(*path.last().unwrap()));
                    assert!(path[..path.len() - 1].iter().all(|&s| inner_set.contains(s)));
                }
                Err(WitnessError::NoViolation(_)) => assert!(holds_at(&k, &Ctl::ag(inner.clone()), t)),
                Err(e) => panic!("{e:?}"),
            }
        }
    }
}
