//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sbcheck::ctl::Ctl;
use sbcheck::flatten::{FlatLabel, FlatLts, FlatState};
use sbcheck::gen::gen_random;
use sbcheck::kripke::{Atom, Kripke, LabelSet};
use sbcheck::model::SbSystem;

/// Shape of the `i`-th system in the random suite: `n_b <= 12`, `n_s <= 4`.
pub fn suite_params(i: u64) -> (usize, usize, f64) {
    let n_b = 1 + (i as usize * 7 + 3) % 12;
    let n_s = 1 + (i as usize / 3) % 4;
    let density = [0.1, 0.2, 0.3, 0.45, 0.7][i as usize % 5];
    (n_b, n_s, density)
}

pub fn random_suite(count: u64) -> Vec<SbSystem> {
    (0..count)
        .map(|i| {
            let (n_b, n_s, d) = suite_params(i);
            gen_random(1000 + i, n_b, n_s, d).expect("valid parameters")
        })
        .collect()
}

pub type Edge = (FlatState, FlatLabel, FlatState);

/// Breadth-first exploration of the flat rules, written directly from
/// their premises without the library's precomputed tables.
pub fn oracle_flat(sys: &SbSystem, seeds: &[FlatState]) -> (BTreeSet<FlatState>, BTreeSet<Edge>) {
    let mut seen: BTreeSet<FlatState> = seeds.iter().copied().collect();
    let mut queue: VecDeque<FlatState> = seeds.iter().copied().collect();
    let mut edges = BTreeSet::new();
    while let Some(f) = queue.pop_front() {
        let mut out = Vec::new();
        let succ: Vec<usize> = sys.b.successors(f.q).collect();
        match f.phase {
            None => {
                let r = f.r;
                if sys.satisfies_label(f.q, r) {
                    let stay: Vec<usize> = succ.iter().copied().filter(|&q2| sys.satisfies_label(q2, r)).collect();
                    for &q2 in &stay {
                        out.push((FlatLabel::SteadyIn(r), FlatState::steady(q2, r)));
                    }
                    if stay.is_empty() {
                        for &t in sys.s.outgoing(r) {
                            let target = sys.s.transition(t).target;
                            for &q2 in &succ {
                                if sys.satisfies_label(q2, target) {
                                    out.push((FlatLabel::AdaptPhase(t), FlatState::steady(q2, target)));
                                } else if sys.satisfies_invariant(q2, t) {
                                    out.push((FlatLabel::AdaptPhase(t), FlatState::adapting(q2, r, t)));
                                }
                            }
                        }
                    }
                }
            }
            Some(t) => {
                let target = sys.s.transition(t).target;
                if sys.satisfies_invariant(f.q, t) && !sys.satisfies_label(f.q, target) {
                    let ends: Vec<usize> = succ.iter().copied().filter(|&q2| sys.satisfies_label(q2, target)).collect();
                    if ends.is_empty() {
                        for &q2 in &succ {
                            if sys.satisfies_invariant(q2, t) {
                                out.push((FlatLabel::AdaptPhase(t), FlatState::adapting(q2, f.r, t)));
                            }
                        }
                    } else {
                        for q2 in ends {
                            out.push((FlatLabel::AdaptPhase(t), FlatState::steady(q2, target)));
                        }
                    }
                }
            }
        }
        for (l, g) in out {
            edges.insert((f, l, g));
            if seen.insert(g) {
                queue.push_back(g);
            }
        }
    }
    (seen, edges)
}

pub fn lts_sets(flat: &FlatLts) -> (BTreeSet<FlatState>, BTreeSet<Edge>) {
    let states = flat.states().iter().copied().collect();
    let edges = flat.edges().iter().map(|&(a, l, b)| (flat.state(a), l, flat.state(b))).collect();
    (states, edges)
}

/// Invariants (i) to (vii) of the flat semantics plus the size bound.
/// Returns a description of every violation.
pub fn flat_invariant_violations(sys: &SbSystem, flat: &FlatLts) -> Vec<String> {
    let mut bad = Vec::new();
    let bound = sys.b.len() * (1 + sys.s.transitions().len()) * sys.s.len();
    if flat.len() > bound {
        bad.push(format!("{} states exceed bound {bound}", flat.len()));
    }
    for i in 0..flat.len() {
        let f = flat.state(i);
        let out = flat.out_edges(i);
        let has_steady_in = out.iter().any(|e| matches!(e.1, FlatLabel::SteadyIn(_)));
        let has_adapt = out.iter().any(|e| e.1.is_adapt());
        match f.phase {
            None => {
                if has_steady_in && has_adapt {
                    bad.push(format!("{f:?}: steady and adapt moves together"));
                }
                if !sys.satisfies_label(f.q, f.r) {
                    bad.push(format!("{f:?}: steady state outside its constraint"));
                }
            }
            Some(t) => {
                if has_steady_in {
                    bad.push(format!("{f:?}: steady move from an adapting state"));
                }
                let target = sys.s.transition(t).target;
                if sys.b.successors(f.q).any(|q2| sys.satisfies_label(q2, target))
                    && out.iter().any(|e| !flat.state(e.2).is_steady())
                {
                    bad.push(format!("{f:?}: adaptation continues although it can end"));
                }
            }
        }
        for &(_, l, j) in out {
            let g = flat.state(j);
            let ok = match (f.phase, l, g.phase) {
                (None, FlatLabel::SteadyIn(r), None) => r == f.r && g.r == f.r,
                (None, FlatLabel::AdaptPhase(t), None) => {
                    sys.s.transition(t).source == f.r && g.r == sys.s.transition(t).target
                }
                (None, FlatLabel::AdaptPhase(t), Some(t2)) => {
                    t == t2 && g.r == f.r && sys.s.transition(t).source == f.r
                }
                (Some(t), FlatLabel::AdaptPhase(t2), Some(t3)) => t == t2 && t == t3 && g.r == f.r,
                (Some(t), FlatLabel::AdaptPhase(t2), None) => t == t2 && g.r == sys.s.transition(t).target,
                _ => false,
            };
            if !ok {
                bad.push(format!("{f:?} -{l:?}-> {g:?}: not a steady step or part of a phase"));
            }
            if !sys.b.successors(f.q).any(|q2| q2 == g.q) {
                bad.push(format!("{f:?} -> {g:?}: no behavioural step"));
            }
        }
    }
    let steady_in: BTreeSet<(usize, usize)> =
        flat.edges().iter().filter(|e| matches!(e.1, FlatLabel::SteadyIn(_))).map(|e| (e.0, e.2)).collect();
    for e in flat.edges().iter().filter(|e| e.1.is_adapt() && steady_in.contains(&(e.0, e.2))) {
        bad.push(format!("{:?} -> {:?}: both a steady and an adapt step", e.0, e.2));
    }
    bad
}

type Cell = (i64, i64, i64);

/// The bone behaviour written out by hand: `(Oc, Ob, Oy)` over
/// `0..=2 x 0..=4 x 0..=2`.
pub fn bone_oracle() -> (BTreeSet<Cell>, BTreeSet<(Cell, Cell)>) {
    let rules: [fn(Cell) -> Option<Cell>; 7] = [
        |(c, b, y)| (c == 0 && b == 0 && y == 0).then_some((c, b, y + 1)),
        |(c, b, y)| (y == 0).then_some((c, b, 2)),
        |(c, b, y)| (y <= c && y > 0).then_some((c, b, y - 1)),
        |(c, b, y)| (b <= 1 && c < y && c < 2).then_some((c + 1, b, y)),
        |(c, b, y)| (c > y && c > 0).then_some((c - 1, b, y)),
        |(c, b, y)| (b < 2 * c && y == 0 && b < 4).then_some((c, b + 1, y)),
        |(c, b, y)| (b > c && b > 0).then_some((c, b - 1, y)),
    ];
    let in_grid = |(c, b, y): (i64, i64, i64)| (0..=2).contains(&c) && (0..=4).contains(&b) && (0..=2).contains(&y);
    let start = (0, 0, 1);
    let mut seen = BTreeSet::from([start]);
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for rule in rules {
            if let Some(n) = rule(s).filter(|&n| in_grid(n)) {
                edges.insert((s, n));
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    (seen, edges)
}

pub fn random_kripke(rng: &mut impl Rng, max_states: usize) -> Kripke {
    let n = rng.gen_range(1..=max_states);
    let p = rng.gen_range(0.05..0.5);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let labels = (0..n).map(|_| Atom::ALL.into_iter().filter(|_| rng.gen_bool(0.5)).collect::<LabelSet>()).collect();
    Kripke::new(n, rng.gen_range(0..n), edges, labels)
}

pub fn random_ctl(rng: &mut impl Rng, depth: usize) -> Ctl {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..5) {
            0 => Ctl::True,
            1 => Ctl::False,
            k => Ctl::atom(Atom::ALL[k - 2]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..13) {
        0 => Ctl::not(random_ctl(rng, d)),
        1 => Ctl::and(random_ctl(rng, d), random_ctl(rng, d)),
        2 => Ctl::or(random_ctl(rng, d), random_ctl(rng, d)),
        3 => Ctl::implies(random_ctl(rng, d), random_ctl(rng, d)),
        4 => Ctl::ex(random_ctl(rng, d)),
        5 => Ctl::ax(random_ctl(rng, d)),
        6 => Ctl::ef(random_ctl(rng, d)),
        7 => Ctl::af(random_ctl(rng, d)),
        8 => Ctl::eg(random_ctl(rng, d)),
        9 => Ctl::ag(random_ctl(rng, d)),
        10 => Ctl::eu(random_ctl(rng, d), random_ctl(rng, d)),
        11 => Ctl::au(random_ctl(rng, d), random_ctl(rng, d)),
        _ => Ctl::atom(Atom::ALL[rng.gen_range(0..3)]),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Truth of `phi` at every state, by bounded unrolling of path quantifiers.
///
/// On a finite left-total structure with `n` states, a property of the form
/// "some/every path satisfies `a` until `b`" is decided by paths of at most
/// `n` steps, and "some path stays in `a`" by a path of `n + 1` states,
/// which must repeat a state.
pub fn naive_sat(k: &Kripke, phi: &Ctl) -> Vec<bool> {
    let n = k.len();
    let all = |v: &[bool], t: usize| k.successors(t).iter().all(|&u| v[u]);
    let any = |v: &[bool], t: usize| k.successors(t).iter().any(|&u| v[u]);
    // until(a, b, exists): level d holds iff the until holds within d steps.
    let until = |a: &[bool], b: &[bool], exists: bool| -> Vec<bool> {
        let mut cur: Vec<bool> = b.to_vec();
        for _ in 0..n {
            cur = (0..n).map(|t| b[t] || (a[t] && if exists { any(&cur, t) } else { all(&cur, t) })).collect();
        }
        cur
    };
    let globally = |a: &[bool], exists: bool| -> Vec<bool> {
        let mut cur: Vec<bool> = a.to_vec();
        for _ in 0..n {
            cur = (0..n).map(|t| a[t] && if exists { any(&cur, t) } else { all(&cur, t) }).collect();
        }
        cur
    };
    let yes = vec![true; n];
    match phi {
        Ctl::True => yes,
        Ctl::False => vec![false; n],
        Ctl::Atom(a) => (0..n).map(|t| k.labels(t).contains(*a)).collect(),
        Ctl::Not(a) => naive_sat(k, a).into_iter().map(|x| !x).collect(),
        Ctl::And(a, b) => naive_sat(k, a).iter().zip(naive_sat(k, b)).map(|(x, y)| *x && y).collect(),
        Ctl::Or(a, b) => naive_sat(k, a).iter().zip(naive_sat(k, b)).map(|(x, y)| *x || y).collect(),
        Ctl::Implies(a, b) => naive_sat(k, a).iter().zip(naive_sat(k, b)).map(|(x, y)| !*x || y).collect(),
        Ctl::EX(a) => {
            let v = naive_sat(k, a);
            (0..n).map(|t| any(&v, t)).collect()
        }
        Ctl::AX(a) => {
            let v = naive_sat(k, a);
            (0..n).map(|t| all(&v, t)).collect()
        }
        Ctl::EF(a) => until(&yes, &naive_sat(k, a), true),
        Ctl::AF(a) => until(&yes, &naive_sat(k, a), false),
        Ctl::EU(a, b) => until(&naive_sat(k, a), &naive_sat(k, b), true),
        Ctl::AU(a, b) => until(&naive_sat(k, a), &naive_sat(k, b), false),
        Ctl::EG(a) => globally(&naive_sat(k, a), true),
        Ctl::AG(a) => globally(&naive_sat(k, a), false),
    }
}

/// Largest subset of `pairs` passing `accepts`, found by repeatedly
/// dropping reported violators.
pub fn prune<F>(mut rel: sbcheck::adapt::AdaptRelation, accepts: F) -> sbcheck::adapt::AdaptRelation
where
    F: Fn(&sbcheck::adapt::AdaptRelation) -> sbcheck::adapt::Report,
{
    loop {
        let report = accepts(&rel);
        if report.holds() {
            return rel;
        }
        let drop: BTreeSet<(usize, usize)> = report.violations.iter().map(|v| (v.q, v.r)).collect();
        rel = rel.iter().filter(|p| !drop.contains(p)).collect();
    }
}

pub const ATV_S0_STRONG: &[(&str, &str)] =
    &[("0", "r0"), ("1", "r0"), ("2", "r0"), ("3", "r0"), ("11", "r1"), ("10", "r1"), ("13", "r1")];
pub const ATV_S1_WEAK: &[(&str, &str)] = &[("0", "r0"), ("1", "r0"), ("2", "r0"), ("3", "r0")];
pub const BONE_S0_STRONG: &[(&str, &str)] =
    &[("(0,0,1)", "r0"), ("(0,0,2)", "r0"), ("(2,0,0)", "r1"), ("(1,0,0)", "r1"), ("(0,1,0)", "r2")];
pub const BONE_S1_WEAK: &[(&str, &str)] = &[
    ("(0,0,1)", "r0"),
    ("(0,0,2)", "r0"),
    ("(2,0,0)", "r1"),
    ("(1,0,0)", "r1"),
    ("(0,1,0)", "r2"),
    ("(0,0,2)", "r3"),
    ("(2,0,0)", "r4"),
    ("(0,4,0)", "r5"),
    ("(0,3,0)", "r5"),
    ("(0,2,0)", "r2"),
];

pub fn relation(sys: &SbSystem, pairs: &[(&str, &str)]) -> sbcheck::adapt::AdaptRelation {
    sbcheck::adapt::AdaptRelation::from_ids(sys, pairs.iter().copied()).expect("known ids")
}
