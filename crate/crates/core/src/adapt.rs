//! Weak and strong adaptability, decided by CTL and by adaptation relations.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::ctl::{self, sat_eg_fair, sat_set, Ctl, SatSet};
use crate::flatten::{build_flat, build_with, display, FlatLabel, FlatLts, FlatState, Semantics};
use crate::kripke::{to_kripke, Atom, Kripke};
use crate::model::SbSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Weak,
    Strong,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strong => "strong",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strong" => Ok(Mode::Strong),
            _ => Err(format!("unknown mode `{s}` (expected weak or strong)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("line {line}: unknown behavioural state `{id}`")]
    UnknownB { line: usize, id: String },
    #[error("line {line}: unknown structural state `{id}`")]
    UnknownS { line: usize, id: String },
    #[error("line {line}: expected `<b-state> <s-state>`")]
    Malformed { line: usize },
    #[error("invalid JSON relation: {0}")]
    Json(String),
}

/// A set of `(q, r)` index pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdaptRelation {
    pairs: BTreeSet<(usize, usize)>,
}

impl AdaptRelation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, q: usize, r: usize) -> bool {
        self.pairs.insert((q, r))
    }

    pub fn contains(&self, q: usize, r: usize) -> bool {
        self.pairs.contains(&(q, r))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn union(&self, other: &AdaptRelation) -> AdaptRelation {
        AdaptRelation { pairs: self.pairs.union(&other.pairs).copied().collect() }
    }

    pub fn is_subset(&self, other: &AdaptRelation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// Looks up `(b-id, s-id)` pairs.
    pub fn from_ids<'a>(
        sys: &SbSystem,
        ids: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, RelationError> {
        let mut rel = AdaptRelation::new();
        for (line, (q, r)) in ids.into_iter().enumerate() {
            let qi = sys.b.index_of(q).ok_or_else(|| RelationError::UnknownB { line: line + 1, id: q.into() })?;
            let ri = sys.s.index_of(r).ok_or_else(|| RelationError::UnknownS { line: line + 1, id: r.into() })?;
            rel.insert(qi, ri);
        }
        Ok(rel)
    }

    pub fn ids(&self, sys: &SbSystem) -> Vec<(String, String)> {
        self.iter().map(|(q, r)| (sys.b.state(q).id.clone(), sys.s.state(r).id.clone())).collect()
    }

    /// Reads either a JSON array of `[b, s]` pairs or lines `b s`
    /// (`#` comments allowed).
    pub fn parse(sys: &SbSystem, text: &str) -> Result<Self, RelationError> {
        if text.trim_start().starts_with('[') {
            let pairs: Vec<(String, String)> =
                serde_json::from_str(text).map_err(|e| RelationError::Json(e.to_string()))?;
            return Self::from_ids(sys, pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())));
        }
        let mut rel = AdaptRelation::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(q), Some(r), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(RelationError::Malformed { line: i + 1 });
            };
            let qi = sys.b.index_of(q).ok_or_else(|| RelationError::UnknownB { line: i + 1, id: q.into() })?;
            let ri = sys.s.index_of(r).ok_or_else(|| RelationError::UnknownS { line: i + 1, id: r.into() })?;
            rel.insert(qi, ri);
        }
        Ok(rel)
    }

    /// One `b s` pair per line, in index order.
    pub fn render(&self, sys: &SbSystem) -> String {
        self.ids(sys).into_iter().map(|(q, r)| format!("{q} {r}\n")).collect()
    }

    pub fn to_json(&self, sys: &SbSystem) -> Json {
        Json::Array(self.ids(sys).into_iter().map(|(q, r)| json!([q, r])).collect())
    }
}

impl FromIterator<(usize, usize)> for AdaptRelation {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        AdaptRelation { pairs: iter.into_iter().collect() }
    }
}

/// Which clause of the adaptation definitions a pair fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    /// `q ⊭ L(r)`
    Constraint,
    /// `(q, r, ∅)` has no flat successor.
    Progress,
    /// Steady successors are not (some / all) related.
    Steady,
    /// Adaptation phases fail to reach a related steady state, or (strong)
    /// some phase path is infinite or dead.
    Phase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub q: usize,
    pub r: usize,
    pub clause: Clause,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render(&self, sys: &SbSystem) -> String {
        self.violations
            .iter()
            .map(|v| format!("({}, {}): {:?}: {}\n", sys.b.state(v.q).id, sys.s.state(v.r).id, v.clause, v.detail))
            .collect()
    }
}

/// What one steady state `(q, r, ∅)` can do, as needed by the relation
/// clauses.
#[derive(Debug, Clone, Default)]
struct Local {
    steady_succ: Vec<(usize, usize)>,
    has_adapt: bool,
    /// Steady states reached by one or more adapting steps.
    exits: Vec<(usize, usize)>,
    /// Every adaptation path from here is finite and ends steady.
    phases_finite: bool,
}

fn seeds_for(sem: &Semantics<'_>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Vec<FlatState> {
    pairs.into_iter().filter(|&(q, r)| sem.sat_label(q, r)).map(|(q, r)| FlatState::steady(q, r)).collect()
}

fn grid(sys: &SbSystem) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..sys.b.len()).flat_map(move |q| (0..sys.s.len()).map(move |r| (q, r)))
}

/// Explores the adaptation phases leaving steady state `i`.
fn local(flat: &FlatLts, i: usize) -> Local {
    let mut out = Local { phases_finite: true, ..Local::default() };
    let mut phase_roots = Vec::new();
    for &(_, label, j) in flat.out_edges(i) {
        let g = flat.state(j);
        match label {
            FlatLabel::SteadyIn(_) => out.steady_succ.push((g.q, g.r)),
            FlatLabel::AdaptPhase(_) => {
                out.has_adapt = true;
                if g.is_steady() {
                    out.exits.push((g.q, g.r));
                } else {
                    phase_roots.push(j);
                }
            }
        }
    }
    // Iterative DFS with colours: 1 on stack, 2 done.
    let mut colour: std::collections::HashMap<usize, u8> = std::collections::HashMap::new();
    for root in phase_roots {
        if colour.contains_key(&root) {
            continue;
        }
        colour.insert(root, 1);
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let edges = flat.out_edges(v);
            if edges.is_empty() {
                out.phases_finite = false;
            }
            if *pos < edges.len() {
                let j = edges[*pos].2;
                *pos += 1;
                let g = flat.state(j);
                if g.is_steady() {
                    out.exits.push((g.q, g.r));
                    continue;
                }
                match colour.get(&j) {
                    None => {
                        colour.insert(j, 1);
                        stack.push((j, 0));
                    }
                    Some(1) => out.phases_finite = false,
                    Some(_) => {}
                }
            } else {
                colour.insert(v, 2);
                stack.pop();
            }
        }
    }
    out.steady_succ.sort_unstable();
    out.steady_succ.dedup();
    out.exits.sort_unstable();
    out.exits.dedup();
    out
}

struct Analysis {
    pairs: Vec<(usize, usize)>,
    locals: Vec<Local>,
}

fn analyse(sem: &Semantics<'_>, pairs: Vec<(usize, usize)>) -> Analysis {
    let seeds = seeds_for(sem, pairs.iter().copied());
    let pairs: Vec<(usize, usize)> = seeds.iter().map(|f| (f.q, f.r)).collect();
    if seeds.is_empty() {
        return Analysis { pairs, locals: vec![] };
    }
    let flat = build_with(sem, &seeds);
    let locals = flat.roots().iter().map(|&i| local(&flat, i)).collect();
    Analysis { pairs, locals }
}

/// Greatest fixpoint over `pairs`: repeatedly drop pairs failing `keep`.
fn greatest(
    a: &Analysis,
    mut alive: Vec<bool>,
    keep: impl Fn(&Local, &dyn Fn((usize, usize)) -> bool) -> bool,
) -> Vec<bool> {
    let index: std::collections::HashMap<(usize, usize), usize> =
        a.pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    loop {
        let snapshot = alive.clone();
        let member = |p: (usize, usize)| index.get(&p).is_some_and(|&i| snapshot[i]);
        let mut changed = false;
        for (i, l) in a.locals.iter().enumerate() {
            if alive[i] && !keep(l, &member) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

fn weak_keep(l: &Local, member: &dyn Fn((usize, usize)) -> bool) -> bool {
    let progress = !l.steady_succ.is_empty() || l.has_adapt;
    progress
        && (l.steady_succ.is_empty() || l.steady_succ.iter().any(|&p| member(p)))
        && (!l.has_adapt || l.exits.iter().any(|&p| member(p)))
}

fn strong_keep(l: &Local, member: &dyn Fn((usize, usize)) -> bool) -> bool {
    let progress = !l.steady_succ.is_empty() || l.has_adapt;
    progress && l.phases_finite && l.steady_succ.iter().all(|&p| member(p)) && l.exits.iter().all(|&p| member(p))
}

fn relation_from(a: &Analysis, alive: &[bool]) -> AdaptRelation {
    a.pairs.iter().zip(alive).filter(|(_, &k)| k).map(|(&p, _)| p).collect()
}

/// The weak adaptability relation: the union of all weak adaptations, over
/// every `(q, r)` of the grid.
pub fn weak_relation(sys: &SbSystem) -> AdaptRelation {
    let sem = Semantics::new(sys);
    let a = analyse(&sem, grid(sys).collect());
    let alive = greatest(&a, vec![true; a.pairs.len()], weak_keep);
    relation_from(&a, &alive)
}

/// The strong adaptability relation: the union of all strong adaptations.
pub fn greatest_strong_relation(sys: &SbSystem) -> AdaptRelation {
    let sem = Semantics::new(sys);
    let a = analyse(&sem, grid(sys).collect());
    let alive = greatest(&a, vec![true; a.pairs.len()], strong_keep);
    relation_from(&a, &alive)
}

/// Projection of the reachable steady flat states.
pub fn reachable_steady_pairs(flat: &FlatLts) -> AdaptRelation {
    flat.states().iter().filter(|f| f.is_steady()).map(|f| (f.q, f.r)).collect()
}

/// The reachable steady projection, if it is a strong adaptation. Present
/// iff the system is strong adaptable.
pub fn strong_relation(sys: &SbSystem) -> Option<AdaptRelation> {
    let candidate = reachable_steady_pairs(&build_flat(sys));
    is_strong_adaptation(sys, &candidate).holds().then_some(candidate)
}

fn check_relation(sys: &SbSystem, rel: &AdaptRelation, mode: Mode) -> Report {
    let sem = Semantics::new(sys);
    let mut report = Report::default();
    for (q, r) in rel.iter() {
        if !sem.sat_label(q, r) {
            report.violations.push(Violation {
                q,
                r,
                clause: Clause::Constraint,
                detail: format!("{} does not satisfy {}", sys.b.state(q).obs, sys.s.state(r).label),
            });
        }
    }
    let a = analyse(&sem, rel.iter().collect());
    let member = |(q, r): (usize, usize)| rel.contains(q, r);
    for (&(q, r), l) in a.pairs.iter().zip(&a.locals) {
        let mut fail = |clause, detail: String| report.violations.push(Violation { q, r, clause, detail });
        if l.steady_succ.is_empty() && !l.has_adapt {
            fail(Clause::Progress, "the steady state has no successor".into());
            continue;
        }
        let steady_ok = match mode {
            Mode::Weak => l.steady_succ.is_empty() || l.steady_succ.iter().any(|&p| member(p)),
            Mode::Strong => l.steady_succ.iter().all(|&p| member(p)),
        };
        if !steady_ok {
            let what = if mode == Mode::Weak { "no steady successor is" } else { "some steady successor is not" };
            fail(Clause::Steady, format!("{what} related"));
        }
        match mode {
            Mode::Weak => {
                if l.has_adapt && !l.exits.iter().any(|&p| member(p)) {
                    fail(Clause::Phase, "no adaptation phase reaches a related steady state".into());
                }
            }
            Mode::Strong => {
                if !l.phases_finite {
                    fail(Clause::Phase, "some adaptation path is infinite or dead".into());
                } else if let Some(&(q2, r2)) = l.exits.iter().find(|&&p| !member(p)) {
                    fail(
                        Clause::Phase,
                        format!(
                            "adaptation ends at ({}, {}), which is not related",
                            sys.b.state(q2).id,
                            sys.s.state(r2).id
                        ),
                    );
                }
            }
        }
    }
    report
}

pub fn is_weak_adaptation(sys: &SbSystem, rel: &AdaptRelation) -> Report {
    check_relation(sys, rel, Mode::Weak)
}

pub fn is_strong_adaptation(sys: &SbSystem, rel: &AdaptRelation) -> Report {
    check_relation(sys, rel, Mode::Strong)
}

/// A path of flat states, shaped as a lasso when it ends in a cycle.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Evidence {
    pub prefix: Vec<FlatState>,
    pub cycle: Vec<FlatState>,
}

impl Evidence {
    pub fn last(&self) -> Option<FlatState> {
        self.cycle.last().or(self.prefix.last()).copied()
    }

    pub fn states(&self) -> impl Iterator<Item = FlatState> + '_ {
        self.prefix.iter().chain(&self.cycle).copied()
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub system: String,
    pub mode: Mode,
    pub holds: bool,
    pub relation: Option<AdaptRelation>,
    pub evidence: Evidence,
}

impl Verdict {
    /// `{system, mode, holds, relation, evidence: {prefix, cycle}}`.
    pub fn to_json(&self, sys: &SbSystem) -> Json {
        let render =
            |v: &[FlatState]| -> Json { v.iter().map(|&f| Json::String(display(sys, f).to_string())).collect() };
        json!({
            "system": self.system,
            "mode": self.mode.to_string(),
            "holds": self.holds,
            "relation": self.relation.as_ref().map(|r| r.to_json(sys)).unwrap_or(Json::Null),
            "evidence": {
                "prefix": render(&self.evidence.prefix),
                "cycle": render(&self.evidence.cycle),
            },
        })
    }

    pub fn render(&self, sys: &SbSystem) -> String {
        let mut s =
            format!("{}: {} adaptability {}\n", self.system, self.mode, if self.holds { "holds" } else { "fails" });
        let label = if self.holds { "witness" } else { "counterexample" };
        if !self.evidence.prefix.is_empty() || !self.evidence.cycle.is_empty() {
            s.push_str(&format!("{label}:\n"));
            for &f in &self.evidence.prefix {
                s.push_str(&format!("  {}\n", display(sys, f)));
            }
            if !self.evidence.cycle.is_empty() {
                s.push_str("  loop:\n");
                for &f in &self.evidence.cycle {
                    s.push_str(&format!("    {}\n", display(sys, f)));
                }
            }
        }
        if let Some(rel) = &self.relation {
            s.push_str(&format!("relation ({} pairs):\n", rel.len()));
            for (q, r) in rel.ids(sys) {
                s.push_str(&format!("  ({q}, {r})\n"));
            }
        }
        s
    }
}

/// The Kripke structure of `flat`, with the sets needed by the two
/// adaptability formulas.
pub struct Checked {
    pub flat: FlatLts,
    pub kripke: Kripke,
    /// Fair `EG` of the weak inner formula; fairness requires `steady`
    /// infinitely often.
    pub weak: SatSet,
    /// States satisfying `AG` of the strong inner formula.
    pub strong: SatSet,
}

pub fn check_flat(flat: FlatLts) -> Checked {
    let kripke = to_kripke(&flat);
    let steady = sat_set(&kripke, &Ctl::atom(Atom::Steady));
    let weak = sat_eg_fair(&kripke, &sat_set(&kripke, &Ctl::weak_inner()), &steady);
    let strong = sat_set(&kripke, &Ctl::strong());
    Checked { flat, kripke, weak, strong }
}

fn lift(flat: &FlatLts, ids: &[usize]) -> Vec<FlatState> {
    ids.iter().map(|&i| flat.state(i)).collect()
}

fn weak_evidence(c: &Checked, t: usize) -> Evidence {
    let k = &c.kripke;
    let steady = sat_set(k, &Ctl::atom(Atom::Steady));
    let inner = Ctl::weak_inner();
    if c.weak.contains(t) {
        let l = ctl::witness_eg_fair(k, &inner, &steady, t).expect("state satisfies fair EG");
        return Evidence { prefix: lift(&c.flat, &l.prefix), cycle: lift(&c.flat, &l.cycle) };
    }
    if let Ok(path) = ctl::counterexample_ag(k, &inner, t) {
        return Evidence { prefix: lift(&c.flat, &path), cycle: vec![] };
    }
    // Every reachable state satisfies the inner formula, so each infinite
    // path stays inside it but eventually avoids steady states.
    let l = ctl::witness_eg(k, &inner, t).expect("AG implies EG");
    Evidence { prefix: lift(&c.flat, &l.prefix), cycle: lift(&c.flat, &l.cycle) }
}

fn strong_evidence(c: &Checked, t: usize) -> Evidence {
    let k = &c.kripke;
    let inner = Ctl::strong_inner();
    if c.strong.contains(t) {
        let l = ctl::witness_eg(k, &inner, t).expect("AG implies EG");
        return Evidence { prefix: lift(&c.flat, &l.prefix), cycle: lift(&c.flat, &l.cycle) };
    }
    let path = ctl::counterexample_ag(k, &inner, t).expect("AG fails");
    let v = *path.last().expect("non-empty");
    // Either v is dead (its added loop is the cycle) or v is adapting and
    // some path from it never becomes steady.
    let not_steady = Ctl::not(Ctl::atom(Atom::Steady));
    let l = ctl::witness_eg(k, &not_steady, v).unwrap_or(ctl::Lasso { prefix: vec![], cycle: vec![v] });
    let mut prefix = path[..path.len() - 1].to_vec();
    prefix.extend(&l.prefix);
    Evidence { prefix: lift(&c.flat, &prefix), cycle: lift(&c.flat, &l.cycle) }
}

/// Weak adaptability of `S[B]` by model checking
/// `EG((adapting ⇒ EF steady) ∧ progress)` at the initial state, where the
/// outer `EG` ranges over paths that are steady infinitely often.
pub fn check_weak(sys: &SbSystem) -> Verdict {
    let c = check_flat(build_flat(sys));
    let t0 = c.kripke.initial();
    Verdict {
        system: sys.name.clone(),
        mode: Mode::Weak,
        holds: c.weak.contains(t0),
        relation: Some(weak_relation(sys)),
        evidence: weak_evidence(&c, t0),
    }
}

/// Strong adaptability of `S[B]` by model checking
/// `AG((adapting ⇒ AF steady) ∧ progress)` at the initial state.
pub fn check_strong(sys: &SbSystem) -> Verdict {
    let c = check_flat(build_flat(sys));
    let t0 = c.kripke.initial();
    Verdict {
        system: sys.name.clone(),
        mode: Mode::Strong,
        holds: c.strong.contains(t0),
        relation: strong_relation(sys),
        evidence: strong_evidence(&c, t0),
    }
}

pub fn check(sys: &SbSystem, mode: Mode) -> Verdict {
    match mode {
        Mode::Weak => check_weak(sys),
        Mode::Strong => check_strong(sys),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdaptError {
    #[error("behavioural state `{q}` does not satisfy the constraint of `{r}`")]
    NotInLabel { q: String, r: String },
}

/// Per-state adaptability by model checking from `(q, r, ∅)`, which need not
/// be reachable from the initial state.
pub fn state_adaptable(sys: &SbSystem, q: usize, r: usize, mode: Mode) -> Result<bool, AdaptError> {
    let sem = Semantics::new(sys);
    if !sem.sat_label(q, r) {
        return Err(AdaptError::NotInLabel { q: sys.b.state(q).id.clone(), r: sys.s.state(r).id.clone() });
    }
    let c = check_flat(build_with(&sem, &[FlatState::steady(q, r)]));
    let t = c.flat.initial();
    Ok(match mode {
        Mode::Weak => c.weak.contains(t),
        Mode::Strong => c.strong.contains(t),
    })
}

/// Every grid pair `(q, r)` with `q ⊨ L(r)` at which the formula for `mode`
/// holds, from one flattening seeded with all of them.
pub fn ctl_adaptable_pairs(sys: &SbSystem, mode: Mode) -> AdaptRelation {
    ctl_pairs_with(sys, |c| match mode {
        Mode::Weak => c.weak.clone(),
        Mode::Strong => c.strong.clone(),
    })
}

/// Like [`ctl_adaptable_pairs`] for weak mode, but with the outer `EG`
/// evaluated without fairness.
pub fn ctl_weak_pairs_unfair(sys: &SbSystem) -> AdaptRelation {
    ctl_pairs_with(sys, |c| sat_set(&c.kripke, &Ctl::weak()))
}

fn ctl_pairs_with(sys: &SbSystem, pick: impl Fn(&Checked) -> SatSet) -> AdaptRelation {
    let sem = Semantics::new(sys);
    let seeds = seeds_for(&sem, grid(sys));
    if seeds.is_empty() {
        return AdaptRelation::new();
    }
    let c = check_flat(build_with(&sem, &seeds));
    let set = pick(&c);
    c.flat.roots().iter().filter(|&&i| set.contains(i)).map(|&i| (c.flat.state(i).q, c.flat.state(i).r)).collect()
}

/// Disagreements between the relational and the temporal-logic views.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Agreement {
    /// Reachable steady pairs where weak relation membership and the weak
    /// formula differ.
    pub weak_states: Vec<(usize, usize)>,
    /// Reachable steady pairs where strong relation membership and the
    /// strong formula differ.
    pub strong_states: Vec<(usize, usize)>,
    pub weak_system: bool,
    pub strong_system: bool,
}

impl Agreement {
    pub fn is_clean(&self) -> bool {
        self.weak_states.is_empty() && self.strong_states.is_empty() && !self.weak_system && !self.strong_system
    }
}

/// Compares relation-based and CTL-based answers at the system level and at
/// every reachable steady state.
pub fn cross_check(sys: &SbSystem) -> Agreement {
    let weak_rel = weak_relation(sys);
    let strong_rel = greatest_strong_relation(sys);
    let weak_ctl = ctl_adaptable_pairs(sys, Mode::Weak);
    let strong_ctl = ctl_adaptable_pairs(sys, Mode::Strong);
    let flat = build_flat(sys);
    let reach = reachable_steady_pairs(&flat);
    let (q0, r0) = (sys.b.initial(), sys.s.initial());
    let c = check_flat(flat);
    let t0 = c.kripke.initial();
    Agreement {
        weak_states: reach.iter().filter(|&(q, r)| weak_rel.contains(q, r) != weak_ctl.contains(q, r)).collect(),
        strong_states: reach.iter().filter(|&(q, r)| strong_rel.contains(q, r) != strong_ctl.contains(q, r)).collect(),
        weak_system: weak_rel.contains(q0, r0) != c.weak.contains(t0),
        strong_system: strong_relation(sys).is_some() != c.strong.contains(t0),
    }
}
