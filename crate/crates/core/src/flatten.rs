//! Flat operational semantics of `S[B]`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::model::SbSystem;

/// `(q, r, ρ)`. `phase` is the index of the structural transition being
/// followed, or `None` when steady.
///
/// Ordering is `(q, r, phase)`; since structural transitions are sorted by
/// `(source, target, invariant)`, this matches ordering by phase target and
/// then invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatState {
    pub q: usize,
    pub r: usize,
    pub phase: Option<usize>,
}

impl FlatState {
    pub fn steady(q: usize, r: usize) -> Self {
        Self { q, r, phase: None }
    }

    pub fn adapting(q: usize, r: usize, t: usize) -> Self {
        Self { q, r, phase: Some(t) }
    }

    pub fn is_steady(&self) -> bool {
        self.phase.is_none()
    }
}

/// `→r` or `→r,ψ,r′`; the latter names the structural transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlatLabel {
    SteadyIn(usize),
    AdaptPhase(usize),
}

impl FlatLabel {
    pub fn is_adapt(&self) -> bool {
        matches!(self, FlatLabel::AdaptPhase(_))
    }
}

/// Precomputed `q ⊨ L(r)` and `q ⊨ ψ` tables.
#[derive(Debug, Clone)]
pub struct Semantics<'a> {
    sys: &'a SbSystem,
    nq: usize,
    label: Vec<bool>,
    inv: Vec<bool>,
}

impl<'a> Semantics<'a> {
    pub fn new(sys: &'a SbSystem) -> Self {
        let nq = sys.b.len();
        let mut label = Vec::with_capacity(nq * sys.s.len());
        for r in 0..sys.s.len() {
            label.extend((0..nq).map(|q| sys.satisfies_label(q, r)));
        }
        let mut inv = Vec::with_capacity(nq * sys.s.transitions().len());
        for t in 0..sys.s.transitions().len() {
            inv.extend((0..nq).map(|q| sys.satisfies_invariant(q, t)));
        }
        Self { sys, nq, label, inv }
    }

    pub fn system(&self) -> &'a SbSystem {
        self.sys
    }

    #[inline]
    pub fn sat_label(&self, q: usize, r: usize) -> bool {
        self.label[r * self.nq + q]
    }

    #[inline]
    pub fn sat_inv(&self, q: usize, t: usize) -> bool {
        self.inv[t * self.nq + q]
    }

    /// Flat successors of `f`, deduplicated and sorted by `(label, target)`.
    pub fn successors(&self, f: FlatState) -> Vec<(FlatLabel, FlatState)> {
        let mut out = Vec::new();
        self.successors_into(f, &mut out);
        out
    }

    pub fn successors_into(&self, f: FlatState, out: &mut Vec<(FlatLabel, FlatState)>) {
        out.clear();
        let FlatState { q, r, phase } = f;
        let b = &self.sys.b;
        match phase {
            None => {
                if !self.sat_label(q, r) {
                    return;
                }
                // Steady, or else AdaptStart/AdaptStartEnd.
                for q2 in b.successors(q) {
                    if self.sat_label(q2, r) {
                        out.push((FlatLabel::SteadyIn(r), FlatState::steady(q2, r)));
                    }
                }
                if out.is_empty() {
                    for &t in self.sys.s.outgoing(r) {
                        let r2 = self.sys.s.transition(t).target;
                        for q2 in b.successors(q) {
                            if self.sat_label(q2, r2) {
                                out.push((FlatLabel::AdaptPhase(t), FlatState::steady(q2, r2)));
                            } else if self.sat_inv(q2, t) {
                                out.push((FlatLabel::AdaptPhase(t), FlatState::adapting(q2, r, t)));
                            }
                        }
                    }
                }
            }
            Some(t) => {
                let r2 = self.sys.s.transition(t).target;
                if !self.sat_inv(q, t) || self.sat_label(q, r2) {
                    return;
                }
                // AdaptEnd, or else Adapt.
                for q2 in b.successors(q) {
                    if self.sat_label(q2, r2) {
                        out.push((FlatLabel::AdaptPhase(t), FlatState::steady(q2, r2)));
                    }
                }
                if out.is_empty() {
                    for q2 in b.successors(q) {
                        if self.sat_inv(q2, t) {
                            out.push((FlatLabel::AdaptPhase(t), FlatState::adapting(q2, r, t)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
    }

    /// `Progress(q, r)`: the steady state `(q, r, ∅)` can move.
    pub fn progress(&self, q: usize, r: usize) -> bool {
        !self.successors(FlatState::steady(q, r)).is_empty()
    }
}

/// Flat successors of `f` under the rules of the flat semantics.
pub fn flat_successors(sys: &SbSystem, f: FlatState) -> Vec<(FlatLabel, FlatState)> {
    Semantics::new(sys).successors(f)
}

pub fn progress(sys: &SbSystem, q: usize, r: usize) -> bool {
    Semantics::new(sys).progress(q, r)
}

/// The flat LTS reachable from one or more root states.
#[derive(Debug, Clone)]
pub struct FlatLts {
    states: Vec<FlatState>,
    index: HashMap<FlatState, usize>,
    roots: Vec<usize>,
    edges: Vec<(usize, FlatLabel, usize)>,
    offsets: Vec<usize>,
}

impl FlatLts {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The first root; `(q0, r0, ∅)` for [`build_flat`].
    pub fn initial(&self) -> usize {
        self.roots[0]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn state(&self, i: usize) -> FlatState {
        self.states[i]
    }

    pub fn states(&self) -> &[FlatState] {
        &self.states
    }

    pub fn index_of(&self, f: &FlatState) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// All transitions, sorted by source index.
    pub fn edges(&self) -> &[(usize, FlatLabel, usize)] {
        &self.edges
    }

    pub fn out_edges(&self, i: usize) -> &[(usize, FlatLabel, usize)] {
        &self.edges[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }
}

/// Reachable closure of the flat semantics from `(q0, r0, ∅)`.
pub fn build_flat(sys: &SbSystem) -> FlatLts {
    build_flat_seeded(sys, &[FlatState::steady(sys.b.initial(), sys.s.initial())])
}

/// Reachable closure from every seed. Root order follows `seeds`.
pub fn build_flat_seeded(sys: &SbSystem, seeds: &[FlatState]) -> FlatLts {
    build_with(&Semantics::new(sys), seeds)
}

pub fn build_with(sem: &Semantics<'_>, seeds: &[FlatState]) -> FlatLts {
    assert!(!seeds.is_empty(), "at least one seed is required");
    let mut found: Vec<FlatState> = Vec::new();
    let mut ids: HashMap<FlatState, usize> = HashMap::new();
    let mut raw: Vec<(usize, FlatLabel, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    for &s in seeds {
        if let Entry::Vacant(e) = ids.entry(s) {
            e.insert(found.len());
            found.push(s);
            queue.push_back(s);
        }
    }
    let mut buf = Vec::new();
    while let Some(f) = queue.pop_front() {
        let src = ids[&f];
        sem.successors_into(f, &mut buf);
        for &(label, g) in &buf {
            let dst = *ids.entry(g).or_insert_with(|| {
                found.push(g);
                queue.push_back(g);
                found.len() - 1
            });
            raw.push((src, label, dst));
        }
    }

    let mut perm: Vec<usize> = (0..found.len()).collect();
    perm.sort_unstable_by_key(|&i| found[i]);
    let mut rank = vec![0; found.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new;
    }
    let states: Vec<FlatState> = perm.iter().map(|&i| found[i]).collect();
    let index = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut edges: Vec<_> = raw.into_iter().map(|(a, l, b)| (rank[a], l, rank[b])).collect();
    edges.sort_unstable_by_key(|&(a, l, b)| (a, l, states[b]));
    let mut offsets = vec![0; states.len() + 1];
    for &(a, _, _) in &edges {
        offsets[a + 1] += 1;
    }
    for i in 0..states.len() {
        offsets[i + 1] += offsets[i];
    }
    let roots = seeds.iter().map(|s| rank[ids[s]]).collect();
    FlatLts { states, index, roots, edges, offsets }
}

/// Renders `f` as `((0,0,1), r0, ∅)` or `((1,1,0), r1, {Ob > 0 && Oy == 0, r2})`.
pub struct DisplayFlat<'a> {
    pub sys: &'a SbSystem,
    pub state: FlatState,
}

impl fmt::Display for DisplayFlat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let FlatState { q, r, phase } = self.state;
        let sys = self.sys;
        write!(f, "({}, {}, ", sys.b.state(q).id, sys.s.state(r).id)?;
        match phase {
            None => write!(f, "∅)"),
            Some(t) => {
                let tr = sys.s.transition(t);
                write!(f, "{{{}, {}}})", tr.invariant, sys.s.state(tr.target).id)
            }
        }
    }
}

pub fn display(sys: &SbSystem, state: FlatState) -> DisplayFlat<'_> {
    DisplayFlat { sys, state }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use std::collections::BTreeSet;

    fn q(sys: &SbSystem, id: &str) -> usize {
        sys.b.index_of(id).unwrap_or_else(|| panic!("no B state {id}"))
    }

    fn r(sys: &SbSystem, id: &str) -> usize {
        sys.s.index_of(id).unwrap()
    }

    fn t(sys: &SbSystem, from: &str, to: &str) -> usize {
        let (a, b) = (r(sys, from), r(sys, to));
        sys.s.outgoing(a).iter().copied().find(|&t| sys.s.transition(t).target == b).unwrap()
    }

    fn steady_projection(sys: &SbSystem, flat: &FlatLts) -> BTreeSet<(String, String)> {
        flat.states()
            .iter()
            .filter(|f| f.is_steady())
            .map(|f| (sys.b.state(f.q).id.clone(), sys.s.state(f.r).id.clone()))
            .collect()
    }

    fn pairs(items: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        items.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn resorption_steps_down() {
        let sys = bundled::bone_s0();
        let f = FlatState::steady(q(&sys, "(2,0,0)"), r(&sys, "r1"));
        let succ = flat_successors(&sys, f);
        assert_eq!(
            succ,
            vec![(FlatLabel::SteadyIn(r(&sys, "r1")), FlatState::steady(q(&sys, "(1,0,0)"), r(&sys, "r1")))]
        );
    }

    #[test]
    fn adapt_end_preempts_adapt() {
        let sys = bundled::bone_s0();
        let tr = t(&sys, "r1", "r2");
        let f = FlatState::adapting(q(&sys, "(1,1,0)"), r(&sys, "r1"), tr);
        let b_succ: BTreeSet<_> = sys.b.successors(f.q).map(|s| sys.b.state(s).id.clone()).collect();
        // Oy+ also fires here since Oy == 0.
        assert_eq!(b_succ, BTreeSet::from(["(0,1,0)".to_string(), "(1,1,2)".to_string(), "(1,2,0)".to_string()]));
        assert_eq!(
            flat_successors(&sys, f),
            vec![(FlatLabel::AdaptPhase(tr), FlatState::steady(q(&sys, "(0,1,0)"), r(&sys, "r2")))]
        );
    }

    #[test]
    fn bone_s1_deadlock_adapting_state() {
        let sys = bundled::bone_s1();
        let f = FlatState::adapting(q(&sys, "(0,1,0)"), r(&sys, "r4"), t(&sys, "r4", "r5"));
        assert!(flat_successors(&sys, f).is_empty());
        assert!(build_flat(&sys).index_of(&f).is_some());
    }

    #[test]
    fn atv_s0_steady_projection() {
        let sys = bundled::atv_s0();
        let flat = build_flat(&sys);
        assert_eq!(
            steady_projection(&sys, &flat),
            pairs(&[("0", "r0"), ("1", "r0"), ("2", "r0"), ("3", "r0"), ("11", "r1"), ("10", "r1"), ("13", "r1")])
        );
    }

    #[test]
    fn bone_s0_steady_projection() {
        let sys = bundled::bone_s0();
        let flat = build_flat(&sys);
        assert_eq!(
            steady_projection(&sys, &flat),
            pairs(&[("(0,0,1)", "r0"), ("(0,0,2)", "r0"), ("(2,0,0)", "r1"), ("(1,0,0)", "r1"), ("(0,1,0)", "r2"),])
        );
    }

    #[test]
    fn single_self_loop() {
        let text = "system one\nobservables\n  x : bool\nbehaviour explicit\n  state a { x=true }\n  init a\n  trans a -> a\nstructure\n  state r : x\n  init r\n";
        let sys = crate::model::load_model(text).unwrap();
        let flat = build_flat(&sys);
        assert_eq!(flat.len(), 1);
        assert_eq!(flat.edges(), &[(0, FlatLabel::SteadyIn(0), 0)]);
    }

    #[test]
    fn progress_examples() {
        let sys = bundled::atv_s0();
        assert!(progress(&sys, q(&sys, "3"), r(&sys, "r0")));
        let bone = bundled::bone_s0();
        assert!(progress(&bone, q(&bone, "(0,1,0)"), r(&bone, "r2")));
        let text = "system dead\nobservables\n  x : bool\nbehaviour explicit\n  state a { x=true }\n  init a\nstructure\n  state r : x\n  init r\n";
        let dead = crate::model::load_model(text).unwrap();
        assert!(!progress(&dead, 0, 0));
    }

    #[test]
    fn formation_phase_has_two_exits() {
        let sys = bundled::bone_s0();
        let flat = build_flat(&sys);
        let start = flat.index_of(&FlatState::steady(q(&sys, "(0,1,0)"), r(&sys, "r2"))).unwrap();
        let mut exits = BTreeSet::new();
        let mut stack = vec![start];
        let mut seen = BTreeSet::from([start]);
        while let Some(i) = stack.pop() {
            for &(_, _, j) in flat.out_edges(i) {
                if flat.state(j).is_steady() {
                    exits.insert(sys.b.state(flat.state(j).q).id.clone());
                } else if seen.insert(j) {
                    stack.push(j);
                }
            }
        }
        assert_eq!(exits, BTreeSet::from(["(0,0,1)".to_string(), "(0,0,2)".to_string()]));
    }

    #[test]
    fn display_uses_triple_notation() {
        let sys = bundled::bone_s1();
        let f = FlatState::adapting(q(&sys, "(0,1,0)"), r(&sys, "r4"), t(&sys, "r4", "r5"));
        assert_eq!(display(&sys, f).to_string(), "((0,1,0), r4, {Ob > 0 && Oy == 0, r5})");
    }
}
