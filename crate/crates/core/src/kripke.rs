//! The Kripke structure associated with a flat LTS.

use std::fmt;

use crate::flatten::FlatLts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Adapting,
    Steady,
    Progress,
}

impl Atom {
    pub const ALL: [Atom; 3] = [Atom::Adapting, Atom::Steady, Atom::Progress];

    fn bit(self) -> u8 {
        match self {
            Atom::Adapting => 1,
            Atom::Steady => 2,
            Atom::Progress => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Atom::Adapting => "adapting",
            Atom::Steady => "steady",
            Atom::Progress => "progress",
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A subset of `{adapting, steady, progress}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LabelSet(u8);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn contains(self, a: Atom) -> bool {
        self.0 & a.bit() != 0
    }

    pub fn with(self, a: Atom) -> Self {
        LabelSet(self.0 | a.bit())
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn atoms(self) -> impl Iterator<Item = Atom> {
        Atom::ALL.into_iter().filter(move |&a| self.contains(a))
    }
}

impl FromIterator<Atom> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        iter.into_iter().fold(LabelSet::EMPTY, LabelSet::with)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.atoms().map(Atom::name).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

/// Left-total labelled graph with successor and predecessor lists in CSR
/// form.
#[derive(Debug, Clone)]
pub struct Kripke {
    initial: usize,
    succ_off: Vec<usize>,
    succ: Vec<usize>,
    pred_off: Vec<usize>,
    pred: Vec<usize>,
    labels: Vec<LabelSet>,
    looped: Vec<bool>,
}

fn csr(
    n: usize,
    edges: &[(usize, usize)],
    key: impl Fn(&(usize, usize)) -> (usize, usize),
) -> (Vec<usize>, Vec<usize>) {
    let mut off = vec![0; n + 1];
    for e in edges {
        off[key(e).0 + 1] += 1;
    }
    for i in 0..n {
        off[i + 1] += off[i];
    }
    let mut fill = off.clone();
    let mut adj = vec![0; edges.len()];
    for e in edges {
        let (a, b) = key(e);
        adj[fill[a]] = b;
        fill[a] += 1;
    }
    (off, adj)
}

impl Kripke {
    /// Builds a structure over states `0..n`. States without successors get
    /// a self-loop. Edges are deduplicated.
    pub fn new(n: usize, initial: usize, mut edges: Vec<(usize, usize)>, labels: Vec<LabelSet>) -> Self {
        assert!(initial < n, "initial state out of range");
        assert_eq!(labels.len(), n, "one label set per state");
        assert!(edges.iter().all(|&(a, b)| a < n && b < n), "edge endpoint out of range");
        edges.sort_unstable();
        edges.dedup();
        let mut looped = vec![true; n];
        for &(a, _) in &edges {
            looped[a] = false;
        }
        edges.extend((0..n).filter(|&i| looped[i]).map(|i| (i, i)));
        edges.sort_unstable();
        let (succ_off, succ) = csr(n, &edges, |&(a, b)| (a, b));
        let mut rev = edges;
        rev.sort_unstable_by_key(|&(a, b)| (b, a));
        let (pred_off, pred) = csr(n, &rev, |&(a, b)| (b, a));
        Self { initial, succ_off, succ, pred_off, pred, labels, looped }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Successors in ascending order; never empty.
    pub fn successors(&self, t: usize) -> &[usize] {
        &self.succ[self.succ_off[t]..self.succ_off[t + 1]]
    }

    pub fn predecessors(&self, t: usize) -> &[usize] {
        &self.pred[self.pred_off[t]..self.pred_off[t + 1]]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.len()
    }

    pub fn labels(&self, t: usize) -> LabelSet {
        self.labels[t]
    }

    /// Whether `t` carries a self-loop added for left-totality.
    pub fn has_added_loop(&self, t: usize) -> bool {
        self.looped[t]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |t| self.successors(t).iter().map(move |&u| (t, u)))
    }
}

/// Associated Kripke structure: same states and initial state as `flat`,
/// labels from the flat transitions only, self-loops at flat-dead states.
pub fn to_kripke(flat: &FlatLts) -> Kripke {
    let n = flat.len();
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let out = flat.out_edges(i);
        let mut l = LabelSet::EMPTY;
        if out.iter().any(|(_, label, _)| label.is_adapt()) {
            l = l.with(Atom::Adapting);
        }
        if !out.is_empty() {
            l = l.with(Atom::Progress);
            if flat.state(i).is_steady() {
                l = l.with(Atom::Steady);
            }
        }
        labels.push(l);
    }
    let edges = flat.edges().iter().map(|&(a, _, b)| (a, b)).collect();
    Kripke::new(n, flat.initial(), edges, labels)
}

pub fn labels_of(k: &Kripke, t: usize) -> LabelSet {
    k.labels(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::flatten::{build_flat, FlatState};

    fn set(atoms: &[Atom]) -> LabelSet {
        atoms.iter().copied().collect()
    }

    #[test]
    fn dead_adapting_state_has_loop_and_no_labels() {
        let sys = bundled::bone_s1();
        let flat = build_flat(&sys);
        let k = to_kripke(&flat);
        let (q, r4, r5) =
            (sys.b.index_of("(0,1,0)").unwrap(), sys.s.index_of("r4").unwrap(), sys.s.index_of("r5").unwrap());
        let t = sys.s.outgoing(r4).iter().copied().find(|&t| sys.s.transition(t).target == r5).unwrap();
        let i = flat.index_of(&FlatState::adapting(q, r4, t)).unwrap();
        assert_eq!(k.successors(i), &[i]);
        assert!(k.has_added_loop(i));
        assert_eq!(labels_of(&k, i), LabelSet::EMPTY);
    }

    #[test]
    fn atv_s0_border_and_initial_labels() {
        let sys = bundled::atv_s0();
        let flat = build_flat(&sys);
        let k = to_kripke(&flat);
        let border = flat.index_of(&FlatState::steady(sys.b.index_of("3").unwrap(), 0)).unwrap();
        assert_eq!(k.labels(border), set(&[Atom::Adapting, Atom::Steady, Atom::Progress]));
        assert_eq!(k.labels(k.initial()), set(&[Atom::Steady, Atom::Progress]));
    }

    #[test]
    fn mid_phase_state_is_adapting_not_steady() {
        let sys = bundled::atv_s0();
        let flat = build_flat(&sys);
        let k = to_kripke(&flat);
        let mid = flat.index_of(&FlatState::adapting(sys.b.index_of("8").unwrap(), 0, 0)).unwrap();
        assert_eq!(k.labels(mid), set(&[Atom::Adapting, Atom::Progress]));
    }

    #[test]
    fn edge_count_adds_one_loop_per_dead_state() {
        for (_, sys) in bundled::all() {
            let flat = build_flat(&sys);
            let k = to_kripke(&flat);
            let dead = (0..flat.len()).filter(|&i| flat.out_degree(i) == 0).count();
            assert_eq!(k.len(), flat.len());
            // Parallel flat edges with distinct labels collapse to one.
            let mut pairs: Vec<_> = flat.edges().iter().map(|&(a, _, b)| (a, b)).collect();
            pairs.sort_unstable();
            pairs.dedup();
            assert_eq!(k.edge_count(), pairs.len() + dead);
            for t in 0..k.len() {
                assert_eq!(!k.labels(t).contains(Atom::Progress), k.has_added_loop(t));
            }
        }
    }
}
