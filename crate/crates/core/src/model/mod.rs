//! Behavioural and structural levels and their S[B] composition.

mod dsl;
mod rules;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::constraints::{
    evaluate, free_observables, typecheck, typecheck_int, Formula, FormulaError, Observation, ObservationError,
    Signature, SignatureError,
};

pub(crate) use dsl::{parse_document, Behaviour};
pub use dsl::{parse_model, to_dsl};
pub use rules::{expand_rules, GuardedRule, RuleExpansion};

/// Behavioural state: an identifier plus its observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BState {
    pub id: String,
    pub obs: Observation,
}

/// The behavioural machine `B = (Q, q0, ->B)`. States are addressed by
/// index; distinct ids may share an observation.
#[derive(Debug, Clone)]
pub struct BLevel {
    states: Vec<BState>,
    initial: usize,
    transitions: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    index: HashMap<String, usize>,
}

impl BLevel {
    /// Transitions are deduplicated and kept sorted.
    pub fn new(states: Vec<BState>, initial: usize, mut transitions: Vec<(usize, usize)>) -> Result<Self, ModelError> {
        let mut index = HashMap::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateId { line: 0, id: s.id.clone() });
            }
        }
        let n = states.len();
        if initial >= n {
            return Err(ModelError::Integrity("initial behavioural state out of range".into()));
        }
        if let Some(&(a, b)) = transitions.iter().find(|(a, b)| *a >= n || *b >= n) {
            return Err(ModelError::Integrity(format!("behavioural transition {a} -> {b} out of range")));
        }
        transitions.sort_unstable();
        transitions.dedup();
        let mut offsets = vec![0; n + 1];
        for &(a, _) in &transitions {
            offsets[a + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        Ok(Self { states, initial, transitions, offsets, index })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state(&self, q: usize) -> &BState {
        &self.states[q]
    }

    pub fn states(&self) -> &[BState] {
        &self.states
    }

    pub fn transitions(&self) -> &[(usize, usize)] {
        &self.transitions
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Successor indices of `q`, ascending.
    pub fn successors(&self, q: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.transitions[self.offsets[q]..self.offsets[q + 1]].iter().map(|&(_, b)| b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SState {
    pub id: String,
    pub label: Formula,
}

/// Structural transition `source --invariant--> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STransition {
    pub source: usize,
    pub invariant: Formula,
    pub target: usize,
}

/// The structural machine `S = (R, r0, ->S, L)`.
#[derive(Debug, Clone)]
pub struct SLevel {
    states: Vec<SState>,
    initial: usize,
    transitions: Vec<STransition>,
    outgoing: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl SLevel {
    /// Transitions equal as ASTs are merged; the rest are ordered by
    /// `(source, target, invariant rendering)`.
    pub fn new(states: Vec<SState>, initial: usize, transitions: Vec<STransition>) -> Result<Self, ModelError> {
        let mut index = HashMap::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.id.clone(), i).is_some() {
                return Err(ModelError::DuplicateId { line: 0, id: s.id.clone() });
            }
        }
        let n = states.len();
        if initial >= n {
            return Err(ModelError::Integrity("initial structural state out of range".into()));
        }
        if transitions.iter().any(|t| t.source >= n || t.target >= n) {
            return Err(ModelError::Integrity("structural transition out of range".into()));
        }
        let mut keyed: Vec<((usize, usize, String), STransition)> =
            transitions.into_iter().map(|t| ((t.source, t.target, t.invariant.to_string()), t)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.1 == b.1);
        let transitions: Vec<STransition> = keyed.into_iter().map(|(_, t)| t).collect();
        let mut outgoing = vec![Vec::new(); n];
        for (i, t) in transitions.iter().enumerate() {
            outgoing[t.source].push(i);
        }
        Ok(Self { states, initial, transitions, outgoing, index })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state(&self, r: usize) -> &SState {
        &self.states[r]
    }

    pub fn states(&self) -> &[SState] {
        &self.states
    }

    pub fn transition(&self, t: usize) -> &STransition {
        &self.transitions[t]
    }

    pub fn transitions(&self) -> &[STransition] {
        &self.transitions
    }

    /// Indices of the transitions leaving `r`.
    pub fn outgoing(&self, r: usize) -> &[usize] {
        &self.outgoing[r]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }
}

/// A behavioural level paired with a structural level over one signature.
#[derive(Debug, Clone)]
pub struct SbSystem {
    pub name: String,
    pub sig: Signature,
    pub b: BLevel,
    pub s: SLevel,
}

impl SbSystem {
    pub fn new(name: impl Into<String>, sig: Signature, b: BLevel, s: SLevel) -> Self {
        Self { name: name.into(), sig, b, s }
    }

    /// `q ⊨ L(r)`
    pub fn satisfies_label(&self, q: usize, r: usize) -> bool {
        evaluate(&self.s.state(r).label, &self.b.state(q).obs)
    }

    /// `q ⊨ ψ` for structural transition `t`.
    pub fn satisfies_invariant(&self, q: usize, t: usize) -> bool {
        evaluate(&self.s.transition(t).invariant, &self.b.state(q).obs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(message: impl Into<String>) -> Self {
        Self { severity: Severity::Error, message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("line {line}: {source}")]
    Signature { line: usize, source: SignatureError },
    #[error("line {line}: {source}")]
    Observation { line: usize, source: ObservationError },
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: transition endpoint `{id}` is not declared")]
    Dangling { line: usize, id: String },
    #[error("{0}")]
    Integrity(String),
    #[error("model is not well-formed:\n{}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Diagnostic>),
}

/// Well-formedness diagnostics; empty iff the initial behavioural state
/// satisfies the initial constraint, every formula is well-sorted over the
/// signature, and the graphs are internally consistent.
pub fn validate(sys: &SbSystem) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let sig = &sys.sig;

    for q in sys.b.states() {
        let conforms = q.obs.iter().count() == sig.len()
            && q.obs.iter().zip(sig.iter()).all(|((n, v), (m, sort))| n == m && sort.contains(v));
        if !conforms {
            out.push(Diagnostic::error(format!(
                "behavioural state `{}` has an observation that does not conform to the signature",
                q.id
            )));
        }
    }
    let mut formulas_ok = true;
    for r in sys.s.states() {
        if let Err(e) = typecheck(&r.label, sig) {
            formulas_ok = false;
            out.push(Diagnostic::error(format!("label of `{}`: {e}", r.id)));
        }
    }
    for t in sys.s.transitions() {
        if let Err(e) = typecheck(&t.invariant, sig) {
            formulas_ok = false;
            out.push(Diagnostic::error(format!(
                "invariant of `{} -> {}`: {e}",
                sys.s.state(t.source).id,
                sys.s.state(t.target).id
            )));
        }
    }
    let mut seen = BTreeSet::new();
    for t in sys.s.transitions() {
        if !seen.insert((t.source, t.target, t.invariant.clone().to_string())) {
            out.push(Diagnostic::error(format!(
                "duplicate structural transition `{} -> {}`",
                sys.s.state(t.source).id,
                sys.s.state(t.target).id
            )));
        }
    }
    if out.is_empty() && formulas_ok {
        let (q0, r0) = (sys.b.initial(), sys.s.initial());
        if !sys.satisfies_label(q0, r0) {
            out.push(Diagnostic::error(format!(
                "initial behavioural state `{}` ({}) does not satisfy the constraint of initial structural state `{}`: {}",
                sys.b.state(q0).id,
                sys.b.state(q0).obs,
                sys.s.state(r0).id,
                sys.s.state(r0).label
            )));
        }
    }
    out
}

/// Parses a model and rejects it unless [`validate`] reports nothing.
pub fn load_model(text: &str) -> Result<SbSystem, ModelError> {
    let sys = parse_model(text)?;
    let diags = validate(&sys);
    if diags.iter().any(|d| d.severity == Severity::Error) {
        return Err(ModelError::Invalid(diags));
    }
    Ok(sys)
}

/// Free observables across every label and invariant of `s`.
pub fn structural_observables(s: &SLevel) -> BTreeSet<String> {
    s.states()
        .iter()
        .map(|st| &st.label)
        .chain(s.transitions().iter().map(|t| &t.invariant))
        .flat_map(free_observables)
        .collect()
}

pub(crate) fn check_update(e: &Formula, sig: &Signature) -> Result<(), String> {
    typecheck_int(e, sig).map_err(|e| e.to_string())
}
